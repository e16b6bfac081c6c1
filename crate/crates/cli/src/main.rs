//! `nilcover` — deterministic text/JSON reports over the core computations.
//!
//! Exit codes: 0 ok, 1 input error, 2 invariant violation (a cross-checked
//! computation disagreeing with itself, which should never happen).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use nilcover::cosets::{enumerate_cosets, CosetTable};
use nilcover::fibers::{fiber_report, FaceSpec, FiberReport};
use nilcover::repmult::{normality_check, orbit_cover_multiplicity, weight_multiplicities, weyl_dimension};
use nilcover::rootsys::{RootFamily, RootSystem, RootSystemId, WeightVec};
use nilcover::toric::{
    canonical_module_points, hilbert_basis, minimal_orbifold_denominator, orbifold_chart,
    resolve_fan, semigroup_decompose, sigma_cone, sigma_face, Cone, Fan,
};
use nilcover::Error as CoreError;

const SCHEMA_VERSION: &str = "1.0";

#[derive(Parser)]
#[command(
    name = "nilcover",
    about = "Exact lattice, coset, and toric-cone computations for simple root systems",
    after_help = "Types are written as FAMILY+RANK, e.g. A3, D5, E7, G2."
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Also render weights in fundamental-weight coordinates.
    #[arg(long, global = true)]
    fundamental: bool,
    /// Reject classical types above this rank (exceptional types are
    /// unaffected).
    #[arg(long, global = true, default_value_t = 8)]
    max_rank: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Root-system summary: Cartan data, fundamental group, orbifold chart.
    Info {
        r#type: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The coset table of P mod Q with λ_R, λ_dom, λ_C and witness words.
    Cosets {
        r#type: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The fiber group Z(J) for one face, computed three ways.
    Zgroup {
        r#type: String,
        /// Face indices, comma-separated (e.g. --J 1,3). Empty means J = ∅.
        #[arg(long = "J", default_value = "")]
        j: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Z(J) for every nonempty J of one type.
    ZgroupSweep {
        r#type: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Decompose a weight of σ∨ ∩ P as λ_R + Σ cᵢ αᵢ.
    Decompose {
        r#type: String,
        /// α-coordinates, comma-separated rationals (e.g. --weight 1/2,0,1/2).
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Smoothness of σ or of the face τ_J.
    Smooth {
        r#type: String,
        /// Face indices; omit for σ itself.
        #[arg(long = "J")]
        j: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Resolve the σ-fan to an everywhere-smooth subdivision.
    Resolve {
        r#type: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Canonical-module lattice points with α-coordinates in (0, bound].
    Canonical {
        r#type: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Orbit-cover multiplicity of the irreducible with the given highest
    /// weight, along both representative families.
    Mult {
        r#type: String,
        /// Dominant highest weight in α-coordinates.
        #[arg(long)]
        weight: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// B-orbit-closure normality classifier.
    Normality {
        r#type: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Full three-way Z(J) sweep over a set of types (defaults to
    /// A1–A6, B2–B5, C2–C5, D4–D7, E6, E7).
    Conformance {
        types: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

enum CliError {
    Input(String),
    Invariant(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ZGroupDisagreement { .. }
            | CoreError::InvariantViolation(_)
            | CoreError::ResolutionCapExceeded { .. } => CliError::Invariant(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match CliArgs::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (including --help); map parse
            // failures to the input-error exit code.
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (common, outcome) = run_command(cli.command);
    let (status, code) = match &outcome {
        Ok(_) => ("ok", 0u8),
        Err(CliError::Input(_)) => ("input-error", 1),
        Err(CliError::Invariant(_)) => ("invariant-violation", 2),
    };
    let rendered = match (common.format.as_str(), &outcome) {
        ("json", Ok(report)) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "request": report.request.clone(),
                "status": status,
                "payload": report.payload.clone(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        ("json", Err(e)) => {
            let msg = match e {
                CliError::Input(m) | CliError::Invariant(m) => m,
            };
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "status": status,
                "error": msg,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        (_, Ok(report)) => report.text.clone(),
        (_, Err(e)) => {
            let msg = match e {
                CliError::Input(m) => format!("error: {m}\nhint: see `nilcover --help` for usage"),
                CliError::Invariant(m) => format!("invariant violation: {m}"),
            };
            format!("{msg}\n")
        }
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(1);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rendered.as_bytes());
        }
    }
    ExitCode::from(code)
}

/// A finished report: echoed request, JSON payload, and text rendering.
struct Report {
    request: Value,
    payload: Value,
    text: String,
}

fn run_command(command: Command) -> (CommonOpts, Result<Report, CliError>) {
    match command {
        Command::Info { r#type, common } => {
            let r = build(&r#type, &common).and_then(|rs| info_report(&rs, &common));
            (common, r)
        }
        Command::Cosets { r#type, common } => {
            let r = build(&r#type, &common).and_then(|rs| cosets_report(&rs, &common));
            (common, r)
        }
        Command::Zgroup { r#type, j, common } => {
            let r = build(&r#type, &common).and_then(|rs| {
                let face = parse_face(&rs, &j)?;
                zgroup_report(&rs, &face)
            });
            (common, r)
        }
        Command::ZgroupSweep { r#type, common } => {
            let r = build(&r#type, &common).and_then(|rs| sweep_report(&[rs], "zgroup-sweep"));
            (common, r)
        }
        Command::Decompose {
            r#type,
            weight,
            common,
        } => {
            let r = build(&r#type, &common).and_then(|rs| {
                let mu = parse_weight(&rs, &weight)?;
                decompose_report(&rs, &mu, &common)
            });
            (common, r)
        }
        Command::Smooth { r#type, j, common } => {
            let r = build(&r#type, &common).and_then(|rs| {
                let face = match &j {
                    Some(spec) => Some(parse_face(&rs, spec)?),
                    None => None,
                };
                smooth_report(&rs, face.as_ref())
            });
            (common, r)
        }
        Command::Resolve { r#type, common } => {
            let r = build(&r#type, &common).and_then(|rs| resolve_report(&rs));
            (common, r)
        }
        Command::Canonical {
            r#type,
            bound,
            common,
        } => {
            let r = build(&r#type, &common).and_then(|rs| {
                if bound < 1 {
                    return Err(CliError::Input("--bound must be at least 1".into()));
                }
                canonical_report(&rs, bound, &common)
            });
            (common, r)
        }
        Command::Mult {
            r#type,
            weight,
            common,
        } => {
            let r = build(&r#type, &common).and_then(|rs| {
                let hw = parse_weight(&rs, &weight)?;
                mult_report(&rs, &hw, &common)
            });
            (common, r)
        }
        Command::Normality { r#type, common } => {
            let r = build(&r#type, &common).and_then(|rs| normality_report(&rs, &common));
            (common, r)
        }
        Command::Conformance { types, common } => {
            let r = conformance_systems(&types, &common)
                .and_then(|systems| sweep_report(&systems, "conformance"));
            (common, r)
        }
    }
}

fn build(type_str: &str, common: &CommonOpts) -> Result<RootSystem, CliError> {
    let id = RootSystemId::parse(type_str).ok_or_else(|| {
        CliError::Input(format!(
            "unknown type {type_str:?}; expected FAMILY+RANK like A3, B4, D5, E6, F4, G2"
        ))
    })?;
    let classical = matches!(
        id.family,
        RootFamily::A | RootFamily::B | RootFamily::C | RootFamily::D
    );
    if classical && id.rank > common.max_rank {
        return Err(CliError::Input(format!(
            "rank {} exceeds --max-rank {} for classical types",
            id.rank, common.max_rank
        )));
    }
    nilcover::rootsys::build_root_system(id).map_err(CliError::from)
}

fn parse_face(rs: &RootSystem, spec: &str) -> Result<FaceSpec, CliError> {
    let trimmed = spec.trim();
    if trimmed.is_empty() {
        return Ok(FaceSpec::empty());
    }
    let mut indices = Vec::new();
    for part in trimmed.split(',') {
        let idx: usize = part.trim().parse().map_err(|_| {
            CliError::Input(format!("malformed face index {part:?} in --J {spec:?}"))
        })?;
        indices.push(idx);
    }
    FaceSpec::new(rs.rank(), indices).map_err(CliError::from)
}

fn parse_weight(rs: &RootSystem, spec: &str) -> Result<WeightVec, CliError> {
    let mut coords = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        let q: BigRational = match part.split_once('/') {
            Some((num, den)) => {
                let n: BigInt = num.trim().parse().map_err(|_| bad_weight(spec))?;
                let d: BigInt = den.trim().parse().map_err(|_| bad_weight(spec))?;
                if d == BigInt::from(0) {
                    return Err(bad_weight(spec));
                }
                BigRational::new(n, d)
            }
            None => {
                let n: BigInt = part.parse().map_err(|_| bad_weight(spec))?;
                BigRational::from(n)
            }
        };
        coords.push(q);
    }
    if coords.len() != rs.rank() {
        return Err(CliError::Input(format!(
            "weight has {} coordinates but {} has rank {}",
            coords.len(),
            rs.id(),
            rs.rank()
        )));
    }
    Ok(WeightVec::new(coords))
}

fn bad_weight(spec: &str) -> CliError {
    CliError::Input(format!(
        "malformed weight {spec:?}; expected comma-separated rationals like 1/2,0,1/2"
    ))
}

fn request(command: &str, rs: Option<&RootSystem>, options: Value) -> Value {
    json!({
        "command": command,
        "type": rs.map(|r| r.id().to_string()),
        "options": options,
    })
}

fn weight_json(rs: &RootSystem, w: &WeightVec, fundamental: bool) -> Value {
    let coords: Vec<String> = w.coords().iter().map(|c| c.to_string()).collect();
    let mut obj = serde_json::Map::new();
    obj.insert("alpha".into(), json!(w.alpha_string()));
    obj.insert("coords".into(), json!(coords));
    if fundamental {
        let fc: Vec<String> = rs
            .fundamental_coords(w)
            .iter()
            .map(|c| c.to_string())
            .collect();
        obj.insert("fundamental".into(), json!(fc));
    }
    Value::Object(obj)
}

fn weight_text(rs: &RootSystem, w: &WeightVec, fundamental: bool) -> String {
    if fundamental {
        let fc: Vec<String> = rs
            .fundamental_coords(w)
            .iter()
            .map(|c| c.to_string())
            .collect();
        format!("{}  [ω: {}]", w.alpha_string(), fc.join(", "))
    } else {
        w.alpha_string()
    }
}

fn cone_json(c: &Cone) -> Value {
    let rays: Vec<Vec<String>> = c
        .rays()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect();
    json!({
        "rays": rays,
        "dim": c.dim(),
        "simplicial": c.is_simplicial(),
        "index": c.multiplicity().to_string(),
        "smooth": c.is_smooth(),
    })
}

fn word_text(word: &[usize]) -> String {
    if word.is_empty() {
        "(empty)".to_string()
    } else {
        word.iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn info_report(rs: &RootSystem, common: &CommonOpts) -> Result<Report, CliError> {
    let table = enumerate_cosets(rs)?;
    let group = nilcover::fibers::fundamental_group(rs)?;
    let d = minimal_orbifold_denominator(rs);
    let chart = orbifold_chart(rs, d)?;
    let sigma = sigma_cone(rs);
    let hb = hilbert_basis(rs)?;
    let cartan: Vec<Vec<String>> = (0..rs.rank())
        .map(|i| {
            (0..rs.rank())
                .map(|j| rs.cartan()[(i, j)].to_string())
                .collect()
        })
        .collect();
    let payload = json!({
        "rank": rs.rank(),
        "cartan": cartan,
        "positive_roots": rs.positive_roots().len(),
        "weyl_order": rs.weyl_order().to_string(),
        "fundamental_group": group.to_string(),
        "cosets": table.len(),
        "xi": weight_json(rs, rs.xi(), common.fundamental),
        "sigma": cone_json(&sigma),
        "hilbert_basis_size": hb.len(),
        "orbifold": {
            "d": d,
            "group": chart.group.to_string(),
            "order": chart.group.order().to_string(),
            "cover_smooth": chart.smooth,
        },
    });
    let mut text = String::new();
    text += &format!("{}\n", rs.id());
    text += &format!("  rank: {}\n", rs.rank());
    text += &format!("  positive roots: {}\n", rs.positive_roots().len());
    text += &format!("  Weyl order: {}\n", rs.weyl_order());
    text += &format!("  P/Q: {} ({} cosets)\n", group, table.len());
    text += &format!("  ξ: {}\n", weight_text(rs, rs.xi(), common.fundamental));
    text += &format!(
        "  σ: index {}, smooth: {}\n",
        sigma.multiplicity(),
        sigma.is_smooth()
    );
    text += &format!("  Hilbert basis of σ∨∩P: {} elements\n", hb.len());
    text += &format!(
        "  orbifold chart: d = {d}, Z_d = {} (order {}), cover smooth: {}\n",
        chart.group,
        chart.group.order(),
        chart.smooth
    );
    Ok(Report {
        request: request("info", Some(rs), json!({})),
        payload,
        text,
    })
}

fn cosets_report(rs: &RootSystem, common: &CommonOpts) -> Result<Report, CliError> {
    let table = enumerate_cosets(rs)?;
    let records: Vec<Value> = table
        .records()
        .iter()
        .map(|rec| {
            json!({
                "id": rec.coset_id,
                "lambda_R": weight_json(rs, &rec.lambda_r, common.fundamental),
                "lambda_dom": weight_json(rs, &rec.lambda_dom, common.fundamental),
                "lambda_C": weight_json(rs, &rec.lambda_c, common.fundamental),
                "witness": rec.witness,
            })
        })
        .collect();
    let payload = json!({ "count": table.len(), "records": records });
    let mut text = format!("cosets {}: {} cosets of P mod Q\n", rs.id(), table.len());
    for rec in table.records() {
        text += &format!("  #{}\n", rec.coset_id);
        text += &format!(
            "    λ_R   = {}\n",
            weight_text(rs, &rec.lambda_r, common.fundamental)
        );
        text += &format!(
            "    λ_dom = {}\n",
            weight_text(rs, &rec.lambda_dom, common.fundamental)
        );
        text += &format!(
            "    λ_C   = {}\n",
            weight_text(rs, &rec.lambda_c, common.fundamental)
        );
        text += &format!("    witness: {}\n", word_text(&rec.witness));
    }
    Ok(Report {
        request: request("cosets", Some(rs), json!({})),
        payload,
        text,
    })
}

fn fiber_json(rep: &FiberReport) -> Value {
    json!({
        "J": rep.j.to_vec(),
        "lattice": rep.group_lattice.to_string(),
        "cosets": rep.group_cosets.to_string(),
        "table": rep.group_table.as_ref().map(|g| g.to_string()),
        "agree": rep.agree,
        "adjoint_iso": rep.adjoint_iso,
    })
}

fn zgroup_report(rs: &RootSystem, face: &FaceSpec) -> Result<Report, CliError> {
    let table = enumerate_cosets(rs)?;
    let rep = fiber_report(rs, &table, face)?;
    let payload = fiber_json(&rep);
    let mut text = format!("zgroup {} J={}\n", rs.id(), face);
    text += &format!("  lattice method: {}\n", rep.group_lattice);
    text += &format!("  coset method:   {}\n", rep.group_cosets);
    match &rep.group_table {
        Some(g) => text += &format!("  closed form:    {g}\n"),
        None => text += "  closed form:    n/a (empty J)\n",
    }
    text += &format!("  agree: {}\n", rep.agree);
    text += &format!("  V(τ_J) → V_ad(τ_J) isomorphism: {}\n", rep.adjoint_iso);
    Ok(Report {
        request: request("zgroup", Some(rs), json!({ "J": face.to_vec() })),
        payload,
        text,
    })
}

fn sweep_report(systems: &[RootSystem], command: &str) -> Result<Report, CliError> {
    let mut per_type = Vec::new();
    let mut total_checked = 0usize;
    let mut disagreements: Vec<String> = Vec::new();
    let mut text = String::new();
    for rs in systems {
        let table = enumerate_cosets(rs)?;
        let mut entries = Vec::new();
        for j in FaceSpec::nonempty_subsets(rs.rank()) {
            total_checked += 1;
            match fiber_report(rs, &table, &j) {
                Ok(rep) => entries.push(fiber_json(&rep)),
                Err(CoreError::ZGroupDisagreement {
                    j,
                    lattice,
                    cosets,
                    table,
                }) => {
                    disagreements.push(format!(
                        "{} J={j:?}: lattice={lattice} cosets={cosets} table={table}",
                        rs.id()
                    ));
                    entries.push(json!({
                        "J": j,
                        "lattice": lattice,
                        "cosets": cosets,
                        "table": table,
                        "agree": false,
                    }));
                }
                Err(e) => return Err(e.into()),
            }
        }
        let nontrivial = entries
            .iter()
            .filter(|e| e["lattice"] != json!("{1}"))
            .count();
        text += &format!(
            "{}: {} faces checked, {} nontrivial Z(J)\n",
            rs.id(),
            entries.len(),
            nontrivial
        );
        per_type.push(json!({
            "type": rs.id().to_string(),
            "checked": entries.len(),
            "entries": entries,
        }));
    }
    text += &format!(
        "total: {} cells, {} agreements, {} disagreements\n",
        total_checked,
        total_checked - disagreements.len(),
        disagreements.len()
    );
    for d in &disagreements {
        text += &format!("  DISAGREEMENT {d}\n");
    }
    let payload = json!({
        "types": per_type,
        "checked": total_checked,
        "agreements": total_checked - disagreements.len(),
        "disagreements": disagreements.len(),
    });
    let ids: Vec<String> = systems.iter().map(|r| r.id().to_string()).collect();
    let report = Report {
        request: request(command, None, json!({ "types": ids })),
        payload,
        text,
    };
    if !disagreements.is_empty() {
        return Err(CliError::Invariant(format!(
            "{} Z(J) disagreement(s): {}",
            disagreements.len(),
            disagreements.join("; ")
        )));
    }
    Ok(report)
}

fn conformance_systems(
    types: &[String],
    common: &CommonOpts,
) -> Result<Vec<RootSystem>, CliError> {
    if types.is_empty() {
        let mut out = Vec::new();
        for n in 1..=6 {
            out.push(build(&format!("A{n}"), common)?);
        }
        for n in 2..=5 {
            out.push(build(&format!("B{n}"), common)?);
            out.push(build(&format!("C{n}"), common)?);
        }
        for n in 4..=7 {
            out.push(build(&format!("D{n}"), common)?);
        }
        out.push(build("E6", common)?);
        out.push(build("E7", common)?);
        Ok(out)
    } else {
        types.iter().map(|t| build(t, common)).collect()
    }
}

fn decompose_report(rs: &RootSystem, mu: &WeightVec, common: &CommonOpts) -> Result<Report, CliError> {
    let dec = semigroup_decompose(rs, mu)?;
    let coeffs: Vec<String> = dec.alpha_coeffs.iter().map(BigInt::to_string).collect();
    let payload = json!({
        "target": weight_json(rs, &dec.target, common.fundamental),
        "lambda_R_part": weight_json(rs, &dec.lambda_r_part, common.fundamental),
        "alpha_coeffs": coeffs,
    });
    let text = format!(
        "decompose {}\n  μ = {}\n  λ_R part = {}\n  α coefficients = ({})\n",
        rs.id(),
        weight_text(rs, &dec.target, common.fundamental),
        weight_text(rs, &dec.lambda_r_part, common.fundamental),
        dec.alpha_coeffs
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(Report {
        request: request(
            "decompose",
            Some(rs),
            json!({ "weight": mu.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
        ),
        payload,
        text,
    })
}

fn smooth_report(rs: &RootSystem, face: Option<&FaceSpec>) -> Result<Report, CliError> {
    let cone = match face {
        None => sigma_cone(rs),
        Some(spec) => sigma_face(rs, &spec.to_vec())?,
    };
    let payload = json!({
        "face": face.map(|f| f.to_vec()),
        "cone": cone_json(&cone),
    });
    let label = match face {
        None => "σ".to_string(),
        Some(f) => format!("τ_{f}"),
    };
    let text = format!(
        "smooth {} {label}\n  rays: {cone}\n  index: {}\n  smooth: {}\n",
        rs.id(),
        cone.multiplicity(),
        cone.is_smooth()
    );
    Ok(Report {
        request: request("smooth", Some(rs), json!({ "J": face.map(|f| f.to_vec()) })),
        payload,
        text,
    })
}

fn resolve_report(rs: &RootSystem) -> Result<Report, CliError> {
    let sigma = sigma_cone(rs);
    let start = Fan::face_fan(sigma.clone());
    let resolved = resolve_fan(&start)?;
    let cones: Vec<Value> = resolved.max_cones().iter().map(cone_json).collect();
    let payload = json!({
        "sigma_index": sigma.multiplicity().to_string(),
        "max_cones": cones,
        "count": resolved.max_cones().len(),
        "smooth": resolved.is_smooth(),
    });
    let mut text = format!(
        "resolve {}: σ index {} → {} smooth maximal cones\n",
        rs.id(),
        sigma.multiplicity(),
        resolved.max_cones().len()
    );
    for c in resolved.max_cones() {
        text += &format!("  {c}\n");
    }
    Ok(Report {
        request: request("resolve", Some(rs), json!({})),
        payload,
        text,
    })
}

fn canonical_report(rs: &RootSystem, bound: u32, common: &CommonOpts) -> Result<Report, CliError> {
    let points = canonical_module_points(rs, bound)?;
    let listed: Vec<Value> = points
        .iter()
        .map(|p| weight_json(rs, p, common.fundamental))
        .collect();
    let payload = json!({
        "bound": bound,
        "count": points.len(),
        "points": listed,
    });
    let mut text = format!(
        "canonical {} bound {}: {} lattice points with coordinates in (0, {}]\n",
        rs.id(),
        bound,
        points.len(),
        bound
    );
    for p in &points {
        text += &format!("  {}\n", weight_text(rs, p, common.fundamental));
    }
    Ok(Report {
        request: request("canonical", Some(rs), json!({ "bound": bound })),
        payload,
        text,
    })
}

fn mult_report(rs: &RootSystem, hw: &WeightVec, common: &CommonOpts) -> Result<Report, CliError> {
    let table: CosetTable = enumerate_cosets(rs)?;
    let mult_table = weight_multiplicities(rs, hw, None)?;
    let m = orbit_cover_multiplicity(rs, &table, hw)?;
    let dim = weyl_dimension(rs, hw)?;
    let payload = json!({
        "highest_weight": weight_json(rs, hw, common.fundamental),
        "dimension": dim.to_string(),
        "distinct_weights": mult_table.entries().len(),
        "mult_via_lambda_R": m.mult_via_lambda_r.to_string(),
        "mult_via_lambda_dom": m.mult_via_lambda_dom.to_string(),
    });
    let text = format!(
        "mult {}\n  highest weight: {}\n  dimension: {dim} ({} distinct weights)\n  multiplicity in R(cover) via λ_R:   {}\n  multiplicity in R(cover) via λ_dom: {}\n",
        rs.id(),
        weight_text(rs, hw, common.fundamental),
        mult_table.entries().len(),
        m.mult_via_lambda_r,
        m.mult_via_lambda_dom
    );
    Ok(Report {
        request: request(
            "mult",
            Some(rs),
            json!({ "weight": hw.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>() }),
        ),
        payload,
        text,
    })
}

fn normality_report(rs: &RootSystem, common: &CommonOpts) -> Result<Report, CliError> {
    let table = enumerate_cosets(rs)?;
    let verdict = normality_check(rs, &table);
    let offending: Vec<Value> = verdict
        .offending
        .iter()
        .map(|off| {
            let coords: Vec<Value> = off
                .large_coords
                .iter()
                .map(|(i, c)| json!({ "index": i, "coefficient": c.to_string() }))
                .collect();
            json!({
                "coset": off.coset_id,
                "lambda_dom": weight_json(rs, &off.lambda_dom, common.fundamental),
                "coefficients_ge_1": coords,
            })
        })
        .collect();
    let payload = json!({
        "normal": verdict.normal,
        "offending": offending,
    });
    let mut text = format!("normality {}: normal = {}\n", rs.id(), verdict.normal);
    for off in &verdict.offending {
        let coords = off
            .large_coords
            .iter()
            .map(|(i, c)| format!("a{i} = {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        text += &format!(
            "  coset #{}: λ_dom = {} ({coords})\n",
            off.coset_id,
            weight_text(rs, &off.lambda_dom, common.fundamental)
        );
    }
    Ok(Report {
        request: request("normality", Some(rs), json!({})),
        payload,
        text,
    })
}
