//! Affine toric data attached to a root system: the cone `σ` over the dual
//! lattice `N = Hom(P, Z)`, the semigroup `σ∨ ∩ P` with its free
//! decomposition over the `λ_R`, smoothness tests, resolution by stellar
//! subdivision, canonical-module lattice points, and the finite orbifold
//! chart.
//!
//! `N` is represented with respect to the dual of a fixed Z-basis of `P`
//! (computed once by clearing denominators and reducing with Smith normal
//! form), because the dual-basis vectors `vᵢ` of the simple roots need not
//! lie in `N` themselves. A vector `x ∈ V` with values `x(αᵢ) = xᵢ` has
//! `N`-coordinates `B_P · x`, where `B_P` is the basis matrix of `P`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use crate::cosets::{enumerate_cosets, CosetTable};
use crate::error::Error;
use crate::intlat::{
    primitive_vector, quotient_group, smith_normal_form, FiniteAbelianGroup, IntMatrix, QMatrix,
};
use crate::rootsys::{RootSystem, WeightVec};
use crate::Result;

/// Cap on stellar subdivisions in [`resolve_fan`].
pub const RESOLUTION_CAP: usize = 10_000;

/// Fixed Z-basis of the weight lattice `P` in α-coordinates, rows generating
/// `P`. Deterministic for a given root system.
pub fn weight_lattice_basis(rs: &RootSystem) -> QMatrix {
    crate::intlat::LatticePair::from_root_system(rs)
        .expect("weight lattice of a valid root system")
        .basis_p()
        .clone()
}

/// Rational polyhedral cone in `N`, described by primitive integer ray
/// generators. Rays are kept sorted and deduplicated, so equal cones compare
/// equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<Vec<BigInt>>,
    ambient_dim: usize,
    simplicial: bool,
}

impl Cone {
    /// Normalize ray generators (primitive, sorted, distinct) and record
    /// whether they are linearly independent. All cones this module builds
    /// are simplicial, hence strongly convex.
    pub fn new(rays: Vec<Vec<BigInt>>, ambient_dim: usize) -> Cone {
        let mut normalized: Vec<Vec<BigInt>> = rays
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| primitive_vector(&r))
            .collect();
        normalized.sort();
        normalized.dedup();
        for r in &normalized {
            assert_eq!(r.len(), ambient_dim, "ray dimension mismatch");
        }
        let simplicial = if normalized.is_empty() {
            true
        } else {
            let m = QMatrix::from_rows(
                normalized
                    .iter()
                    .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
                    .collect(),
            );
            m.rank() == normalized.len()
        };
        Cone {
            rays: normalized,
            ambient_dim,
            simplicial,
        }
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    /// Dimension of the linear span; equals the ray count for simplicial
    /// cones.
    pub fn dim(&self) -> usize {
        if self.simplicial {
            self.rays.len()
        } else {
            self.ray_matrix_q().rank()
        }
    }

    fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.rays.clone())
    }

    fn ray_matrix_q(&self) -> QMatrix {
        QMatrix::from_rows(
            self.rays
                .iter()
                .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
                .collect(),
        )
    }

    /// Elementary divisors of the ray matrix (nonzero part).
    fn divisors(&self) -> Vec<BigInt> {
        if self.rays.is_empty() {
            return Vec::new();
        }
        smith_normal_form(&self.ray_matrix()).elementary_divisors()
    }

    /// A cone is smooth when its primitive generators extend to a Z-basis of
    /// the ambient lattice: full rank with all elementary divisors 1.
    pub fn is_smooth(&self) -> bool {
        self.simplicial && self.divisors().iter().all(|d| d.is_one())
    }

    /// Lattice index of the subgroup generated by the rays inside the
    /// saturation of their span; 1 exactly for smooth simplicial cones.
    pub fn multiplicity(&self) -> BigInt {
        self.divisors()
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Barycentric coordinates of `x` over the rays, if `x` lies in the span.
    /// Only meaningful for simplicial cones, where they are unique.
    pub fn barycentric(&self, x: &[BigInt]) -> Option<Vec<BigRational>> {
        if self.rays.is_empty() {
            return x.iter().all(|v| v.is_zero()).then(Vec::new);
        }
        let target: Vec<BigRational> = x.iter().map(|v| BigRational::from(v.clone())).collect();
        self.ray_matrix_q().solve_left(&target)
    }

    /// Membership test for integer points (simplicial cones).
    pub fn contains(&self, x: &[BigInt]) -> bool {
        match self.barycentric(x) {
            Some(t) => t.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    /// Containment of a whole cone.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// All faces (subsets of rays for a simplicial cone), including `{0}` and
    /// the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        assert!(self.simplicial, "faces are enumerated for simplicial cones");
        let k = self.rays.len();
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0u64..(1 << k) {
            let rays: Vec<Vec<BigInt>> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.rays[i].clone())
                .collect();
            out.push(Cone::new(rays, self.ambient_dim));
        }
        out
    }

    /// Nonzero lattice points in the half-open fundamental parallelepiped
    /// `{Σ tᵢ rᵢ : 0 ≤ tᵢ < 1}`, paired with their barycentric coordinates.
    /// There are `multiplicity − 1` of them.
    pub fn parallelepiped_points(&self) -> Vec<(Vec<BigRational>, Vec<BigInt>)> {
        assert!(self.simplicial);
        let k = self.rays.len();
        if k == 0 {
            return Vec::new();
        }
        let n = self.ambient_dim;
        // Saturation of span(rays) inside Z^n.
        let sat = crate::intlat::lattice_subspace_intersection(
            &QMatrix::identity(n),
            &self.ray_matrix_q(),
        );
        // Rays in saturation coordinates: an integer k×k matrix C.
        let mut c_rows = Vec::with_capacity(k);
        for r in &self.rays {
            let target: Vec<BigRational> =
                r.iter().map(|v| BigRational::from(v.clone())).collect();
            let coeffs = sat
                .solve_left(&target)
                .expect("ray lies in the saturation of its own span");
            c_rows.push(
                coeffs
                    .iter()
                    .map(|q| {
                        debug_assert!(q.denom().is_one());
                        q.numer().clone()
                    })
                    .collect::<Vec<BigInt>>(),
            );
        }
        let c = IntMatrix::from_rows(c_rows);
        let snf = smith_normal_form(&c);
        let divisors = snf.d.diagonal();
        let c_inv = QMatrix::from_int(&c)
            .inverse()
            .expect("simplicial ray matrix is invertible over Q");

        // Walk representatives of Z^k modulo the row lattice of C, fold each
        // into the parallelepiped, and convert back to ambient coordinates.
        let mut points = Vec::new();
        let mut counter = vec![BigInt::zero(); k];
        loop {
            // y = counter · V⁻¹ is a class representative.
            let y: Vec<BigRational> = (0..k)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for (i, ci) in counter.iter().enumerate() {
                        acc += ci * &snf.v_inv[(i, j)];
                    }
                    BigRational::from(acc)
                })
                .collect();
            // Barycentric coordinates, reduced mod 1.
            let t: Vec<BigRational> = (0..k)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for (i, yi) in y.iter().enumerate() {
                        acc += yi * &c_inv[(i, j)];
                    }
                    &acc - acc.floor()
                })
                .collect();
            if t.iter().any(|ti| !ti.is_zero()) {
                // x = (t·C)·sat, guaranteed integral.
                let mut x_sat = vec![BigRational::zero(); k];
                for (j, xs) in x_sat.iter_mut().enumerate() {
                    for (i, ti) in t.iter().enumerate() {
                        *xs += ti * BigRational::from(c[(i, j)].clone());
                    }
                }
                let mut x = vec![BigInt::zero(); n];
                for (j, xj) in x.iter_mut().enumerate() {
                    let mut acc = BigRational::zero();
                    for (i, xs) in x_sat.iter().enumerate() {
                        acc += xs * &sat[(i, j)];
                    }
                    *xj = roundless_int(&acc);
                }
                points.push((t, x));
            }
            // Multi-radix increment over Π [0, dᵢ).
            let mut pos = 0;
            loop {
                if pos == k {
                    points.sort();
                    return points;
                }
                counter[pos] += 1;
                if counter[pos] < divisors[pos] {
                    break;
                }
                counter[pos] = BigInt::zero();
                pos += 1;
            }
        }
    }
}

/// Exact integer value of a rational known to be integral.
fn roundless_int(q: &BigRational) -> BigInt {
    assert!(q.denom().is_one(), "expected integral value, got {q}");
    q.numer().clone()
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rays: Vec<String> = self
            .rays
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(BigInt::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "[{}]", rays.join(" "))
    }
}

/// Fan given by maximal cones, all subdividing a common support cone. Faces
/// are implied: the face closure is available through [`Fan::all_cones`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    max_cones: Vec<Cone>,
    support: Cone,
}

impl Fan {
    /// The face fan of a single cone.
    pub fn face_fan(sigma: Cone) -> Fan {
        Fan {
            max_cones: vec![sigma.clone()],
            support: sigma,
        }
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn support(&self) -> &Cone {
        &self.support
    }

    /// Face closure of the maximal cones.
    pub fn all_cones(&self) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        for c in &self.max_cones {
            for f in c.faces() {
                out.insert(f);
            }
        }
        out
    }

    /// Every cone smooth.
    pub fn is_smooth(&self) -> bool {
        self.all_cones().iter().all(Cone::is_smooth)
    }

    /// Each maximal cone of `self` sits inside some maximal cone of `other`.
    pub fn refines(&self, other: &Fan) -> bool {
        self.max_cones
            .iter()
            .all(|c| other.max_cones.iter().any(|o| o.contains_cone(c)))
    }

    /// Stellar subdivision at a primitive ray: every maximal cone containing
    /// the ray is split along it; the rest are untouched.
    pub fn star_subdivide(&self, ray: &[BigInt]) -> Result<Fan> {
        let ray = primitive_vector(ray);
        let mut new_max = Vec::new();
        let mut touched = false;
        for cone in &self.max_cones {
            let inside = cone
                .barycentric(&ray)
                .filter(|t| t.iter().all(|c| !c.is_negative()));
            match inside {
                None => new_max.push(cone.clone()),
                Some(t) => {
                    touched = true;
                    for (i, ti) in t.iter().enumerate() {
                        if ti.is_zero() {
                            continue;
                        }
                        let mut rays = cone.rays().to_vec();
                        rays.remove(i);
                        rays.push(ray.clone());
                        new_max.push(Cone::new(rays, cone.ambient_dim()));
                    }
                }
            }
        }
        if !touched {
            return Err(Error::InvariantViolation(format!(
                "subdivision ray ({}) lies outside the fan support",
                ray.iter()
                    .map(BigInt::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )));
        }
        new_max.sort();
        new_max.dedup();
        Ok(Fan {
            max_cones: new_max,
            support: self.support.clone(),
        })
    }
}

/// Primitive `N`-generators along the dual-basis directions `v₁, …, v_r`,
/// in index order. In `N`-coordinates (dual to the fixed basis of `P`) the
/// direction of `vᵢ` is the i-th column of the `P` basis matrix; each column
/// is scaled to a primitive integer vector. Use this ordering to name the
/// face `τ_J` by indices — [`Cone`] itself keeps its rays sorted.
pub fn sigma_ray_generators(rs: &RootSystem) -> Vec<Vec<BigInt>> {
    let basis = weight_lattice_basis(rs);
    let n = rs.rank();
    let mut rays = Vec::with_capacity(n);
    for i in 0..n {
        let col: Vec<BigRational> = (0..n).map(|k| basis[(k, i)].clone()).collect();
        let mut scale = BigInt::one();
        for q in &col {
            scale = scale.lcm(q.denom());
        }
        let ray: Vec<BigInt> = col
            .iter()
            .map(|q| q.numer() * (&scale / q.denom()))
            .collect();
        rays.push(primitive_vector(&ray));
    }
    rays
}

/// The cone `σ` spanned by the primitive `N`-multiples of the basis `{vᵢ}`
/// dual to the simple roots.
pub fn sigma_cone(rs: &RootSystem) -> Cone {
    Cone::new(sigma_ray_generators(rs), rs.rank())
}

/// The face `τ_J` of σ spanned by `{v_j : j ∈ J}` (1-based indices).
pub fn sigma_face(rs: &RootSystem, indices: &[usize]) -> Result<Cone> {
    let generators = sigma_ray_generators(rs);
    let mut rays = Vec::with_capacity(indices.len());
    for &j in indices {
        if j == 0 || j > generators.len() {
            return Err(Error::InvalidFaceSubset {
                j: indices.to_vec(),
                rank: rs.rank(),
            });
        }
        rays.push(generators[j - 1].clone());
    }
    Ok(Cone::new(rays, rs.rank()))
}

/// Unique decomposition of a semigroup element of `σ∨ ∩ P` as its coset's
/// `λ_R` plus a nonnegative integer combination of simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupDecomposition {
    pub target: WeightVec,
    pub lambda_r_part: WeightVec,
    pub alpha_coeffs: Vec<BigInt>,
}

/// Decompose `μ ∈ σ∨ ∩ P` as `λ_R + Σ cᵢ αᵢ` with integer `cᵢ ≥ 0`.
pub fn semigroup_decompose(rs: &RootSystem, mu: &WeightVec) -> Result<SemigroupDecomposition> {
    if mu.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: mu.rank(),
        });
    }
    if !rs.in_weight_lattice(mu) {
        return Err(Error::NotInWeightLattice {
            weight: mu.to_string(),
        });
    }
    if let Some(i) = mu.coords().iter().position(|c| c.is_negative()) {
        return Err(Error::NegativeCoordinate {
            weight: mu.to_string(),
            index: i + 1,
        });
    }
    let lambda_r_part = mu.fract();
    let alpha_coeffs: Vec<BigInt> = mu
        .coords()
        .iter()
        .map(|c| c.floor().to_integer())
        .collect();
    let rebuilt = WeightVec::new(
        lambda_r_part
            .coords()
            .iter()
            .zip(&alpha_coeffs)
            .map(|(f, c)| f + BigRational::from(c.clone()))
            .collect(),
    );
    if rebuilt != *mu {
        return Err(Error::InvariantViolation(format!(
            "semigroup decomposition of {mu} failed to recombine"
        )));
    }
    Ok(SemigroupDecomposition {
        target: mu.clone(),
        lambda_r_part,
        alpha_coeffs,
    })
}

/// Resolve a fan to an everywhere-smooth refinement by repeated stellar
/// subdivision.
///
/// Strategy: pick the non-smooth cone of maximal multiplicity (ties broken
/// by lexicographic ray order), subdivide at the fundamental-parallelepiped
/// lattice point minimizing the barycentric coordinate sum (ties again
/// lexicographic), repeat. Each split strictly reduces the multiplicity of
/// the cones it replaces, so this terminates; the cap is a safety net.
pub fn resolve_fan(start: &Fan) -> Result<Fan> {
    let mut fan = start.clone();
    for _ in 0..RESOLUTION_CAP {
        let worst = fan
            .all_cones()
            .into_iter()
            .filter(|c| !c.is_smooth())
            .max_by(|a, b| {
                a.multiplicity()
                    .cmp(&b.multiplicity())
                    // The lexicographically smallest ray list must win the
                    // max among equal multiplicities, so compare reversed.
                    .then_with(|| b.rays().cmp(a.rays()))
            });
        let Some(worst) = worst else {
            return Ok(fan);
        };
        let points = worst.parallelepiped_points();
        let (_, ray) = points
            .iter()
            .min_by(|(ta, _), (tb, _)| {
                let sa: BigRational = ta.iter().fold(BigRational::zero(), |a, x| a + x);
                let sb: BigRational = tb.iter().fold(BigRational::zero(), |a, x| a + x);
                sa.cmp(&sb).then_with(|| ta.cmp(tb))
            })
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "non-smooth cone {worst} has an empty fundamental parallelepiped"
                ))
            })?;
        fan = fan.star_subdivide(ray)?;
    }
    let leftover = fan
        .all_cones()
        .into_iter()
        .find(|c| !c.is_smooth())
        .map(|c| c.to_string())
        .unwrap_or_default();
    Err(Error::ResolutionCapExceeded {
        cap: RESOLUTION_CAP,
        cone: leftover,
    })
}

/// All `μ ∈ P` with every α-coordinate in `(0, bound]`. These are exactly
/// the exponents spanning the canonical module up to the coordinate cutoff,
/// and each decomposes uniquely as `λ_C` plus a nonnegative integer
/// combination of simple roots. At `bound = 1` the set is precisely the set
/// of `λ_C` representatives.
pub fn canonical_module_points(rs: &RootSystem, bound: u32) -> Result<BTreeSet<WeightVec>> {
    let table = enumerate_cosets(rs)?;
    let mut out = BTreeSet::new();
    let bound_rat = BigRational::from(BigInt::from(bound));
    for rec in table.records() {
        let limits: Vec<i64> = rec
            .lambda_c
            .coords()
            .iter()
            .map(|c| {
                (&bound_rat - c)
                    .floor()
                    .to_integer()
                    .try_into()
                    .unwrap_or(0)
            })
            .collect();
        if limits.iter().any(|&l| l < 0) {
            continue;
        }
        enumerate_boxes(&limits, &mut |c| {
            let coords: Vec<BigRational> = rec
                .lambda_c
                .coords()
                .iter()
                .zip(c)
                .map(|(b, &ci)| b + BigRational::from(BigInt::from(ci)))
                .collect();
            out.insert(WeightVec::new(coords));
        });
    }
    Ok(out)
}

/// Call `f` on every nonnegative integer vector `c` with `cᵢ ≤ limits[i]`.
fn enumerate_boxes(limits: &[i64], f: &mut impl FnMut(&[i64])) {
    let n = limits.len();
    let mut c = vec![0i64; n];
    loop {
        f(&c);
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            c[pos] += 1;
            if c[pos] <= limits[pos] {
                break;
            }
            c[pos] = 0;
            pos += 1;
        }
    }
}

/// Result of [`orbifold_chart`]: the finite group `Z_d` with
/// `V_d / Z_d ≅ V`, and whether the covering toric variety is smooth (its
/// semigroup is freely generated by the scaled simple roots, so this is
/// always confirmed true).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldChart {
    pub group: FiniteAbelianGroup,
    pub smooth: bool,
}

/// Smallest `d ≥ 1` with `P ⊆ (1/d)Q`: the lcm of the coordinate
/// denominators of the fundamental weights.
pub fn minimal_orbifold_denominator(rs: &RootSystem) -> i64 {
    let mut d = BigInt::one();
    for w in rs.fundamental_weights() {
        for c in w.coords() {
            d = d.lcm(c.denom());
        }
    }
    d.try_into().unwrap_or(i64::MAX)
}

/// The orbifold chart for scale `d`: requires `P ⊆ (1/d)Q` and returns
/// `Z_d ≅ Q_d / P` together with the smoothness confirmation for the cover.
pub fn orbifold_chart(rs: &RootSystem, d: i64) -> Result<OrbifoldChart> {
    let suggested = minimal_orbifold_denominator(rs);
    if d < 1 || d % suggested != 0 {
        return Err(Error::OrbifoldDenominatorTooSmall { d, suggested });
    }
    let n = rs.rank();
    let p_basis = weight_lattice_basis(rs);
    let mut qd = QMatrix::zero(n, n);
    let inv_d = BigRational::new(BigInt::one(), BigInt::from(d));
    for i in 0..n {
        qd[(i, i)] = inv_d.clone();
    }
    let group = quotient_group(&p_basis, &qd)?;
    // The cover's semigroup is generated by the (1/d)αᵢ, which are exactly
    // the chosen basis of Q_d: index-1 generators, hence smooth.
    let gen_over_qd = quotient_group(&qd, &qd)?;
    let smooth = gen_over_qd.is_trivial();
    Ok(OrbifoldChart { group, smooth })
}

/// Irreducible elements of the semigroup `σ∨ ∩ P`.
///
/// Any element with a coordinate exceeding 1 splits off a simple root, so
/// the irreducibles live in the unit coordinate box (well below the
/// rank × max-denominator enumeration bound). The unit-box elements are the
/// `λ_R` shifted by simple roots at their zero coordinates; irreducibility
/// is then checked by exhausting pair differences.
pub fn hilbert_basis(rs: &RootSystem) -> Result<Vec<WeightVec>> {
    let table = enumerate_cosets(rs)?;
    let n = rs.rank();
    let one = BigRational::one();
    let mut box_elems: BTreeSet<WeightVec> = BTreeSet::new();
    for rec in table.records() {
        let zero_positions: Vec<usize> = (0..n)
            .filter(|&i| rec.lambda_r.coords()[i].is_zero())
            .collect();
        for mask in 0u64..(1 << zero_positions.len()) {
            let mut coords = rec.lambda_r.coords().to_vec();
            for (bit, &pos) in zero_positions.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    coords[pos] = one.clone();
                }
            }
            box_elems.insert(WeightVec::new(coords));
        }
    }
    box_elems.remove(&WeightVec::zero(n));
    let elems: Vec<WeightVec> = box_elems.iter().cloned().collect();
    let mut irreducible = Vec::new();
    'outer: for x in &elems {
        for y in &elems {
            if y == x {
                continue;
            }
            let diff = x.sub(y);
            if diff.coords().iter().all(|c| !c.is_negative())
                && !diff.is_zero()
                && box_elems.contains(&diff)
            {
                continue 'outer;
            }
        }
        irreducible.push(x.clone());
    }
    irreducible.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    Ok(irreducible)
}

/// All semigroup elements of `σ∨ ∩ P` with every coordinate at most `bound`,
/// enumerated per coset. Useful as a brute-force oracle.
pub fn semigroup_elements_upto(
    table: &CosetTable,
    rank: usize,
    bound: i64,
) -> BTreeSet<WeightVec> {
    let mut out = BTreeSet::new();
    for rec in table.records() {
        let limits: Vec<i64> = rec
            .lambda_r
            .coords()
            .iter()
            .map(|c| {
                let room = BigRational::from(BigInt::from(bound)) - c;
                room.floor().to_integer().try_into().unwrap_or(0)
            })
            .collect();
        let mut counter = vec![0i64; rank];
        loop {
            let coords: Vec<BigRational> = rec
                .lambda_r
                .coords()
                .iter()
                .zip(&counter)
                .map(|(f, &c)| f + BigRational::from(BigInt::from(c)))
                .collect();
            out.insert(WeightVec::new(coords));
            let mut pos = 0;
            loop {
                if pos == rank {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] <= limits[pos] {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == rank {
                break;
            }
        }
    }
    out
}
