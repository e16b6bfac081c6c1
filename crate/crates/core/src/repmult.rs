//! Weight multiplicities and the orbit-cover multiplicity formula.
//!
//! [`weight_multiplicities`] runs the Freudenthal recursion for a dominant
//! highest weight and expands the full Weyl-invariant table. On top of it,
//! [`orbit_cover_multiplicity`] evaluates how often the irreducible with a
//! given highest weight appears in the coordinate ring of the orbit cover:
//! by Frobenius reciprocity that is the total weight multiplicity over the
//! `λ_R` (equivalently, over the `λ_dom`, since the two are Weyl-conjugate
//! coset by coset). [`normality_check`] classifies when the two
//! representative families coincide outright, which is exactly when the
//! distinguished B-orbit closure is normal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::cosets::CosetTable;
use crate::error::Error;
use crate::rootsys::{RootSystem, WeightVec};
use crate::Result;

/// Complete multiplicity table of one irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiplicityTable {
    highest_weight: WeightVec,
    /// Every weight of the representation with its multiplicity.
    entries: BTreeMap<WeightVec, BigInt>,
    /// The dominant weights only; the full table is their orbit expansion.
    dominant_entries: BTreeMap<WeightVec, BigInt>,
}

impl WeightMultiplicityTable {
    pub fn highest_weight(&self) -> &WeightVec {
        &self.highest_weight
    }

    pub fn entries(&self) -> &BTreeMap<WeightVec, BigInt> {
        &self.entries
    }

    pub fn dominant_entries(&self) -> &BTreeMap<WeightVec, BigInt> {
        &self.dominant_entries
    }

    /// Multiplicity of `μ`, zero when it is not a weight.
    pub fn multiplicity(&self, mu: &WeightVec) -> BigInt {
        self.entries.get(mu).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Total dimension.
    pub fn dimension(&self) -> BigInt {
        self.entries
            .values()
            .fold(BigInt::zero(), |acc, m| acc + m)
    }
}

/// Weyl dimension formula: `dim = Π_{α>0} (hw+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(rs: &RootSystem, hw: &WeightVec) -> Result<BigInt> {
    check_dominant_weight(rs, hw)?;
    let mut dim = BigRational::one();
    let shifted = hw.add(rs.rho());
    for alpha in rs.positive_roots() {
        dim *= rs.pairing(&shifted, alpha) / rs.pairing(rs.rho(), alpha);
    }
    if !dim.denom().is_one() || dim.is_negative() {
        return Err(Error::InvariantViolation(format!(
            "Weyl dimension of {hw} evaluated to non-integer {dim}"
        )));
    }
    Ok(dim.numer().clone())
}

fn check_dominant_weight(rs: &RootSystem, hw: &WeightVec) -> Result<()> {
    if hw.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: hw.rank(),
        });
    }
    if !rs.in_weight_lattice(hw) {
        return Err(Error::NotInWeightLattice {
            weight: hw.to_string(),
        });
    }
    if !rs.is_dominant(hw) {
        return Err(Error::NotDominant {
            weight: hw.to_string(),
        });
    }
    Ok(())
}

/// Freudenthal recursion for the irreducible with highest weight `hw`.
///
/// `depth_bound`, when given, caps the allowed depth `Σcᵢ` of a weight
/// `hw − Σcᵢαᵢ` below the highest weight; the recursion errors out instead
/// of silently truncating if the representation needs more.
pub fn weight_multiplicities(
    rs: &RootSystem,
    hw: &WeightVec,
    depth_bound: Option<i64>,
) -> Result<WeightMultiplicityTable> {
    check_dominant_weight(rs, hw)?;
    let n = rs.rank();

    // Candidate dominant weights hw − c with c in the coordinate box; a
    // dominant weight has nonnegative coordinates, so the box is exhaustive.
    let limits: Vec<i64> = hw
        .coords()
        .iter()
        .map(|q| q.floor().to_integer().try_into().unwrap_or(0))
        .collect();
    let mut dominant: Vec<(WeightVec, i64)> = Vec::new();
    let mut counter = vec![0i64; n];
    'enumerate: loop {
        let mu = WeightVec::new(
            hw.coords()
                .iter()
                .zip(&counter)
                .map(|(q, &c)| q - BigRational::from(BigInt::from(c)))
                .collect(),
        );
        if rs.is_dominant(&mu) {
            let depth: i64 = counter.iter().sum();
            if let Some(bound) = depth_bound {
                if depth > bound {
                    return Err(Error::HeightBoundExceeded { bound });
                }
            }
            dominant.push((mu, depth));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                break 'enumerate;
            }
            counter[pos] += 1;
            if counter[pos] <= limits[pos] {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
    // Decreasing height: the recursion reads multiplicities strictly above.
    dominant.sort_by(|a, b| {
        b.0.height()
            .cmp(&a.0.height())
            .then_with(|| a.0.cmp(&b.0))
    });

    let mut dominant_entries: BTreeMap<WeightVec, BigInt> = BTreeMap::new();
    dominant_entries.insert(hw.clone(), BigInt::one());
    let hw_shift = hw.add(rs.rho());
    let hw_norm = rs.pairing(&hw_shift, &hw_shift);

    for (mu, _depth) in dominant.iter().skip(1) {
        let mut numer = BigRational::zero();
        for alpha in rs.positive_roots() {
            let mut nu = mu.add(alpha);
            loop {
                // Past the top of the string once hw − ν leaves the positive
                // coordinate cone.
                if hw
                    .sub(&nu)
                    .coords()
                    .iter()
                    .any(|c| c.is_negative())
                {
                    break;
                }
                let (dom_nu, _) = rs.dominant_representative(&nu);
                if let Some(m) = dominant_entries.get(&dom_nu) {
                    numer += BigRational::from(m.clone()) * rs.pairing(&nu, alpha);
                }
                nu = nu.add(alpha);
            }
        }
        if numer.is_zero() {
            continue;
        }
        let mu_shift = mu.add(rs.rho());
        let denom = &hw_norm - rs.pairing(&mu_shift, &mu_shift);
        let m = BigRational::from(BigInt::from(2)) * numer / denom;
        if !m.denom().is_one() || !m.is_positive() {
            return Err(Error::InvariantViolation(format!(
                "Freudenthal produced non-integer multiplicity {m} at {mu}"
            )));
        }
        dominant_entries.insert(mu.clone(), m.numer().clone());
    }

    // Expand Weyl orbits to the full table.
    let mut entries = BTreeMap::new();
    for (mu, m) in &dominant_entries {
        for w in rs.weyl_orbit(mu)? {
            entries.insert(w, m.clone());
        }
    }
    let table = WeightMultiplicityTable {
        highest_weight: hw.clone(),
        entries,
        dominant_entries,
    };
    let expected = weyl_dimension(rs, hw)?;
    if table.dimension() != expected {
        return Err(Error::InvariantViolation(format!(
            "multiplicity table for {hw} has total {} but the dimension formula gives {expected}",
            table.dimension()
        )));
    }
    Ok(table)
}

/// Multiplicity of the irreducible `V(hw)` in the coordinate ring of the
/// orbit cover, evaluated along both representative families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCoverMultiplicity {
    pub highest_weight: WeightVec,
    pub mult_via_lambda_r: BigInt,
    pub mult_via_lambda_dom: BigInt,
}

/// Sum the `hw`-weight multiplicities over the coset representatives: the
/// `λ_R` sum realizes the pushforward formula, the `λ_dom` sum the classical
/// one; Weyl conjugacy makes them agree. The identity coset contributes to
/// both sums.
pub fn orbit_cover_multiplicity(
    rs: &RootSystem,
    table: &CosetTable,
    hw: &WeightVec,
) -> Result<OrbitCoverMultiplicity> {
    let mult_table = weight_multiplicities(rs, hw, None)?;
    let mut via_r = BigInt::zero();
    let mut via_dom = BigInt::zero();
    for rec in table.records() {
        via_r += mult_table.multiplicity(&rec.lambda_r);
        via_dom += mult_table.multiplicity(&rec.lambda_dom);
    }
    Ok(OrbitCoverMultiplicity {
        highest_weight: hw.clone(),
        mult_via_lambda_r: via_r,
        mult_via_lambda_dom: via_dom,
    })
}

/// A coset witnessing non-normality: its `λ_dom` differs from `λ_R`, which
/// happens exactly when some α-coefficient of `λ_dom` reaches 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffendingCoset {
    pub coset_id: usize,
    pub lambda_dom: WeightVec,
    /// 1-based coordinate positions where the coefficient is ≥ 1, with the
    /// coefficients themselves.
    pub large_coords: Vec<(usize, BigRational)>,
}

/// Outcome of the B-orbit-closure normality classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityReport {
    pub normal: bool,
    pub offending: Vec<OffendingCoset>,
}

/// The distinguished B-orbit closure is normal exactly when every coset has
/// `λ_dom = λ_R`, i.e. every minimal dominant weight has all α-coefficients
/// below 1.
pub fn normality_check(rs: &RootSystem, table: &CosetTable) -> NormalityReport {
    let _ = rs;
    let one = BigRational::one();
    let mut offending = Vec::new();
    for rec in table.records() {
        if rec.lambda_dom != rec.lambda_r {
            let large_coords: Vec<(usize, BigRational)> = rec
                .lambda_dom
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c >= one)
                .map(|(i, c)| (i + 1, c.clone()))
                .collect();
            offending.push(OffendingCoset {
                coset_id: rec.coset_id,
                lambda_dom: rec.lambda_dom.clone(),
                large_coords,
            });
        }
    }
    NormalityReport {
        normal: offending.is_empty(),
        offending,
    }
}

/// The `count` lowest dominant weights of `P` in height order with
/// lexicographic tie-break.
pub fn lowest_dominant_weights(rs: &RootSystem, count: usize) -> Vec<WeightVec> {
    let n = rs.rank();
    let heights: Vec<BigRational> = rs
        .fundamental_weights()
        .iter()
        .map(WeightVec::height)
        .collect();
    let mut bound = BigRational::one();
    loop {
        let limits: Vec<i64> = heights
            .iter()
            .map(|h| (&bound / h).floor().to_integer().try_into().unwrap_or(0))
            .collect();
        let mut found: Vec<WeightVec> = Vec::new();
        let mut counter = vec![0i64; n];
        'enumerate: loop {
            let mut w = WeightVec::zero(n);
            for (i, &c) in counter.iter().enumerate() {
                if c > 0 {
                    w = w.add(
                        &rs.fundamental_weights()[i]
                            .scale(&BigRational::from(BigInt::from(c))),
                    );
                }
            }
            if w.height() <= bound {
                found.push(w);
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    break 'enumerate;
                }
                counter[pos] += 1;
                if counter[pos] <= limits[pos] {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
        }
        if found.len() >= count {
            found.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
            found.truncate(count);
            return found;
        }
        bound *= BigRational::from(BigInt::from(2));
    }
}
