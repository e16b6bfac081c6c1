//! The coset table of `P mod Q`.
//!
//! Each coset of the weight lattice modulo the root lattice carries two
//! distinguished representatives: the minimal dominant weight `λ_dom` and the
//! box representative `λ_R` with all α-coordinates in `[0, 1)`. They are
//! always Weyl-conjugate, and the table stores a replayable witness word for
//! that conjugacy. `λ_C = ξ − λ_R` is the companion representative with
//! coordinates in `(0, 1]`.

use num_rational::BigRational;
use num_traits::{One, Signed};
use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::error::Error;
use crate::rootsys::{RootSystem, RootSystemId, WeightVec};
use crate::Result;

/// One coset of `P mod Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetRecord {
    /// Index in the table; cosets are ordered lexicographically by the
    /// α-coordinates of `λ_R`, so the identity coset is always index 0.
    pub coset_id: usize,
    /// Representative with all coordinates in `[0, 1)`.
    pub lambda_r: WeightVec,
    /// Minimal dominant weight of the coset (zero or minuscule).
    pub lambda_dom: WeightVec,
    /// `ξ − λ_R`, the representative with coordinates in `(0, 1]`.
    pub lambda_c: WeightVec,
    /// Word of 1-based reflection indices with
    /// `replay_word(witness, λ_dom) = λ_R`.
    pub witness: Vec<usize>,
}

/// The full coset table for one root system.
#[derive(Debug, Clone)]
pub struct CosetTable {
    root_system: RootSystemId,
    records: Vec<CosetRecord>,
}

impl CosetTable {
    pub fn root_system(&self) -> RootSystemId {
        self.root_system
    }

    pub fn records(&self) -> &[CosetRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Record whose coset contains `μ`, which must lie in `P`.
    pub fn record_of(&self, rs: &RootSystem, mu: &WeightVec) -> Result<&CosetRecord> {
        let rep = lambda_r_of(rs, mu)?;
        self.records
            .iter()
            .find(|r| r.lambda_r == rep)
            .ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "coset of {mu} missing from the table for {}",
                    self.root_system
                ))
            })
    }
}

/// The `λ_R` representative of the coset of `μ`: the componentwise
/// fractional part. `μ` must lie in the weight lattice.
pub fn lambda_r_of(rs: &RootSystem, mu: &WeightVec) -> Result<WeightVec> {
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
    Ok(mu.fract())
}

/// Enumerate all cosets of `P mod Q` with their distinguished
/// representatives and conjugacy witnesses.
pub fn enumerate_cosets(rs: &RootSystem) -> Result<CosetTable> {
    // Close the fractional parts of the fundamental weights under addition.
    let mut seen: BTreeSet<WeightVec> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let zero = WeightVec::zero(rs.rank());
    seen.insert(zero.clone());
    queue.push_back(zero);
    let generators: Vec<WeightVec> = rs
        .fundamental_weights()
        .iter()
        .map(WeightVec::fract)
        .collect();
    while let Some(cur) = queue.pop_front() {
        for g in &generators {
            let next = cur.add(g).fract();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }

    let mut records = Vec::with_capacity(seen.len());
    for (coset_id, lambda_r) in seen.into_iter().enumerate() {
        let (lambda_dom, witness) = rs.dominant_representative(&lambda_r);
        certify_minimal_dominant(rs, &lambda_dom)?;
        let lambda_c = rs.xi().sub(&lambda_r);
        let rec = CosetRecord {
            coset_id,
            lambda_r,
            lambda_dom,
            lambda_c,
            witness,
        };
        validate_record(rs, &rec)?;
        records.push(rec);
    }
    Ok(CosetTable {
        root_system: rs.id(),
        records,
    })
}

/// Witness word sending `λ_dom` to `λ_R` for a record, recomputed from
/// scratch. A missing witness would contradict Weyl conjugacy of the two
/// representatives and is flagged as an invariant violation.
pub fn conjugacy_witness(rs: &RootSystem, rec: &CosetRecord) -> Result<Vec<usize>> {
    let (dom, word) = rs.dominant_representative(&rec.lambda_r);
    if dom != rec.lambda_dom {
        return Err(Error::InvariantViolation(format!(
            "dominant representative of λ_R {} is {}, not the recorded λ_dom {}",
            rec.lambda_r, dom, rec.lambda_dom
        )));
    }
    if rs.replay_word(&word, &rec.lambda_dom)? != rec.lambda_r {
        return Err(Error::InvariantViolation(format!(
            "witness replay failed for coset of {}",
            rec.lambda_r
        )));
    }
    Ok(word)
}

/// Search for a dominant weight strictly below `λ_dom` within its coset.
/// Candidates are `λ_dom − c` for nonzero nonnegative integer vectors `c`,
/// which must have nonnegative coordinates to stand any chance of dominance;
/// finding one contradicts minimality.
fn certify_minimal_dominant(rs: &RootSystem, lambda_dom: &WeightVec) -> Result<()> {
    let n = rs.rank();
    let box_bounds: Vec<i64> = lambda_dom
        .coords()
        .iter()
        .map(|c| c.floor().to_integer().try_into().unwrap_or(0))
        .collect();
    let height_bound: i64 = lambda_dom
        .height()
        .floor()
        .to_integer()
        .try_into()
        .unwrap_or(0);

    let mut c = vec![0i64; n];
    loop {
        // Advance the counter; skip c = 0.
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(());
            }
            c[pos] += 1;
            if c[pos] <= box_bounds[pos] && c.iter().sum::<i64>() <= height_bound {
                break;
            }
            c[pos] = 0;
            pos += 1;
        }
        let candidate = WeightVec::new(
            lambda_dom
                .coords()
                .iter()
                .zip(&c)
                .map(|(a, &ci)| a - BigRational::from_integer(ci.into()))
                .collect(),
        );
        if rs.is_dominant(&candidate) {
            return Err(Error::InvariantViolation(format!(
                "λ_dom {lambda_dom} is not minimal: {candidate} is dominant in the same coset"
            )));
        }
    }
}

fn validate_record(rs: &RootSystem, rec: &CosetRecord) -> Result<()> {
    let one = BigRational::one();
    for c in rec.lambda_r.coords() {
        if c.is_negative() || *c >= one {
            return Err(Error::InvariantViolation(format!(
                "λ_R {} has a coordinate outside [0, 1)",
                rec.lambda_r
            )));
        }
    }
    for c in rec.lambda_c.coords() {
        if !c.is_positive() || *c > one {
            return Err(Error::InvariantViolation(format!(
                "λ_C {} has a coordinate outside (0, 1]",
                rec.lambda_c
            )));
        }
    }
    if !rs.is_dominant(&rec.lambda_dom) {
        return Err(Error::InvariantViolation(format!(
            "λ_dom {} is not dominant",
            rec.lambda_dom
        )));
    }
    if !rec.lambda_dom.sub(&rec.lambda_r).is_integral() {
        return Err(Error::InvariantViolation(format!(
            "λ_dom {} and λ_R {} lie in different cosets",
            rec.lambda_dom, rec.lambda_r
        )));
    }
    if rs.replay_word(&rec.witness, &rec.lambda_dom)? != rec.lambda_r {
        return Err(Error::InvariantViolation(format!(
            "witness word does not send λ_dom {} to λ_R {}",
            rec.lambda_dom, rec.lambda_r
        )));
    }
    if rec.lambda_r.is_zero() && !rec.lambda_dom.is_zero() {
        return Err(Error::InvariantViolation(
            "identity coset must have λ_dom = 0".to_string(),
        ));
    }
    Ok(())
}

/// Sum of two cosets represented by their `λ_R` vectors.
pub fn coset_sum(a: &WeightVec, b: &WeightVec) -> WeightVec {
    a.add(b).fract()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, RootFamily};
    use num_traits::Zero;

    fn rs(family: RootFamily, rank: usize) -> RootSystem {
        build_root_system(RootSystemId::new(family, rank)).unwrap()
    }

    /// ε-coordinates of a type-A weight: `λ = Σ aᵢ(εᵢ − εᵢ₊₁)` has k-th
    /// ε-coordinate `a_k − a_{k−1}`.
    fn epsilon_coords(w: &WeightVec) -> Vec<BigRational> {
        let n = w.rank() + 1;
        (0..n)
            .map(|k| {
                let hi = if k < w.rank() {
                    w.coords()[k].clone()
                } else {
                    BigRational::zero()
                };
                let lo = if k > 0 {
                    w.coords()[k - 1].clone()
                } else {
                    BigRational::zero()
                };
                hi - lo
            })
            .collect()
    }

    #[test]
    fn sl4_lambda_r_list_matches_worked_example() {
        let a3 = rs(RootFamily::A, 3);
        let table = enumerate_cosets(&a3).unwrap();
        let got: BTreeSet<WeightVec> = table.records().iter().map(|r| r.lambda_r.clone()).collect();
        let want: BTreeSet<WeightVec> = [
            WeightVec::zero(3),
            WeightVec::from_ratios(&[(3, 4), (2, 4), (1, 4)]),
            WeightVec::from_ratios(&[(1, 2), (0, 1), (1, 2)]),
            WeightVec::from_ratios(&[(1, 4), (2, 4), (3, 4)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        // λ_1 and λ_3 coincide with their λ_R; λ_2 = ½(α1+2α2+α3) does not.
        let l2 = WeightVec::from_ratios(&[(1, 2), (1, 1), (1, 2)]);
        let rec = table.record_of(&a3, &l2).unwrap();
        assert_eq!(rec.lambda_dom, l2);
        assert_eq!(rec.lambda_r, WeightVec::from_ratios(&[(1, 2), (0, 1), (1, 2)]));
    }

    #[test]
    fn g2_has_single_trivial_coset() {
        let g2 = rs(RootFamily::G, 2);
        let table = enumerate_cosets(&g2).unwrap();
        assert_eq!(table.len(), 1);
        let rec = &table.records()[0];
        assert!(rec.lambda_r.is_zero());
        assert!(rec.lambda_dom.is_zero());
        assert_eq!(rec.lambda_c, *g2.xi());
        assert!(rec.witness.is_empty());
    }

    #[test]
    fn e6_has_three_cosets_with_paper_lambda_r() {
        let e6 = rs(RootFamily::E, 6);
        let table = enumerate_cosets(&e6).unwrap();
        assert_eq!(table.len(), 3);
        let nonzero: BTreeSet<WeightVec> = table
            .records()
            .iter()
            .filter(|r| !r.lambda_r.is_zero())
            .map(|r| r.lambda_r.clone())
            .collect();
        let want: BTreeSet<WeightVec> = [
            WeightVec::from_ratios(&[(1, 3), (0, 1), (2, 3), (0, 1), (1, 3), (2, 3)]),
            WeightVec::from_ratios(&[(2, 3), (0, 1), (1, 3), (0, 1), (2, 3), (1, 3)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(nonzero, want);
    }

    #[test]
    fn table_sizes_match_fundamental_group_orders() {
        let cases = [
            (RootFamily::A, 5, 6),
            (RootFamily::B, 4, 2),
            (RootFamily::C, 5, 2),
            (RootFamily::D, 5, 4),
            (RootFamily::D, 6, 4),
            (RootFamily::E, 6, 3),
            (RootFamily::E, 7, 2),
            (RootFamily::E, 8, 1),
            (RootFamily::F, 4, 1),
            (RootFamily::G, 2, 1),
        ];
        for (family, rank, order) in cases {
            let sys = rs(family, rank);
            assert_eq!(enumerate_cosets(&sys).unwrap().len(), order, "{}", sys.id());
        }
    }

    #[test]
    fn lambda_r_of_examples() {
        let a3 = rs(RootFamily::A, 3);
        // μ in Q reduces to zero.
        assert!(lambda_r_of(&a3, &WeightVec::from_i64(&[2, -1, 3]))
            .unwrap()
            .is_zero());
        // μ = λ_2 reduces to ½(α1 + α3).
        let l2 = WeightVec::from_ratios(&[(1, 2), (1, 1), (1, 2)]);
        assert_eq!(
            lambda_r_of(&a3, &l2).unwrap(),
            WeightVec::from_ratios(&[(1, 2), (0, 1), (1, 2)])
        );
        // μ = λ_1 + α_2 reduces to λ_{1,R} = ¼(3α1+2α2+α3).
        let mu = a3.fundamental_weights()[0].add(&WeightVec::from_i64(&[0, 1, 0]));
        assert_eq!(
            lambda_r_of(&a3, &mu).unwrap(),
            WeightVec::from_ratios(&[(3, 4), (2, 4), (1, 4)])
        );
        // Rejects vectors outside P.
        assert!(matches!(
            lambda_r_of(&a3, &WeightVec::from_ratios(&[(1, 3), (0, 1), (0, 1)])),
            Err(Error::NotInWeightLattice { .. })
        ));
    }

    #[test]
    fn witnesses_replay_for_all_supported_types() {
        let mut systems = Vec::new();
        for n in 1..=7 {
            systems.push(rs(RootFamily::A, n));
        }
        for n in 2..=7 {
            systems.push(rs(RootFamily::B, n));
            systems.push(rs(RootFamily::C, n));
        }
        for n in 3..=7 {
            systems.push(rs(RootFamily::D, n));
        }
        systems.push(rs(RootFamily::E, 6));
        systems.push(rs(RootFamily::E, 7));
        for sys in systems {
            let table = enumerate_cosets(&sys).unwrap();
            for rec in table.records() {
                assert_eq!(
                    sys.replay_word(&rec.witness, &rec.lambda_dom).unwrap(),
                    rec.lambda_r,
                    "{} coset {}",
                    sys.id(),
                    rec.coset_id
                );
                let recomputed = conjugacy_witness(&sys, rec).unwrap();
                assert_eq!(recomputed, rec.witness);
                // λ_dom and λ_R reduce to the same dominant representative.
                assert_eq!(sys.dominant_representative(&rec.lambda_r).0, rec.lambda_dom);
            }
        }
    }

    #[test]
    fn identity_coset_has_empty_witness() {
        let b3 = rs(RootFamily::B, 3);
        let table = enumerate_cosets(&b3).unwrap();
        let id_rec = &table.records()[0];
        assert!(id_rec.lambda_r.is_zero());
        assert!(id_rec.witness.is_empty());
    }

    #[test]
    fn e6_witness_endpoint_matches_paper_word() {
        let e6 = rs(RootFamily::E, 6);
        let table = enumerate_cosets(&e6).unwrap();
        let lambda_r = WeightVec::from_ratios(&[(1, 3), (0, 1), (2, 3), (0, 1), (1, 3), (2, 3)]);
        let rec = table
            .records()
            .iter()
            .find(|r| r.lambda_r == lambda_r)
            .unwrap();
        assert_eq!(rec.lambda_dom, e6.fundamental_weights()[0]);
        // The recorded witness and the word s4 s5 s2 s4 s3 s1 (applied
        // innermost-first) reach the same endpoint.
        let endpoint = e6.replay_word(&[1, 3, 4, 2, 5, 4], &rec.lambda_dom).unwrap();
        assert_eq!(endpoint, rec.lambda_r);
    }

    #[test]
    fn a3_witness_realizes_epsilon_permutation() {
        let a3 = rs(RootFamily::A, 3);
        let table = enumerate_cosets(&a3).unwrap();
        let rec = table
            .records()
            .iter()
            .find(|r| r.lambda_r == WeightVec::from_ratios(&[(1, 2), (0, 1), (1, 2)]))
            .unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let eps_dom = epsilon_coords(&rec.lambda_dom);
        let eps_r = epsilon_coords(&rec.lambda_r);
        assert_eq!(eps_dom, vec![half.clone(), half.clone(), -half.clone(), -half.clone()]);
        assert_eq!(eps_r, vec![half.clone(), -half.clone(), half.clone(), -half]);
    }

    #[test]
    fn type_a_lambda_r_is_epsilon_permutation_of_lambda_dom() {
        // For A_{n−1} and the coset of λ_i, exactly i of the n ε-coordinates
        // of λ_R equal (n−i)/n.
        for n in 2..=8usize {
            let sys = rs(RootFamily::A, n - 1);
            let table = enumerate_cosets(&sys).unwrap();
            for rec in table.records() {
                if rec.lambda_r.is_zero() {
                    continue;
                }
                let fc = sys.fundamental_coords(&rec.lambda_dom);
                let i = fc
                    .iter()
                    .position(|c| c.is_one())
                    .expect("nonzero λ_dom in type A is a fundamental weight")
                    + 1;
                let mut eps_dom = epsilon_coords(&rec.lambda_dom);
                let mut eps_r = epsilon_coords(&rec.lambda_r);
                let target = BigRational::new((n as i64 - i as i64).into(), (n as i64).into());
                assert_eq!(
                    eps_r.iter().filter(|c| **c == target).count(),
                    i,
                    "A{} coset {}",
                    n - 1,
                    rec.coset_id
                );
                eps_dom.sort();
                eps_r.sort();
                assert_eq!(eps_dom, eps_r);
            }
        }
    }

    #[test]
    fn minimal_dominant_weights_are_the_minuscule_fundamentals() {
        // Independent oracle: per family the nonzero λ_dom are exactly the
        // classical minuscule fundamental weights.
        let cases: Vec<(RootSystem, Vec<usize>)> = vec![
            (rs(RootFamily::A, 4), vec![1, 2, 3, 4]),
            (rs(RootFamily::B, 4), vec![4]),
            (rs(RootFamily::C, 4), vec![1]),
            (rs(RootFamily::D, 5), vec![1, 4, 5]),
            (rs(RootFamily::D, 6), vec![1, 5, 6]),
            (rs(RootFamily::E, 6), vec![1, 6]),
            (rs(RootFamily::E, 7), vec![7]),
        ];
        for (sys, fundamentals) in cases {
            let table = enumerate_cosets(&sys).unwrap();
            let got: BTreeSet<WeightVec> = table
                .records()
                .iter()
                .filter(|r| !r.lambda_dom.is_zero())
                .map(|r| r.lambda_dom.clone())
                .collect();
            let want: BTreeSet<WeightVec> = fundamentals
                .iter()
                .map(|&i| sys.fundamental_weights()[i - 1].clone())
                .collect();
            assert_eq!(got, want, "{}", sys.id());
        }
    }

    #[test]
    fn coset_sum_is_group_law() {
        let a3 = rs(RootFamily::A, 3);
        let table = enumerate_cosets(&a3).unwrap();
        let l1 = &table.records()[3].lambda_r; // ¾, ½, ¼ — the λ_1 coset
        let sum = coset_sum(l1, l1);
        assert_eq!(sum, WeightVec::from_ratios(&[(1, 2), (0, 1), (1, 2)]));
    }
}
