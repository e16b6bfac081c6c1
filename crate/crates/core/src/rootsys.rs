//! Root systems for the simple Lie types, with Weyl group actions.
//!
//! Weights live in α-coordinates: a weight is the coefficient vector of
//! `λ = Σ aᵢ αᵢ` over the simple roots, stored as exact rationals. The root
//! lattice `Q` is therefore exactly the integer vectors, and the weight
//! lattice `P` is cut out by integrality of the coroot pairings. The Cartan
//! convention is `A[i][j] = ⟨α_j, α_i∨⟩` with the simple roots numbered as in
//! Humphreys, so `⟨λ, α_i∨⟩` is row `i` of `A` applied to the coordinate
//! vector.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::fmt;

use crate::error::Error;
use crate::intlat::{IntMatrix, QMatrix};
use crate::Result;

/// Default cap on Weyl orbit enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

/// The seven simple families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootFamily {
    pub fn letter(self) -> char {
        match self {
            RootFamily::A => 'A',
            RootFamily::B => 'B',
            RootFamily::C => 'C',
            RootFamily::D => 'D',
            RootFamily::E => 'E',
            RootFamily::F => 'F',
            RootFamily::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(RootFamily::A),
            'B' => Some(RootFamily::B),
            'C' => Some(RootFamily::C),
            'D' => Some(RootFamily::D),
            'E' => Some(RootFamily::E),
            'F' => Some(RootFamily::F),
            'G' => Some(RootFamily::G),
            _ => None,
        }
    }
}

/// A simple type: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    pub family: RootFamily,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: RootFamily, rank: usize) -> Self {
        RootSystemId { family, rank }
    }

    /// Admissible rank ranges: A ≥ 1, B/C ≥ 2, D ≥ 3, E ∈ {6,7,8}, F = 4, G = 2.
    pub fn is_valid(&self) -> bool {
        match self.family {
            RootFamily::A => self.rank >= 1,
            RootFamily::B | RootFamily::C => self.rank >= 2,
            RootFamily::D => self.rank >= 3,
            RootFamily::E => (6..=8).contains(&self.rank),
            RootFamily::F => self.rank == 4,
            RootFamily::G => self.rank == 2,
        }
    }

    /// Parse strings like `A3`, `E6`, `d5`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut chars = s.chars();
        let family = RootFamily::from_letter(chars.next()?)?;
        let rank: usize = chars.as_str().parse().ok()?;
        let id = RootSystemId { family, rank };
        id.is_valid().then_some(id)
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Exact rational vector in α-coordinates: `λ = Σ coords[i] · α_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec {
    coords: Vec<BigRational>,
}

impl WeightVec {
    pub fn new(coords: Vec<BigRational>) -> Self {
        WeightVec { coords }
    }

    pub fn zero(rank: usize) -> Self {
        WeightVec {
            coords: vec![BigRational::zero(); rank],
        }
    }

    /// Unit vector `α_{i+1}` (0-based index).
    pub fn alpha(rank: usize, i: usize) -> Self {
        let mut w = WeightVec::zero(rank);
        w.coords[i] = BigRational::one();
        w
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        WeightVec {
            coords: coords
                .iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect(),
        }
    }

    /// Build from numerator/denominator pairs, e.g. `&[(1, 2), (0, 1)]`.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        WeightVec {
            coords: coords
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BigRational::is_zero)
    }

    /// All α-coordinates integral, i.e. membership in the root lattice Q.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    /// Sum of the α-coordinates.
    pub fn height(&self) -> BigRational {
        self.coords
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Componentwise fractional part, each entry in `[0, 1)`.
    pub fn fract(&self) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().map(|c| c - c.floor()).collect(),
        }
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        assert_eq!(self.rank(), other.rank());
        WeightVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        assert_eq!(self.rank(), other.rank());
        WeightVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    /// Rendering in the α-basis, e.g. `1/2 α1 + 0 α2 + 1/2 α3`.
    pub fn alpha_string(&self) -> String {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{} α{}", c, i + 1))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Root-system data for one simple type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    id: RootSystemId,
    cartan: IntMatrix,
    simple_roots: Vec<WeightVec>,
    positive_roots: Vec<WeightVec>,
    pairing: QMatrix,
    fundamental_weights: Vec<WeightVec>,
    xi: WeightVec,
    rho: WeightVec,
}

/// Classical positive-root counts, used as a construction self-check.
fn expected_positive_count(id: RootSystemId) -> usize {
    let n = id.rank;
    match id.family {
        RootFamily::A => n * (n + 1) / 2,
        RootFamily::B | RootFamily::C => n * n,
        RootFamily::D => n * (n - 1),
        RootFamily::G => 6,
        RootFamily::F => 24,
        RootFamily::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
    }
}

fn cartan_matrix(id: RootSystemId) -> IntMatrix {
    let n = id.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bond = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match id.family {
        RootFamily::A => {
            for i in 0..n - 1 {
                bond(i, i + 1);
            }
        }
        RootFamily::B => {
            for i in 0..n - 1 {
                bond(i, i + 1);
            }
            // α_n short: ⟨α_{n−1}, α_n∨⟩ = −2.
            a[n - 1][n - 2] = -2;
        }
        RootFamily::C => {
            for i in 0..n - 1 {
                bond(i, i + 1);
            }
            // α_n long: ⟨α_n, α_{n−1}∨⟩ = −2.
            a[n - 2][n - 1] = -2;
        }
        RootFamily::D => {
            for i in 0..n.saturating_sub(3) {
                bond(i, i + 1);
            }
            bond(n - 3, n - 2);
            bond(n - 3, n - 1);
        }
        RootFamily::E => {
            // Chain 1-3-4-5-6-7-8 with node 2 hanging off node 4.
            let chain = [0usize, 2, 3, 4, 5, 6, 7];
            for w in chain[..n - 1].windows(2) {
                bond(w[0], w[1]);
            }
            bond(1, 3);
        }
        RootFamily::F => {
            bond(0, 1);
            bond(1, 2);
            bond(2, 3);
            // α3, α4 short: ⟨α_2, α_3∨⟩ = −2.
            a[2][1] = -2;
        }
        RootFamily::G => {
            // α1 short, α2 long: ⟨α_2, α_1∨⟩ = −3.
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    IntMatrix::from_i64_rows(&a)
}

/// Half squared lengths `dᵢ = (αᵢ, αᵢ)/2`, normalized so long roots have
/// squared length 2. The symmetrized pairing is `G = diag(d) · A`.
fn length_weights(id: RootSystemId) -> Vec<BigRational> {
    let n = id.rank;
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    match id.family {
        RootFamily::A | RootFamily::D | RootFamily::E => vec![one; n],
        RootFamily::B => {
            let mut d = vec![one; n];
            d[n - 1] = half;
            d
        }
        RootFamily::C => {
            let mut d = vec![half; n];
            d[n - 1] = one;
            d
        }
        RootFamily::F => vec![one.clone(), one, half.clone(), half],
        RootFamily::G => vec![BigRational::new(BigInt::one(), BigInt::from(3)), one],
    }
}

/// Construct the root system for `id`.
pub fn build_root_system(id: RootSystemId) -> Result<RootSystem> {
    if !id.is_valid() {
        let hint = match id.family {
            RootFamily::A => "A requires rank ≥ 1",
            RootFamily::B => "B requires rank ≥ 2",
            RootFamily::C => "C requires rank ≥ 2",
            RootFamily::D => "D requires rank ≥ 3",
            RootFamily::E => "E requires rank 6, 7, or 8",
            RootFamily::F => "F requires rank 4",
            RootFamily::G => "G requires rank 2",
        };
        return Err(Error::InvalidRootSystem {
            family: id.family.letter(),
            rank: id.rank,
            hint: hint.to_string(),
        });
    }
    let n = id.rank;
    let cartan = cartan_matrix(id);
    let lengths = length_weights(id);

    let mut pairing = QMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            pairing[(i, j)] = &lengths[i] * BigRational::from(cartan[(i, j)].clone());
        }
    }
    for i in 0..n {
        for j in 0..n {
            if pairing[(i, j)] != pairing[(j, i)] {
                return Err(Error::InvariantViolation(format!(
                    "pairing not symmetric for {id} at ({i},{j})"
                )));
            }
        }
    }

    let simple_roots: Vec<WeightVec> = (0..n).map(|i| WeightVec::alpha(n, i)).collect();

    let inv = QMatrix::from_int(&cartan)
        .inverse()
        .ok_or_else(|| Error::InvariantViolation(format!("singular Cartan matrix for {id}")))?;
    let fundamental_weights: Vec<WeightVec> = (0..n)
        .map(|i| WeightVec::new((0..n).map(|j| inv[(j, i)].clone()).collect()))
        .collect();

    let xi = WeightVec::new(vec![BigRational::one(); n]);
    let rho = fundamental_weights
        .iter()
        .fold(WeightVec::zero(n), |acc, w| acc.add(w));

    let mut rs = RootSystem {
        id,
        cartan,
        simple_roots,
        positive_roots: Vec::new(),
        pairing,
        fundamental_weights,
        xi,
        rho,
    };
    rs.positive_roots = rs.enumerate_positive_roots()?;
    if rs.positive_roots.len() != expected_positive_count(id) {
        return Err(Error::InvariantViolation(format!(
            "{id}: found {} positive roots, expected {}",
            rs.positive_roots.len(),
            expected_positive_count(id)
        )));
    }
    Ok(rs)
}

impl RootSystem {
    pub fn new(family: RootFamily, rank: usize) -> Result<Self> {
        build_root_system(RootSystemId::new(family, rank))
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[WeightVec] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[WeightVec] {
        &self.positive_roots
    }

    pub fn pairing_matrix(&self) -> &QMatrix {
        &self.pairing
    }

    pub fn fundamental_weights(&self) -> &[WeightVec] {
        &self.fundamental_weights
    }

    /// ξ, the sum of the simple roots.
    pub fn xi(&self) -> &WeightVec {
        &self.xi
    }

    /// ρ, the half-sum of positive roots (equals the sum of the fundamental
    /// weights).
    pub fn rho(&self) -> &WeightVec {
        &self.rho
    }

    /// Invariant symmetric form `(λ, μ)` in α-coordinates.
    pub fn pairing(&self, a: &WeightVec, b: &WeightVec) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if a.coords()[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &a.coords()[i] * &self.pairing[(i, j)] * &b.coords()[j];
            }
        }
        acc
    }

    /// `⟨λ, α_i∨⟩` for 0-based `i`.
    pub fn coroot_pairing(&self, lambda: &WeightVec, i: usize) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for j in 0..n {
            if lambda.coords()[j].is_zero() {
                continue;
            }
            acc += BigRational::from(self.cartan[(i, j)].clone()) * &lambda.coords()[j];
        }
        acc
    }

    /// Membership in the weight lattice P: all coroot pairings integral.
    pub fn in_weight_lattice(&self, lambda: &WeightVec) -> bool {
        (0..self.rank()).all(|i| self.coroot_pairing(lambda, i).denom().is_one())
    }

    /// Membership in the root lattice Q.
    pub fn in_root_lattice(&self, lambda: &WeightVec) -> bool {
        lambda.is_integral()
    }

    pub fn is_dominant(&self, lambda: &WeightVec) -> bool {
        (0..self.rank()).all(|i| !self.coroot_pairing(lambda, i).is_negative())
    }

    /// Simple reflection `s_i(λ) = λ − ⟨λ, α_i∨⟩ α_i`, with 1-based `i`.
    pub fn simple_reflection(&self, i: usize, lambda: &WeightVec) -> Result<WeightVec> {
        if i == 0 || i > self.rank() {
            return Err(Error::ReflectionIndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        if lambda.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: lambda.rank(),
            });
        }
        Ok(self.reflect(i - 1, lambda))
    }

    /// Internal 0-based reflection without validation.
    fn reflect(&self, i: usize, lambda: &WeightVec) -> WeightVec {
        let c = self.coroot_pairing(lambda, i);
        let mut coords = lambda.coords().to_vec();
        coords[i] -= c;
        WeightVec::new(coords)
    }

    /// Apply a word of 1-based reflection indices left to right:
    /// `replay([i, j], λ) = s_j(s_i(λ))`.
    pub fn replay_word(&self, word: &[usize], lambda: &WeightVec) -> Result<WeightVec> {
        let mut cur = lambda.clone();
        for &i in word {
            cur = self.simple_reflection(i, &cur)?;
        }
        Ok(cur)
    }

    /// Dominant representative of the Weyl orbit of `λ`, together with a word
    /// that replays from the representative back to `λ`.
    ///
    /// Greedy: while some `⟨λ, α_i∨⟩ < 0`, apply `s_i` for the smallest such
    /// `i`. The recorded reduction word, reversed, maps the dominant weight
    /// to the input under [`RootSystem::replay_word`].
    pub fn dominant_representative(&self, lambda: &WeightVec) -> (WeightVec, Vec<usize>) {
        let mut cur = lambda.clone();
        let mut reduction = Vec::new();
        loop {
            let neg = (0..self.rank()).find(|&i| self.coroot_pairing(&cur, i).is_negative());
            match neg {
                None => break,
                Some(i) => {
                    cur = self.reflect(i, &cur);
                    reduction.push(i + 1);
                }
            }
        }
        reduction.reverse();
        (cur, reduction)
    }

    /// Weyl orbit of `λ` with the default enumeration cap.
    pub fn weyl_orbit(&self, lambda: &WeightVec) -> Result<BTreeSet<WeightVec>> {
        self.weyl_orbit_capped(lambda, DEFAULT_ORBIT_CAP)
    }

    /// Weyl orbit of `λ`; errors if more than `cap` elements appear.
    pub fn weyl_orbit_capped(
        &self,
        lambda: &WeightVec,
        cap: usize,
    ) -> Result<BTreeSet<WeightVec>> {
        let mut orbit = BTreeSet::new();
        let mut queue = VecDeque::new();
        orbit.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                let r = self.reflect(i, &w);
                if !orbit.contains(&r) {
                    if orbit.len() >= cap {
                        return Err(Error::OrbitCapExceeded { cap });
                    }
                    orbit.insert(r.clone());
                    queue.push_back(r);
                }
            }
        }
        Ok(orbit)
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> BigInt {
        fn factorial(n: usize) -> BigInt {
            (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
        }
        let n = self.rank();
        match self.id.family {
            RootFamily::A => factorial(n + 1),
            RootFamily::B | RootFamily::C => factorial(n) * BigInt::from(2u64).pow(n as u32),
            RootFamily::D => factorial(n) * BigInt::from(2u64).pow(n as u32 - 1),
            RootFamily::G => BigInt::from(12),
            RootFamily::F => BigInt::from(1152),
            RootFamily::E => match n {
                6 => BigInt::from(51_840),
                7 => BigInt::from(2_903_040),
                _ => BigInt::from(696_729_600u64),
            },
        }
    }

    /// Coordinates of `λ` over the fundamental weights, i.e. the vector of
    /// coroot pairings.
    pub fn fundamental_coords(&self, lambda: &WeightVec) -> Vec<BigRational> {
        (0..self.rank())
            .map(|i| self.coroot_pairing(lambda, i))
            .collect()
    }

    /// Order of `s_i s_j` read off the Cartan matrix: 2, 3, 4 or 6.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        let prod = &self.cartan[(i, j)] * &self.cartan[(j, i)];
        if prod == BigInt::from(0) {
            2
        } else if prod == BigInt::from(1) {
            3
        } else if prod == BigInt::from(2) {
            4
        } else {
            6
        }
    }

    /// All roots closed under simple reflections, filtered to the positive
    /// ones, sorted by height then lexicographically.
    fn enumerate_positive_roots(&self) -> Result<Vec<WeightVec>> {
        let mut all: BTreeSet<WeightVec> = self.simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<WeightVec> = self.simple_roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.rank() {
                let gamma = self.reflect(i, &beta);
                if all.insert(gamma.clone()) {
                    queue.push_back(gamma);
                }
            }
        }
        let mut positive: Vec<WeightVec> = all
            .into_iter()
            .filter(|r| r.coords().iter().all(|c| !c.is_negative()))
            .collect();
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| a.coords().cmp(b.coords()))
        });
        Ok(positive)
    }
}
