//! Exact integer and rational linear algebra.
//!
//! Provides Smith normal form over arbitrary-precision integers, bases for
//! lattices given by rational generating rows, finite quotients of nested
//! lattices as invariant-factor lists, and saturated intersections of a
//! lattice with a rational subspace. All arithmetic is exact; there are no
//! floating-point code paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::Error;
use crate::rootsys::WeightVec;
use crate::Result;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in IntMatrix::from_rows"
        );
        IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self[(i, j)].is_zero())
        })
    }

    /// Diagonal entries, up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in IntMatrix::mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = c * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = c * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Smith normal form `U * M * V = D`.
///
/// `U` and `V` are unimodular, `D` is diagonal with nonnegative entries
/// satisfying the divisibility chain `d1 | d2 | ...`. The inverses of the
/// transforms are accumulated alongside since several lattice routines need
/// them.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero diagonal entries (the elementary divisors), in chain order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }
}

/// Smallest-absolute-value nonzero entry of the trailing submatrix, scanned
/// row-major so ties resolve deterministically.
fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            if m[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some(b) => {
                    if m[(i, j)].abs() < m[b].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Compute the Smith normal form of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    for k in 0..rows.min(cols) {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&d, k) else {
                break 'pivot;
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            u_inv.swap_cols(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = &d[(i, k)] / &d[(k, k)];
                d.add_row_multiple(i, k, &(-&q));
                u.add_row_multiple(i, k, &(-&q));
                u_inv.add_col_multiple(k, i, &q);
                if !d[(i, k)].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = &d[(k, j)] / &d[(k, k)];
                d.add_col_multiple(j, k, &(-&q));
                v.add_col_multiple(j, k, &(-&q));
                v_inv.add_row_multiple(k, j, &q);
                if !d[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Pivot must divide the rest of the submatrix for the chain
            // d1 | d2 | ... to come out; drag an offending row up and redo.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                        d.add_row_multiple(k, i, &BigInt::one());
                        u.add_row_multiple(k, i, &BigInt::one());
                        u_inv.add_col_multiple(i, k, &(-BigInt::one()));
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
            for i in 0..rows {
                let neg = -u_inv[(i, k)].clone();
                u_inv[(i, k)] = neg;
            }
        }
    }

    Snf {
        u,
        d,
        v,
        u_inv,
        v_inv,
    }
}

/// Dense matrix of arbitrary-precision rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in QMatrix::from_rows"
        );
        QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Empty matrix with zero rows but a definite column count.
    pub fn empty(cols: usize) -> Self {
        QMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        QMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows())
                .flat_map(|i| m.row(i).iter().map(|x| BigRational::from(x.clone())))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigRational> {
        self.row(i).to_vec()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in QMatrix::mul");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Common denominator clearing: returns `(A, s)` with `self = A / s`.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let mut scale = BigInt::one();
        for x in &self.data {
            scale = scale.lcm(x.denom());
        }
        let mut a = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &self[(i, j)];
                a[(i, j)] = x.numer() * (&scale / x.denom());
            }
        }
        (a, scale)
    }

    /// Gaussian elimination to reduced row echelon form, in place on a copy.
    /// Returns the reduced matrix and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &f * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve `x * self = target` for a row vector `x`, if one exists.
    pub fn solve_left(&self, target: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(target.len(), self.cols);
        // Transposed system: selfᵀ xᵀ = targetᵀ, solved by elimination on
        // the augmented matrix.
        let mut aug = QMatrix::zero(self.cols, self.rows + 1);
        for i in 0..self.cols {
            for j in 0..self.rows {
                aug[(i, j)] = self[(j, i)].clone();
            }
            aug[(i, self.rows)] = target[i].clone();
        }
        let (red, pivots) = aug.rref();
        // Inconsistent if a pivot lands in the augmented column.
        if pivots.contains(&self.rows) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.rows];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red[(r, self.rows)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel `{z : self * z = 0}`, as column vectors.
    pub fn right_kernel(&self) -> Vec<Vec<BigRational>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut z = vec![BigRational::zero(); self.cols];
            z[fc] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                z[pc] = -red[(r, fc)].clone();
            }
            basis.push(z);
        }
        basis
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// A nested lattice pair `P ⊃ Q` of full rank in α-coordinates: `basis_q`
/// rows generate the root lattice (the integer vectors), `basis_p` rows the
/// weight lattice containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePair {
    ambient_dim: usize,
    basis_p: QMatrix,
    basis_q: QMatrix,
}

impl LatticePair {
    /// Validate containment (`Q ⊆ P`) and full rank of both bases.
    pub fn new(basis_p: QMatrix, basis_q: QMatrix) -> Result<LatticePair> {
        let dim = basis_p.cols();
        if basis_q.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: basis_q.cols(),
            });
        }
        let p = row_lattice_basis(&basis_p);
        let q = row_lattice_basis(&basis_q);
        if p.rows() != dim || q.rows() != dim {
            return Err(Error::LatticeRankMismatch {
                sub: q.rows(),
                sup: p.rows(),
            });
        }
        // Containment check is exactly what the quotient computes.
        quotient_group(&q, &p)?;
        Ok(LatticePair {
            ambient_dim: dim,
            basis_p: p,
            basis_q: q,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis_p(&self) -> &QMatrix {
        &self.basis_p
    }

    pub fn basis_q(&self) -> &QMatrix {
        &self.basis_q
    }

    /// Invariant factors of `P/Q`.
    pub fn quotient(&self) -> Result<FiniteAbelianGroup> {
        quotient_group(&self.basis_q, &self.basis_p)
    }

    /// The weight-over-root lattice pair of a root system, with the basis of
    /// `P` canonicalized once by denominator clearing and Smith reduction.
    pub fn from_root_system(rs: &crate::rootsys::RootSystem) -> Result<LatticePair> {
        let rows: Vec<Vec<BigRational>> = rs
            .fundamental_weights()
            .iter()
            .chain(rs.simple_roots())
            .map(|w| w.coords().to_vec())
            .collect();
        LatticePair::new(
            QMatrix::from_rows(rows),
            QMatrix::identity(rs.rank()),
        )
    }
}

/// Finite abelian group in invariant-factor form: `Z/d1 x Z/d2 x ...` with
/// `d1 | d2 | ...` and every `di >= 2`. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Build from a diagonal of elementary divisors; entries equal to 1 are
    /// dropped, and the divisibility chain is checked.
    pub fn from_elementary_divisors(divisors: &[BigInt]) -> Result<Self> {
        let factors: Vec<BigInt> = divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        for d in &factors {
            if d.is_zero() || d.is_negative() {
                return Err(Error::InvariantViolation(format!(
                    "nonpositive elementary divisor {d} in finite group"
                )));
            }
        }
        for w in factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "invariant factors {} and {} violate the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(FiniteAbelianGroup {
            invariant_factors: factors,
        })
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup {
                invariant_factors: vec![BigInt::from(n)],
            }
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "{{1}}");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Basis of the lattice generated by the rows of `generators`.
///
/// Denominators are cleared to a common integer scale, the integer matrix is
/// put in Smith normal form, and the nonzero rows of `D * V⁻¹ / scale` come
/// back out. The result is deterministic for a given generating list.
pub fn row_lattice_basis(generators: &QMatrix) -> QMatrix {
    if generators.rows() == 0 {
        return QMatrix::empty(generators.cols());
    }
    let (a, scale) = generators.clear_denominators();
    let snf = smith_normal_form(&a);
    let rank = snf.rank();
    let scale_rat = BigRational::from(scale);
    let mut rows = Vec::with_capacity(rank);
    for i in 0..rank {
        let d = BigRational::from(snf.d[(i, i)].clone());
        let row: Vec<BigRational> = (0..generators.cols())
            .map(|j| &d * BigRational::from(snf.v_inv[(i, j)].clone()) / &scale_rat)
            .collect();
        rows.push(row);
    }
    QMatrix::from_rows(rows)
}

/// Invariant factors of `sup-lattice / sub-lattice`, where both lattices are
/// given by generating rows and `sub ⊆ sup` with equal rank.
pub fn quotient_group(sub: &QMatrix, sup: &QMatrix) -> Result<FiniteAbelianGroup> {
    let sub_basis = row_lattice_basis(sub);
    let sup_basis = row_lattice_basis(sup);
    if sub_basis.rows() != sup_basis.rows() {
        return Err(Error::LatticeRankMismatch {
            sub: sub_basis.rows(),
            sup: sup_basis.rows(),
        });
    }
    let k = sub_basis.rows();
    if k == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    // Express each sub-basis row over the sup basis; coordinates must be
    // integers for containment.
    let mut coords = IntMatrix::zero(k, k);
    for i in 0..k {
        let x = sup_basis
            .solve_left(sub_basis.row(i))
            .ok_or(Error::LatticeNotContained { row: i })?;
        for (j, c) in x.iter().enumerate() {
            if !c.denom().is_one() {
                return Err(Error::LatticeNotContained { row: i });
            }
            coords[(i, j)] = c.numer().clone();
        }
    }
    let snf = smith_normal_form(&coords);
    let diag = snf.d.diagonal();
    if diag.iter().any(BigInt::is_zero) {
        return Err(Error::LatticeRankMismatch {
            sub: snf.rank(),
            sup: k,
        });
    }
    FiniteAbelianGroup::from_elementary_divisors(&diag)
}

/// Basis of `{v in lattice : v in span(subspace rows)}`, saturated inside the
/// lattice (the quotient of the true intersection by the returned rows is
/// trivial).
pub fn lattice_subspace_intersection(lattice_basis: &QMatrix, subspace: &QMatrix) -> QMatrix {
    let basis = row_lattice_basis(lattice_basis);
    let r = basis.rows();
    let n = basis.cols();
    if r == 0 {
        return QMatrix::empty(n);
    }
    let kernel = subspace.right_kernel();
    if kernel.is_empty() {
        // Subspace is everything; the whole lattice qualifies.
        return basis;
    }
    // v = x·B lies in the row span of S exactly when v annihilates the right
    // kernel of S, i.e. x·(B·Z) = 0.
    let m = kernel.len();
    let mut bz = QMatrix::zero(r, m);
    for i in 0..r {
        for (jm, z) in kernel.iter().enumerate() {
            let mut acc = BigRational::zero();
            for j in 0..n {
                acc += &basis[(i, j)] * &z[j];
            }
            bz[(i, jm)] = acc;
        }
    }
    let (k_int, _scale) = bz.clear_denominators();
    let snf = smith_normal_form(&k_int);
    let rank = snf.rank();
    // Rows of U past the rank are a basis of the saturated left kernel.
    let mut rows = Vec::new();
    for i in rank..r {
        let row: Vec<BigRational> = (0..n)
            .map(|j| {
                let mut acc = BigRational::zero();
                for t in 0..r {
                    acc += BigRational::from(snf.u[(i, t)].clone()) * &basis[(t, j)];
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    if rows.is_empty() {
        QMatrix::empty(n)
    } else {
        QMatrix::from_rows(rows)
    }
}

/// Coefficients of `v` over a linearly independent spanning set.
pub fn express_in_basis(v: &WeightVec, basis: &[WeightVec]) -> Result<Vec<BigRational>> {
    if basis.is_empty() {
        return Err(Error::OutsideSpan {
            vector: v.to_string(),
        });
    }
    let dim = basis[0].coords().len();
    let m = QMatrix::from_rows(basis.iter().map(|b| b.coords().to_vec()).collect());
    if m.rank() != basis.len() {
        return Err(Error::NotLinearlyIndependent);
    }
    if v.coords().len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.coords().len(),
        });
    }
    m.solve_left(v.coords()).ok_or(Error::OutsideSpan {
        vector: v.to_string(),
    })
}

/// Reduce an integer vector to its primitive form (divide by the gcd of the
/// entries, keeping the direction).
pub fn primitive_vector(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, RootFamily, RootSystemId};
    use proptest::prelude::*;

    fn int(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn rat(rows: &[&[(i64, i64)]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                        .collect()
                })
                .collect(),
        )
    }

    fn check_snf(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        let umv = snf.u.mul(m).mul(&snf.v);
        assert_eq!(umv, snf.d, "U·M·V = D failed");
        assert!(snf.d.is_diagonal());
        assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(m.cols()));
        let diag = snf.d.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
            } else {
                assert!(w[1].is_zero(), "zero before nonzero on diagonal");
            }
        }
        for d in &diag {
            assert!(!d.is_negative());
        }
    }

    #[test]
    fn snf_of_identity_is_identity() {
        let m = IntMatrix::identity(4);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IntMatrix::identity(4));
        check_snf(&m);
    }

    #[test]
    fn snf_of_cartan_a3() {
        let a3 = build_root_system(RootSystemId::new(RootFamily::A, 3)).unwrap();
        let snf = smith_normal_form(a3.cartan());
        let diag: Vec<i64> = snf
            .d
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(diag, vec![1, 1, 4]);
        check_snf(a3.cartan());
    }

    #[test]
    fn snf_of_cartan_d4() {
        let d4 = build_root_system(RootSystemId::new(RootFamily::D, 4)).unwrap();
        let snf = smith_normal_form(d4.cartan());
        let diag: Vec<i64> = snf
            .d
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(diag, vec![1, 1, 2, 2]);
    }

    #[test]
    fn snf_handles_zero_and_rectangular() {
        check_snf(&IntMatrix::zero(3, 5));
        check_snf(&int(&[vec![0, 0, 6], vec![4, 0, 0]]));
        check_snf(&int(&[vec![2], vec![3], vec![5]]));
    }

    proptest! {
        #[test]
        fn snf_round_trip_random(rows in 1usize..=8, cols in 1usize..=8, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-20i64..=20)).collect())
                .collect();
            check_snf(&int(&data));
        }

        #[test]
        fn quotient_order_matches_det(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1usize..=4);
            // Random integer matrix with nonzero det gives a finite-index
            // sublattice of Z^n.
            let data: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-6i64..=6)).collect())
                .collect();
            let m = int(&data);
            let snf = smith_normal_form(&m);
            let det: BigInt = snf.d.diagonal().iter().product();
            prop_assume!(!det.is_zero());
            let sub = QMatrix::from_int(&m);
            let sup = QMatrix::identity(n);
            let group = quotient_group(&sub, &sup).unwrap();
            prop_assert_eq!(group.order(), det);
        }
    }

    #[test]
    fn quotient_of_equal_lattices_is_trivial() {
        let l = rat(&[&[(2, 1), (1, 1)], &[(0, 1), (3, 1)]]);
        let g = quotient_group(&l, &l).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn quotient_p_mod_q_for_a3_is_z4() {
        let a3 = build_root_system(RootSystemId::new(RootFamily::A, 3)).unwrap();
        let p = QMatrix::from_rows(
            a3.fundamental_weights()
                .iter()
                .map(|w| w.coords().to_vec())
                .collect(),
        );
        let q = QMatrix::identity(3);
        let g = quotient_group(&q, &p).unwrap();
        assert_eq!(g.to_string(), "Z/4");
    }

    #[test]
    fn quotient_p_mod_q_for_d4_is_z2_z2() {
        let d4 = build_root_system(RootSystemId::new(RootFamily::D, 4)).unwrap();
        let p = QMatrix::from_rows(
            d4.fundamental_weights()
                .iter()
                .map(|w| w.coords().to_vec())
                .collect(),
        );
        let q = QMatrix::identity(4);
        let g = quotient_group(&q, &p).unwrap();
        assert_eq!(g.to_string(), "Z/2 x Z/2");
    }

    #[test]
    fn quotient_rejects_non_contained_sub() {
        let sub = rat(&[&[(1, 2), (0, 1)], &[(0, 1), (1, 1)]]);
        let sup = QMatrix::identity(2);
        assert!(matches!(
            quotient_group(&sub, &sup),
            Err(Error::LatticeNotContained { .. })
        ));
    }

    #[test]
    fn quotient_rejects_rank_mismatch() {
        let sub = rat(&[&[(1, 1), (0, 1)]]);
        let sup = QMatrix::identity(2);
        assert!(matches!(
            quotient_group(&sub, &sup),
            Err(Error::LatticeRankMismatch { .. })
        ));
    }

    #[test]
    fn intersection_with_axis() {
        let z2 = QMatrix::identity(2);
        let axis = rat(&[&[(1, 1), (0, 1)]]);
        let got = lattice_subspace_intersection(&z2, &axis);
        assert_eq!(got.rows(), 1);
        assert_eq!(got.row_vec(0), vec![BigRational::one(), BigRational::zero()]);
    }

    #[test]
    fn intersection_with_zero_subspace_is_empty() {
        let z3 = QMatrix::identity(3);
        let zero = QMatrix::zero(1, 3);
        let got = lattice_subspace_intersection(&z3, &zero);
        assert_eq!(got.rows(), 0);
    }

    #[test]
    fn intersection_of_a3_weight_lattice_with_hyperplane() {
        // P(A3) ∩ {a₂ = 0} must be spanned by ½(α1+α3) and α1 (index-2
        // refinement of the obvious α1, α3 lattice).
        let a3 = build_root_system(RootSystemId::new(RootFamily::A, 3)).unwrap();
        let p = QMatrix::from_rows(
            a3.fundamental_weights()
                .iter()
                .map(|w| w.coords().to_vec())
                .collect(),
        );
        let hyper = rat(&[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (0, 1), (1, 1)]]);
        let got = lattice_subspace_intersection(&p, &hyper);
        assert_eq!(got.rows(), 2);
        // Oracle: enumerate P-points with denominator dividing 4, coordinates
        // in [-2, 2], a₂ = 0; the lattice they generate equals `got`.
        let mut pts = Vec::new();
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        for n1 in -8i64..=8 {
            for n3 in -8i64..=8 {
                let w = crate::rootsys::WeightVec::new(vec![
                    &quarter * BigRational::from(BigInt::from(n1)),
                    BigRational::zero(),
                    &quarter * BigRational::from(BigInt::from(n3)),
                ]);
                if a3.in_weight_lattice(&w) {
                    pts.push(w.coords().to_vec());
                }
            }
        }
        let oracle = row_lattice_basis(&QMatrix::from_rows(pts));
        let g1 = quotient_group(&got, &oracle).unwrap();
        let g2 = quotient_group(&oracle, &got).unwrap();
        assert!(g1.is_trivial() && g2.is_trivial());
        // Membership spot checks.
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for v in [
            vec![BigRational::one(), BigRational::zero(), BigRational::zero()],
            vec![BigRational::zero(), BigRational::zero(), BigRational::one()],
            vec![half.clone(), BigRational::zero(), half],
        ] {
            let x = got.solve_left(&v).unwrap();
            assert!(x.iter().all(|c| c.denom().is_one()));
        }
    }

    #[test]
    fn intersection_is_saturated() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.gen_range(2usize..=5);
            let lat = QMatrix::identity(n);
            let k = rng.gen_range(1usize..n);
            let rows: Vec<Vec<BigRational>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            BigRational::new(
                                BigInt::from(rng.gen_range(-4i64..=4)),
                                BigInt::from(rng.gen_range(1i64..=3)),
                            )
                        })
                        .collect()
                })
                .collect();
            let sub = QMatrix::from_rows(rows);
            let got = lattice_subspace_intersection(&lat, &sub);
            if got.rows() == 0 {
                continue;
            }
            // Every row is in the lattice and in the subspace.
            for i in 0..got.rows() {
                assert!(got.row(i).iter().all(|c| c.denom().is_one()));
                let x = sub.solve_left(got.row(i));
                assert!(x.is_some());
            }
            // Saturation: a primitive sublattice of Z^n has a coordinate
            // matrix with all elementary divisors 1.
            let (coord, scale) = got.clear_denominators();
            assert!(scale.is_one());
            let snf = smith_normal_form(&coord);
            assert!(snf.elementary_divisors().iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn express_in_basis_examples_from_sl4() {
        let a3 = build_root_system(RootSystemId::new(RootFamily::A, 3)).unwrap();
        let table = crate::cosets::enumerate_cosets(&a3).unwrap();
        let basis: Vec<crate::rootsys::WeightVec> = table
            .records()
            .iter()
            .filter(|r| !r.lambda_r.is_zero())
            .map(|r| r.lambda_r.clone())
            .collect();
        assert_eq!(basis.len(), 3);
        // basis sorted lexicographically: λ_{3,R} = ¼(1,2,3), λ_{1,R} = ¼(3,2,1),
        // λ_{2,R} = ½(1,0,1); reorder to (λ_{1,R}, λ_{2,R}, λ_{3,R}).
        let l1 = crate::rootsys::WeightVec::from_ratios(&[(3, 4), (2, 4), (1, 4)]);
        let l2 = crate::rootsys::WeightVec::from_ratios(&[(1, 2), (0, 1), (1, 2)]);
        let l3 = crate::rootsys::WeightVec::from_ratios(&[(1, 4), (2, 4), (3, 4)]);
        assert!(basis.contains(&l1) && basis.contains(&l2) && basis.contains(&l3));
        let ordered = vec![l1, l2, l3];
        let expect = [
            (crate::rootsys::WeightVec::from_i64(&[1, 0, 0]), [1i64, 1, -1]),
            (crate::rootsys::WeightVec::from_i64(&[0, 1, 0]), [1, -2, 1]),
            (crate::rootsys::WeightVec::from_i64(&[0, 0, 1]), [-1, 1, 1]),
        ];
        for (alpha, coeffs) in expect {
            let got = express_in_basis(&alpha, &ordered).unwrap();
            let want: Vec<BigRational> = coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn express_in_singleton_basis() {
        let v = crate::rootsys::WeightVec::from_ratios(&[(5, 3), (1, 2)]);
        let got = express_in_basis(&v, std::slice::from_ref(&v)).unwrap();
        assert_eq!(got, vec![BigRational::one()]);
    }

    #[test]
    fn express_rejects_outside_span() {
        let v = crate::rootsys::WeightVec::from_i64(&[0, 1]);
        let basis = [crate::rootsys::WeightVec::from_i64(&[1, 0])];
        assert!(matches!(
            express_in_basis(&v, &basis),
            Err(Error::OutsideSpan { .. })
        ));
    }

    #[test]
    fn group_rendering() {
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "{1}");
        assert_eq!(FiniteAbelianGroup::cyclic(4).to_string(), "Z/4");
        let g = FiniteAbelianGroup::from_elementary_divisors(&[
            BigInt::one(),
            BigInt::from(2),
            BigInt::from(2),
        ])
        .unwrap();
        assert_eq!(g.to_string(), "Z/2 x Z/2");
        assert_eq!(g.order(), BigInt::from(4));
    }

    #[test]
    fn lattice_pair_validates_and_quotients() {
        let a3 = build_root_system(RootSystemId::new(RootFamily::A, 3)).unwrap();
        let pair = LatticePair::from_root_system(&a3).unwrap();
        assert_eq!(pair.ambient_dim(), 3);
        assert_eq!(pair.quotient().unwrap().to_string(), "Z/4");
        // Q ⊄ P fails: swap the roles.
        let err = LatticePair::new(QMatrix::identity(3), pair.basis_p().clone());
        assert!(err.is_err());
    }

    #[test]
    fn primitive_vector_reduces_gcd() {
        let v: Vec<BigInt> = [6, -4, 10].iter().map(|&x| BigInt::from(x)).collect();
        let p = primitive_vector(&v);
        let want: Vec<BigInt> = [3, -2, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(p, want);
    }
}
