//! Exact linear algebra over the integers.
//!
//! Everything downstream reduces to computations with finitely generated
//! subgroups of `Z^r`: Smith and Hermite normal forms, kernels, images,
//! intersections, saturations, and rank counting in subquotients. All
//! arithmetic uses arbitrary-precision integers; nothing here ever rounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector is not in the numerator subgroup")]
    NotInSubgroup,
    #[error("internal invariant violation: {0}")]
    InvariantViolation(String),
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            entries: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ambient: usize, columns: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(ambient, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != ambient {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column {} has length {}, ambient rank is {}",
                    j,
                    c.len(),
                    ambient
                )));
            }
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "hstack: {} rows vs {} rows",
                self.rows, other.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// col_dst += q * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(h, u)` with `self * u = h`, `u` unimodular. The nonzero columns
/// of `h` are in echelon form: pivot rows strictly increase, pivots are
/// positive, and in each pivot row the entries of earlier columns are reduced
/// into `[0, pivot)`. This is the canonical presentation of the column span,
/// so two subgroups are equal iff their forms are equal.
pub fn column_hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut next = 0usize;
    for r in 0..h.rows {
        if next == h.cols {
            break;
        }
        // Eliminate row r among columns next.. by repeated minimal-pivot reduction.
        loop {
            let mut pivot: Option<usize> = None;
            for j in next..h.cols {
                if !h.get(r, j).is_zero()
                    && pivot.map_or(true, |p| h.get(r, j).abs() < h.get(r, p).abs())
                {
                    pivot = Some(j);
                }
            }
            let Some(p) = pivot else { break };
            h.swap_cols(next, p);
            u.swap_cols(next, p);
            let mut done = true;
            for j in next + 1..h.cols {
                if h.get(r, j).is_zero() {
                    continue;
                }
                let q = -(h.get(r, j) / h.get(r, next));
                h.add_col_multiple(j, next, &q);
                u.add_col_multiple(j, next, &q);
                if !h.get(r, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, next).is_zero() {
            continue;
        }
        if h.get(r, next).is_negative() {
            h.negate_col(next);
            u.negate_col(next);
        }
        // Reduce this pivot row in all earlier columns.
        let d = h.get(r, next).clone();
        for j in 0..next {
            let e = h.get(r, j);
            let q = -e.div_floor(&d);
            h.add_col_multiple(j, next, &q);
            u.add_col_multiple(j, next, &q);
        }
        next += 1;
    }
    (h, u)
}

/// Rank of the column span.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = column_hermite(m);
    (0..h.cols)
        .take_while(|&j| (0..h.rows).any(|i| !h.get(i, j).is_zero()))
        .count()
}

/// Basis of the integer kernel `{x : m x = 0}` as columns.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = column_hermite(m);
    let rk = (0..h.cols)
        .take_while(|&j| (0..h.rows).any(|i| !h.get(i, j).is_zero()))
        .count();
    let cols: Vec<Vec<BigInt>> = (rk..u.cols).map(|j| u.column(j)).collect();
    IntMatrix::from_columns(m.cols, &cols).unwrap()
}

/// Smith normal form: `l * m * r = s` with `s` diagonal, `d1 | d2 | ...`,
/// and `l`, `r` unimodular.
pub struct Snf {
    pub s: IntMatrix,
    pub l: IntMatrix,
    pub r: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut s = m.clone();
    let mut l = IntMatrix::identity(m.rows);
    let mut r = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0usize;
    while t < n {
        // Minimal-absolute-value pivot in the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..s.rows {
            for j in t..s.cols {
                if !s.get(i, j).is_zero()
                    && pivot.map_or(true, |(pi, pj)| s.get(i, j).abs() < s.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(t, pi);
        l.swap_rows(t, pi);
        s.swap_cols(t, pj);
        r.swap_cols(t, pj);
        // Clear row and column t; restart if a remainder shrinks the pivot.
        let mut clean = true;
        for i in t + 1..s.rows {
            if !s.get(i, t).is_zero() {
                let q = -(s.get(i, t) / s.get(t, t));
                s.add_row_multiple(i, t, &q);
                l.add_row_multiple(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..s.cols {
            if !s.get(t, j).is_zero() {
                let q = -(s.get(t, j) / s.get(t, t));
                s.add_col_multiple(j, t, &q);
                r.add_col_multiple(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the rest of the submatrix by the pivot.
        let mut offender: Option<(usize, usize)> = None;
        'scan: for i in t + 1..s.rows {
            for j in t + 1..s.cols {
                if !(s.get(i, j) % s.get(t, t)).is_zero() {
                    offender = Some((i, j));
                    break 'scan;
                }
            }
        }
        if let Some((i, _)) = offender {
            // Fold row i into row t and re-reduce.
            s.add_row_multiple(t, i, &BigInt::one());
            l.add_row_multiple(t, i, &BigInt::one());
            continue;
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            l.negate_row(t);
        }
        t += 1;
    }
    Snf { s, l, r }
}

/// Invariant factors (the nonzero diagonal of the SNF).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let snf = smith_normal_form(m);
    (0..m.rows.min(m.cols))
        .map(|i| snf.s.get(i, i).clone())
        .filter(|d| !d.is_zero())
        .collect()
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::DimensionMismatch(format!(
            "determinant of {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in 0..n {
                let tmp = a.get(k, j).clone();
                let v = a.get(p, j).clone();
                a.set(k, j, v);
                a.set(p, j, tmp);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1).clone())
}

/// Solves `m x = b` over the integers, if possible.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch(format!(
            "rhs length {} vs {} rows",
            b.len(),
            m.rows
        )));
    }
    let snf = smith_normal_form(m);
    let c = snf.l.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); m.cols];
    for i in 0..m.rows {
        let d = if i < m.cols {
            snf.s.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !c[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, rem) = c[i].div_rem(&d);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(snf.r.mul_vec(&y)?))
}

/// A finitely generated subgroup of `Z^ambient_rank`, canonicalized by
/// column Hermite normal form. Equal subgroups compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupPresentation {
    ambient_rank: usize,
    gens: IntMatrix,
}

impl SubgroupPresentation {
    pub fn new(ambient_rank: usize, gens: IntMatrix) -> Result<Self, LinalgError> {
        if gens.rows() != ambient_rank {
            return Err(LinalgError::DimensionMismatch(format!(
                "generators live in Z^{}, ambient rank is {}",
                gens.rows(),
                ambient_rank
            )));
        }
        let (h, _) = column_hermite(&gens);
        let rk = (0..h.cols)
            .take_while(|&j| (0..h.rows).any(|i| !h.get(i, j).is_zero()))
            .count();
        let cols: Vec<Vec<BigInt>> = (0..rk).map(|j| h.column(j)).collect();
        Ok(SubgroupPresentation {
            ambient_rank,
            gens: IntMatrix::from_columns(ambient_rank, &cols)?,
        })
    }

    pub fn zero(ambient_rank: usize) -> Self {
        SubgroupPresentation {
            ambient_rank,
            gens: IntMatrix::zeros(ambient_rank, 0),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        SubgroupPresentation {
            ambient_rank,
            gens: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn from_columns(ambient_rank: usize, cols: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        Self::new(ambient_rank, IntMatrix::from_columns(ambient_rank, cols)?)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Canonical generator matrix (columns form a basis).
    pub fn gens(&self) -> &IntMatrix {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.cols() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank && self == &Self::full(self.ambient_rank)
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient_rank != other.ambient_rank {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient ranks differ: {} vs {}",
                self.ambient_rank, other.ambient_rank
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        Self::new(self.ambient_rank, self.gens.hstack(&other.gens)?)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        // x = A u = B v  <=>  [A | B] (u, -v) = 0
        let stacked = self.gens.hstack(&other.gens)?;
        let k = kernel(&stacked);
        let cols: Vec<Vec<BigInt>> = (0..k.cols())
            .map(|j| {
                let full = k.column(j);
                self.gens
                    .mul_vec(&full[..self.gens.cols()].to_vec())
                    .unwrap()
            })
            .collect();
        Self::from_columns(self.ambient_rank, &cols)
    }

    /// Image of this subgroup under a linear map given by its matrix.
    pub fn image_under(&self, map: &IntMatrix) -> Result<Self, LinalgError> {
        Self::new(map.rows(), map.mul(&self.gens)?)
    }

    /// Kernel of a map `Z^cols -> Z^rows` as a subgroup of the domain.
    pub fn kernel_of_map(map: &IntMatrix) -> Self {
        SubgroupPresentation::new(map.cols(), kernel(map)).unwrap()
    }

    /// Full preimage of this subgroup under `map : Z^d -> Z^ambient`,
    /// i.e. `{x : map x in self}`.
    pub fn preimage_under(&self, map: &IntMatrix) -> Result<Self, LinalgError> {
        if map.rows() != self.ambient_rank {
            return Err(LinalgError::DimensionMismatch(format!(
                "map has {} rows, ambient rank is {}",
                map.rows(),
                self.ambient_rank
            )));
        }
        // map x = gens c  <=>  [map | gens] (x, -c) = 0
        let stacked = map.hstack(&self.gens)?;
        let k = kernel(&stacked);
        let cols: Vec<Vec<BigInt>> = (0..k.cols())
            .map(|j| k.column(j)[..map.cols()].to_vec())
            .collect();
        Self::from_columns(map.cols(), &cols)
    }

    /// Vectors orthogonal to every generator (a subgroup of the dual).
    pub fn annihilator(&self) -> Self {
        Self::kernel_of_map(&self.gens.transpose())
    }

    /// Smallest primitive subgroup containing this one.
    pub fn saturate(&self) -> Self {
        // sat(V) = ker(ann(V)^T); the kernel of an integer matrix is primitive.
        Self::kernel_of_map(&self.annihilator().gens.transpose())
    }

    pub fn is_saturated(&self) -> bool {
        self == &self.saturate()
    }

    pub fn contains_vector(&self, x: &[BigInt]) -> Result<bool, LinalgError> {
        if x.len() != self.ambient_rank {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector length {} vs ambient rank {}",
                x.len(),
                self.ambient_rank
            )));
        }
        Ok(solve(&self.gens, x)?.is_some())
    }

    pub fn contains_subgroup(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        for j in 0..other.gens.cols() {
            if !self.contains_vector(&other.gens.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A subquotient numerator/denominator of `Z^ambient_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubquotientPresentation {
    ambient_rank: usize,
    numerator: SubgroupPresentation,
    denominator: SubgroupPresentation,
}

impl SubquotientPresentation {
    pub fn new(
        numerator: SubgroupPresentation,
        denominator: SubgroupPresentation,
    ) -> Result<Self, LinalgError> {
        if numerator.ambient_rank() != denominator.ambient_rank() {
            return Err(LinalgError::DimensionMismatch(format!(
                "numerator ambient {} vs denominator ambient {}",
                numerator.ambient_rank(),
                denominator.ambient_rank()
            )));
        }
        if !numerator.contains_subgroup(&denominator)? {
            return Err(LinalgError::InvariantViolation(
                "denominator is not contained in numerator".into(),
            ));
        }
        Ok(SubquotientPresentation {
            ambient_rank: numerator.ambient_rank(),
            numerator,
            denominator,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn numerator(&self) -> &SubgroupPresentation {
        &self.numerator
    }

    pub fn denominator(&self) -> &SubgroupPresentation {
        &self.denominator
    }

    /// Free rank of numerator/denominator.
    pub fn free_rank(&self) -> usize {
        self.numerator.rank() - self.denominator.rank()
    }

    /// Invariant factors of the torsion plus free part: computed by expressing
    /// the denominator in the numerator basis and taking the SNF.
    pub fn invariant_factors(&self) -> Result<Vec<BigInt>, LinalgError> {
        let mut coeffs = Vec::new();
        for j in 0..self.denominator.gens().cols() {
            let c = solve(self.numerator.gens(), &self.denominator.gens().column(j))?
                .ok_or(LinalgError::NotInSubgroup)?;
            coeffs.push(c);
        }
        let m = IntMatrix::from_columns(self.numerator.rank(), &coeffs)?;
        Ok(invariant_factors(&m))
    }

    /// True iff the class of `x` has infinite order in numerator/denominator.
    pub fn nontorsion_class(&self, x: &[BigInt]) -> Result<bool, LinalgError> {
        if !self.numerator.contains_vector(x)? {
            return Err(LinalgError::NotInSubgroup);
        }
        let with_x = self.denominator.sum(&SubgroupPresentation::from_columns(
            self.ambient_rank,
            &[x.to_vec()],
        )?)?;
        Ok(with_x.rank() > self.denominator.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(rows, cols, e)
    }

    fn check_snf(a: &IntMatrix) -> Snf {
        let snf = smith_normal_form(a);
        assert_eq!(snf.l.mul(a).unwrap().mul(&snf.r).unwrap(), snf.s);
        assert!(snf.s.is_diagonal());
        let n = a.rows().min(a.cols());
        for i in 0..n.saturating_sub(1) {
            let d = snf.s.get(i, i);
            let e = snf.s.get(i + 1, i + 1);
            if !d.is_zero() {
                assert!((e % d).is_zero(), "divisibility chain broken");
            } else {
                assert!(e.is_zero());
            }
        }
        // l and r unimodular: |det| = 1 via SNF of themselves.
        for u in [&snf.l, &snf.r] {
            let f = invariant_factors(u);
            assert!(f.iter().all(|d| d == &BigInt::one()));
            assert_eq!(f.len(), u.rows());
        }
        snf
    }

    #[test]
    fn snf_identity() {
        let snf = check_snf(&IntMatrix::identity(2));
        assert_eq!(snf.s, IntMatrix::identity(2));
    }

    #[test]
    fn snf_2468() {
        // Oracle: |det| = |2*8 - 4*6| = 8 and gcd of entries is 2, so SNF is diag(2, 4).
        let snf = check_snf(&m(2, 2, &[2, 4, 6, 8]));
        assert_eq!(snf.s, m(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn snf_zero() {
        let snf = check_snf(&IntMatrix::zeros(2, 3));
        assert!(snf.s.is_zero());
    }

    #[test]
    fn snf_random_shapes() {
        // Deterministic pseudo-random entries; verify the defining identities.
        let mut x: i64 = 17;
        for (rows, cols) in [(3, 3), (2, 4), (4, 2), (3, 5), (5, 3)] {
            let entries: Vec<i64> = (0..rows * cols)
                .map(|_| {
                    x = x
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (x >> 33) % 20 - 10
                })
                .collect();
            check_snf(&m(rows, cols, &entries));
        }
    }

    #[test]
    fn saturate_examples() {
        let v = SubgroupPresentation::from_columns(2, &[vec![BigInt::from(2), BigInt::from(0)]])
            .unwrap();
        let sat = v.saturate();
        assert_eq!(
            sat,
            SubgroupPresentation::from_columns(2, &[vec![BigInt::from(1), BigInt::from(0)]])
                .unwrap()
        );
        assert_eq!(sat.saturate(), sat);
        assert_eq!(sat.rank(), v.rank());
    }

    #[test]
    fn intersect_axes() {
        let e1 = SubgroupPresentation::from_columns(2, &[vec![BigInt::from(1), BigInt::from(0)]])
            .unwrap();
        let e2 = SubgroupPresentation::from_columns(2, &[vec![BigInt::from(0), BigInt::from(1)]])
            .unwrap();
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_sum_map() {
        // ker [1 1] : Z^2 -> Z is generated by (1, -1).
        let k = SubgroupPresentation::kernel_of_map(&m(1, 2, &[1, 1]));
        assert_eq!(k.rank(), 1);
        let g = k.gens().column(0);
        assert_eq!(&g[0] + &g[1], BigInt::zero());
        assert_eq!(g[0].abs(), BigInt::one());
        // SNF oracle: rank of the map is 1, so the kernel has rank 2 - 1 = 1.
        assert_eq!(rank(&m(1, 2, &[1, 1])), 1);
    }

    #[test]
    fn nontorsion_class_cases() {
        let full = SubgroupPresentation::full(2);
        let den2 = SubgroupPresentation::from_columns(2, &[vec![BigInt::from(0), BigInt::from(2)]])
            .unwrap();
        let q = SubquotientPresentation::new(full.clone(), den2).unwrap();
        assert!(q
            .nontorsion_class(&[BigInt::from(1), BigInt::from(0)])
            .unwrap());
        assert!(!q
            .nontorsion_class(&[BigInt::from(0), BigInt::from(1)])
            .unwrap());

        let den11 =
            SubgroupPresentation::from_columns(2, &[vec![BigInt::from(1), BigInt::from(1)]])
                .unwrap();
        let q2 = SubquotientPresentation::new(full, den11).unwrap();
        // (3,3) lies in the saturation of the denominator.
        assert!(!q2
            .nontorsion_class(&[BigInt::from(3), BigInt::from(3)])
            .unwrap());
    }

    #[test]
    fn nontorsion_membership_error() {
        let num = SubgroupPresentation::from_columns(2, &[vec![BigInt::from(2), BigInt::from(0)]])
            .unwrap();
        let q = SubquotientPresentation::new(num, SubgroupPresentation::zero(2)).unwrap();
        assert_eq!(
            q.nontorsion_class(&[BigInt::from(1), BigInt::from(0)]),
            Err(LinalgError::NotInSubgroup)
        );
    }

    #[test]
    fn hermite_is_canonical() {
        // Same subgroup from different generators canonicalizes identically.
        let a = SubgroupPresentation::new(2, m(2, 2, &[1, 2, 1, 3])).unwrap();
        let b = SubgroupPresentation::new(2, m(2, 3, &[3, 2, 1, 4, 3, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, SubgroupPresentation::full(2));
    }

    #[test]
    fn solve_linear_system() {
        let a = m(2, 2, &[2, 0, 0, 3]);
        let sol = solve(&a, &[BigInt::from(4), BigInt::from(9)])
            .unwrap()
            .unwrap();
        assert_eq!(sol, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve(&a, &[BigInt::from(1), BigInt::from(0)])
            .unwrap()
            .is_none());
    }
}
