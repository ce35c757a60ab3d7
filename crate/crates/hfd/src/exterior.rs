//! The exterior algebra over Z, its contraction action, and the standard
//! module `Lambda* H^* (x) Z[U, U^-1]`.
//!
//! Basis multi-indices are stored as bitmasks over `0..n`. The contraction
//! sign convention is left contraction: `i_{e_j}(l_S) = (-1)^{#{s in S : s < j}}
//! l_{S \ j}` when `j` is in `S`, extended by `i_{v ^ w} = i_v o i_w`.

use crate::grading::{grading, Grading};
use crate::hfmodel::{ModuleType, WindowModule};
use crate::intlinalg::{solve, IntMatrix, LinalgError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("vectors do not extend to a basis of H")]
    NotBasisExtendable,
    #[error("contraction hypothesis fails: wedge does not annihilate x")]
    HypothesisFails,
    #[error("no integral lift exists; the standard-module lifting property is violated")]
    NoLift,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A strictly increasing multi-index `S` inside `{1..n}`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    n: usize,
    mask: u32,
}

impl MultiIndex {
    pub fn new(n: usize, mask: u32) -> Self {
        debug_assert!(n <= 32 && mask < (1u64 << n) as u32 || mask == 0);
        MultiIndex { n, mask }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            debug_assert!(i < n);
            mask |= 1 << i;
        }
        MultiIndex { n, mask }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.n).filter(|i| self.mask & (1 << i) != 0).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask & (1 << i) != 0
    }
}

/// An element of `Lambda* Z^n` (or of its dual), with integer coefficients
/// indexed by multi-index bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    n: usize,
    coeffs: BTreeMap<u32, BigInt>,
}

impl ExtElement {
    pub fn zero(n: usize) -> Self {
        ExtElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(n: usize, indices: &[usize]) -> Self {
        let mut e = Self::zero(n);
        e.add_term(MultiIndex::from_indices(n, indices).mask(), BigInt::one());
        e
    }

    /// A degree-1 element with the given coordinates.
    pub fn vector(coords: &[BigInt]) -> Self {
        let mut e = Self::zero(coords.len());
        for (i, c) in coords.iter().enumerate() {
            e.add_term(1 << i, c.clone());
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> BigInt {
        self.coeffs.get(&mask).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &BigInt)> {
        let n = self.n;
        self.coeffs
            .iter()
            .map(move |(&mask, c)| (MultiIndex::new(n, mask), c))
    }

    fn add_term(&mut self, mask: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(mask).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn add(&self, other: &ExtElement) -> Result<ExtElement, ExteriorError> {
        if self.n != other.n {
            return Err(ExteriorError::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (&mask, c) in &other.coeffs {
            out.add_term(mask, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> ExtElement {
        let mut out = Self::zero(self.n);
        for (&mask, v) in &self.coeffs {
            out.add_term(mask, c * v);
        }
        out
    }
}

/// Sign of merging the sorted index sets `a` and `b` into sorted order;
/// zero if they intersect.
fn merge_sign(a: u32, b: u32) -> i8 {
    if a & b != 0 {
        return 0;
    }
    // Count inversions: pairs (i in a, j in b) with j < i.
    let mut swaps = 0u32;
    let mut bi = b;
    while bi != 0 {
        let j = bi.trailing_zeros();
        // Elements of a above j must move past j.
        swaps += (a >> (j + 1)).count_ones();
        bi &= bi - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn wedge(a: &ExtElement, b: &ExtElement) -> Result<ExtElement, ExteriorError> {
    if a.n() != b.n() {
        return Err(ExteriorError::RankMismatch(a.n(), b.n()));
    }
    let mut out = ExtElement::zero(a.n());
    for (&ma, ca) in &a.coeffs {
        for (&mb, cb) in &b.coeffs {
            let s = merge_sign(ma, mb);
            if s != 0 {
                out.add_term(ma | mb, ca * cb * BigInt::from(s));
            }
        }
    }
    Ok(out)
}

/// Contraction of a single basis index: `i_{e_j}`.
fn contract_index(j: usize, lam: &ExtElement) -> ExtElement {
    let mut out = ExtElement::zero(lam.n());
    let bit = 1u32 << j;
    for (&mask, c) in &lam.coeffs {
        if mask & bit != 0 {
            let below = (mask & (bit - 1)).count_ones();
            let sign = if below % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            out.add_term(mask & !bit, sign);
        }
    }
    out
}

/// Contraction `i_v(lam)` for arbitrary `v`, extended multiplicatively:
/// `i_{v ^ w} = i_v o i_w`.
pub fn contract(v: &ExtElement, lam: &ExtElement) -> Result<ExtElement, ExteriorError> {
    if v.n() != lam.n() {
        return Err(ExteriorError::RankMismatch(v.n(), lam.n()));
    }
    let mut out = ExtElement::zero(lam.n());
    for (&mv, cv) in &v.coeffs {
        // i_{e_{s1} ^ ... ^ e_{sk}} = i_{e_{s1}} o ... o i_{e_{sk}}: apply the
        // largest index first.
        let mut acc = lam.clone();
        let idx = MultiIndex::new(v.n(), mv).indices();
        for &j in idx.iter().rev() {
            acc = contract_index(j, &acc);
        }
        for (&mask, c) in &acc.coeffs {
            out.add_term(mask, cv * c);
        }
    }
    Ok(out)
}

/// Basis multi-indices of the standard module in a fixed grading, given the
/// parity of `g - sigma`: all `S` with `|S| = parity (mod 2)`, in ascending
/// bitmask order (the `U`-power is determined by `S` and the grading).
pub fn mst_basis(n: usize, parity: u8) -> Vec<u32> {
    let top = 1u32 << n;
    (0..top)
        .filter(|m| m.count_ones() as u8 % 2 == parity % 2)
        .collect()
}

/// Rank of the standard module in a grading of the given parity.
pub fn mst_rank(n: usize, parity: u8) -> usize {
    if n == 0 {
        if parity % 2 == 0 {
            1
        } else {
            0
        }
    } else {
        1 << (n - 1)
    }
}

fn parity_of(diff: &Grading) -> u8 {
    debug_assert!(diff.is_integer());
    (diff.numer().rem_euclid(2)) as u8
}

/// Contraction matrix of `e_i` from the grading of parity `p` to parity `p+1`.
fn mst_action_matrix(n: usize, i: usize, source_parity: u8) -> IntMatrix {
    let src = mst_basis(n, source_parity);
    let dst = mst_basis(n, (source_parity + 1) % 2);
    let dst_index: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut a = IntMatrix::zeros(dst.len(), src.len());
    let bit = 1u32 << i;
    for (col, &mask) in src.iter().enumerate() {
        if mask & bit != 0 {
            let below = (mask & (bit - 1)).count_ones();
            let row = dst_index[&(mask & !bit)];
            let sign = if below % 2 == 0 { 1 } else { -1 };
            a.set(row, col, BigInt::from(sign));
        }
    }
    a
}

/// Builds the standard module `M^st = Lambda* H^* (x) Z[U, U^-1]` restricted
/// to the window `[lo, hi]`, with grading offset `sigma`: the basis element
/// `l_S (x) U^m` sits in grading `|S| - 2m + sigma`.
pub fn build_mst(n: usize, sigma: Grading, lo: Grading, hi: Grading) -> WindowModule {
    assert!(
        (hi - lo).is_integer() && hi >= lo,
        "window endpoints must differ by an integer"
    );
    assert!((lo - sigma).is_integer(), "window must lie in sigma + Z");
    let size = ((hi - lo).numer() + 1) as usize;
    let ranks: Vec<usize> = (0..size)
        .map(|j| mst_rank(n, parity_of(&(lo + grading(j as i64) - sigma))))
        .collect();
    // U is the identity in the subset-indexed basis (it only shifts the
    // U-power, which the grading determines).
    let u: Vec<IntMatrix> = (2..size).map(|j| IntMatrix::identity(ranks[j])).collect();
    let a: Vec<Vec<IntMatrix>> = (0..n)
        .map(|i| {
            (1..size)
                .map(|j| mst_action_matrix(n, i, parity_of(&(lo + grading(j as i64) - sigma))))
                .collect()
        })
        .collect();
    WindowModule::new(n, ModuleType::Homological, sigma, lo, hi, ranks, u, a).unwrap()
}

/// Coordinate of `l_S (x) U^m` inside the per-grading basis used by
/// `build_mst` (the `U`-power is implied by the grading).
pub fn mst_coord(n: usize, sigma: Grading, g: Grading, mask: u32) -> usize {
    let p = parity_of(&(g - sigma));
    let basis = mst_basis(n, p);
    basis
        .iter()
        .position(|&m| m == mask)
        .expect("multi-index parity does not match grading")
}

/// Expands an exterior element into per-grading coordinates of `build_mst`.
pub fn mst_vector(n: usize, sigma: Grading, g: Grading, elt: &ExtElement) -> Vec<BigInt> {
    let p = parity_of(&(g - sigma));
    let basis = mst_basis(n, p);
    basis.iter().map(|&m| elt.coeff(m)).collect()
}

/// Lifting in the standard module: given basis-extendable `v_1, ..., v_k`
/// and `x` in grading `i` with `(v_1 ^ ... ^ v_k) . x = 0`, produces `x'` in
/// grading `i + k` with `(v_1 ^ ... ^ v_k) . x' = x`.
pub fn lift_in_mst(
    n: usize,
    sigma: Grading,
    x_grading: Grading,
    x: &ExtElement,
    vectors: &[Vec<BigInt>],
) -> Result<ExtElement, ExteriorError> {
    let k = vectors.len();
    // Basis-extendability: the vectors form a matrix with unit invariant factors.
    let vmat = IntMatrix::from_columns(n, vectors)?;
    let factors = crate::intlinalg::invariant_factors(&vmat);
    if factors.len() != k || factors.iter().any(|d| d.abs() != BigInt::one()) {
        return Err(ExteriorError::NotBasisExtendable);
    }
    let mut v = ExtElement::basis(n, &[]);
    for coords in vectors {
        v = wedge(&v, &ExtElement::vector(coords))?;
    }
    // Hypothesis: each vector annihilates x individually.
    for coords in vectors {
        if !contract(&ExtElement::vector(coords), x)?.is_zero() {
            return Err(ExteriorError::HypothesisFails);
        }
    }
    // Solve the contraction matrix from grading i+k to grading i.
    let src_parity = parity_of(&(x_grading + grading(k as i64) - sigma));
    let src = mst_basis(n, src_parity);
    let dst = mst_basis(n, (src_parity + (k % 2) as u8) % 2);
    let dst_index: BTreeMap<u32, usize> = dst.iter().enumerate().map(|(j, &m)| (m, j)).collect();
    let mut c = IntMatrix::zeros(dst.len(), src.len());
    for (col, &mask) in src.iter().enumerate() {
        let image = contract(&v, &basis_elt(n, mask))?;
        for (mi, coeff) in image.terms() {
            c.set(dst_index[&mi.mask()], col, coeff.clone());
        }
    }
    let rhs = mst_vector(n, sigma, x_grading, x);
    let sol = solve(&c, &rhs)?.ok_or(ExteriorError::NoLift)?;
    let mut out = ExtElement::zero(n);
    for (j, &mask) in src.iter().enumerate() {
        out.add_term(mask, sol[j].clone());
    }
    Ok(out)
}

fn basis_elt(n: usize, mask: u32) -> ExtElement {
    ExtElement::basis(n, &MultiIndex::new(n, mask).indices())
}
