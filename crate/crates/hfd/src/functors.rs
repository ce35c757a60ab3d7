//! The sub/quotient functors `K_V` and `Q^V` on window modules, their
//! composites, and enumeration of saturated subspaces of `H = Z^n`.

use crate::grading::{grading, Grading};
use crate::hfmodel::{ModelError, ModuleType, WindowModule};
use crate::intlinalg::{
    column_hermite, invariant_factors, IntMatrix, SubgroupPresentation, SubquotientPresentation,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A subspace `V <= H = Z^n`, stored as a canonical presentation of the
/// subgroup it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    span: SubgroupPresentation,
}

impl Subspace {
    pub fn new(n: usize, basis: &[Vec<BigInt>]) -> Result<Self, ModelError> {
        Ok(Subspace {
            span: SubgroupPresentation::from_columns(n, basis)?,
        })
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            span: SubgroupPresentation::zero(n),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            span: SubgroupPresentation::full(n),
        }
    }

    pub fn from_i64(n: usize, basis: &[Vec<i64>]) -> Result<Self, ModelError> {
        let cols: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Subspace::new(n, &cols)
    }

    pub fn n(&self) -> usize {
        self.span.ambient_rank()
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn span(&self) -> &SubgroupPresentation {
        &self.span
    }

    pub fn is_saturated(&self) -> bool {
        self.span.is_saturated()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.span.gens().cols())
            .map(|j| self.span.gens().column(j))
            .collect()
    }

    /// A basis of a direct complement of the saturation of `V` in `Z^n`,
    /// chosen deterministically by extending the Smith normal form.
    pub fn complement_basis(&self) -> Result<Vec<Vec<BigInt>>, ModelError> {
        let sat = self.span.saturate();
        let k = sat.rank();
        let n = self.n();
        if k == n {
            return Ok(Vec::new());
        }
        if k == 0 {
            return Ok((0..n)
                .map(|i| {
                    let mut v = vec![BigInt::zero(); n];
                    v[i] = BigInt::one();
                    v
                })
                .collect());
        }
        let snf = crate::intlinalg::smith_normal_form(sat.gens());
        // l * gens * r = s with unit invariant factors, so the span is the
        // span of the first k columns of l^{-1}; the remaining columns of
        // l^{-1} are a complement.
        let (h, u) = column_hermite(&snf.l);
        if h != IntMatrix::identity(n) {
            return Err(ModelError::InvariantViolation(
                "SNF transform is not unimodular".into(),
            ));
        }
        let linv = u;
        Ok((k..n).map(|j| linv.column(j)).collect())
    }
}

/// Saturates a subspace (replaces the spanned subgroup by its saturation).
pub fn saturate_subspace(v: &Subspace) -> Subspace {
    Subspace {
        span: v.span.saturate(),
    }
}

/// Per-grading output of a functor applied to a window module: a subquotient
/// of each graded piece, over the gradings where the window determines it.
#[derive(Debug, Clone)]
pub struct FunctorResult {
    pub pieces: Vec<(Grading, SubquotientPresentation)>,
}

impl FunctorResult {
    pub fn piece_at(&self, g: Grading) -> Option<&SubquotientPresentation> {
        self.pieces.iter().find(|(h, _)| *h == g).map(|(_, p)| p)
    }

    pub fn free_rank_at(&self, g: Grading) -> Option<usize> {
        self.piece_at(g).map(|p| p.free_rank())
    }

    /// Checks that every `A_i` maps numerators into numerators and
    /// denominators into denominators wherever both gradings are present, so
    /// the induced action on the subquotients is well defined.
    pub fn check_induced(&self, m: &WindowModule) -> Result<(), ModelError> {
        let step = match m.module_type() {
            ModuleType::Homological => -1i64,
            ModuleType::Cohomological => 1,
        };
        for (g, p) in &self.pieces {
            let target = *g + grading(step);
            let Some(q) = self.piece_at(target) else {
                continue;
            };
            for i in 0..m.n() {
                let Some(a) = m.a_at(i, *g) else { continue };
                let num_img = p.numerator().image_under(a)?;
                if !q.numerator().contains_subgroup(&num_img)? {
                    return Err(ModelError::InvariantViolation(format!(
                        "A_{} does not preserve numerators at grading {}",
                        i,
                        crate::grading::format_grading(g)
                    )));
                }
                let den_img = p.denominator().image_under(a)?;
                if !q.denominator().contains_subgroup(&den_img)? {
                    return Err(ModelError::InvariantViolation(format!(
                        "A_{} does not preserve denominators at grading {}",
                        i,
                        crate::grading::format_grading(g)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `cap_w ker(A_w)` over a basis of `V`, at grading `g`. `None` when the
/// action at `g` leaves the window. An empty basis gives the full group.
pub fn kernel_at(
    m: &WindowModule,
    v: &Subspace,
    g: Grading,
) -> Result<Option<SubgroupPresentation>, ModelError> {
    m.index_of(g)
        .ok_or_else(|| ModelError::Incompatible("grading outside the window".into()))?;
    let mut out = SubgroupPresentation::full(m.rank_at(g));
    for w in saturate_subspace(v).basis_vectors() {
        let Some(a) = m.action_of_vector(&w, g) else {
            return Ok(None);
        };
        out = out.intersect(&SubgroupPresentation::kernel_of_map(&a))?;
    }
    Ok(Some(out))
}

/// `sum_w A_w(M_src)` landing in grading `g`, over a basis of `V`. `None`
/// when the source grading leaves the window. An empty basis gives zero.
pub fn image_sum_at(
    m: &WindowModule,
    v: &Subspace,
    g: Grading,
) -> Result<Option<SubgroupPresentation>, ModelError> {
    m.index_of(g)
        .ok_or_else(|| ModelError::Incompatible("grading outside the window".into()))?;
    let src = match m.module_type() {
        ModuleType::Homological => g + grading(1),
        ModuleType::Cohomological => g - grading(1),
    };
    let mut out = SubgroupPresentation::zero(m.rank_at(g));
    for w in saturate_subspace(v).basis_vectors() {
        let Some(a) = m.action_of_vector(&w, src) else {
            return Ok(None);
        };
        out = out.sum(&SubgroupPresentation::full(m.rank_at(src)).image_under(&a)?)?;
    }
    Ok(Some(out))
}

/// Sum of the images of the FULL action `sum_i A_i(S)` of a subgroup `S` in
/// the source grading adjacent to `g`.
fn full_action_image(
    m: &WindowModule,
    s: &SubgroupPresentation,
    g: Grading,
) -> Result<Option<SubgroupPresentation>, ModelError> {
    let src = match m.module_type() {
        ModuleType::Homological => g + grading(1),
        ModuleType::Cohomological => g - grading(1),
    };
    let mut out = SubgroupPresentation::zero(m.rank_at(g));
    for i in 0..m.n() {
        let Some(a) = m.a_at(i, src) else {
            return Ok(None);
        };
        out = out.sum(&s.image_under(a)?)?;
    }
    Ok(Some(out))
}

/// The kernel functor `K_V(M)_g = cap_{w in V} ker(A_w)`.
pub fn kernel_functor(m: &WindowModule, v: &Subspace) -> Result<FunctorResult, ModelError> {
    let mut pieces = Vec::new();
    for g in m.gradings().collect::<Vec<_>>() {
        if let Some(k) = kernel_at(m, v, g)? {
            let zero = SubgroupPresentation::zero(m.rank_at(g));
            pieces.push((g, SubquotientPresentation::new(k, zero)?));
        }
    }
    Ok(FunctorResult { pieces })
}

/// The quotient functor `Q^V(M)_g = M_g / sum_{w in V} A_w(M)`.
pub fn quotient_functor(m: &WindowModule, v: &Subspace) -> Result<FunctorResult, ModelError> {
    let mut pieces = Vec::new();
    for g in m.gradings().collect::<Vec<_>>() {
        if let Some(d) = image_sum_at(m, v, g)? {
            let full = SubgroupPresentation::full(m.rank_at(g));
            pieces.push((g, SubquotientPresentation::new(full, d)?));
        }
    }
    Ok(FunctorResult { pieces })
}

/// The composite `Q K_V(M)`: the kernel of the `V`-action modulo the image
/// of the full `H`-action on that kernel.
pub fn qk(m: &WindowModule, v: &Subspace) -> Result<FunctorResult, ModelError> {
    let mut pieces = Vec::new();
    let src_step = match m.module_type() {
        ModuleType::Homological => 1i64,
        ModuleType::Cohomological => -1,
    };
    for g in m.gradings().collect::<Vec<_>>() {
        let Some(k) = kernel_at(m, v, g)? else {
            continue;
        };
        let src = g + grading(src_step);
        if m.index_of(src).is_none() {
            continue;
        }
        let Some(k_src) = kernel_at(m, v, src)? else {
            continue;
        };
        let Some(d) = full_action_image(m, &k_src, g)? else {
            continue;
        };
        // The full action maps K_V into K_V, so d <= k.
        pieces.push((g, SubquotientPresentation::new(k, d)?));
    }
    Ok(FunctorResult { pieces })
}

/// The composite `K Q^V(M)`: elements of `Q^V(M)` killed by the full
/// `H`-action, i.e. `{x : A_i x in D_{next} for all i} / D_g` with
/// `D = sum_{w in V} A_w(M)`.
pub fn kq(m: &WindowModule, v: &Subspace) -> Result<FunctorResult, ModelError> {
    let mut pieces = Vec::new();
    let step = match m.module_type() {
        ModuleType::Homological => -1i64,
        ModuleType::Cohomological => 1,
    };
    for g in m.gradings().collect::<Vec<_>>() {
        let Some(d) = image_sum_at(m, v, g)? else {
            continue;
        };
        let next = g + grading(step);
        if m.index_of(next).is_none() {
            continue;
        }
        let Some(d_next) = image_sum_at(m, v, next)? else {
            continue;
        };
        let mut num = SubgroupPresentation::full(m.rank_at(g));
        let mut in_window = true;
        for i in 0..m.n() {
            let Some(a) = m.a_at(i, g) else {
                in_window = false;
                break;
            };
            num = num.intersect(&d_next.preimage_under(a)?)?;
        }
        if !in_window {
            continue;
        }
        pieces.push((g, SubquotientPresentation::new(num.sum(&d)?, d)?));
    }
    Ok(FunctorResult { pieces })
}

/// Enumerates every saturated rank-`k` subgroup of `Z^n` whose canonical
/// column-Hermite basis has entries bounded by `bound` in absolute value,
/// in a deterministic order.
pub fn enumerate_primitive_subspaces(n: usize, k: usize, bound: u64) -> Vec<Subspace> {
    assert!(k <= n, "rank exceeds ambient rank");
    let b = bound as i64;
    if k == 0 {
        return vec![Subspace::zero(n)];
    }
    if k == n {
        return vec![Subspace::full(n)];
    }
    let mut out: Vec<IntMatrix> = Vec::new();
    // Choose increasing pivot rows, then fill in Hermite-shaped columns.
    let mut pivot_rows = (0..k).collect::<Vec<usize>>();
    loop {
        enumerate_hermite_fill(n, k, b, &pivot_rows, &mut out);
        // next combination of pivot rows
        let mut i = k;
        loop {
            if i == 0 {
                pivot_rows.clear();
                break;
            }
            i -= 1;
            if pivot_rows[i] < n - (k - i) {
                pivot_rows[i] += 1;
                for j in i + 1..k {
                    pivot_rows[j] = pivot_rows[j - 1] + 1;
                }
                break;
            }
        }
        if pivot_rows.is_empty() {
            break;
        }
    }
    out.sort_by(|x, y| x.entries().cmp(y.entries()));
    out.into_iter()
        .map(|m| Subspace {
            span: SubgroupPresentation::new(n, m).unwrap(),
        })
        .collect()
}

fn enumerate_hermite_fill(
    n: usize,
    k: usize,
    b: i64,
    pivot_rows: &[usize],
    out: &mut Vec<IntMatrix>,
) {
    // Column j is zero above its pivot row, has a positive pivot there, and
    // is free below it except at later pivot rows, where the canonical form
    // reduces the entry modulo that later column's pivot. Filling columns
    // from last to first makes every constraint reference an entry already
    // chosen.
    let mut m = IntMatrix::zeros(n, k);
    fill_column(n, k, b, pivot_rows, &mut m, k, out);
}

fn fill_column(
    n: usize,
    k: usize,
    b: i64,
    pivot_rows: &[usize],
    m: &mut IntMatrix,
    remaining: usize,
    out: &mut Vec<IntMatrix>,
) {
    if remaining == 0 {
        let f = invariant_factors(m);
        if f.len() == k && f.iter().all(|d| d.abs() == BigInt::one()) {
            // Saturated, and the matrix is its own canonical Hermite form by
            // construction, so no deduplication is needed.
            debug_assert_eq!(column_hermite(m).0, *m);
            out.push(m.clone());
        }
        return;
    }
    let j = remaining - 1;
    let r = pivot_rows[j];
    // (row, later-column index whose pivot bounds this entry, or usize::MAX)
    let mut positions: Vec<(usize, usize)> = vec![(r, usize::MAX)];
    for row in r + 1..n {
        match pivot_rows[j + 1..].iter().position(|&p| p == row) {
            Some(i) => positions.push((row, j + 1 + i)),
            None => positions.push((row, usize::MAX)),
        }
    }
    fill_positions(n, k, b, pivot_rows, m, j, &positions, 0, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_positions(
    n: usize,
    k: usize,
    b: i64,
    pivot_rows: &[usize],
    m: &mut IntMatrix,
    j: usize,
    positions: &[(usize, usize)],
    idx: usize,
    out: &mut Vec<IntMatrix>,
) {
    if idx == positions.len() {
        fill_column(n, k, b, pivot_rows, m, j, out);
        return;
    }
    let (row, bounding_col) = positions[idx];
    let (lo, hi) = if idx == 0 {
        (1, b) // this column's pivot
    } else if bounding_col != usize::MAX {
        let p: i64 = i64::try_from(m.get(row, bounding_col).clone()).unwrap_or(1);
        (0, (p - 1).min(b))
    } else {
        (-b, b)
    };
    for v in lo..=hi {
        m.set(row, j, BigInt::from(v));
        fill_positions(n, k, b, pivot_rows, m, j, positions, idx + 1, out);
    }
    m.set(row, j, BigInt::zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::build_mst;
    use crate::grading::grading;

    fn vec_i64(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn saturate_subspace_works() {
        let v = Subspace::from_i64(2, &[vec![2, 0]]).unwrap();
        assert!(!v.is_saturated());
        let s = saturate_subspace(&v);
        assert!(s.is_saturated());
        assert!(s.span().contains_vector(&vec_i64(&[1, 0])).unwrap());
    }

    #[test]
    fn complement_extends_to_basis() {
        for basis in [vec![vec![1i64, 1, 0]], vec![vec![1, 0, 0], vec![0, 2, 1]]] {
            let v = Subspace::from_i64(3, &basis).unwrap();
            let comp = v.complement_basis().unwrap();
            assert_eq!(comp.len(), 3 - v.rank());
            let mut all = saturate_subspace(&v).basis_vectors();
            all.extend(comp);
            let m = IntMatrix::from_columns(3, &all).unwrap();
            let f = invariant_factors(&m);
            assert_eq!(f.len(), 3);
            assert!(f.iter().all(|d| d.abs() == BigInt::one()));
        }
    }

    #[test]
    fn kernel_and_quotient_on_mst() {
        // n = 2 standard module: K_{e1} has rank 2^{n-2} = 1 per grading
        // (subsets not containing e1... wedged); Q likewise by duality.
        let m = build_mst(2, grading(0), grading(-4), grading(4));
        let v = Subspace::from_i64(2, &[vec![1, 0]]).unwrap();
        let kf = kernel_functor(&m, &v).unwrap();
        let qf = quotient_functor(&m, &v).unwrap();
        for g in -3..=3 {
            assert_eq!(kf.free_rank_at(grading(g)), Some(1));
            assert_eq!(qf.free_rank_at(grading(g)), Some(1));
        }
        kf.check_induced(&m).unwrap();
        qf.check_induced(&m).unwrap();
    }

    #[test]
    fn tower_ranks_on_mst() {
        // QK_V(M^st) and KQ^V(M^st) are a single tower: total free rank 1
        // over each pair of consecutive gradings.
        for n in 1..=3usize {
            let m = build_mst(n, grading(0), grading(-6), grading(6));
            for k in 0..=n {
                for v in enumerate_primitive_subspaces(n, k, 1) {
                    let qkr = qk(&m, &v).unwrap();
                    let kqr = kq(&m, &v).unwrap();
                    for g in -3..=2 {
                        let qpair = qkr.free_rank_at(grading(g)).unwrap()
                            + qkr.free_rank_at(grading(g + 1)).unwrap();
                        let kpair = kqr.free_rank_at(grading(g)).unwrap()
                            + kqr.free_rank_at(grading(g + 1)).unwrap();
                        assert_eq!(qpair, 1, "QK n={n} k={k} g={g}");
                        assert_eq!(kpair, 1, "KQ n={n} k={k} g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn dual_swap_ranks() {
        // Q^V(M)_g has the free rank of K_V(M^*)_g.
        let m = build_mst(3, grading(0), grading(-6), grading(6));
        let md = m.dual();
        for v in enumerate_primitive_subspaces(3, 2, 1) {
            let q = quotient_functor(&m, &v).unwrap();
            let k = kernel_functor(&md, &v).unwrap();
            for g in -4..=4 {
                assert_eq!(
                    q.free_rank_at(grading(g)),
                    k.free_rank_at(grading(g)),
                    "dual swap at {g}"
                );
            }
        }
    }

    #[test]
    fn enumerate_rank1_in_plane() {
        let subs = enumerate_primitive_subspaces(2, 1, 1);
        let got: Vec<Vec<BigInt>> = subs.iter().map(|s| s.span().gens().column(0)).collect();
        let expect: Vec<Vec<BigInt>> = [[0i64, 1], [1, -1], [1, 0], [1, 1]]
            .iter()
            .map(|v| vec_i64(v))
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_primitive_subspaces(2, 0, 5).len(), 1);
        assert_eq!(enumerate_primitive_subspaces(2, 2, 5).len(), 1);
        // Rank-2 subspaces of Z^3 with Hermite entries bounded by 1: all are
        // saturated with unit-bounded canonical form.
        let subs = enumerate_primitive_subspaces(3, 2, 1);
        assert!(!subs.is_empty());
        for s in &subs {
            assert!(s.is_saturated());
            assert_eq!(s.rank(), 2);
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &subs {
            assert!(seen.insert(format!("{:?}", s.span().gens().entries())));
        }
    }
}
