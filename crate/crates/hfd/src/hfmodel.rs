//! Finite grading-window models of the Heegaard Floer package of a pair
//! `(Y, s)` with standard `HF^inf`.
//!
//! A model stores the localized module `HF^inf` on a window together with the
//! submodule `I^- = im(iota_*)`; the quotient `I^+ = HF^inf / I^-` is
//! definitional, so the minus/plus flavors are never stored separately.
//! Boundary promises (`full_below`, `zero_above`) certify that scans over the
//! window see the same picture as the infinite module.

use crate::exterior;
use crate::grading::{format_grading, grading, Grading};
use crate::intlinalg::{IntMatrix, LinalgError, SubgroupPresentation};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("malformed window module: {0}")]
    Malformed(String),
    #[error("models are incompatible: {0}")]
    Incompatible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violation: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleType {
    /// The exterior action lowers grading by 1; `U` lowers it by 2.
    Homological,
    /// The exterior action raises grading by 1; `U` raises it by 2.
    Cohomological,
}

/// A Q-graded module over `Lambda*(Z^n) (x) Z[U]` restricted to a finite
/// grading window, with explicit per-grading ranks and action matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowModule {
    n: usize,
    module_type: ModuleType,
    sigma: Grading,
    lo: Grading,
    hi: Grading,
    ranks: Vec<usize>,
    /// Homological: `u[j] : M_{lo+2+j} -> M_{lo+j}`.
    /// Cohomological: `u[j] : M_{lo+j} -> M_{lo+j+2}`.
    u: Vec<IntMatrix>,
    /// Homological: `a[i][j] : M_{lo+1+j} -> M_{lo+j}`.
    /// Cohomological: `a[i][j] : M_{lo+j} -> M_{lo+j+1}`.
    a: Vec<Vec<IntMatrix>>,
}

impl WindowModule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        module_type: ModuleType,
        sigma: Grading,
        lo: Grading,
        hi: Grading,
        ranks: Vec<usize>,
        u: Vec<IntMatrix>,
        a: Vec<Vec<IntMatrix>>,
    ) -> Result<Self, ModelError> {
        if hi < lo || !(hi - lo).is_integer() || !(lo - sigma).is_integer() {
            return Err(ModelError::Malformed(
                "window endpoints must lie in sigma + Z with lo <= hi".into(),
            ));
        }
        let size = ((hi - lo).numer() + 1) as usize;
        if ranks.len() != size {
            return Err(ModelError::Malformed(format!(
                "expected {} ranks, got {}",
                size,
                ranks.len()
            )));
        }
        if u.len() != size.saturating_sub(2) {
            return Err(ModelError::Malformed(format!(
                "expected {} U matrices, got {}",
                size.saturating_sub(2),
                u.len()
            )));
        }
        if a.len() != n || a.iter().any(|ai| ai.len() != size.saturating_sub(1)) {
            return Err(ModelError::Malformed(format!(
                "expected {} x {} action matrices",
                n,
                size.saturating_sub(1)
            )));
        }
        let m = WindowModule {
            n,
            module_type,
            sigma,
            lo,
            hi,
            ranks,
            u,
            a,
        };
        for j in 0..size.saturating_sub(2) {
            let (src, dst) = match module_type {
                ModuleType::Homological => (j + 2, j),
                ModuleType::Cohomological => (j, j + 2),
            };
            if m.u[j].cols() != m.ranks[src] || m.u[j].rows() != m.ranks[dst] {
                return Err(ModelError::Malformed(format!(
                    "U matrix {} has wrong shape",
                    j
                )));
            }
        }
        for (i, ai) in m.a.iter().enumerate() {
            for (j, mat) in ai.iter().enumerate() {
                let (src, dst) = match module_type {
                    ModuleType::Homological => (j + 1, j),
                    ModuleType::Cohomological => (j, j + 1),
                };
                if mat.cols() != m.ranks[src] || mat.rows() != m.ranks[dst] {
                    return Err(ModelError::Malformed(format!(
                        "action matrix A_{} at offset {} has wrong shape",
                        i, j
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module_type(&self) -> ModuleType {
        self.module_type
    }

    pub fn sigma(&self) -> Grading {
        self.sigma
    }

    pub fn lo(&self) -> Grading {
        self.lo
    }

    pub fn hi(&self) -> Grading {
        self.hi
    }

    pub fn size(&self) -> usize {
        self.ranks.len()
    }

    pub fn gradings(&self) -> impl Iterator<Item = Grading> + '_ {
        (0..self.size() as i64).map(move |j| self.lo + grading(j))
    }

    pub fn index_of(&self, g: Grading) -> Option<usize> {
        let d = g - self.lo;
        if !d.is_integer() || g < self.lo || g > self.hi {
            return None;
        }
        Some(*d.numer() as usize)
    }

    pub fn rank_at(&self, g: Grading) -> usize {
        self.index_of(g).map_or(0, |j| self.ranks[j])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// U matrix with source grading `g`, if both endpoints are in-window.
    pub fn u_at(&self, g: Grading) -> Option<&IntMatrix> {
        let j = self.index_of(g)?;
        match self.module_type {
            ModuleType::Homological => j.checked_sub(2).map(|k| &self.u[k]),
            ModuleType::Cohomological => self.u.get(j),
        }
    }

    /// Action matrix of `e_i` with source grading `g`.
    pub fn a_at(&self, i: usize, g: Grading) -> Option<&IntMatrix> {
        let j = self.index_of(g)?;
        match self.module_type {
            ModuleType::Homological => j.checked_sub(1).map(|k| &self.a[i][k]),
            ModuleType::Cohomological => self.a[i].get(j),
        }
    }

    pub fn u_matrices(&self) -> &[IntMatrix] {
        &self.u
    }

    pub fn a_matrices(&self) -> &[Vec<IntMatrix>] {
        &self.a
    }

    /// Action matrix of the vector `w = sum w_i e_i` with source grading `g`.
    pub fn action_of_vector(&self, w: &[BigInt], g: Grading) -> Option<IntMatrix> {
        assert_eq!(w.len(), self.n);
        let target = match self.module_type {
            ModuleType::Homological => g - grading(1),
            ModuleType::Cohomological => g + grading(1),
        };
        self.index_of(g)?;
        self.index_of(target)?;
        let mut out = IntMatrix::zeros(self.rank_at(target), self.rank_at(g));
        for (i, wi) in w.iter().enumerate() {
            if wi.is_zero() {
                continue;
            }
            let mat = self.a_at(i, g)?;
            for r in 0..out.rows() {
                for c in 0..out.cols() {
                    let v = out.get(r, c) + wi * mat.get(r, c);
                    out.set(r, c, v);
                }
            }
        }
        Some(out)
    }

    /// Checks the module axioms wherever composites stay in-window:
    /// `A_i A_j = -A_j A_i`, `A_i A_i = 0`, and `U A_i = A_i U`.
    pub fn check_axioms(&self) -> Result<(), ModelError> {
        for g in self.gradings().collect::<Vec<_>>() {
            for i in 0..self.n {
                let step = match self.module_type {
                    ModuleType::Homological => -1,
                    ModuleType::Cohomological => 1,
                };
                let next = g + grading(step);
                let (Some(ai_g), Some(_)) = (self.a_at(i, g), self.index_of(next)) else {
                    continue;
                };
                for j in 0..self.n {
                    let Some(aj_next) = self.a_at(j, next) else {
                        continue;
                    };
                    let Some(aj_g) = self.a_at(j, g) else {
                        continue;
                    };
                    let ai_then_j = aj_next.mul(ai_g)?;
                    let aj_then_i = self.a_at(i, next).unwrap().mul(aj_g)?;
                    if i == j {
                        if !ai_then_j.is_zero() {
                            return Err(ModelError::InvariantViolation(format!(
                                "A_{} squared is nonzero at grading {}",
                                i,
                                format_grading(&g)
                            )));
                        }
                    } else {
                        let mut sum = ai_then_j.clone();
                        for r in 0..sum.rows() {
                            for c in 0..sum.cols() {
                                let v = sum.get(r, c) + aj_then_i.get(r, c);
                                sum.set(r, c, v);
                            }
                        }
                        if !sum.is_zero() {
                            return Err(ModelError::InvariantViolation(format!(
                                "A_{} and A_{} fail to anticommute at grading {}",
                                i,
                                j,
                                format_grading(&g)
                            )));
                        }
                    }
                }
                // U A_i = A_i U where defined.
                let ustep = match self.module_type {
                    ModuleType::Homological => -2,
                    ModuleType::Cohomological => 2,
                };
                if let (Some(u_next), Some(u_g)) = (self.u_at(next), self.u_at(g)) {
                    if let Some(ai_shifted) = self.a_at(i, g + grading(ustep)) {
                        let left = u_next.mul(ai_g)?;
                        let right = ai_shifted.mul(u_g)?;
                        if left != right {
                            return Err(ModelError::InvariantViolation(format!(
                                "U does not commute with A_{} at grading {}",
                                i,
                                format_grading(&g)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that every in-window `U` matrix is an isomorphism.
    pub fn check_u_iso(&self) -> Result<(), ModelError> {
        for g in self.gradings().collect::<Vec<_>>() {
            if let Some(u) = self.u_at(g) {
                if u.rows() != u.cols() {
                    return Err(ModelError::InvariantViolation(format!(
                        "U at grading {} is not square",
                        format_grading(&g)
                    )));
                }
                let f = crate::intlinalg::invariant_factors(u);
                if f.len() != u.rows() || f.iter().any(|d| d != &BigInt::one()) {
                    return Err(ModelError::InvariantViolation(format!(
                        "U at grading {} is not an isomorphism",
                        format_grading(&g)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The dual module: grading-`g` piece is `Hom(M_g, Z)`, actions are the
    /// transposes, and the type flips.
    pub fn dual(&self) -> WindowModule {
        let flipped = match self.module_type {
            ModuleType::Homological => ModuleType::Cohomological,
            ModuleType::Cohomological => ModuleType::Homological,
        };
        let u = self.u.iter().map(|m| m.transpose()).collect();
        let a = self
            .a
            .iter()
            .map(|ai| ai.iter().map(|m| m.transpose()).collect())
            .collect();
        WindowModule {
            n: self.n,
            module_type: flipped,
            sigma: self.sigma,
            lo: self.lo,
            hi: self.hi,
            ranks: self.ranks.clone(),
            u,
            a,
        }
    }
}

/// Torsion spin-c index: an element of a finite abelian group given by
/// invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TorsionLabel {
    pub group: Vec<u64>,
    pub label: Vec<u64>,
}

/// A model of `(Y, s)`: standard `HF^inf` on a window plus the submodule
/// `I^- = im(iota_*)`, with boundary promises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFModel {
    pub name: String,
    pub hf_inf: WindowModule,
    /// Per-grading presentation of `I^-_g` inside `HF^inf_g`, indexed like
    /// the window.
    pub iminus: Vec<SubgroupPresentation>,
    /// `I^-_g` is the whole module for every in-window `g < full_below`.
    pub full_below: Grading,
    /// `I^-_g = 0` for every in-window `g > zero_above`.
    pub zero_above: Grading,
    pub torsion_label: Option<TorsionLabel>,
    /// Optional display data: free ranks of `I^+_g`, cross-checked by
    /// `validate` when present.
    pub iplus_ranks: Option<Vec<usize>>,
}

impl HFModel {
    pub fn n(&self) -> usize {
        self.hf_inf.n()
    }

    pub fn iminus_at(&self, g: Grading) -> Option<&SubgroupPresentation> {
        self.hf_inf.index_of(g).map(|j| &self.iminus[j])
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validates a model against its defining promises:
/// (a) `hf_inf` is the standard module in the declared basis,
/// (b) `I^-` is closed under `U` and every `A_i`,
/// (c) the `full_below` / `zero_above` promises hold,
/// (d) every in-window `U` is an isomorphism.
pub fn validate(m: &HFModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let w = &m.hf_inf;
    if m.iminus.len() != w.size() {
        report.violations.push(format!(
            "iminus has {} gradings, window has {}",
            m.iminus.len(),
            w.size()
        ));
        return report;
    }
    // (a) standardness: exact equality with the standard module.
    let mst = exterior::build_mst(w.n(), w.sigma(), w.lo(), w.hi());
    if w.ranks() != mst.ranks() {
        report.violations.push(format!(
            "standardness violation: ranks differ from M^st (expected {:?}, got {:?})",
            mst.ranks(),
            w.ranks()
        ));
    } else {
        if w.u_matrices() != mst.u_matrices() {
            report
                .violations
                .push("standardness violation: U matrices differ from M^st".into());
        }
        if w.a_matrices() != mst.a_matrices() {
            report.violations.push(
                "standardness violation: action matrices differ from contraction on M^st".into(),
            );
        }
    }
    // (d) U isomorphisms (independent of (a)).
    if let Err(e) = w.check_u_iso() {
        report.violations.push(e.to_string());
    }
    if let Err(e) = w.check_axioms() {
        report.violations.push(e.to_string());
    }
    // (b) closure of I^- under U and A_i.
    for g in w.gradings().collect::<Vec<_>>() {
        let j = w.index_of(g).unwrap();
        let sub = &m.iminus[j];
        if sub.ambient_rank() != w.rank_at(g) {
            report.violations.push(format!(
                "iminus at grading {} has ambient rank {}, module rank is {}",
                format_grading(&g),
                sub.ambient_rank(),
                w.rank_at(g)
            ));
            continue;
        }
        if let Some(u) = w.u_at(g) {
            let target = &m.iminus[j - 2];
            match sub.image_under(u) {
                Ok(img) => match target.contains_subgroup(&img) {
                    Ok(true) => {}
                    Ok(false) => report.violations.push(format!(
                        "closure violation: U(I^-_{}) is not contained in I^-",
                        format_grading(&g)
                    )),
                    Err(e) => report.violations.push(e.to_string()),
                },
                Err(e) => report.violations.push(e.to_string()),
            }
        }
        for i in 0..w.n() {
            if let Some(a) = w.a_at(i, g) {
                let target = &m.iminus[j - 1];
                match sub.image_under(a) {
                    Ok(img) => match target.contains_subgroup(&img) {
                        Ok(true) => {}
                        Ok(false) => report.violations.push(format!(
                            "closure violation: A_{}(I^-_{}) is not contained in I^-",
                            i,
                            format_grading(&g)
                        )),
                        Err(e) => report.violations.push(e.to_string()),
                    },
                    Err(e) => report.violations.push(e.to_string()),
                }
            }
        }
        // (c) boundary promises.
        if g < m.full_below && sub.rank() != w.rank_at(g) {
            report.violations.push(format!(
                "promise violation: I^- not full at grading {} < full_below {}",
                format_grading(&g),
                format_grading(&m.full_below)
            ));
        }
        if g > m.zero_above && !sub.is_zero() {
            report.violations.push(format!(
                "promise violation: I^- nonzero at grading {} > zero_above {}",
                format_grading(&g),
                format_grading(&m.zero_above)
            ));
        }
        if g < m.full_below && sub.rank() == w.rank_at(g) && !sub.is_full() {
            report.violations.push(format!(
                "promise violation: I^- at grading {} has full rank but finite index",
                format_grading(&g)
            ));
        }
    }
    // Optional display cross-check.
    if let Some(ip) = &m.iplus_ranks {
        if ip.len() != w.size() {
            report
                .violations
                .push("iplus_ranks has the wrong length".into());
        } else {
            for (j, &r) in ip.iter().enumerate() {
                let expected = w.ranks()[j] - m.iminus[j].rank().min(w.ranks()[j]);
                if r != expected {
                    report.violations.push(format!(
                        "iplus_ranks[{}] = {} but rank(HF^inf) - rank(I^-) = {}",
                        j, r, expected
                    ));
                }
            }
        }
    }
    report
}

/// Shifts all gradings (window, offset, promises) by `s`.
pub fn shift_grading(m: &HFModel, s: Grading) -> HFModel {
    let w = &m.hf_inf;
    let shifted = WindowModule {
        n: w.n,
        module_type: w.module_type,
        sigma: w.sigma + s,
        lo: w.lo + s,
        hi: w.hi + s,
        ranks: w.ranks.clone(),
        u: w.u.clone(),
        a: w.a.clone(),
    };
    HFModel {
        name: format!("{}+[{}]", m.name, format_grading(&s)),
        hf_inf: shifted,
        iminus: m.iminus.clone(),
        full_below: m.full_below + s,
        zero_above: m.zero_above + s,
        torsion_label: m.torsion_label.clone(),
        iplus_ranks: m.iplus_ranks.clone(),
    }
}

/// Generators of `I^-` at grading `g`, extended below the stored window via
/// the `full_below` promise (the ambient module is standard, so its basis is
/// known at every grading).
fn iminus_gens_extended(m: &HFModel, g: Grading) -> Result<Vec<Vec<BigInt>>, ModelError> {
    let w = &m.hf_inf;
    if g > m.zero_above {
        return Ok(Vec::new());
    }
    if let Some(sub) = m.iminus_at(g) {
        return Ok((0..sub.gens().cols())
            .map(|j| sub.gens().column(j))
            .collect());
    }
    if g < m.full_below {
        let parity = ((g - w.sigma()).numer().rem_euclid(2)) as u8;
        let rank = exterior::mst_rank(w.n(), parity);
        return Ok((0..rank)
            .map(|i| {
                let mut v = vec![BigInt::zero(); rank];
                v[i] = BigInt::one();
                v
            })
            .collect());
    }
    Err(ModelError::Incompatible(format!(
        "grading {} is outside the window and not covered by a promise",
        format_grading(&g)
    )))
}

/// Connected sum. `HF^inf` of the result is the standard module with offset
/// `sigma_a + sigma_b`; `I^-` is spanned by products of `I^-` generators of
/// the factors with grading `gr(x) + gr(y) + 2`, embedded via the tensor
/// identification of the two standard modules.
pub fn connected_sum(a: &HFModel, b: &HFModel) -> Result<HFModel, ModelError> {
    let (wa, wb) = (&a.hf_inf, &b.hf_inf);
    let (na, nb) = (wa.n(), wb.n());
    let n = na + nb;
    // U-freeness of I^-: U must be injective on each graded piece.
    for (m, w) in [(a, wa), (b, wb)] {
        for g in w.gradings().collect::<Vec<_>>() {
            if let (Some(u), Some(sub)) = (w.u_at(g), m.iminus_at(g)) {
                let img = sub.image_under(u)?;
                if img.rank() != sub.rank() {
                    return Err(ModelError::Precondition(format!(
                        "U is not injective on I^- of {} at grading {}",
                        m.name,
                        format_grading(&g)
                    )));
                }
            }
        }
    }
    if a.full_below < wa.lo()
        || a.zero_above > wa.hi()
        || b.full_below < wb.lo()
        || b.zero_above > wb.hi()
    {
        return Err(ModelError::Precondition(
            "factor promises must lie inside their windows".into(),
        ));
    }
    let sigma = wa.sigma() + wb.sigma();
    let lo = a.full_below + b.full_below - grading(6);
    let hi = a.zero_above + b.zero_above + grading(2) + grading(6);
    let hf_inf = exterior::build_mst(n, sigma, lo, hi);

    let mut iminus = Vec::with_capacity(hf_inf.size());
    for g in hf_inf.gradings().collect::<Vec<_>>() {
        let rank = hf_inf.rank_at(g);
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        // Pairs (l, m) with l + m + 2 = g; l runs over gradings of factor a.
        let mut l = g - grading(2) - b.zero_above;
        // Align l to sigma_a + Z.
        let misalign = l - wa.sigma();
        if !misalign.is_integer() {
            return Err(ModelError::Incompatible(
                "factor gradings are incommensurable".into(),
            ));
        }
        while l <= a.zero_above {
            let gm = g - grading(2) - l;
            let xs = iminus_gens_extended(a, l)?;
            let ys = iminus_gens_extended(b, gm)?;
            if !xs.is_empty() && !ys.is_empty() {
                let pa = ((l - wa.sigma()).numer().rem_euclid(2)) as u8;
                let pb = ((gm - wb.sigma()).numer().rem_euclid(2)) as u8;
                let basis_a = exterior::mst_basis(na, pa);
                let basis_b = exterior::mst_basis(nb, pb);
                for x in &xs {
                    for y in &ys {
                        let mut col = vec![BigInt::zero(); rank];
                        for (ia, &sa) in basis_a.iter().enumerate() {
                            if x[ia].is_zero() {
                                continue;
                            }
                            for (ib, &sb) in basis_b.iter().enumerate() {
                                if y[ib].is_zero() {
                                    continue;
                                }
                                // Indices of the second factor are shifted
                                // past those of the first; the merge sign is
                                // then +1 and U-powers commute.
                                let mask = sa | (sb << na);
                                let idx = exterior::mst_coord(n, sigma, g, mask);
                                col[idx] = &x[ia] * &y[ib];
                            }
                        }
                        cols.push(col);
                    }
                }
            }
            l += grading(1);
        }
        iminus.push(SubgroupPresentation::from_columns(rank, &cols)?);
    }

    // Recover the output promises by scanning.
    let gradings: Vec<Grading> = hf_inf.gradings().collect();
    let mut full_below = lo;
    for (j, g) in gradings.iter().enumerate() {
        if iminus[j].rank() == hf_inf.rank_at(*g) {
            full_below = *g + grading(1);
        } else {
            break;
        }
    }
    let mut zero_above = hi;
    for (j, g) in gradings.iter().enumerate().rev() {
        if iminus[j].is_zero() {
            zero_above = *g - grading(1);
        } else {
            break;
        }
    }
    let torsion_label = match (&a.torsion_label, &b.torsion_label) {
        (Some(ta), Some(tb)) => Some(TorsionLabel {
            group: ta.group.iter().chain(tb.group.iter()).copied().collect(),
            label: ta.label.iter().chain(tb.label.iter()).copied().collect(),
        }),
        _ => None,
    };
    Ok(HFModel {
        name: format!("{}#{}", a.name, b.name),
        hf_inf,
        iminus,
        full_below,
        zero_above,
        torsion_label,
        iplus_ranks: None,
    })
}

/// Sign of the duality relabeling `l_S^* -> s(S) l_{S^c}` that turns the
/// transposed contraction action back into contraction.
fn dual_sign(mask: u32) -> BigInt {
    let mut exp = 0u32;
    let mut m = mask;
    while m != 0 {
        exp += m.trailing_zeros();
        m &= m - 1;
    }
    if exp % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Orientation reversal: `HF^inf_g(-Y)` is the dual of `HF^inf_{-g-2}(Y)`
/// with transposed actions, renormalized to the standard basis, and
/// `I^-(-Y)_g` is the annihilator of `I^-(Y)_{-g-2}`.
pub fn reverse_orientation(m: &HFModel) -> Result<HFModel, ModelError> {
    let w = &m.hf_inf;
    let n = w.n();
    let sigma_rev = -w.sigma() - grading(n as i64) - grading(2);
    let lo = -w.hi() - grading(2);
    let hi = -w.lo() - grading(2);
    let hf_inf = exterior::build_mst(n, sigma_rev, lo, hi);

    let mut iminus = Vec::with_capacity(hf_inf.size());
    for g in hf_inf.gradings().collect::<Vec<_>>() {
        let src = -g - grading(2);
        let sub = m
            .iminus_at(src)
            .ok_or_else(|| ModelError::Incompatible("reflected grading left the window".into()))?;
        let ann = sub.annihilator();
        // Relabel dual coordinates: S -> S^c with the duality sign.
        let p_src = ((src - w.sigma()).numer().rem_euclid(2)) as u8;
        let basis_src = exterior::mst_basis(n, p_src);
        let rank = hf_inf.rank_at(g);
        let mut cols = Vec::new();
        let top = (1u32 << n) - 1;
        for j in 0..ann.gens().cols() {
            let v = ann.gens().column(j);
            let mut col = vec![BigInt::zero(); rank];
            for (i, &s) in basis_src.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let idx = exterior::mst_coord(n, sigma_rev, g, top & !s);
                col[idx] = &v[i] * dual_sign(s);
            }
            cols.push(col);
        }
        iminus.push(SubgroupPresentation::from_columns(rank, &cols)?);
    }
    Ok(HFModel {
        name: format!("-{}", m.name),
        hf_inf,
        iminus,
        full_below: -m.zero_above - grading(2),
        zero_above: -m.full_below - grading(2),
        torsion_label: m.torsion_label.clone(),
        iplus_ranks: None,
    })
}

/// A family of models indexed by a finite abelian group of torsion spin-c
/// labels; all members share the same first Betti number.
#[derive(Debug, Clone)]
pub struct ManifoldFamily {
    pub name: String,
    pub group: Vec<u64>,
    pub members: Vec<(Vec<u64>, HFModel)>,
}

impl ManifoldFamily {
    pub fn new(
        name: String,
        group: Vec<u64>,
        members: Vec<(Vec<u64>, HFModel)>,
    ) -> Result<Self, ModelError> {
        if let Some(first) = members.first() {
            let n = first.1.n();
            if members.iter().any(|(_, m)| m.n() != n) {
                return Err(ModelError::Incompatible(
                    "family members have different first Betti numbers".into(),
                ));
            }
        }
        Ok(ManifoldFamily {
            name,
            group,
            members,
        })
    }
}
