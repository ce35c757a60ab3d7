//! The correction-term engine: d, d*, the bottom/top values, the minus-side
//! reformulations, full tables over enumerated subspaces, and checkers for
//! the algebraic properties the invariants satisfy.

use crate::functors::{enumerate_primitive_subspaces, saturate_subspace, Subspace};
use crate::grading::{format_grading, grading, Grading};
use crate::hfmodel::{HFModel, ModelError};
use crate::intlinalg::{LinalgError, SubgroupPresentation};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DinvError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("no certified value in window: {0}")]
    NoValue(String),
    #[error("internal invariant violation: {0}")]
    InvariantViolation(String),
}

/// A nontorsion witness: coordinates of an element of `HF^inf_g` in the
/// model basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub grading: Grading,
    pub coords: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DValue {
    pub value: Grading,
    pub certified: bool,
    pub witness: Option<Witness>,
}

/// Per-grading data shared by the d and d* scans.
struct Scan<'a> {
    m: &'a HFModel,
    v: Subspace,
}

impl<'a> Scan<'a> {
    fn new(m: &'a HFModel, v: &Subspace) -> Self {
        // Lemma: d and d* depend only on the saturation of V.
        Scan {
            m,
            v: saturate_subspace(v),
        }
    }

    fn w(&self) -> &crate::hfmodel::WindowModule {
        &self.m.hf_inf
    }

    /// `K_g = cap_{w in V} ker(A_w)` at grading `g`.
    fn kernel(&self, g: Grading) -> Result<SubgroupPresentation, DinvError> {
        crate::functors::kernel_at(self.w(), &self.v, g)?
            .ok_or_else(|| DinvError::NoValue("kernel left the window".into()))
    }

    /// `sum_{w in V} A_w(M)` landing at grading `g`.
    fn image_sum(&self, g: Grading) -> Result<SubgroupPresentation, DinvError> {
        crate::functors::image_sum_at(self.w(), &self.v, g)?
            .ok_or_else(|| DinvError::NoValue("image left the window".into()))
    }

    fn iminus(&self, g: Grading) -> Result<&SubgroupPresentation, DinvError> {
        self.m
            .iminus_at(g)
            .ok_or_else(|| DinvError::NoValue("grading outside window".into()))
    }

    /// Full-H action image of a subgroup in the adjacent source grading.
    fn full_image(
        &self,
        s: &SubgroupPresentation,
        g: Grading,
    ) -> Result<SubgroupPresentation, DinvError> {
        let src = g + grading(1);
        let mut out = SubgroupPresentation::zero(self.w().rank_at(g));
        for i in 0..self.w().n() {
            let a = self
                .w()
                .a_at(i, src)
                .ok_or_else(|| DinvError::NoValue("action left the window".into()))?;
            out = out.sum(&s.image_under(a)?)?;
        }
        Ok(out)
    }

    /// Whether `QK^V(pi)` has a nontorsion class at grading `g`, i.e.
    /// `rank(K_g + I^-_g) > rank(sum_i A_i(K_{g+1}) + I^-_g)`; returns a
    /// witness in `K_g` when it does.
    fn d_nontorsion_at(&self, g: Grading) -> Result<Option<Vec<BigInt>>, DinvError> {
        let k = self.kernel(g)?;
        let k_up = self.kernel(g + grading(1))?;
        let im = self.full_image(&k_up, g)?;
        let den = im.sum(self.iminus(g)?)?;
        let num = k.sum(self.iminus(g)?)?;
        if num.rank() <= den.rank() {
            return Ok(None);
        }
        // Some generator of K_g is nontorsion modulo the denominator.
        let dsat = den.saturate();
        for j in 0..k.gens().cols() {
            let x = k.gens().column(j);
            if !dsat.contains_vector(&x)? {
                return Ok(Some(x));
            }
        }
        Err(DinvError::InvariantViolation(
            "rank excess without a generator witness".into(),
        ))
    }

    /// Whether `KQ^V(pi)` has a nontorsion class at grading `g`:
    /// numerator `{x : A_i x in D_{g-1} for all i}` with `D = sum_w A_w(M)`,
    /// compared against `D_g + I^-_g`.
    fn d_star_nontorsion_at(&self, g: Grading) -> Result<Option<Vec<BigInt>>, DinvError> {
        let d_here = self.image_sum(g)?;
        let d_down = self.image_sum(g - grading(1))?;
        let mut num = SubgroupPresentation::full(self.w().rank_at(g));
        for i in 0..self.w().n() {
            let a = self
                .w()
                .a_at(i, g)
                .ok_or_else(|| DinvError::NoValue("action left the window".into()))?;
            num = num.intersect(&d_down.preimage_under(a)?)?;
        }
        let den = d_here.sum(self.iminus(g)?)?;
        if num.sum(&den)?.rank() <= den.rank() {
            return Ok(None);
        }
        let dsat = den.saturate();
        for j in 0..num.gens().cols() {
            let x = num.gens().column(j);
            if !dsat.contains_vector(&x)? {
                return Ok(Some(x));
            }
        }
        Err(DinvError::InvariantViolation(
            "rank excess without a generator witness".into(),
        ))
    }

    /// Interior gradings where both scans are computable.
    fn scan_range(&self) -> Vec<Grading> {
        let w = self.w();
        let mut out = Vec::new();
        let mut g = w.lo() + grading(1);
        while g <= w.hi() - grading(1) {
            out.push(g);
            g += grading(1);
        }
        out
    }

    /// Runs an ascending scan with the given per-grading test, certifying
    /// the minimum via the window promises and U-shift persistence, and
    /// asserting persistence at every later grading of the same parity.
    fn minimum(
        &self,
        test: impl Fn(&Self, Grading) -> Result<Option<Vec<BigInt>>, DinvError>,
        what: &str,
    ) -> Result<DValue, DinvError> {
        let range = self.scan_range();
        let mut found: Option<(Grading, Vec<BigInt>)> = None;
        for &g in &range {
            if let Some(x) = test(self, g)? {
                found = Some((g, x));
                break;
            }
        }
        let Some((d, x)) = found else {
            return Err(DinvError::NoValue(format!(
                "{} has no nontorsion class in the window of {}",
                what, self.m.name
            )));
        };
        // Persistence: once a nontorsion class exists at g, the U-shift
        // provides one at g+2.
        let mut g = d + grading(2);
        while g <= *range.last().unwrap() {
            if test(self, g)?.is_none() {
                return Err(DinvError::InvariantViolation(format!(
                    "{}: nontorsion class at {} does not persist to {}",
                    what,
                    format_grading(&d),
                    format_grading(&g)
                )));
            }
            g += grading(2);
        }
        let b = self.m.full_below;
        let certified =
            (b - self.w().lo()) >= grading(4) && d >= b && d + grading(2) <= *range.last().unwrap();
        Ok(DValue {
            value: d,
            certified,
            witness: Some(Witness {
                grading: d,
                coords: x,
            }),
        })
    }
}

/// `d(Y, s, V)`: the minimal grading of a nontorsion class in the image of
/// `QK^V(HF^inf)` in `Q(J^+)`.
pub fn d_invariant(m: &HFModel, v: &Subspace) -> Result<DValue, DinvError> {
    Scan::new(m, v).minimum(Scan::d_nontorsion_at, "d")
}

/// `d*(Y, s, V)`: the minimal grading of a nontorsion class in the image of
/// `KQ^V(HF^inf)` in `KQ^V(I^+)`.
pub fn d_star(m: &HFModel, v: &Subspace) -> Result<DValue, DinvError> {
    Scan::new(m, v).minimum(Scan::d_star_nontorsion_at, "d*")
}

/// `d_bot = d(., H) = d*(., {0})`; both defining expressions are computed
/// and must agree.
pub fn d_bot(m: &HFModel) -> Result<DValue, DinvError> {
    let n = m.n();
    let via_d = d_invariant(m, &Subspace::full(n))?;
    let via_dstar = d_star(m, &Subspace::zero(n))?;
    if via_d.value != via_dstar.value {
        return Err(DinvError::InvariantViolation(format!(
            "d_bot defining expressions disagree: {} vs {}",
            format_grading(&via_d.value),
            format_grading(&via_dstar.value)
        )));
    }
    Ok(via_d)
}

/// `d_top = d(., {0}) = d*(., H)`; both defining expressions are computed
/// and must agree.
pub fn d_top(m: &HFModel) -> Result<DValue, DinvError> {
    let n = m.n();
    let via_d = d_invariant(m, &Subspace::zero(n))?;
    let via_dstar = d_star(m, &Subspace::full(n))?;
    if via_d.value != via_dstar.value {
        return Err(DinvError::InvariantViolation(format!(
            "d_top defining expressions disagree: {} vs {}",
            format_grading(&via_d.value),
            format_grading(&via_dstar.value)
        )));
    }
    Ok(via_d)
}

/// `d^-(Y, s, V)`: the maximal grading of an element of `QK^V(I^-)` with
/// nontrivial image in `QK^V(HF^inf)`. The paper words the condition
/// "nontrivial" here but "nontorsion" for the d* analogue; both readings are
/// computed and must agree, as must the identity `d^- = d - 2`.
pub fn d_minus(m: &HFModel, v: &Subspace) -> Result<DValue, DinvError> {
    let scan = Scan::new(m, v);
    let range = scan.scan_range();
    let mut best_nontrivial: Option<Grading> = None;
    let mut best_nontorsion: Option<Grading> = None;
    for &g in range.iter().rev() {
        let k = scan.kernel(g)?;
        let k_up = scan.kernel(g + grading(1))?;
        let den = scan.full_image(&k_up, g)?;
        let ki = k.intersect(scan.iminus(g)?)?;
        if best_nontrivial.is_none() && !den.contains_subgroup(&ki)? {
            best_nontrivial = Some(g);
        }
        if best_nontorsion.is_none() && ki.sum(&den)?.rank() > den.rank() {
            best_nontorsion = Some(g);
        }
        if best_nontrivial.is_some() && best_nontorsion.is_some() {
            break;
        }
    }
    let (Some(g1), Some(g2)) = (best_nontrivial, best_nontorsion) else {
        return Err(DinvError::NoValue(format!(
            "d^- has no witness in the window of {}",
            m.name
        )));
    };
    if g1 != g2 {
        return Err(DinvError::InvariantViolation(format!(
            "d^- readings disagree: nontrivial {} vs nontorsion {}",
            format_grading(&g1),
            format_grading(&g2)
        )));
    }
    let d = d_invariant(m, v)?;
    if g1 != d.value - grading(2) {
        return Err(DinvError::InvariantViolation(format!(
            "d^- = {} but d - 2 = {}",
            format_grading(&g1),
            format_grading(&(d.value - grading(2)))
        )));
    }
    Ok(DValue {
        value: g1,
        certified: d.certified,
        witness: None,
    })
}

/// `d*^-(Y, s, V)`: the maximal grading of an element of `K(J^-)` with
/// nontorsion image in `KQ^V(HF^inf)`, where `J^- = image of I^- in Q^V`.
/// The identity `d*^- = d* - 2` is asserted.
pub fn d_star_minus(m: &HFModel, v: &Subspace) -> Result<DValue, DinvError> {
    let scan = Scan::new(m, v);
    let range = scan.scan_range();
    let mut best: Option<Grading> = None;
    for &g in range.iter().rev() {
        let den = scan.image_sum(g)?;
        let den_down = scan.image_sum(g - grading(1))?;
        // J^- at g, presented in the ambient module.
        let jm = scan.iminus(g)?.sum(&den)?;
        // Elements of J^- killed by the full H-action in Q^V.
        let mut s = jm.clone();
        for i in 0..scan.w().n() {
            let a = scan
                .w()
                .a_at(i, g)
                .ok_or_else(|| DinvError::NoValue("action left the window".into()))?;
            s = s.intersect(&den_down.preimage_under(a)?)?;
        }
        if s.sum(&den)?.rank() > den.rank() {
            best = Some(g);
            break;
        }
    }
    let Some(g) = best else {
        return Err(DinvError::NoValue(format!(
            "d*^- has no witness in the window of {}",
            m.name
        )));
    };
    let ds = d_star(m, v)?;
    if g != ds.value - grading(2) {
        return Err(DinvError::InvariantViolation(format!(
            "d*^- = {} but d* - 2 = {}",
            format_grading(&g),
            format_grading(&(ds.value - grading(2)))
        )));
    }
    Ok(DValue {
        value: g,
        certified: ds.certified,
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct DTableEntry {
    pub subspace: Subspace,
    pub d: DValue,
    pub d_star: DValue,
}

#[derive(Debug, Clone)]
pub struct DTable {
    pub model: String,
    pub bound: u64,
    pub entries: Vec<DTableEntry>,
}

impl DTable {
    /// Looks up the entry for the saturation of `v`, if enumerated.
    pub fn entry_for(&self, v: &Subspace) -> Option<&DTableEntry> {
        let sat = saturate_subspace(v);
        self.entries.iter().find(|e| e.subspace == sat)
    }

    pub fn values(&self) -> Vec<(usize, Grading, Grading)> {
        self.entries
            .iter()
            .map(|e| (e.subspace.rank(), e.d.value, e.d_star.value))
            .collect()
    }
}

/// Computes d and d* for every enumerated saturated subspace of every rank,
/// in deterministic order. Entries are independent; with the `parallel`
/// feature they are evaluated concurrently (`jobs` bounds the thread count).
pub fn d_table(m: &HFModel, bound: u64, jobs: Option<usize>) -> Result<DTable, DinvError> {
    let n = m.n();
    let mut subspaces = Vec::new();
    for k in 0..=n {
        subspaces.extend(enumerate_primitive_subspaces(n, k, bound));
    }
    let entries = compute_entries(m, &subspaces, jobs)?;
    Ok(DTable {
        model: m.name.clone(),
        bound,
        entries,
    })
}

#[cfg(feature = "parallel")]
fn compute_entries(
    m: &HFModel,
    subspaces: &[Subspace],
    jobs: Option<usize>,
) -> Result<Vec<DTableEntry>, DinvError> {
    use rayon::prelude::*;
    let run = || {
        subspaces
            .par_iter()
            .map(|v| entry_for_subspace(m, v))
            .collect::<Result<Vec<_>, _>>()
    };
    match jobs {
        Some(j) if j > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| DinvError::NoValue(e.to_string()))?
            .install(run),
        _ => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn compute_entries(
    m: &HFModel,
    subspaces: &[Subspace],
    _jobs: Option<usize>,
) -> Result<Vec<DTableEntry>, DinvError> {
    subspaces.iter().map(|v| entry_for_subspace(m, v)).collect()
}

fn entry_for_subspace(m: &HFModel, v: &Subspace) -> Result<DTableEntry, DinvError> {
    Ok(DTableEntry {
        subspace: saturate_subspace(v),
        d: d_invariant(m, v)?,
        d_star: d_star(m, v)?,
    })
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: String,
    pub ok: bool,
    pub details: Vec<String>,
}

impl PropertyReport {
    fn new(name: &str) -> Self {
        PropertyReport {
            name: name.to_string(),
            ok: true,
            details: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.ok = false;
        self.details.push(msg);
    }
}

/// Rank inequality and mod-2Z congruence along a nested chain of subspaces:
/// `d(V) >= d(V') - rank(V/V')` and `d*(V) <= d*(V') + rank(V/V')`, each
/// with the two sides congruent modulo 2Z.
pub fn check_rank_inequality(m: &HFModel, chain: &[Subspace]) -> Result<PropertyReport, DinvError> {
    let mut report = PropertyReport::new("rank-inequality");
    for pair in chain.windows(2) {
        let (small, big) = (&saturate_subspace(&pair[0]), &saturate_subspace(&pair[1]));
        if !big.span().contains_subgroup(small.span())? {
            report.fail("chain is not nested".into());
            return Ok(report);
        }
        let rdiff = grading((big.rank() - small.rank()) as i64);
        let d_big = d_invariant(m, big)?.value;
        let d_small = d_invariant(m, small)?.value;
        if d_big < d_small - rdiff {
            report.fail(format!(
                "d({}) < d({}) - rank difference: {} < {} - {}",
                big.rank(),
                small.rank(),
                format_grading(&d_big),
                format_grading(&d_small),
                format_grading(&rdiff)
            ));
        }
        if !is_even_integer(d_big - (d_small - rdiff)) {
            report.fail(format!(
                "d congruence fails: {} vs {}",
                format_grading(&d_big),
                format_grading(&(d_small - rdiff))
            ));
        }
        let s_big = d_star(m, big)?.value;
        let s_small = d_star(m, small)?.value;
        if s_big > s_small + rdiff {
            report.fail(format!(
                "d*({}) > d*({}) + rank difference: {} > {} + {}",
                big.rank(),
                small.rank(),
                format_grading(&s_big),
                format_grading(&s_small),
                format_grading(&rdiff)
            ));
        }
        if !is_even_integer(s_big - (s_small + rdiff)) {
            report.fail(format!(
                "d* congruence fails: {} vs {}",
                format_grading(&s_big),
                format_grading(&(s_small + rdiff))
            ));
        }
    }
    Ok(report)
}

fn is_even_integer(g: Grading) -> bool {
    g.is_integer() && g.numer() % 2 == 0
}

/// Simplicity criterion: when `d_bot = d_top - b_1`, the whole table is
/// affine: `d(., V) = d_top - rank V` and `d*(., V) = d_bot + rank V`.
pub fn check_simple(m: &HFModel, bound: u64) -> Result<(bool, PropertyReport), DinvError> {
    let mut report = PropertyReport::new("simple");
    let bot = d_bot(m)?.value;
    let top = d_top(m)?.value;
    let simple = bot == top - grading(m.n() as i64);
    if simple {
        let table = d_table(m, bound, None)?;
        for e in &table.entries {
            let r = grading(e.subspace.rank() as i64);
            if e.d.value != top - r {
                report.fail(format!(
                    "simple model but d(rank {}) = {} != d_top - rank",
                    e.subspace.rank(),
                    format_grading(&e.d.value)
                ));
            }
            if e.d_star.value != bot + r {
                report.fail(format!(
                    "simple model but d*(rank {}) = {} != d_bot + rank",
                    e.subspace.rank(),
                    format_grading(&e.d_star.value)
                ));
            }
        }
    }
    Ok((simple, report))
}

/// Duality: `d(Y, V) = -d*(-Y, V)` and `d*(Y, V) = -d(-Y, V)` over the
/// enumerated table.
pub fn check_duality(
    m: &HFModel,
    m_rev: &HFModel,
    bound: u64,
) -> Result<PropertyReport, DinvError> {
    let mut report = PropertyReport::new("duality");
    let n = m.n();
    for k in 0..=n {
        for v in enumerate_primitive_subspaces(n, k, bound) {
            let d = d_invariant(m, &v)?.value;
            let ds = d_star(m, &v)?.value;
            let rd = d_invariant(m_rev, &v)?.value;
            let rds = d_star(m_rev, &v)?.value;
            if d != -rds {
                report.fail(format!(
                    "d(Y,V) = {} but -d*(-Y,V) = {} (rank {})",
                    format_grading(&d),
                    format_grading(&-rds),
                    k
                ));
            }
            if ds != -rd {
                report.fail(format!(
                    "d*(Y,V) = {} but -d(-Y,V) = {} (rank {})",
                    format_grading(&ds),
                    format_grading(&-rd),
                    k
                ));
            }
        }
    }
    Ok(report)
}

/// Additivity: `d(Y # Z, V + W) = d(Y, V) + d(Z, W)` (and for d*) over
/// enumerated factor subspaces, plus top additivity.
pub fn check_additivity(
    a: &HFModel,
    b: &HFModel,
    ab: &HFModel,
    bound: u64,
) -> Result<PropertyReport, DinvError> {
    let mut report = PropertyReport::new("additivity");
    let (na, nb) = (a.n(), b.n());
    for ka in 0..=na {
        for va in enumerate_primitive_subspaces(na, ka, bound) {
            for kb in 0..=nb {
                for vb in enumerate_primitive_subspaces(nb, kb, bound) {
                    // V + W inside Z^{na+nb}: pad coordinates.
                    let mut cols = Vec::new();
                    for x in va.basis_vectors() {
                        let mut c = x.clone();
                        c.resize(na + nb, BigInt::from(0));
                        cols.push(c);
                    }
                    for y in vb.basis_vectors() {
                        let mut c = vec![BigInt::from(0); na];
                        c.extend(y.clone());
                        cols.push(c);
                    }
                    let vw = Subspace::new(na + nb, &cols)?;
                    let lhs = d_invariant(ab, &vw)?.value;
                    let rhs = d_invariant(a, &va)?.value + d_invariant(b, &vb)?.value;
                    if lhs != rhs {
                        report.fail(format!(
                            "d not additive at ranks ({},{}): {} != {}",
                            ka,
                            kb,
                            format_grading(&lhs),
                            format_grading(&rhs)
                        ));
                    }
                    let lhs = d_star(ab, &vw)?.value;
                    let rhs = d_star(a, &va)?.value + d_star(b, &vb)?.value;
                    if lhs != rhs {
                        report.fail(format!(
                            "d* not additive at ranks ({},{}): {} != {}",
                            ka,
                            kb,
                            format_grading(&lhs),
                            format_grading(&rhs)
                        ));
                    }
                }
            }
        }
    }
    let top_sum = d_top(a)?.value + d_top(b)?.value;
    let top_ab = d_top(ab)?.value;
    if top_ab != top_sum {
        report.fail(format!(
            "d_top not additive: {} != {}",
            format_grading(&top_ab),
            format_grading(&top_sum)
        ));
    }
    Ok(report)
}
