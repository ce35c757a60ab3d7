//! Consumers of d-tables: linking-form metabolizers and the slice-link
//! obstruction, and negative-definite filling bounds with the
//! characteristic-vector (Elkies) dichotomy.

use crate::dinv::DTable;
use crate::functors::Subspace;
use crate::grading::{grading, half, Grading};
use crate::intlinalg::{determinant, IntMatrix};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObstructError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("group too large: order {0} exceeds cap {1}")]
    Capacity(u128, u128),
}

/// Element of a finite abelian group `Z/n_1 x ... x Z/n_r` (each coordinate
/// reduced mod its factor).
pub type GroupElement = Vec<u64>;

/// The Q/Z-valued linking pairing on a finite abelian group.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct LinkingForm {
    /// invariant factors `n_1 | n_2 | ...`
    pub group: Vec<u64>,
    /// symmetric matrix of rationals mod 1 (fraction strings in JSON):
    /// `pairing[i][j]` is the value on the `i`-th and `j`-th generators
    pub pairing: Vec<Vec<crate::grading::GradingStr>>,
}

impl LinkingForm {
    pub fn order(&self) -> u128 {
        self.group.iter().map(|&n| n as u128).product()
    }

    pub fn check(&self) -> Result<(), ObstructError> {
        let r = self.group.len();
        if self.pairing.len() != r || self.pairing.iter().any(|row| row.len() != r) {
            return Err(ObstructError::Input("pairing matrix shape mismatch".into()));
        }
        if self.group.iter().any(|&n| n == 0) {
            return Err(ObstructError::Input("group factors must be finite".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if self.pairing[i][j].0 != self.pairing[j][i].0 {
                    return Err(ObstructError::Input("pairing is not symmetric".into()));
                }
            }
            // n_i * lambda(e_i, .) = 0 mod 1
            for j in 0..r {
                let v = self.pairing[i][j].0 * Ratio::from_integer(self.group[i] as i64);
                if !v.is_integer() {
                    return Err(ObstructError::Input(format!(
                        "pairing not well-defined at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }

    /// `lambda(x, y)` reduced into `[0, 1)`.
    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Ratio<i64> {
        let mut acc = Ratio::zero();
        for i in 0..self.group.len() {
            for j in 0..self.group.len() {
                acc += self.pairing[i][j].0
                    * Ratio::from_integer(x[i] as i64)
                    * Ratio::from_integer(y[j] as i64);
            }
        }
        mod_one(acc)
    }
}

fn mod_one(x: Ratio<i64>) -> Ratio<i64> {
    let f = x.floor();
    x - f
}

fn add_elements(group: &[u64], x: &GroupElement, y: &GroupElement) -> GroupElement {
    group
        .iter()
        .zip(x.iter().zip(y.iter()))
        .map(|(&n, (&a, &b))| (a + b) % n)
        .collect()
}

fn all_elements(group: &[u64]) -> Vec<GroupElement> {
    let mut out = vec![vec![]];
    for &n in group {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for e in &out {
            for v in 0..n {
                let mut e2 = e.clone();
                e2.push(v);
                next.push(e2);
            }
        }
        out = next;
    }
    out
}

fn closure(group: &[u64], gens: &[GroupElement]) -> BTreeSet<GroupElement> {
    let zero: GroupElement = group.iter().map(|_| 0).collect();
    let mut set = BTreeSet::from([zero]);
    let mut frontier: Vec<GroupElement> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = add_elements(group, &x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// A subgroup of a finite abelian group, listed exhaustively with a small
/// generating set.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Metabolizer {
    pub generators: Vec<GroupElement>,
    pub elements: Vec<GroupElement>,
}

pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;

/// Enumerates all metabolizers of the linking form: subgroups `A` with
/// `|A|^2 = |G|` and the pairing vanishing on `A x A`. Returns an empty list
/// when `|G|` is not a perfect square.
pub fn enumerate_metabolizers(
    f: &LinkingForm,
    cap: Option<u128>,
) -> Result<Vec<Metabolizer>, ObstructError> {
    f.check()?;
    let cap = cap.unwrap_or(DEFAULT_GROUP_CAP);
    let order = f.order();
    if order > cap {
        return Err(ObstructError::Capacity(order, cap));
    }
    let root = (order as f64).sqrt().round() as u128;
    if root * root != order {
        return Ok(Vec::new());
    }
    let elements = all_elements(&f.group);
    // Enumerate the full subgroup lattice by closing generator sets.
    let zero: GroupElement = f.group.iter().map(|_| 0).collect();
    let trivial = BTreeSet::from([zero]);
    let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    let mut gens_of: Vec<(Vec<GroupElement>, Vec<GroupElement>)> = Vec::new();
    let key = |s: &BTreeSet<GroupElement>| s.iter().cloned().collect::<Vec<_>>();
    seen.insert(key(&trivial));
    gens_of.push((Vec::new(), key(&trivial)));
    let mut i = 0;
    while i < gens_of.len() {
        let (gens, elems) = gens_of[i].clone();
        for e in &elements {
            if elems.binary_search(e).is_ok() {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(e.clone());
            let closed = closure(&f.group, &g2);
            let k = key(&closed);
            if seen.insert(k.clone()) {
                gens_of.push((g2, k));
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    for (gens, elems) in gens_of {
        if (elems.len() as u128) != root {
            continue;
        }
        if elems
            .iter()
            .all(|x| elems.iter().all(|y| f.eval(x, y).is_zero()))
        {
            out.push(Metabolizer {
                generators: gens,
                elements: elems,
            });
        }
    }
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    out.dedup_by(|a, b| a.elements == b.elements);
    Ok(out)
}

/// Table of (d_bot, d_top) per torsion spin-c label, as consumed by the
/// slice obstruction.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct DInvariantTable {
    pub b1: usize,
    pub group: Vec<u64>,
    /// `(label, d_bot, d_top)`
    pub entries: Vec<(
        GroupElement,
        crate::grading::GradingStr,
        crate::grading::GradingStr,
    )>,
}

impl DInvariantTable {
    pub fn lookup(&self, t: &GroupElement) -> Option<(Grading, Grading)> {
        self.entries
            .iter()
            .find(|(label, _, _)| label == t)
            .map(|(_, b, tp)| (b.0, tp.0))
    }

    pub fn check(&self) -> Result<(), ObstructError> {
        let mut labels: Vec<_> = self.entries.iter().map(|(l, _, _)| l.clone()).collect();
        labels.sort();
        labels.dedup();
        let all = all_elements(&self.group);
        if labels.len() != all.len() {
            return Err(ObstructError::Input(
                "table labels do not exhaust the declared group".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SliceVerdict {
    Obstructed { reason: String },
    Unobstructed { metabolizers: Vec<Metabolizer> },
}

/// The slice-link obstruction: a slice link's branched double cover bounds a
/// rational homology ball-like filling, forcing (1) nullity: `b_1 = n - 1`
/// components, and (2) some metabolizer `A` of the linking form on which
/// every label `t in A` has `(d_bot, d_top) = (-b_1/2, +b_1/2)`.
pub fn slice_obstruction(
    table: &DInvariantTable,
    form: &LinkingForm,
    components: usize,
) -> Result<SliceVerdict, ObstructError> {
    form.check()?;
    table.check()?;
    if table.group != form.group {
        return Err(ObstructError::Input(
            "d-invariant table and linking form declare different groups".into(),
        ));
    }
    if components == 0 {
        return Err(ObstructError::Input(
            "component count must be positive".into(),
        ));
    }
    if table.b1 != components - 1 {
        return Ok(SliceVerdict::Obstructed {
            reason: format!(
                "nullity: b_1 = {} but a slice {}-component link needs b_1 = {}",
                table.b1,
                components,
                components - 1
            ),
        });
    }
    let b1 = table.b1 as i64;
    let want = (half(-b1), half(b1));
    let metabolizers = enumerate_metabolizers(form, None)?;
    if metabolizers.is_empty() {
        return Ok(SliceVerdict::Obstructed {
            reason: "the linking form admits no metabolizer".into(),
        });
    }
    let survivors: Vec<Metabolizer> = metabolizers
        .into_iter()
        .filter(|a| {
            a.elements.iter().all(|t| match table.lookup(t) {
                Some(pair) => pair == want,
                None => false,
            })
        })
        .collect();
    if survivors.is_empty() {
        Ok(SliceVerdict::Obstructed {
            reason: format!(
                "no metabolizer has (d_bot, d_top) = ({}, {}) on all its labels",
                crate::grading::format_grading(&want.0),
                crate::grading::format_grading(&want.1)
            ),
        })
    } else {
        Ok(SliceVerdict::Unobstructed {
            metabolizers: survivors,
        })
    }
}

/// True iff every table entry matches the standard pattern
/// `d = n/2 - rank V`, `d* = -n/2 + rank V` forced by a rational homology
/// cobordism to `#^n S^1 x S^2` with no second homology.
pub fn qhcob_standard_check(dtable: &DTable, n: usize) -> bool {
    dtable.entries.iter().all(|e| {
        let r = grading(e.subspace.rank() as i64);
        e.d.value == half(n as i64) - r && e.d_star.value == half(-(n as i64)) + r
    })
}

/// The negative-semidefinite filling bound:
/// `c_1^2 + b_2^- <= 4 d(Y, t, V) - 2 b_1(Y) + 4 rank V`, exactly.
pub fn negdef_bound(c1sq: Grading, b2minus: u64, b1: u64, rankv: u64, d: Grading) -> bool {
    c1sq + grading(b2minus as i64)
        <= grading(4) * d - grading(2 * b1 as i64) + grading(4 * rankv as i64)
}

/// A lattice given by its Gram matrix.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub gram: IntMatrix,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    pub fn is_unimodular(&self) -> Result<bool, ObstructError> {
        let d = determinant(&self.gram).map_err(|e| ObstructError::Input(e.to_string()))?;
        Ok(d.abs() == BigInt::one())
    }

    /// Negative definiteness via leading principal minors alternating sign.
    pub fn is_negative_definite(&self) -> Result<bool, ObstructError> {
        if !self.is_symmetric() {
            return Ok(false);
        }
        for k in 1..=self.rank() {
            let mut sub = IntMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    sub.set(i, j, self.gram.get(i, j).clone());
                }
            }
            let d = determinant(&sub).map_err(|e| ObstructError::Input(e.to_string()))?;
            let want_positive = k % 2 == 0;
            if d.is_zero() || d.is_positive() != want_positive {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharVectorMax {
    /// `max(c^2 + rank)` over characteristic vectors.
    pub max: BigInt,
    pub witness: Vec<i64>,
    pub certified: bool,
}

/// Exhaustive certified search for `max(c^2 + rank)` over characteristic
/// vectors of a negative-definite unimodular lattice. `c` is characteristic
/// iff `Gc = diag(G) (mod 2)`; the search runs over `c_0 + 2 Z^n` inside a
/// growing box, certified once every vector outside the box provably scores
/// below the best found (definiteness radius from the adjugate norm).
pub fn char_vector_max(
    l: &Lattice,
    initial_bound: Option<i64>,
) -> Result<CharVectorMax, ObstructError> {
    if !l.is_negative_definite()? {
        return Err(ObstructError::Input(
            "lattice is not negative definite".into(),
        ));
    }
    if !l.is_unimodular()? {
        return Err(ObstructError::Input("lattice is not unimodular".into()));
    }
    let n = l.rank();
    if n == 0 {
        return Ok(CharVectorMax {
            max: BigInt::zero(),
            witness: vec![],
            certified: true,
        });
    }
    let c0 = characteristic_mod2(&l.gram)
        .ok_or_else(|| ObstructError::Input("no characteristic class mod 2".into()))?;
    // lambda_min(-G) >= 1 / ||(-G)^{-1}||_inf; with |det| = 1 the inverse is
    // +-adjugate, so the norm is an integer we can compute exactly.
    let adj_norm = adjugate_inf_norm(&l.gram)?;
    let mut radius = initial_bound.unwrap_or(1).max(1);
    loop {
        let (best, witness) = search_box(&l.gram, &c0, radius);
        // Outside the box |c|_inf >= radius + 1, so c^2 <= -(radius+1)^2/N;
        // every outside vector scores at most best iff
        // (radius+1)^2 >= N * (n - best).
        let r1 = BigInt::from(radius + 1);
        if &r1 * &r1 >= &adj_norm * (BigInt::from(n as i64) - &best) {
            return Ok(CharVectorMax {
                max: best,
                witness,
                certified: true,
            });
        }
        if radius > 16 {
            return Ok(CharVectorMax {
                max: best,
                witness,
                certified: false,
            });
        }
        radius += 1;
    }
}

/// Solves `G c = diag(G) (mod 2)` by Gaussian elimination over F_2.
fn characteristic_mod2(g: &IntMatrix) -> Option<Vec<u8>> {
    let n = g.rows();
    let mut a = vec![vec![0u8; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = (g.get(i, j) % 2u8 != BigInt::zero()) as u8;
        }
        a[i][n] = (g.get(i, i) % 2u8 != BigInt::zero()) as u8;
    }
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| a[r][col] == 1) else {
            continue;
        };
        a.swap(row, p);
        for r in 0..n {
            if r != row && a[r][col] == 1 {
                for c in 0..=n {
                    a[r][c] ^= a[row][c];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // Consistency (guaranteed for unimodular G, but check anyway).
    for r in row..n {
        if a[r][n] == 1 {
            return None;
        }
    }
    let mut c = vec![0u8; n];
    for (r, &col) in pivots.iter().enumerate() {
        c[col] = a[r][n];
    }
    Some(c)
}

fn adjugate_inf_norm(g: &IntMatrix) -> Result<BigInt, ObstructError> {
    let n = g.rows();
    let mut norm = BigInt::zero();
    for i in 0..n {
        let mut row_sum = BigInt::zero();
        for j in 0..n {
            // cofactor C_{ji} enters row i of the adjugate
            let mut minor = IntMatrix::zeros(n - 1, n - 1);
            for (ri, r) in (0..n).filter(|&r| r != j).enumerate() {
                for (ci, c) in (0..n).filter(|&c| c != i).enumerate() {
                    minor.set(ri, ci, g.get(r, c).clone());
                }
            }
            let d = determinant(&minor).map_err(|e| ObstructError::Input(e.to_string()))?;
            row_sum += d.abs();
        }
        if row_sum > norm {
            norm = row_sum;
        }
    }
    Ok(norm.max(BigInt::one()))
}

fn search_box(g: &IntMatrix, c0: &[u8], radius: i64) -> (BigInt, Vec<i64>) {
    let n = g.rows();
    let mut best = None;
    let mut witness = vec![0i64; n];
    let mut c = vec![0i64; n];
    fn rec(
        g: &IntMatrix,
        c0: &[u8],
        radius: i64,
        c: &mut Vec<i64>,
        i: usize,
        best: &mut Option<BigInt>,
        witness: &mut Vec<i64>,
    ) {
        let n = g.rows();
        if i == n {
            let mut sq = BigInt::zero();
            for a in 0..n {
                for b in 0..n {
                    sq += g.get(a, b) * BigInt::from(c[a]) * BigInt::from(c[b]);
                }
            }
            let score = sq + BigInt::from(n as i64);
            if best.as_ref().map_or(true, |b| score > *b) {
                *best = Some(score);
                witness.clone_from(c);
            }
            return;
        }
        let parity = c0[i] as i64;
        let mut v = -radius;
        while v <= radius {
            if (v - parity).rem_euclid(2) == 0 {
                c[i] = v;
                rec(g, c0, radius, c, i + 1, best, witness);
            }
            v += 1;
        }
        c[i] = 0;
    }
    rec(g, c0, radius, &mut c, 0, &mut best, &mut witness);
    (best.expect("box always contains a lattice point"), witness)
}

/// Filter for negative-definite filling candidates: the subspaces `V` from
/// the table with `d(V) >= b_1/2 - rank V`, each flagged when the inequality
/// is tight (equality forces the intersection form to be diagonalizable).
pub fn intform_kernel_candidates(dtable: &DTable, b1: usize) -> Vec<(Subspace, bool)> {
    let mut out = Vec::new();
    for e in &dtable.entries {
        let bound = half(b1 as i64) - grading(e.subspace.rank() as i64);
        if e.d.value >= bound {
            out.push((e.subspace.clone(), e.d.value == bound));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::GradingStr;

    fn z9_form() -> LinkingForm {
        LinkingForm {
            group: vec![9],
            pairing: vec![vec![GradingStr(Ratio::new(1, 9))]],
        }
    }

    #[test]
    fn metabolizers_z9() {
        let out = enumerate_metabolizers(&z9_form(), None).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].elements, vec![vec![0], vec![3], vec![6]]);
    }

    #[test]
    fn metabolizers_z2_none() {
        let f = LinkingForm {
            group: vec![2],
            pairing: vec![vec![GradingStr(Ratio::new(1, 2))]],
        };
        assert!(enumerate_metabolizers(&f, None).unwrap().is_empty());
    }

    #[test]
    fn metabolizers_z3_squared_hyperbolic() {
        let f = LinkingForm {
            group: vec![3, 3],
            pairing: vec![
                vec![GradingStr(Ratio::new(1, 3)), GradingStr(Ratio::zero())],
                vec![GradingStr(Ratio::zero()), GradingStr(Ratio::new(-1, 3))],
            ],
        };
        let out = enumerate_metabolizers(&f, None).unwrap();
        let sets: Vec<_> = out.iter().map(|m| m.elements.clone()).collect();
        assert_eq!(out.len(), 2, "{:?}", sets);
        // <(1,1)> and <(1,2)>
        assert!(sets.iter().any(|s| s.contains(&vec![1, 1])));
        assert!(sets.iter().any(|s| s.contains(&vec![1, 2])));
    }

    fn knot_table(bad: bool) -> DInvariantTable {
        let entries = (0..9u64)
            .map(|t| {
                let d = if bad && t == 3 {
                    grading(-2)
                } else {
                    grading(0)
                };
                (vec![t], GradingStr(d), GradingStr(grading(0)))
            })
            .collect();
        DInvariantTable {
            b1: 0,
            group: vec![9],
            entries,
        }
    }

    #[test]
    fn slice_verdicts() {
        let f = z9_form();
        match slice_obstruction(&knot_table(false), &f, 1).unwrap() {
            SliceVerdict::Unobstructed { metabolizers } => {
                assert_eq!(metabolizers.len(), 1)
            }
            v => panic!("expected unobstructed, got {:?}", v),
        }
        match slice_obstruction(&knot_table(true), &f, 1).unwrap() {
            SliceVerdict::Obstructed { .. } => {}
            v => panic!("expected obstructed, got {:?}", v),
        }
        // Nullity failure reported before any d-value is read.
        match slice_obstruction(&knot_table(false), &f, 2).unwrap() {
            SliceVerdict::Obstructed { reason } => assert!(reason.contains("nullity")),
            v => panic!("expected nullity obstruction, got {:?}", v),
        }
    }

    #[test]
    fn negdef_bound_identities() {
        // V = H_1 reduces to the bottom bound 4 d_bot + 2 b_1.
        for (b1, db_num) in [(2u64, -1i64), (3, 0), (1, 2)] {
            let d = grading(db_num);
            for c1_num in -6..=6 {
                for b2 in 0..4u64 {
                    let lhs = negdef_bound(grading(c1_num), b2, b1, b1, d);
                    let rhs = grading(c1_num) + grading(b2 as i64)
                        <= grading(4) * d + grading(2 * b1 as i64);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // Boundary case: equality holds.
        assert!(negdef_bound(grading(0), 0, 2, 1, half(2) - grading(1)));
    }

    fn diag_lattice(vals: &[i64]) -> Lattice {
        let n = vals.len();
        let mut g = IntMatrix::zeros(n, n);
        for (i, &v) in vals.iter().enumerate() {
            g.set(i, i, BigInt::from(v));
        }
        Lattice { gram: g }
    }

    fn e8_negative() -> Lattice {
        // Negated E8 Gram matrix in the standard simple-root basis.
        let rows: [[i64; 8]; 8] = [
            [2, -1, 0, 0, 0, 0, 0, 0],
            [-1, 2, -1, 0, 0, 0, 0, 0],
            [0, -1, 2, -1, 0, 0, 0, 0],
            [0, 0, -1, 2, -1, 0, 0, 0],
            [0, 0, 0, -1, 2, -1, 0, -1],
            [0, 0, 0, 0, -1, 2, -1, 0],
            [0, 0, 0, 0, 0, -1, 2, 0],
            [0, 0, 0, 0, -1, 0, 0, 2],
        ];
        let mut g = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            for j in 0..8 {
                g.set(i, j, BigInt::from(-rows[i][j]));
            }
        }
        Lattice { gram: g }
    }

    #[test]
    fn char_max_diagonal() {
        for r in 1..=4 {
            let l = diag_lattice(&vec![-1; r]);
            let out = char_vector_max(&l, None).unwrap();
            assert_eq!(out.max, BigInt::zero(), "rank {}", r);
            assert!(out.certified);
            assert!(out.witness.iter().all(|&c| c % 2 != 0));
        }
    }

    #[test]
    fn char_max_e8() {
        let l = e8_negative();
        assert!(l.is_negative_definite().unwrap());
        assert!(l.is_unimodular().unwrap());
        let out = char_vector_max(&l, None).unwrap();
        assert_eq!(out.max, BigInt::from(8));
        assert!(out.certified);
        assert_eq!(out.witness, vec![0; 8]);
    }

    #[test]
    fn rejects_indefinite() {
        let l = diag_lattice(&[-1, 1]);
        assert!(char_vector_max(&l, None).is_err());
    }

    #[test]
    fn candidates_on_example_table() {
        let m = crate::catalog::build_example_hyp();
        let table = crate::dinv::d_table(&m, 3, None).unwrap();
        let cands = intform_kernel_candidates(&table, 2);
        // Exactly <beta> and H_1, both tight.
        assert_eq!(
            cands.len(),
            2,
            "{:?}",
            cands.iter().map(|c| c.0.rank()).collect::<Vec<_>>()
        );
        for (v, tight) in &cands {
            assert!(tight);
            assert!(
                (v.rank() == 2)
                    || (v.rank() == 1
                        && v.span().gens().column(0) == vec![BigInt::zero(), BigInt::one()])
            );
        }
        // Standard tables pass everywhere with equality.
        let s2 = crate::catalog::build_s1s2(2);
        let t2 = crate::dinv::d_table(&s2, 1, None).unwrap();
        let c2 = intform_kernel_candidates(&t2, 2);
        assert_eq!(c2.len(), t2.entries.len());
        assert!(c2.iter().all(|(_, tight)| *tight));
        assert!(qhcob_standard_check(&t2, 2));
        assert!(!qhcob_standard_check(&table, 2));
    }
}
