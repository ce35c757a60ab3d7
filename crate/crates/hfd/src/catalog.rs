//! Hard-coded example models used as ground truth: connected sums of
//! S^1 x S^2, 0-surgery on the right-handed trefoil, and their sum.

use crate::exterior::{build_mst, mst_basis};
use crate::grading::{grading, half, Grading};
use crate::hfmodel::{HFModel, TorsionLabel};
use crate::intlinalg::SubgroupPresentation;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A named catalog entry with a human-readable description of the manifold.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub takes_n: bool,
    pub note: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "s1s2",
        takes_n: true,
        note: "#^n (S^1 x S^2) with the torsion spin-c structure",
    },
    CatalogEntry {
        name: "trefoil",
        takes_n: false,
        note: "0-surgery on the right-handed trefoil, torsion spin-c structure",
    },
    CatalogEntry {
        name: "example-hyp",
        takes_n: false,
        note: "(S^1 x S^2) # (trefoil 0-surgery), stored directly",
    },
];

/// Builds a catalog model by name. `n` is consulted only for entries with
/// `takes_n`.
pub fn build(name: &str, n: usize) -> Option<HFModel> {
    match name {
        "s1s2" => Some(build_s1s2(n)),
        "trefoil" => Some(build_trefoil_surgery()),
        "example-hyp" => Some(build_example_hyp()),
        _ => None,
    }
}

/// Shared shape of all catalog models: the standard module on a window,
/// with `I^-` spanned by the basis elements `l_S U^m` selected by a
/// predicate on `(S, m)`.
#[allow(clippy::too_many_arguments)]
fn model_from_predicate(
    name: &str,
    n: usize,
    sigma: Grading,
    lo: Grading,
    hi: Grading,
    full_below: Grading,
    zero_above: Grading,
    pred: impl Fn(u32, i64) -> bool,
) -> HFModel {
    let hf_inf = build_mst(n, sigma, lo, hi);
    let mut iminus = Vec::with_capacity(hf_inf.size());
    for g in hf_inf.gradings().collect::<Vec<_>>() {
        let t = (g - sigma).to_integer();
        let basis = mst_basis(n, (t.rem_euclid(2)) as u8);
        let rank = hf_inf.rank_at(g);
        let mut cols = Vec::new();
        for (idx, &mask) in basis.iter().enumerate() {
            let m = (mask.count_ones() as i64 - t) / 2;
            if pred(mask, m) {
                let mut col = vec![BigInt::zero(); rank];
                col[idx] = BigInt::one();
                cols.push(col);
            }
        }
        iminus.push(SubgroupPresentation::from_columns(rank, &cols).unwrap());
    }
    HFModel {
        name: name.to_string(),
        hf_inf,
        iminus,
        full_below,
        zero_above,
        torsion_label: Some(TorsionLabel {
            group: vec![],
            label: vec![],
        }),
        iplus_ranks: None,
    }
}

/// `S_n = #^n (S^1 x S^2)`: `HF^inf = M^st(n)` with top generator in
/// grading `n/2`, and `I^- = U . (span of the non-negative U-powers)`,
/// i.e. the elements `l_S U^m` with `m >= 1`.
pub fn build_s1s2(n: usize) -> HFModel {
    let sigma = half(-(n as i64));
    build_s1s2_windowed(n, sigma - grading(8), half(n as i64) + grading(6))
}

pub fn build_s1s2_windowed(n: usize, lo: Grading, hi: Grading) -> HFModel {
    let sigma = half(-(n as i64));
    model_from_predicate(
        &format!("s1s2-{}", n),
        n,
        sigma,
        lo,
        hi,
        sigma,
        half(n as i64) - grading(2),
        |_, m| m >= 1,
    )
}

/// 0-surgery on the right-handed trefoil: `n = 1`, rank 1 per half-integer
/// grading; `I^-` holds `e_g` for `g = 1/2 (mod 2), g <= -7/2` and for
/// `g = -1/2 (mod 2), g <= -5/2`.
pub fn build_trefoil_surgery() -> HFModel {
    model_from_predicate(
        "trefoil",
        1,
        half(-1),
        half(-17),
        half(15),
        half(-3),
        half(-5),
        // mask 1 is l_1 (grading 1/2 - 2m), mask 0 is l_{} (grading -1/2 - 2m)
        |mask, m| if mask == 1 { m >= 2 } else { m >= 1 },
    )
}

/// `(S^1 x S^2) # (trefoil 0-surgery)` written out directly: generators per
/// U-power are `a = l_{12}` (grading 1), `b = l_2`, `c = -l_1` (grading 0),
/// `d = -l_{}` (grading -1), with `alpha: a -> b, c -> d` and
/// `beta: a -> c, b -> -d`; `I^- = {U^m c, U^m d : m >= 1} + {U^m a, U^m b : m >= 2}`.
pub fn build_example_hyp() -> HFModel {
    model_from_predicate(
        "example-hyp",
        2,
        grading(-1),
        grading(-9),
        grading(7),
        grading(-2),
        grading(-2),
        // masks: 0b00 = d-column, 0b01 = c-column, 0b10 = b-column, 0b11 = a-column
        |mask, m| if mask & 0b10 != 0 { m >= 2 } else { m >= 1 },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfmodel::validate;

    #[test]
    fn all_catalog_models_validate() {
        for n in 0..=4 {
            let m = build_s1s2(n);
            let report = validate(&m);
            assert!(report.is_valid(), "s1s2-{}: {:?}", n, report.violations);
        }
        for name in ["trefoil", "example-hyp"] {
            let m = build(name, 0).unwrap();
            let report = validate(&m);
            assert!(report.is_valid(), "{}: {:?}", name, report.violations);
        }
    }

    #[test]
    fn s1s2_iminus_column_ranks() {
        // n = 2 columns: I^- ranks 0,0,1,2,2,... going down from the top
        // generator's grading 1.
        let m = build_s1s2(2);
        let expect = [(1i64, 0usize), (0, 0), (-1, 1), (-2, 2), (-3, 2), (-4, 2)];
        for (g, r) in expect {
            assert_eq!(m.iminus_at(grading(g)).unwrap().rank(), r, "grading {}", g);
        }
    }

    #[test]
    fn trefoil_iminus_profile() {
        let m = build_trefoil_surgery();
        for g in [-5, -7, -9, -11, -13] {
            assert_eq!(m.iminus_at(half(g)).unwrap().rank(), 1, "grading {}/2", g);
        }
        for g in [-3, -1, 1, 3, 5] {
            assert!(m.iminus_at(half(g)).unwrap().is_zero(), "grading {}/2", g);
        }
    }

    #[test]
    fn example_hyp_iminus_profile() {
        let m = build_example_hyp();
        let expect = [(1i64, 0usize), (0, 0), (-1, 0), (-2, 1), (-3, 2), (-4, 2)];
        for (g, r) in expect {
            assert_eq!(m.iminus_at(grading(g)).unwrap().rank(), r, "grading {}", g);
        }
    }

    #[test]
    fn s1s2_zero_is_sphere() {
        // n = 0: rank 1 in even gradings, I^- full below 0 and zero above -2.
        let m = build_s1s2(0);
        assert_eq!(m.n(), 0);
        assert_eq!(m.full_below, grading(0));
        assert_eq!(m.zero_above, grading(-2));
        assert!(m.iminus_at(grading(0)).unwrap().is_zero());
        assert!(m.iminus_at(grading(-2)).unwrap().is_full());
    }

    #[test]
    fn connected_sum_of_factors_matches_direct_model() {
        // Structural check: the tensor of s1s2-1 and the trefoil surgery has
        // the same I^- rank profile as the directly written model.
        let sum = crate::hfmodel::connected_sum(&build_s1s2(1), &build_trefoil_surgery()).unwrap();
        let direct = build_example_hyp();
        assert!(validate(&sum).is_valid());
        for g in -5..=2 {
            assert_eq!(
                sum.iminus_at(grading(g)).unwrap().rank(),
                direct.iminus_at(grading(g)).unwrap().rank(),
                "grading {}",
                g
            );
        }
        assert_eq!(sum.full_below, direct.full_below);
        assert_eq!(sum.zero_above, direct.zero_above);
    }

    #[test]
    fn reverse_orientation_validates_on_catalog() {
        for m in [build_s1s2(2), build_trefoil_surgery(), build_example_hyp()] {
            let rev = crate::hfmodel::reverse_orientation(&m).unwrap();
            let report = validate(&rev);
            assert!(report.is_valid(), "-{}: {:?}", m.name, report.violations);
        }
    }

    #[test]
    fn reverse_reverse_matches_original_profile() {
        let m = build_example_hyp();
        let rr =
            crate::hfmodel::reverse_orientation(&crate::hfmodel::reverse_orientation(&m).unwrap())
                .unwrap();
        assert_eq!(rr.hf_inf.sigma(), m.hf_inf.sigma());
        for g in -4..=1 {
            assert_eq!(
                rr.iminus_at(grading(g)).unwrap().rank(),
                m.iminus_at(grading(g)).unwrap().rank(),
                "grading {}",
                g
            );
        }
    }
}
