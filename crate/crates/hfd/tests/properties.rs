//! Property-based checks of the algebraic kernel: normal forms, exterior
//! algebra identities, saturation, and sign-convention invariance.

use hfd::catalog::{build_example_hyp, build_s1s2, build_trefoil_surgery};
use hfd::dinv::{d_invariant, d_star};
use hfd::exterior::{contract, wedge, ExtElement};
use hfd::functors::{enumerate_primitive_subspaces, saturate_subspace, Subspace};
use hfd::hfmodel::{HFModel, WindowModule};
use hfd::intlinalg::{column_hermite, determinant, rank, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i64..=6, r * c).prop_map(move |e| IntMatrix::from_i64(r, c, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_is_a_column_basis(m in small_matrix(5)) {
        let (h, u) = column_hermite(&m);
        // m * u = h with u unimodular: same column span, canonical shape.
        prop_assert_eq!(m.mul(&u).unwrap(), h.clone());
        let det = determinant(&u).unwrap();
        prop_assert!(det.abs().is_one());
        prop_assert_eq!(rank(&h), rank(&m));
        // Idempotence: the Hermite form of a Hermite form is itself.
        let (h2, _) = column_hermite(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn smith_form_diagonal_divisibility(m in small_matrix(5)) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.l.mul(&m).unwrap().mul(&snf.r).unwrap(), snf.s.clone());
        prop_assert!(snf.s.is_diagonal());
        prop_assert!(determinant(&snf.l).unwrap().abs().is_one());
        prop_assert!(determinant(&snf.r).unwrap().abs().is_one());
        let k = snf.s.rows().min(snf.s.cols());
        for i in 1..k {
            let prev = snf.s.get(i - 1, i - 1);
            let here = snf.s.get(i, i);
            if !prev.is_zero() {
                prop_assert!((here % prev).is_zero(), "divisibility chain");
            } else {
                prop_assert!(here.is_zero(), "zeros come last");
            }
        }
    }

    #[test]
    fn square_determinant_matches_smith_form(
        e in proptest::collection::vec(-5i64..=5, 16)
    ) {
        let m = IntMatrix::from_i64(4, 4, &e);
        let det = determinant(&m).unwrap();
        let snf = smith_normal_form(&m);
        let mut prod = BigInt::one();
        for i in 0..4 {
            prod *= snf.s.get(i, i);
        }
        prop_assert_eq!(det.abs(), prod.abs());
    }

    #[test]
    fn contraction_is_an_anticommuting_differential(
        v in proptest::collection::vec(-4i64..=4, 3),
        w in proptest::collection::vec(-4i64..=4, 3),
        coeffs in proptest::collection::vec(-4i64..=4, 8),
    ) {
        let v = ExtElement::vector(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let w = ExtElement::vector(&w.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let mut x = ExtElement::zero(3);
        for (mask, &c) in coeffs.iter().enumerate() {
            let idx: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            x = x.add(&ExtElement::basis(3, &idx).scale(&BigInt::from(c))).unwrap();
        }
        // i_v i_v = 0 and i_v i_w = -i_w i_v.
        let vv = contract(&v, &contract(&v, &x).unwrap()).unwrap();
        prop_assert!(vv.is_zero());
        let vw = contract(&v, &contract(&w, &x).unwrap()).unwrap();
        let wv = contract(&w, &contract(&v, &x).unwrap()).unwrap();
        prop_assert!(vw.add(&wv).unwrap().is_zero());
    }

    #[test]
    fn contraction_is_a_wedge_derivation(
        v in proptest::collection::vec(-3i64..=3, 3),
        a_idx in proptest::sample::subsequence(vec![0usize, 1, 2], 0..=3),
        b_idx in proptest::sample::subsequence(vec![0usize, 1, 2], 0..=3),
    ) {
        let v = ExtElement::vector(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let a = ExtElement::basis(3, &a_idx);
        let b = ExtElement::basis(3, &b_idx);
        // i_v(a ^ b) = (i_v a) ^ b + (-1)^|a| a ^ (i_v b).
        let lhs = contract(&v, &wedge(&a, &b).unwrap()).unwrap();
        let sign = if a_idx.len() % 2 == 0 { 1i64 } else { -1 };
        let rhs = wedge(&contract(&v, &a).unwrap(), &b)
            .unwrap()
            .add(&wedge(&a, &contract(&v, &b).unwrap()).unwrap().scale(&BigInt::from(sign)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn saturation_fixes_the_rational_span(
        p in -3i64..=3,
        q in -3i64..=3,
        c in 1i64..=5,
    ) {
        prop_assume!(p != 0 || q != 0);
        let v = Subspace::from_i64(2, &[vec![c * p, c * q]]).unwrap();
        let sat = saturate_subspace(&v);
        prop_assert!(sat.is_saturated());
        prop_assert_eq!(sat.rank(), 1);
        prop_assert!(sat.span().contains_vector(
            &[BigInt::from(p), BigInt::from(q)]).unwrap());
    }

    #[test]
    fn d_is_saturation_invariant(p in -2i64..=2, q in -2i64..=2, c in 1i64..=3) {
        prop_assume!(p != 0 || q != 0);
        let m = build_example_hyp();
        let v = Subspace::from_i64(2, &[vec![p, q]]).unwrap();
        let vc = Subspace::from_i64(2, &[vec![c * p, c * q]]).unwrap();
        prop_assert_eq!(
            d_invariant(&m, &v).unwrap().value,
            d_invariant(&m, &vc).unwrap().value
        );
        prop_assert_eq!(
            d_star(&m, &v).unwrap().value,
            d_star(&m, &vc).unwrap().value
        );
    }
}

#[test]
fn enumerated_subspaces_are_primitive_and_distinct() {
    for n in 1..=3usize {
        for k in 0..=n {
            let subs = enumerate_primitive_subspaces(n, k, 2);
            for v in &subs {
                assert_eq!(v.rank(), k);
                assert!(v.is_saturated(), "enumerated subspace must be primitive");
            }
            for i in 0..subs.len() {
                for j in i + 1..subs.len() {
                    assert_ne!(subs[i], subs[j], "duplicate at n={n} k={k}");
                }
            }
        }
    }
}

/// The same model with the sign of each chosen H_1-basis vector flipped:
/// the action of the new e_i is eps_i times the old one.
fn flip_signs(m: &HFModel, signs: &[i64]) -> HFModel {
    let w = &m.hf_inf;
    let a = (0..w.n())
        .map(|i| {
            let mut col = vec![BigInt::from(0); w.n()];
            col[i] = BigInt::from(signs[i]);
            w.gradings()
                .skip(1)
                .map(|g| w.action_of_vector(&col, g).unwrap())
                .collect()
        })
        .collect();
    let hf_inf = WindowModule::new(
        w.n(),
        w.module_type(),
        w.sigma(),
        w.lo(),
        w.hi(),
        w.ranks().to_vec(),
        w.u_matrices().to_vec(),
        a,
    )
    .unwrap();
    HFModel {
        hf_inf,
        ..m.clone()
    }
}

#[test]
fn sign_conventions_do_not_move_d_values() {
    // Flipping any subset of basis-vector signs is a unimodular change of
    // basis that fixes every subspace, so every d-value must be unchanged.
    for m in [build_s1s2(2), build_trefoil_surgery(), build_example_hyp()] {
        let n = m.n();
        for pattern in 0u32..(1 << n) {
            let signs: Vec<i64> = (0..n)
                .map(|i| if pattern >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let flipped = flip_signs(&m, &signs);
            for k in 0..=n {
                for v in enumerate_primitive_subspaces(n, k, 1) {
                    assert_eq!(
                        d_invariant(&flipped, &v).unwrap().value,
                        d_invariant(&m, &v).unwrap().value,
                        "{} signs {:?}",
                        m.name,
                        signs
                    );
                    assert_eq!(
                        d_star(&flipped, &v).unwrap().value,
                        d_star(&m, &v).unwrap().value,
                        "{} signs {:?}",
                        m.name,
                        signs
                    );
                }
            }
        }
    }
}
