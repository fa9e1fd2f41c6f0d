use num_traits::{One, Zero};
use proptest::prelude::*;

use quartic_core::concavity::{classify, is_log_concave, shift_unimodal_check};
use quartic_core::kernel::{choose, rat, Rat};
use quartic_core::poly::Poly;
use quartic_core::qanalog::{gaussian_binomial, quantum_binomial, quantum_from_gaussian};
use quartic_core::tree::{build_tree, piecewise_formula, DEFAULT_PROBE};
use quartic_core::valuation::Nu2Method;

fn real_rooted(roots: &[(i64, i64)]) -> Poly {
    Poly::product_of_linear(roots.iter().map(|&(n, d)| (rat(n, d), Rat::one())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn newton_coefficients_log_concave(roots in prop::collection::vec((1i64..50, 1i64..8), 1..=8)) {
        let p = real_rooted(&roots);
        prop_assert_eq!(is_log_concave(p.coeffs()), Some(true));
    }

    #[test]
    fn shifted_nondecreasing_is_unimodal(steps in prop::collection::vec(0i64..5, 1..=10), start in 1i64..5) {
        let mut acc = start;
        let s: Vec<Rat> = steps.iter().map(|d| { acc += d; rat(acc, 1) }).collect();
        prop_assert!(shift_unimodal_check(&s).unwrap());
    }

    #[test]
    fn log_concave_implies_unimodal(v in prop::collection::vec(0i64..20, 0..12)) {
        let s: Vec<Rat> = v.iter().map(|&x| rat(x, 1)).collect();
        let c = classify(&s);
        if c.log_concave == Some(true) && s.iter().all(|x| !x.is_zero()) {
            prop_assert!(c.unimodal);
        }
    }
}

#[test]
fn gaussian_at_one_is_binomial() {
    for n in 0..=30i64 {
        for k in 0..=n {
            assert_eq!(
                gaussian_binomial(n, k).eval_one(),
                choose(n as u64, k as u64)
            );
        }
    }
}

#[test]
fn quantum_relation_and_symmetry() {
    for n in 0..=20i64 {
        for k in 0..=n {
            let q = quantum_binomial(n, k);
            assert_eq!(q, quantum_from_gaussian(n, k), "n={n} k={k}");
            assert_eq!(q.invert_variable(), quantum_binomial(n, n - k));
        }
    }
}

#[test]
fn formulas_partition_residues() {
    for l in 1..=40 {
        let f = piecewise_formula(l).unwrap();
        assert!(f.is_partition(), "l={l}");
        assert_eq!(f.cases.len() as u64, l);
    }
}

#[test]
fn odd_part_invariance() {
    for l in (1..=15u64).step_by(2) {
        let base = build_tree(l, DEFAULT_PROBE, Nu2Method::Formula).unwrap();
        assert!(base.theorem_check().passed, "l={l}");
        for r in 1..=2 {
            let t = build_tree(l << r, DEFAULT_PROBE, Nu2Method::Formula).unwrap();
            assert_eq!(t.shape(), base.shape(), "l={}", l << r);
        }
    }
}
