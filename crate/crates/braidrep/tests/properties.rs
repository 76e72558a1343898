//! Property suites: field axioms for the cyclotomic arithmetic, matrix
//! algebra identities, and structural invariants of the braid evaluation.

use braidrep::bvs::{flip_bvs, BraidWord};
use braidrep::cyclo::{CycMatrix, CycNum};
use num::ToPrimitive;
use proptest::prelude::*;

const CONDUCTORS: [u64; 6] = [1, 3, 4, 5, 8, 12];

fn cyc_num() -> impl Strategy<Value = CycNum> {
    (0usize..CONDUCTORS.len(), proptest::collection::vec(-3i64..=3, 1..=4), 1i64..=3).prop_map(
        |(ci, coeffs, den)| {
            let n = CONDUCTORS[ci];
            let mut out = CycNum::zero();
            for (i, c) in coeffs.iter().enumerate() {
                let term = CycNum::root_of_unity(i as i64, n).scale_ratio(*c, den);
                out = out.add(&term);
            }
            out
        },
    )
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = CycMatrix> {
    proptest::collection::vec(cyc_num(), rows * cols)
        .prop_map(move |entries| CycMatrix::new(rows, cols, entries).unwrap())
}

fn embeds_close(a: &CycNum, b: &CycNum) -> bool {
    let (ar, ai) = a.to_complex(30);
    let (br, bi) = b.to_complex(30);
    let d = |x: &num::rational::BigRational, y: &num::rational::BigRational| {
        (x - y).to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    };
    d(&ar, &br) < 1e-20 && d(&ai, &bi) < 1e-20
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(a in cyc_num(), b in cyc_num(), c in cyc_num()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in cyc_num(), b in cyc_num(), c in cyc_num()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in cyc_num(), b in cyc_num(), c in cyc_num()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn nonzero_elements_invert(a in cyc_num()) {
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn canonical_form_agrees_with_embedding(a in cyc_num(), b in cyc_num()) {
        // exact equality and numerical embedding must never disagree
        let equal = a == b;
        let close = embeds_close(&a, &b);
        if equal {
            prop_assert!(close);
        }
        // the embedding is a ring homomorphism (checked to 20 places)
        prop_assert!(embeds_close(&a.mul(&b), &b.mul(&a)));
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(a in cyc_num(), b in cyc_num()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn serde_round_trips_exactly(a in cyc_num()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: CycNum = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(a, back);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kron_mixed_product(
        a in small_matrix(2, 2),
        b in small_matrix(2, 2),
        c in small_matrix(2, 2),
        d in small_matrix(2, 2),
    ) {
        let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjoint_is_an_anti_homomorphism(a in small_matrix(2, 2), b in small_matrix(2, 2)) {
        let lhs = a.mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_evaluation_is_a_homomorphism(
        w1 in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..5),
        w2 in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..5),
    ) {
        let b = flip_bvs(2);
        let u = BraidWord::new(3, w1).unwrap();
        let v = BraidWord::new(3, w2).unwrap();
        let uv = u.concat(&v).unwrap();
        let lhs = b.eval_braid_word(&uv, false).unwrap();
        let rhs = b
            .eval_braid_word(&u, false)
            .unwrap()
            .mul(&b.eval_braid_word(&v, false).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_letters_cancel(
        w in proptest::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 0..5),
    ) {
        let b = flip_bvs(2);
        let word = BraidWord::new(3, w.clone()).unwrap();
        let back = BraidWord::new(3, w.iter().rev().map(|x| -x).collect()).unwrap();
        let full = word.concat(&back).unwrap();
        prop_assert!(b.eval_braid_word(&full, false).unwrap().is_identity());
    }
}
