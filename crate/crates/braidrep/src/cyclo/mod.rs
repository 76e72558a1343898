//! Exact arithmetic in cyclotomic fields `Q(zeta_N)` and dense matrices
//! over them.

mod embed;
mod matrix;
mod num;
pub(crate) mod poly;

pub use matrix::CycMatrix;
pub use num::{sqrt_int, CycNum};
pub use poly::{euler_phi, factorize};

#[cfg(test)]
mod tests {
    use super::*;
    use ::num::rational::BigRational;
    use ::num::ToPrimitive;

    fn root(k: i64, n: u64) -> CycNum {
        CycNum::root_of_unity(k, n)
    }

    #[test]
    fn make_root_basics() {
        assert_eq!(root(0, 5), CycNum::one());
        assert_eq!(root(2, 4), CycNum::from_int(-1));
        // sum of the two primitive cube roots is -1 (reduction mod x^2+x+1)
        assert_eq!(&root(1, 3) + &root(2, 3), CycNum::from_int(-1));
        // k reduced mod N
        assert_eq!(root(7, 5), root(2, 5));
        assert_eq!(root(-1, 5), root(4, 5));
    }

    #[test]
    fn field_inverse_law() {
        let a = &CycNum::from_int(3) + &root(1, 8);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn conductor_normalization_in_products() {
        // zeta_8 * zeta_8 = zeta_4
        assert_eq!(root(1, 8).mul(&root(1, 8)), root(1, 4));
        // mixed conductors lift to the lcm
        assert_eq!(root(1, 3).mul(&root(1, 4)), root(7, 12));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = sqrt_int(2);
        assert_eq!(s.mul(&s), CycNum::from_int(2));
        let half = s.inverse().unwrap();
        assert_eq!(half.mul(&half), CycNum::from_ratio(1, 2));
    }

    #[test]
    fn sqrt_int_small_values() {
        assert_eq!(sqrt_int(1), CycNum::one());
        assert_eq!(sqrt_int(4), CycNum::from_int(2));
        for n in 1..=50u64 {
            let s = sqrt_int(n);
            assert_eq!(s.mul(&s), CycNum::from_int(n as i64), "sqrt({n})^2");
            // positive real part under the embedding
            let (re, im) = s.to_complex(20);
            assert!(re.to_f64().unwrap() > 0.0, "sqrt({n}) real part");
            assert!(im.to_f64().unwrap().abs() < 1e-15, "sqrt({n}) imag part");
        }
    }

    #[test]
    fn conj_is_galois_inversion() {
        assert_eq!(root(1, 5).conj(), root(4, 5));
        let r = CycNum::from_ratio(22, 7);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn division_by_zero_reported() {
        assert!(matches!(
            CycNum::zero().inverse(),
            Err(crate::Error::DivisionByZero)
        ));
    }

    #[test]
    fn to_complex_examples() {
        let (re, im) = root(1, 4).to_complex(30);
        assert!(re.to_f64().unwrap().abs() < 1e-29);
        assert!((im.to_f64().unwrap() - 1.0).abs() < 1e-14);
        let (re, im) = sqrt_int(2).to_complex(30);
        assert!((re.to_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(im.to_f64().unwrap().abs() < 1e-29);
    }

    #[test]
    fn matrix_identity_and_power() {
        let a = CycMatrix::from_fn(3, 3, |i, j| root((i * j) as i64, 7));
        assert_eq!(a.mul(&CycMatrix::identity(3)).unwrap(), a);
        assert!(a.pow(0).unwrap().is_identity());
    }

    #[test]
    fn kron_conventions() {
        let i2 = CycMatrix::identity(2);
        let i3 = CycMatrix::identity(3);
        assert_eq!(i2.kron(&i3), CycMatrix::identity(6));
        let d = CycMatrix::diagonal(&[CycNum::from_int(2), CycNum::from_int(5)]);
        let expected = CycMatrix::diagonal(&[
            CycNum::from_int(2),
            CycNum::from_int(2),
            CycNum::from_int(5),
            CycNum::from_int(5),
        ]);
        assert_eq!(d.kron(&i2), expected);
    }

    #[test]
    fn adjoint_involution() {
        let a = CycMatrix::from_fn(3, 3, |i, j| root((i + 2 * j) as i64, 5));
        assert_eq!(a.adjoint().adjoint(), a);
        assert!(CycMatrix::identity(4).adjoint().is_identity());
    }

    #[test]
    fn inverse_round_trip() {
        let a = CycMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                &root(1, 8) + &CycNum::from_int(2)
            } else {
                root((i + j) as i64, 8)
            }
        });
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = CycMatrix::from_fn(2, 2, |_, _| CycNum::one());
        assert!(matches!(a.inverse(), Err(crate::Error::NotInvertible)));
    }

    #[test]
    fn serde_round_trip() {
        let a = &root(1, 12).scale_ratio(3, 7) + &CycNum::from_ratio(-2, 5);
        let json = serde_json::to_string(&a).unwrap();
        let back: CycNum = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);

        let m = CycMatrix::from_fn(2, 3, |i, j| root((i + j) as i64, 5));
        let json = serde_json::to_string(&m).unwrap();
        let back: CycMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn root_of_unity_order_detection() {
        assert_eq!(root(1, 6).root_of_unity_order(), Some(6));
        assert_eq!(CycNum::from_int(-1).root_of_unity_order(), Some(2));
        assert_eq!(CycNum::one().root_of_unity_order(), Some(1));
        // 1 + zeta_3 is the sixth root of unity e^{i pi / 3}
        assert_eq!((&CycNum::one() + &root(1, 3)).root_of_unity_order(), Some(6));
        // 1 + i has modulus sqrt(2), not a root of unity
        assert_eq!((&CycNum::one() + &root(1, 4)).root_of_unity_order(), None);
        assert_eq!(CycNum::from_int(2).root_of_unity_order(), None);
    }

    #[test]
    fn rational_coeffs_reported_exactly() {
        let a = CycNum::from_ratio(3, 4);
        assert_eq!(
            a.as_rational(),
            Some(BigRational::new(3.into(), 4.into()))
        );
    }
}
