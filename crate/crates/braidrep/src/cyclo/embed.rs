//! Decimal approximation of cyclotomic numbers under the embedding
//! `zeta_N -> e^{2 pi i / N}`.
//!
//! Works in fixed-point `BigInt` arithmetic scaled by `10^(digits + guard)`;
//! pi comes from Machin's formula so precision is limited only by the
//! requested digit count. Never used in any correctness decision.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

const GUARD: usize = 12;

fn pow10(k: usize) -> BigInt {
    BigInt::from(10u32).pow(k as u32)
}

/// `pi * 10^scale_digits`, via `pi = 16 atan(1/5) - 4 atan(1/239)`.
fn pi_scaled(scale_digits: usize) -> BigInt {
    static CACHE: OnceLock<Mutex<HashMap<usize, BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&scale_digits) {
        return v.clone();
    }
    let scale = pow10(scale_digits + 8);
    let atan_inv = |x: u64| -> BigInt {
        let x2 = BigInt::from(x) * BigInt::from(x);
        let mut term = &scale / BigInt::from(x);
        let mut sum = term.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            term /= &x2;
            let contrib = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= &contrib;
            } else {
                sum += &contrib;
            }
            k += 1;
        }
        sum
    };
    let pi = BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239);
    let out = pi / pow10(8);
    cache.lock().unwrap().insert(scale_digits, out.clone());
    out
}

/// `(cos t, sin t) * scale` for `t = t_scaled / scale`, by Taylor series.
fn cos_sin_scaled(t_scaled: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let mut cos = scale.clone();
    let mut sin = BigInt::zero();
    // term_k = t^k / k! * scale, alternating into cos (even k) / sin (odd k).
    let mut term = scale.clone();
    let mut k = 1u64;
    loop {
        term = &term * t_scaled / scale / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
    }
    (cos, sin)
}

/// Evaluate `sum coeffs[i] * zeta_n^i` to `digits` decimal places.
pub fn embed(n: u64, coeffs: &[BigRational], digits: usize) -> (BigRational, BigRational) {
    let work = digits + GUARD;
    let scale = pow10(work);
    let two_pi = BigInt::from(2) * pi_scaled(work);
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // t = 2 pi i / n, already in [0, 2 pi).
        let t = &two_pi * BigInt::from(i as u64) / BigInt::from(n);
        let (cos, sin) = cos_sin_scaled(&t, &scale);
        re += c * BigRational::new(cos, scale.clone());
        im += c * BigRational::new(sin, scale.clone());
    }
    (round_to(re, digits), round_to(im, digits))
}

fn round_to(x: BigRational, digits: usize) -> BigRational {
    let scale = pow10(digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let num = scaled.numer();
    let den = scaled.denom();
    let twice = BigInt::from(2) * num;
    let rounded = if num.is_negative() {
        (&twice - den) / (BigInt::from(2) * den)
    } else {
        (&twice + den) / (BigInt::from(2) * den)
    };
    BigRational::new(rounded, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, ToPrimitive};

    #[test]
    fn pi_matches_f64() {
        let p = pi_scaled(15);
        let v = BigRational::new(p, pow10(15)).to_f64().unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn fourth_root_is_i() {
        let coeffs = vec![BigRational::zero(), BigRational::one()];
        let (re, im) = embed(4, &coeffs, 30);
        assert!(re.to_f64().unwrap().abs() < 1e-29);
        assert!((im.to_f64().unwrap() - 1.0).abs() < 1e-15);
    }
}
