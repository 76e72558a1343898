//! Exact elements of cyclotomic fields `Q(zeta_N)`.
//!
//! A `CycNum` stores its conductor, a positive common denominator and the
//! integer numerator vector of its coordinates in the power basis
//! `1, zeta, ..., zeta^{phi(N)-1}` of `Q(zeta_N)`, always fully reduced
//! modulo `Phi_N`. Structural equality at a fixed conductor therefore
//! coincides with field equality; elements at different conductors are
//! compared after lifting both to the lcm.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::embed;
use super::poly::{cond_data, factorize};
use crate::{Error, Result};

#[derive(Clone)]
pub struct CycNum {
    conductor: u64,
    /// Common denominator, always positive.
    den: BigInt,
    /// Numerators in the power basis, length `phi(conductor)`.
    coeffs: Vec<BigInt>,
}

impl CycNum {
    /// The zero element; always canonical at conductor 1 so zeros stay
    /// cheap inside large, mostly-sparse matrices.
    pub fn zero_at(_n: u64) -> Self {
        Self::zero()
    }

    pub fn zero() -> Self {
        CycNum { conductor: 1, den: BigInt::one(), coeffs: vec![BigInt::zero()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        CycNum { conductor: 1, den: BigInt::one(), coeffs: vec![BigInt::from(k)] }
    }

    pub fn from_bigint(k: BigInt) -> Self {
        CycNum { conductor: 1, den: BigInt::one(), coeffs: vec![k] }
    }

    /// The rational `num/den`. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut x = CycNum {
            conductor: 1,
            den: BigInt::from(den),
            coeffs: vec![BigInt::from(num)],
        };
        x.normalize();
        x
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let mut x = CycNum {
            conductor: 1,
            den: r.denom().clone(),
            coeffs: vec![r.numer().clone()],
        };
        x.normalize();
        x
    }

    /// `zeta_N^k` in canonical form; `k` is reduced mod `N`.
    pub fn root_of_unity(k: i64, n: u64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let data = cond_data(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum { conductor: n, den: BigInt::one(), coeffs: data.reduce[e].clone() }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Raw power-basis coordinates as exact rationals.
    pub fn rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.coeffs[0].is_one()
            && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.coeffs[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            *self = CycNum::zero();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.coeffs {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
    }

    /// Rewrites the element at conductor `m`; requires `conductor | m`.
    /// Zero stays in its canonical conductor-1 form.
    pub fn lift(&self, m: u64) -> CycNum {
        if m == self.conductor || self.is_zero() {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.conductor), "lift target must be a multiple of the conductor");
        let step = (m / self.conductor) as usize;
        let data = cond_data(m);
        let mut coeffs = vec![BigInt::zero(); data.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i * step) % m as usize;
            for (j, r) in data.reduce[e].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[j] += c * r;
                }
            }
        }
        let mut out = CycNum { conductor: m, den: self.den.clone(), coeffs };
        out.normalize();
        out
    }

    fn unify(&self, other: &CycNum) -> (CycNum, CycNum) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let m = self.conductor.lcm(&other.conductor);
            (self.lift(m), other.lift(m))
        }
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = self.unify(other);
        let den = &a.den * &b.den;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x * &b.den + y * &a.den)
            .collect();
        let mut out = CycNum { conductor: a.conductor, den, coeffs };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            den: self.den.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        if self.is_zero() || other.is_zero() {
            return CycNum::zero();
        }
        let (a, b) = self.unify(other);
        let data = cond_data(a.conductor);
        let n = data.n as usize;
        let phi = data.phi;
        // Polynomial product with exponents folded mod N (zeta^N = 1).
        let mut folded = vec![BigInt::zero(); n.max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                folded[(i + j) % n] += x * y;
            }
        }
        let mut coeffs = vec![BigInt::zero(); phi];
        for (e, v) in folded.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if e < phi {
                coeffs[e] += v;
            } else {
                for (j, r) in data.reduce[e].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[j] += v * r;
                    }
                }
            }
        }
        let mut out = CycNum { conductor: a.conductor, den: &a.den * &b.den, coeffs };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        self.mul(&CycNum::from_int(k))
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> CycNum {
        self.mul(&CycNum::from_ratio(num, den))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x] / Phi_N` (`Phi_N` is irreducible over `Q`).
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(&r.recip()));
        }
        let data = cond_data(self.conductor);
        let modulus: Vec<BigRational> = data
            .cyclo
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: Vec<BigRational> = self.rational_coeffs();
        let inv = poly_inverse_mod(&a, &modulus).ok_or(Error::DivisionByZero)?;
        Ok(CycNum::from_rational_coeffs(self.conductor, &inv))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self.mul(&other.inverse()?))
    }

    fn from_rational_coeffs(n: u64, coeffs: &[BigRational]) -> CycNum {
        let phi = cond_data(n).phi;
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut nums = vec![BigInt::zero(); phi];
        for (i, c) in coeffs.iter().enumerate() {
            nums[i] = c.numer() * (&den / c.denom());
        }
        let mut out = CycNum { conductor: n, den, coeffs: nums };
        out.normalize();
        out
    }

    /// Image under the Galois automorphism `zeta_N -> zeta_N^{N-1}`;
    /// complex conjugation under any embedding sending `zeta_N` to
    /// `e^{2 pi i / N}`.
    pub fn conj(&self) -> CycNum {
        let data = cond_data(self.conductor);
        let n = data.n as usize;
        let phi = data.phi;
        let mut coeffs = vec![BigInt::zero(); phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i * (n - 1)) % n.max(1);
            for (j, r) in data.reduce[e].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[j] += c * r;
                }
            }
        }
        let mut out = CycNum { conductor: self.conductor, den: self.den.clone(), coeffs };
        out.normalize();
        out
    }

    /// `self^k` for any integer exponent (negative via `inverse`).
    pub fn pow(&self, k: i64) -> Result<CycNum> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Multiplicative order when the element is a root of unity. Roots of
    /// unity in `Q(zeta_N)` have order dividing `lcm(2, N)`, so the search
    /// is bounded.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = if self.conductor.is_multiple_of(2) { self.conductor } else { 2 * self.conductor };
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Decimal approximation `(re, im)` accurate to `digits` decimal places,
    /// under the embedding `zeta_N -> e^{2 pi i / N}`. Display only.
    pub fn to_complex(&self, digits: usize) -> (BigRational, BigRational) {
        embed::embed(self.conductor, &self.rational_coeffs(), digits)
    }

    /// `f64` approximation of `to_complex`.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let (re, im) = self.to_complex(17);
        (ratio_to_f64(&re), ratio_to_f64(&im))
    }

    /// Canonical byte encoding of `(den, coeffs)`. Only meaningful as a
    /// dictionary key among elements sharing one conductor.
    pub(crate) fn encode_into(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(self.den.to_str_radix(16).as_bytes());
        out.push(b'/');
        for c in &self.coeffs {
            out.extend_from_slice(c.to_str_radix(16).as_bytes());
            out.push(b',');
        }
        out.push(b';');
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Inverse of `a` modulo the monic irreducible `m` in `Q[x]`, by the
/// extended Euclidean algorithm. Returns `None` only when `a` is zero
/// modulo `m`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    fn deg(p: &[BigRational]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }
    fn rem_div(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let dd = deg(den).expect("division by zero polynomial");
        let mut rem = num.to_vec();
        let mut quot = vec![BigRational::zero(); num.len().saturating_sub(dd).max(1)];
        while let Some(dr) = deg(&rem) {
            if dr < dd {
                break;
            }
            let c = &rem[dr] / &den[dd];
            let shift = dr - dd;
            for j in 0..=dd {
                let t = &c * &den[j];
                rem[shift + j] = &rem[shift + j] - &t;
            }
            quot[shift] = &quot[shift] + &c;
        }
        (quot, rem)
    }
    fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        out
    }
    fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let len = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            *o = x - y;
        }
        out
    }

    deg(a)?;
    // Invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    let mut s0: Vec<BigRational> = vec![BigRational::zero()];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while deg(&r1).is_some() {
        let (q, r) = rem_div(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // gcd is the constant r0 (m irreducible, a nonzero mod m).
    let d0 = deg(&r0)?;
    if d0 != 0 {
        return None;
    }
    let c = r0[0].recip();
    let mut inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
    // Reduce mod m to degree < deg(m).
    let (_, red) = rem_div(&inv, m);
    inv = red;
    inv.resize(m.len() - 1, BigRational::zero());
    Some(inv)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.coeffs == other.coeffs
        } else {
            let (a, b) = self.unify(other);
            a.den == b.den && a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.conductor)?;
                    } else {
                        write!(f, "z{}^{}", self.conductor, i)?;
                    }
                }
            }
        }
        if !self.den.is_one() {
            write!(f, " / {}", self.den)?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                CycNum::$imp(self, rhs)
            }
        }
        impl std::ops::$trait for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                CycNum::$imp(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}

// JSON form: {"N": conductor, "coeffs": [["num","den"], ...]} with
// decimal-string integers, one pair per power-basis coordinate.
impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CycNum", 2)?;
        st.serialize_field("N", &self.conductor)?;
        let coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| {
                let g = c.gcd(&self.den);
                let (n, d) = if g.is_one() || c.is_zero() {
                    (c.clone(), if c.is_zero() { BigInt::one() } else { self.den.clone() })
                } else {
                    (c / &g, &self.den / &g)
                };
                [n.to_string(), d.to_string()]
            })
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "N")]
            n: u64,
            coeffs: Vec<[String; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let phi = cond_data(raw.n).phi;
        if raw.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}, got {}",
                phi,
                raw.n,
                raw.coeffs.len()
            )));
        }
        let mut rats = Vec::with_capacity(phi);
        for [n, d] in &raw.coeffs {
            let num: BigInt = n.parse().map_err(|_| D::Error::custom("bad integer"))?;
            let den: BigInt = d.parse().map_err(|_| D::Error::custom("bad integer"))?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            rats.push(BigRational::new(num, den));
        }
        Ok(CycNum::from_rational_coeffs(raw.n, &rats))
    }
}

/// Exact square root of a nonnegative integer, with positive real part
/// under the standard embedding. Built multiplicatively from prime square
/// roots: `sqrt(2) = zeta_8 + zeta_8^-1`, and for odd `p` the quadratic
/// Gauss sum `g_p = sum zeta_p^{k^2}`, which equals `sqrt(p)` for
/// `p = 1 mod 4` and `i sqrt(p)` for `p = 3 mod 4`.
pub fn sqrt_int(n: u64) -> CycNum {
    assert!(n >= 1, "sqrt_int requires n >= 1");
    let mut square_part = BigInt::one();
    let mut out = CycNum::one();
    for (p, e) in factorize(n) {
        let half = BigInt::from(p).pow(e / 2);
        square_part *= half;
        if e % 2 == 1 {
            out = out.mul(&sqrt_prime(p));
        }
    }
    out.mul(&CycNum::from_bigint(square_part))
}

fn sqrt_prime(p: u64) -> CycNum {
    if p == 2 {
        return CycNum::root_of_unity(1, 8).add(&CycNum::root_of_unity(-1, 8));
    }
    let mut g = CycNum::zero_at(p);
    for k in 0..p {
        let e = ((k as u128 * k as u128) % p as u128) as i64;
        g = g.add(&CycNum::root_of_unity(e, p));
    }
    if p % 4 == 1 {
        g
    } else {
        // g_p = i sqrt(p); divide by i.
        g.mul(&CycNum::root_of_unity(3, 4))
    }
}
