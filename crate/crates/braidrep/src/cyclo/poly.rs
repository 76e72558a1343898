//! Integer polynomial helpers and the per-conductor cache of cyclotomic
//! polynomial data.
//!
//! `Phi_N` is computed once per conductor by dividing `x^N - 1` by every
//! `Phi_d` with `d | N`, `d < N`. Alongside it we precompute the reduction
//! table `x^e mod Phi_N` for `0 <= e < N`, which turns reduction of any
//! folded polynomial into a handful of integer scalings.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::{One, Zero};

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division `f / g` of integer polynomials, `g` monic. Panics if the
/// division is not exact (only ever used on cyclotomic factors).
fn div_exact_monic(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    assert!(g.last().is_some_and(One::is_one), "divisor must be monic");
    let mut rem: Vec<BigInt> = f.to_vec();
    let dg = g.len() - 1;
    if rem.len() <= dg {
        trim(&mut rem);
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let dq = rem.len() - 1 - dg;
    let mut quot = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + dg].clone();
        if !c.is_zero() {
            for (j, gj) in g.iter().enumerate() {
                rem[k + j] -= &c * gj;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// Immutable cyclotomic data for one conductor.
pub struct CondData {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of `Phi_N`, ascending, length `phi + 1`, monic.
    pub cyclo: Vec<BigInt>,
    /// `reduce[e]` = coefficients of `x^e mod Phi_N`, length `phi`, for `e < N`.
    pub reduce: Vec<Vec<BigInt>>,
}

static CYCLO_CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
static COND_CACHE: OnceLock<Mutex<HashMap<u64, Arc<CondData>>>> = OnceLock::new();

/// `Phi_n` as an ascending integer coefficient vector.
fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    let cache = CYCLO_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Ensure all proper divisors are present first, smallest up, so the
    // computation below never recurses while holding the lock.
    for d in divisors(n) {
        if d == n {
            continue;
        }
        cyclotomic_poly(d);
    }
    let mut f = vec![BigInt::zero(); n as usize + 1];
    f[0] = -BigInt::one();
    f[n as usize] = BigInt::one();
    {
        let guard = cache.lock().unwrap();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = guard.get(&d).expect("divisor cached").clone();
            f = div_exact_monic(&f, &phi_d);
        }
    }
    let arc = Arc::new(f);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Cached conductor data for `Q(zeta_n)`.
pub fn cond_data(n: u64) -> Arc<CondData> {
    assert!(n >= 1, "conductor must be positive");
    let cache = COND_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return d.clone();
    }
    let cyclo = cyclotomic_poly(n).as_ref().clone();
    let phi = cyclo.len() - 1;
    let mut reduce: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _e in 0..n as usize {
        reduce.push(cur.clone());
        // cur <- x * cur mod Phi_n
        let lead = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !lead.is_zero() {
            for i in 0..phi {
                cur[i] -= &lead * &cyclo[i];
            }
        }
    }
    let data = Arc::new(CondData { n, phi, cyclo, reduce });
    cache.lock().unwrap().insert(n, data.clone());
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    fn coeffs_i64(n: u64) -> Vec<i64> {
        cond_data(n).cyclo.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(coeffs_i64(1), vec![-1, 1]);
        assert_eq!(coeffs_i64(2), vec![1, 1]);
        assert_eq!(coeffs_i64(3), vec![1, 1, 1]);
        assert_eq!(coeffs_i64(4), vec![1, 0, 1]);
        assert_eq!(coeffs_i64(6), vec![1, -1, 1]);
        assert_eq!(coeffs_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(coeffs_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_agrees_with_degree() {
        for n in 1..=60 {
            assert_eq!(cond_data(n).phi as u64, euler_phi(n), "n={n}");
        }
    }

    #[test]
    fn reduce_table_consistency() {
        // x^phi row must equal -(lower coefficients of Phi_n).
        let d = cond_data(5);
        let row = &d.reduce[d.phi];
        for (r, c) in row.iter().zip(&d.cyclo) {
            assert_eq!(*r, -c);
        }
    }

    #[test]
    fn factorize_basic() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}
