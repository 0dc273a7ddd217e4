//! Zeta values and the arithmetic sums behind second-moment identities.
//!
//! `rogers_constant(n) = 8 zeta(n-1) / zeta(n)` is the variance constant
//! for primitive-pair counting in dimension `n >= 3`; it equals the
//! infinite sum `8 sum_k phi(k) / k^n`, whose truncations
//! [`coprime_pair_sum`] provides (with tail `< 8 / K` for `n = 3`, since
//! `phi(k) < k`).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Riemann zeta for real `s > 1` by direct summation of `K = 100` terms
/// plus Euler-Maclaurin tail corrections; the first omitted correction is
/// below `1e-16` for every `s > 1`, so the result is accurate to full
/// double precision.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::invalid(format!("zeta needs real s > 1, got {s}")));
    }
    let k = 100.0f64;
    let mut sum = 0.0;
    // sum smallest-first to keep rounding error down
    for j in (1..=k as u64).rev() {
        sum += (j as f64).powf(-s);
    }
    let tail = k.powf(1.0 - s) / (s - 1.0) - 0.5 * k.powf(-s) + s * k.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * k.powf(-s - 3.0) / 720.0;
    Ok(sum + tail)
}

/// Euler totients `phi(0..=limit)` by a linear-time-ish divisor sieve
/// (`phi(0)` is set to 0).
pub fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            // p is prime: multiply every multiple by (1 - 1/p)
            let mut m = p;
            while m <= limit {
                phi[m] -= phi[m] / p as u64;
                m += p;
            }
        }
    }
    phi
}

/// Moebius function `mu(0..=limit)` (`mu(0)` set to 0).
pub fn mobius(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut is_comp = vec![false; limit + 1];
    mu[0] = 0;
    for p in 2..=limit {
        if !is_comp[p] {
            let mut m = p;
            while m <= limit {
                if m > p {
                    is_comp[m] = true;
                }
                mu[m] = -mu[m];
                m += p;
            }
            if let Some(p2) = p.checked_mul(p) {
                let mut m = p2;
                while m <= limit {
                    mu[m] = 0;
                    m += p2;
                }
            }
        }
    }
    mu
}

/// `8 zeta(n-1) / zeta(n)`, the second-moment constant in dimension
/// `n >= 3`.
pub fn rogers_constant(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid("rogers_constant needs n >= 3"));
    }
    Ok(8.0 * zeta((n - 1) as f64)? / zeta(n as f64)?)
}

/// Truncation `8 sum_{k <= kmax} phi(k) / k^n` of the coprime-pair series
/// for [`rogers_constant`]; the omitted tail is positive and below
/// `8 kmax^{2-n} / (n - 2)`.
pub fn coprime_pair_sum(n: usize, kmax: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid("coprime_pair_sum needs n >= 3"));
    }
    if kmax == 0 {
        return Err(Error::invalid("coprime_pair_sum needs kmax >= 1"));
    }
    let phi = totients(kmax as usize);
    let mut sum = 0.0;
    for k in (1..=kmax).rev() {
        sum += phi[k as usize] as f64 / (k as f64).powi(n as i32);
    }
    Ok(8.0 * sum)
}

/// Exact rational value of `sum_{k <= kmax} phi(k) / k^n` (without the
/// factor 8), for oracle tests.
pub fn phi_sum_exact(n: usize, kmax: u64) -> BigRational {
    let phi = totients(kmax as usize);
    let mut sum = BigRational::from_integer(BigInt::from(0));
    for k in 1..=kmax {
        let num = BigInt::from(phi[k as usize]);
        let den = BigInt::from(k).pow(n as u32);
        sum += BigRational::new(num, den);
    }
    sum
}
