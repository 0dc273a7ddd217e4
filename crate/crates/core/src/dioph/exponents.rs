//! Approximation exponents estimated from convergent growth.
//!
//! The exponent `mu` of a real `s` is the supremum of exponents `e`
//! such that `|s - p/q| < q^-e` infinitely often. Along convergents
//! `|s - p_n/q_n|` is within a factor of two of `1/(q_n q_{n+1})`, so
//! `mu` is read off from how `ln q_{n+1}` grows with `ln q_n`: a least
//! squares fit of `ln q_{n+1}` against `ln q_n` over the deep half of
//! the expansion has slope `mu - 1`. Fitting (rather than taking the
//! largest single ratio) removes the `O(1/ln q)` bias that additive
//! constants like `ln a` produce at finite depth.
//!
//! The fit is done separately over even and odd `n`, because the two
//! parities approach `s` from below and above; numbers built with
//! [`super::CfRuleKind::Split`] have genuinely different one-sided
//! exponents and the split fit recovers both.

use super::cf::{CfKind, ContinuedFraction};
use crate::error::{Error, Result};

/// Estimated approximation exponents of an expanded real.
#[derive(Debug, Clone)]
pub struct ApproxExponents {
    /// Two-sided exponent: `max(mu_plus, mu_minus)`.
    pub mu: f64,
    /// Exponent along even-index convergents (approach from below).
    pub mu_plus: f64,
    /// Exponent along odd-index convergents (approach from above).
    pub mu_minus: f64,
    /// Diagnostic ratios `ln q_{n+1} / ln q_n` over indices with
    /// `q_n > 1`; for exponent-`mu` numbers these tend to `mu - 1`.
    pub r_sequence: Vec<f64>,
    /// Number of partial quotients the estimate used.
    pub depth: usize,
}

/// Least-squares slope of `y` against `x`.
fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in points {
        cov += (x - mx) * (y - my);
        var += (x - mx) * (x - mx);
    }
    cov / var
}

/// Estimates the approximation exponents of `cf`.
///
/// Complete rational expansions have exponent exactly 1. Otherwise the
/// deep half of the expansion must contain at least two convergent
/// pairs of each parity, or [`Error::InsufficientDepth`] is returned.
pub fn estimate_exponents(cf: &ContinuedFraction) -> Result<ApproxExponents> {
    let len = cf.len();
    let r_sequence: Vec<f64> = (1..len.saturating_sub(1))
        .filter(|&n| cf.ln_q(n) > 0.0)
        .map(|n| cf.ln_q(n + 1) / cf.ln_q(n))
        .collect();

    if cf.kind() == CfKind::Rational && cf.is_complete() {
        return Ok(ApproxExponents {
            mu: 1.0,
            mu_plus: 1.0,
            mu_minus: 1.0,
            r_sequence,
            depth: len,
        });
    }

    let start = len / 2;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for n in start..len.saturating_sub(1) {
        let pt = (cf.ln_q(n), cf.ln_q(n + 1));
        if n % 2 == 0 {
            even.push(pt);
        } else {
            odd.push(pt);
        }
    }
    if even.len() < 2 || odd.len() < 2 {
        return Err(Error::InsufficientDepth { need: 10, have: len });
    }
    let mu_plus = 1.0 + slope(&even);
    let mu_minus = 1.0 + slope(&odd);
    Ok(ApproxExponents {
        mu: mu_plus.max(mu_minus),
        mu_plus,
        mu_minus,
        r_sequence,
        depth: len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dioph::RealSpec;
    use std::str::FromStr;

    fn exponents(s: &str, depth: usize) -> ApproxExponents {
        let cf = ContinuedFraction::expand(&RealSpec::from_str(s).unwrap(), depth).unwrap();
        estimate_exponents(&cf).unwrap()
    }

    #[test]
    fn golden_ratio_is_two_to_three_digits() {
        // the naive max-ratio estimator at this depth is off by ~0.05;
        // the fitted slope removes the additive bias
        let e = exponents("surd:(1+sqrt(5))/2", 40);
        assert!((e.mu - 2.0).abs() < 0.01, "mu = {}", e.mu);
        assert!((e.mu_plus - 2.0).abs() < 0.01);
        assert!((e.mu_minus - 2.0).abs() < 0.01);
        let r_last = e.r_sequence.last().unwrap();
        assert!((r_last - 1.0).abs() < 0.1);
    }

    #[test]
    fn sqrt_two_is_badly_approximable() {
        let e = exponents("sqrt:2", 40);
        assert!((e.mu - 2.0).abs() < 0.01, "mu = {}", e.mu);
    }

    #[test]
    fn rationals_have_exponent_one() {
        let e = exponents("rat:355/113", 50);
        assert_eq!(e.mu, 1.0);
        assert_eq!(e.mu_plus, 1.0);
        assert_eq!(e.mu_minus, 1.0);
    }

    #[test]
    fn mu_rules_hit_their_targets() {
        let e3 = exponents("rule:mu(3)", 40);
        assert!((e3.mu - 3.0).abs() < 0.05, "mu = {}", e3.mu);
        let e4 = exponents("rule:mu(4)", 40);
        assert!((e4.mu - 4.0).abs() < 0.1, "mu = {}", e4.mu);
    }

    #[test]
    fn split_rule_recovers_both_sides() {
        let e = exponents("rule:split(3,2.5)", 40);
        assert!((e.mu_plus - 3.0).abs() < 0.1, "mu_plus = {}", e.mu_plus);
        assert!((e.mu_minus - 2.5).abs() < 0.1, "mu_minus = {}", e.mu_minus);
        assert_eq!(e.mu, e.mu_plus);
    }

    #[test]
    fn liouville_exponent_diverges() {
        let e = exponents("rule:liouville", 64);
        assert!(e.mu > 5.0, "mu = {}", e.mu);
        // the diagnostic ratios climb without bound
        let r = &e.r_sequence;
        assert!(r.last().unwrap() > &8.0);
    }

    #[test]
    fn shallow_expansions_are_rejected() {
        let cf = ContinuedFraction::expand(&RealSpec::from_str("sqrt:2").unwrap(), 6).unwrap();
        assert!(matches!(
            estimate_exponents(&cf),
            Err(Error::InsufficientDepth { .. })
        ));
    }
}
