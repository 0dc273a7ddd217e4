//! Continued-fraction expansions with exact integer convergents.
//!
//! Rationals expand by the Euclidean algorithm, quadratic surds by the
//! integer `(P, Q)` recurrence for `(P + sqrt(D))/Q` (exact: the floor
//! of such a surd equals the floor with `sqrt(D)` replaced by its
//! integer square root), and synthetic rules emit partial quotients
//! directly. Convergents `p_n/q_n` are carried as `BigInt`, so deep
//! expansions with astronomically large denominators stay exact; all
//! floating outputs go through logarithms of the big integers rather
//! than through `f64` conversions that would overflow.

use super::{CfRuleKind, RealSpec};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;

/// Cap on convergent denominators for synthetic rules, in bits. Rules
/// like `mu` and `liouville` grow doubly exponentially; past this size
/// extra terms cost much and teach nothing.
const MAX_Q_BITS: u64 = 4_000_000;

/// How many tail terms feed the floating complete quotient. Worst-case
/// convergence is the all-ones expansion at rate `phi^-2` per term, so
/// 48 terms put the truncation error below f64 round-off.
const ALPHA_TAIL_TERMS: usize = 48;

/// What kind of expansion this is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfKind {
    /// Finite expansion of a rational.
    Rational,
    /// Eventually periodic expansion of a quadratic irrational.
    Quadratic,
    /// Rule-generated expansion.
    Synthetic,
}

/// A truncated continued-fraction expansion `[a_0; a_1, a_2, ...]`
/// together with its convergents.
#[derive(Debug, Clone)]
pub struct ContinuedFraction {
    spec: RealSpec,
    kind: CfKind,
    a: Vec<BigInt>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    period: Option<usize>,
    complete: bool,
}

impl ContinuedFraction {
    /// Expands `spec` to at most `depth` partial quotients.
    ///
    /// Rational expansions may stop earlier (they are finite); synthetic
    /// rules stop once denominators pass an internal size cap.
    pub fn expand(spec: &RealSpec, depth: usize) -> Result<ContinuedFraction> {
        if depth == 0 {
            return Err(Error::invalid("expansion depth must be at least 1"));
        }
        match spec {
            RealSpec::Rational(r) => expand_rational(spec, r, depth),
            RealSpec::Surd { p, d, q } => expand_surd(spec, p, d, q, depth),
            RealSpec::Rule(kind) => {
                kind.validate()?;
                Ok(expand_rule(spec, *kind, depth))
            }
        }
    }

    pub fn spec(&self) -> &RealSpec {
        &self.spec
    }

    pub fn kind(&self) -> CfKind {
        self.kind
    }

    /// Number of partial quotients produced.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Whether the expansion terminated exactly (rationals only).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Period length of the repeating tail, when one was detected.
    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn partial_quotients(&self) -> &[BigInt] {
        &self.a
    }

    /// The convergent `p_n / q_n`.
    pub fn convergent(&self, n: usize) -> (&BigInt, &BigInt) {
        (&self.p[n], &self.q[n])
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.p
    }

    pub fn denominators(&self) -> &[BigInt] {
        &self.q
    }

    /// `ln q_n`, exact to a few ulps even for huge denominators.
    pub fn ln_q(&self, n: usize) -> f64 {
        ln_big(&self.q[n])
    }

    /// Floating value of the expanded number (from the last convergent).
    pub fn value_f64(&self) -> f64 {
        let n = self.len() - 1;
        ratio_f64(&self.p[n], &self.q[n])
    }

    /// `ln |q_n s - p_n|` for the underlying value `s`.
    ///
    /// Uses the identity `|q_n s - p_n| = 1/(alpha_{n+1} q_n + q_{n-1})`
    /// with the complete quotient `alpha` evaluated from the stored tail,
    /// so no precision is lost to cancellation no matter how large `q_n`
    /// is. Needs `a_{n+1}` to exist; the last index of a complete
    /// rational expansion returns `-inf` (the form vanishes exactly).
    /// Accuracy at index `len - 2` of an irrational is only within
    /// `ln 2` (the tail beyond the truncation is unknown); earlier
    /// indices are good to ~1e-12 relative.
    pub fn ln_linear_form(&self, n: usize) -> Result<f64> {
        if n + 1 >= self.len() {
            if self.kind == CfKind::Rational && self.complete && n + 1 == self.len() {
                return Ok(f64::NEG_INFINITY);
            }
            return Err(Error::InsufficientDepth { need: n + 2, have: self.len() });
        }
        // alpha_{n+1} q_n + q_{n-1} = q_{n+1} + q_n / alpha_{n+2};
        // for a complete rational truncating the correction at index
        // len-2 is exact (the tail is empty)
        let alpha_next = self.alpha_tail(n + 2);
        let ratio = (self.ln_q(n) - self.ln_q(n + 1)).exp();
        Ok(-(self.ln_q(n + 1) + (ratio / alpha_next).ln_1p()))
    }

    /// Complete quotient `alpha_start = [a_start; a_{start+1}, ...]` in
    /// floating point, from at most [`ALPHA_TAIL_TERMS`] stored terms.
    /// Empty tail gives `+inf`.
    fn alpha_tail(&self, start: usize) -> f64 {
        if start >= self.len() {
            return f64::INFINITY;
        }
        let stop = (start + ALPHA_TAIL_TERMS).min(self.len());
        let mut alpha = big_to_f64(&self.a[stop - 1]);
        for i in (start..stop - 1).rev() {
            alpha = big_to_f64(&self.a[i]) + 1.0 / alpha;
        }
        alpha
    }

    /// Exact value of `q_n s - p_n` for rational `s`.
    pub fn linear_form_exact(&self, n: usize) -> Option<BigRational> {
        match &self.spec {
            RealSpec::Rational(r) => {
                Some(r * BigRational::from(self.q[n].clone()) - BigRational::from(self.p[n].clone()))
            }
            _ => None,
        }
    }
}

/// Running state of the convergent recurrence
/// `p_n = a_n p_{n-1} + p_{n-2}`, `q_n = a_n q_{n-1} + q_{n-2}`.
struct Convergents {
    a: Vec<BigInt>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

impl Convergents {
    fn new() -> Self {
        Convergents { a: Vec::new(), p: Vec::new(), q: Vec::new() }
    }

    fn push(&mut self, a: BigInt) {
        let n = self.a.len();
        let (p, q) = if n == 0 {
            (a.clone(), BigInt::one())
        } else if n == 1 {
            (&a * &self.p[0] + BigInt::one(), a.clone())
        } else {
            (&a * &self.p[n - 1] + &self.p[n - 2], &a * &self.q[n - 1] + &self.q[n - 2])
        };
        self.a.push(a);
        self.p.push(p);
        self.q.push(q);
    }

    fn last_q_bits(&self) -> u64 {
        self.q.last().map_or(0, |q| q.bits())
    }
}

fn expand_rational(spec: &RealSpec, r: &BigRational, depth: usize) -> Result<ContinuedFraction> {
    let mut n = r.numer().clone();
    let mut d = r.denom().clone();
    let mut cv = Convergents::new();
    let mut complete = false;
    while cv.a.len() < depth {
        let a = n.div_floor(&d);
        let rem = &n - &a * &d;
        cv.push(a);
        if rem.is_zero() {
            complete = true;
            break;
        }
        n = d;
        d = rem;
    }
    Ok(ContinuedFraction {
        spec: spec.clone(),
        kind: CfKind::Rational,
        a: cv.a,
        p: cv.p,
        q: cv.q,
        period: None,
        complete,
    })
}

fn expand_surd(
    spec: &RealSpec,
    p0: &BigInt,
    d0: &BigInt,
    q0: &BigInt,
    depth: usize,
) -> Result<ContinuedFraction> {
    // normalize so that q | d - p^2, which keeps the recurrence integral
    let (mut p, mut d, mut q) = (p0.clone(), d0.clone(), q0.clone());
    if !((&d - &p * &p) % &q).is_zero() {
        let qa = q.abs();
        p *= &qa;
        d *= &q * &q;
        q *= &qa;
    }
    let root = d.sqrt();
    debug_assert!(&root * &root != d, "radicand must not be a square");

    let mut cv = Convergents::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut period = None;
    for k in 0..depth {
        if period.is_none() {
            if let Some(&j) = seen.get(&(p.clone(), q.clone())) {
                period = Some(k - j);
            } else {
                seen.insert((p.clone(), q.clone()), k);
            }
        }
        // floor((p + sqrt(d))/q) via the integer square root
        let a = if q.is_positive() {
            (&p + &root).div_floor(&q)
        } else {
            let t = (&p + &root).div_floor(&-&q);
            -(t + BigInt::one())
        };
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        debug_assert!(!q_next.is_zero());
        cv.push(a);
        p = p_next;
        q = q_next;
    }
    Ok(ContinuedFraction {
        spec: spec.clone(),
        kind: CfKind::Quadratic,
        a: cv.a,
        p: cv.p,
        q: cv.q,
        period,
        complete: false,
    })
}

fn expand_rule(spec: &RealSpec, kind: CfRuleKind, depth: usize) -> ContinuedFraction {
    let mut cv = Convergents::new();
    cv.push(BigInt::zero()); // a_0 = 0: rule numbers live in (0, 1)
    while cv.a.len() < depth && cv.last_q_bits() <= MAX_Q_BITS {
        let n = cv.a.len() - 1; // a_{n+1} is drawn from q_n
        let qn = &cv.q[n];
        let a = match kind {
            CfRuleKind::Const { a } => BigInt::from(a),
            CfRuleKind::Mu { target } => quotient_for_exponent(qn, target),
            CfRuleKind::Split { mu_plus, mu_minus } => {
                let target = if n % 2 == 0 { mu_plus } else { mu_minus };
                quotient_for_exponent(qn, target)
            }
            CfRuleKind::Liouville => {
                let pow = num_traits::pow(qn.clone(), n);
                if pow < BigInt::from(2) {
                    BigInt::from(2)
                } else {
                    pow
                }
            }
        };
        cv.push(a);
    }
    ContinuedFraction {
        spec: spec.clone(),
        kind: CfKind::Synthetic,
        a: cv.a,
        p: cv.p,
        q: cv.q,
        period: None,
        complete: false,
    }
}

/// `max(1, round(q^(mu - 2)))`: the partial quotient that makes the
/// convergent with denominator `q` approximate at rate `q^-mu`.
fn quotient_for_exponent(q: &BigInt, mu: f64) -> BigInt {
    let log2 = (mu - 2.0) * ln_big(q) / std::f64::consts::LN_2;
    bigint_from_log2(log2)
}

/// `round(2^x)` as a `BigInt` (53-bit mantissa for large `x`).
fn bigint_from_log2(x: f64) -> BigInt {
    if x <= 0.0 {
        return BigInt::one();
    }
    if x <= 52.0 {
        return BigInt::from(x.exp2().round().max(1.0) as u64);
    }
    let shift = x.floor() as u64 - 52;
    let mantissa = (x - x.floor() + 52.0).exp2().round() as u64;
    BigInt::from(mantissa) << shift
}

/// `ln x` for positive big integers of any size.
pub(crate) fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Saturating conversion to `f64`.
pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            if x.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

/// `n/d` as `f64`, falling back to log-space for huge operands.
pub(crate) fn ratio_f64(n: &BigInt, d: &BigInt) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let (nf, df) = (big_to_f64(n), big_to_f64(d));
    if nf.is_finite() && df.is_finite() {
        return nf / df;
    }
    let sign = if n.is_negative() != d.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_big(&n.abs()) - ln_big(&d.abs())).exp()
}

/// Sign of `a + b*sqrt(d)` for `d > 0` not a square: exact.
#[cfg(test)]
fn sign_quad(a: &BigInt, b: &BigInt, d: &BigInt) -> i32 {
    let sa = if a.is_positive() {
        1
    } else if a.is_negative() {
        -1
    } else {
        0
    };
    let sb = if b.is_positive() {
        1
    } else if b.is_negative() {
        -1
    } else {
        0
    };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: |a| vs |b| sqrt(d) decides
    let a2 = a * a;
    let b2d = b * b * d;
    debug_assert!(a2 != b2d, "radicand must not be a square");
    if a2 > b2d {
        sa
    } else {
        sb
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn expand(s: &str, depth: usize) -> ContinuedFraction {
        ContinuedFraction::expand(&RealSpec::from_str(s).unwrap(), depth).unwrap()
    }

    fn small(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn euclid_355_113() {
        let cf = expand("rat:355/113", 50);
        assert_eq!(cf.partial_quotients(), &small(&[3, 7, 16])[..]);
        assert!(cf.is_complete());
        assert_eq!(cf.kind(), CfKind::Rational);
        let (p, q) = cf.convergent(2);
        assert_eq!((p, q), (&BigInt::from(355), &BigInt::from(113)));
        // the convergent before the last is the classic 22/7
        let (p, q) = cf.convergent(1);
        assert_eq!((p, q), (&BigInt::from(22), &BigInt::from(7)));
    }

    #[test]
    fn euclid_trailing_quotient_at_least_two() {
        // floor-based expansion never ends in a partial quotient of 1
        for (p, q) in [(2i64, 3), (355, 113), (13, 8), (-7, 3), (100, 7), (1, 2)] {
            let cf =
                ContinuedFraction::expand(&RealSpec::rational(p, q).unwrap(), 64).unwrap();
            assert!(cf.is_complete());
            if cf.len() > 1 {
                assert!(
                    cf.partial_quotients().last().unwrap() >= &BigInt::from(2),
                    "{p}/{q} expanded to {:?}",
                    cf.partial_quotients()
                );
            }
        }
    }

    #[test]
    fn convergent_determinants_alternate() {
        let cf = expand("surd:(1+sqrt(5))/2", 20);
        for n in 1..cf.len() {
            let (pn, qn) = cf.convergent(n);
            let (pm, qm) = cf.convergent(n - 1);
            let det = pn * qm - pm * qn;
            let want = if n % 2 == 0 { BigInt::from(-1) } else { BigInt::from(1) };
            assert_eq!(det, want);
        }
    }

    #[test]
    fn surd_periods_and_quotients() {
        let golden = expand("surd:(1+sqrt(5))/2", 20);
        assert_eq!(golden.period(), Some(1));
        assert!(golden.partial_quotients().iter().all(|a| a == &BigInt::one()));
        assert_eq!(golden.kind(), CfKind::Quadratic);

        let rt2 = expand("sqrt:2", 20);
        assert_eq!(rt2.period(), Some(1));
        assert_eq!(rt2.partial_quotients()[..4], small(&[1, 2, 2, 2])[..]);
        // convergents 1/1, 3/2, 7/5, 17/12
        assert_eq!(rt2.convergent(3), (&BigInt::from(17), &BigInt::from(12)));

        let rt3 = expand("sqrt:3", 20);
        assert_eq!(rt3.period(), Some(2));
        assert_eq!(rt3.partial_quotients()[..5], small(&[1, 1, 2, 1, 2])[..]);

        let rt7 = expand("sqrt:7", 20);
        assert_eq!(rt7.period(), Some(4));
        assert_eq!(rt7.partial_quotients()[..6], small(&[2, 1, 1, 1, 4, 1])[..]);

        // negative value with negative normalized denominator
        let neg = expand("surd:(1-sqrt(5))/2", 20);
        assert_eq!(neg.partial_quotients()[..5], small(&[-1, 2, 1, 1, 1])[..]);
        assert_eq!(neg.period(), Some(1));
    }

    #[test]
    fn surd_linear_forms_obey_the_exact_sandwich() {
        // 1/(q_{n+1} + q_n) < |q_n s - p_n| < 1/q_{n+1}, with the sign
        // of q_n s - p_n equal to (-1)^n: all checked in exact integer
        // arithmetic against the surd, then used to pin ln_linear_form
        for s in ["sqrt:2", "surd:(1+sqrt(5))/2", "surd:(-3+2*sqrt(7))/5", "sqrt:61"] {
            let cf = expand(s, 25);
            let RealSpec::Surd { p: sp, d: sd, q: sq } = cf.spec().clone() else {
                panic!("not a surd")
            };
            for n in 0..cf.len() - 1 {
                let (pn, qn) = cf.convergent(n);
                let (_, qn1) = cf.convergent(n + 1);
                // q_n s - p_n = (A + q_n sqrt(D)) / Q
                let a = qn * &sp - pn * &sq;
                let sgn = sign_quad(&a, qn, &sd) * if sq.is_negative() { -1 } else { 1 };
                assert_eq!(sgn, if n % 2 == 0 { 1 } else { -1 }, "{s} at n={n}");
                // |A + q_n sqrt(D)| = t + u sqrt(D) with the inner sign folded in
                let inner = BigInt::from(sign_quad(&a, qn, &sd));
                let t = &a * &inner;
                let u = qn * &inner;
                let qabs = sq.abs();
                // upper: (t + u sqrt(D)) q_{n+1} - |Q| < 0
                assert_eq!(sign_quad(&(&t * qn1 - &qabs), &(&u * qn1), &sd), -1, "{s} n={n}");
                // lower: (t + u sqrt(D)) (q_{n+1} + q_n) - |Q| > 0
                let m = qn1 + qn;
                assert_eq!(sign_quad(&(&t * &m - &qabs), &(&u * &m), &sd), 1, "{s} n={n}");

                // the floating evaluation lands inside the same window
                if n + 2 < cf.len() {
                    let lf = cf.ln_linear_form(n).unwrap();
                    let hi = -cf.ln_q(n + 1);
                    let lo = -ln_big(&m);
                    assert!(lf < hi + 1e-9 && lf > lo - 1e-9, "{s} n={n}: {lo} {lf} {hi}");
                }
            }
        }
    }

    #[test]
    fn rational_linear_forms_terminate() {
        let cf = expand("rat:355/113", 50);
        let last = cf.len() - 1;
        assert_eq!(cf.ln_linear_form(last).unwrap(), f64::NEG_INFINITY);
        // |q_1 s - p_1| = |7 * 355/113 - 22| = 1/113 exactly
        let lf = cf.ln_linear_form(1).unwrap();
        assert!((lf - (1.0f64 / 113.0).ln()).abs() < 1e-12);
        let exact = cf.linear_form_exact(1).unwrap();
        assert_eq!(exact, BigRational::new(BigInt::from(-1), BigInt::from(113)));
    }

    #[test]
    fn mu_rule_controls_quotient_growth() {
        let cf = expand("rule:mu(3)", 40);
        assert!(cf.len() >= 12, "cap kicked in too early: {}", cf.len());
        for n in 5..cf.len() - 1 {
            let a_next = ln_big(&cf.partial_quotients()[n + 1]);
            let want = (3.0 - 2.0) * cf.ln_q(n);
            assert!(
                (a_next - want).abs() <= std::f64::consts::LN_2 + 1e-9,
                "n={n}: ln a = {a_next}, want {want}"
            );
        }
    }

    #[test]
    fn split_rule_alternates_growth() {
        let cf = expand("rule:split(3,2.5)", 40);
        for n in 6..cf.len() - 1 {
            let a_next = ln_big(&cf.partial_quotients()[n + 1]);
            let mu = if n % 2 == 0 { 3.0 } else { 2.5 };
            let want = (mu - 2.0) * cf.ln_q(n);
            assert!((a_next - want).abs() <= std::f64::consts::LN_2 + 1e-9);
        }
    }

    #[test]
    fn liouville_rule_first_terms_and_cap() {
        let cf = expand("rule:liouville", 64);
        let a = cf.partial_quotients();
        assert_eq!(a[..4], small(&[0, 2, 2, 25])[..]);
        assert_eq!(a[4], BigInt::from(127i64.pow(3)));
        // the size cap stops the expansion long before 64 terms
        assert!(cf.len() < 16, "got {} terms", cf.len());
        assert!(cf.denominators().last().unwrap().bits() <= 16 * MAX_Q_BITS);
        // growth is super-exponential: ln q ratios keep increasing
        let r_last = cf.ln_q(cf.len() - 1) / cf.ln_q(cf.len() - 2);
        assert!(r_last > 8.0, "last ratio {r_last}");
    }

    #[test]
    fn truncation_is_a_prefix() {
        let long = expand("surd:(1+sqrt(5))/2", 30);
        let short = expand("surd:(1+sqrt(5))/2", 10);
        assert_eq!(short.partial_quotients(), &long.partial_quotients()[..10]);
        assert_eq!(short.denominators(), &long.denominators()[..10]);
    }

    #[test]
    fn ln_q_matches_f64_for_moderate_sizes() {
        let cf = expand("sqrt:2", 30);
        for n in 0..cf.len() {
            let direct = big_to_f64(&cf.denominators()[n]).ln();
            assert!((cf.ln_q(n) - direct).abs() < 1e-12);
        }
        assert!((cf.value_f64() - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn insufficient_depth_is_reported() {
        let cf = expand("sqrt:2", 10);
        match cf.ln_linear_form(9) {
            Err(Error::InsufficientDepth { need, have }) => {
                assert_eq!(need, 11);
                assert_eq!(have, 10);
            }
            other => panic!("expected InsufficientDepth, got {other:?}"),
        }
    }

    #[test]
    fn huge_ratio_evaluation_stays_finite() {
        let cf = expand("rule:mu(4)", 40);
        let n = cf.len() - 1;
        assert!(cf.denominators()[n].bits() > 10_000);
        let v = cf.value_f64();
        assert!(v.is_finite() && v > 0.0 && v < 1.0);
        let lf = cf.ln_linear_form(n - 2).unwrap();
        assert!(lf.is_finite() && lf < -1000.0);
    }
}
