//! Diophantine side of the laboratory: real numbers with controlled
//! continued-fraction expansions, their approximation exponents, and the
//! planar lattice orbits attached to them.
//!
//! A [`RealSpec`] names a real number either exactly (rational or
//! quadratic surd) or synthetically through a partial-quotient rule that
//! manufactures a prescribed approximation exponent. The expansion
//! machinery lives in [`cf`], exponent estimation in [`exponents`], and
//! the translation into lattice excursions in [`orbit`].

pub mod cf;
pub mod exponents;
pub mod orbit;

pub use cf::{CfKind, ContinuedFraction};
pub use exponents::{estimate_exponents, ApproxExponents};
pub use orbit::{
    geodesic_excursions, horocycle_excursions, lambda_s, lambda_s_geodesic, ExcursionTime,
};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Synthetic partial-quotient rules.
///
/// Each rule fabricates an irrational by prescribing its partial
/// quotients, giving direct control over how well the number is
/// approximated by rationals:
///
/// * `Const { a }`: all partial quotients equal to `a` (badly
///   approximable, exponent exactly 2).
/// * `Mu { target }`: `a_{n+1}` grows like `q_n^(target - 2)`, so
///   convergents approximate at rate `q_n^(-target)`.
/// * `Split { mu_plus, mu_minus }`: as `Mu` but alternating with the
///   parity of `n`; even-index convergents (the ones below the value)
///   approximate at rate `mu_plus`, odd-index ones at `mu_minus`.
/// * `Liouville`: `a_{n+1} = q_n^n`, a Liouville number with infinite
///   exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CfRuleKind {
    Const { a: u64 },
    Mu { target: f64 },
    Split { mu_plus: f64, mu_minus: f64 },
    Liouville,
}

impl CfRuleKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CfRuleKind::Const { a } => {
                if a == 0 {
                    return Err(Error::invalid("const rule needs a >= 1"));
                }
            }
            CfRuleKind::Mu { target } => {
                if !target.is_finite() || target < 2.0 {
                    return Err(Error::invalid("mu rule needs a finite target >= 2"));
                }
            }
            CfRuleKind::Split { mu_plus, mu_minus } => {
                for m in [mu_plus, mu_minus] {
                    if !m.is_finite() || m < 2.0 {
                        return Err(Error::invalid("split rule needs finite targets >= 2"));
                    }
                }
            }
            CfRuleKind::Liouville => {}
        }
        Ok(())
    }
}

/// A real number given exactly or by a synthetic expansion rule.
///
/// The textual grammar (used by the command-line tools and accepted by
/// [`RealSpec::from_str`]):
///
/// ```text
/// rat:355/113          rational p/q (q optional)
/// sqrt:2               square root of a non-square integer
/// surd:(1+sqrt(5))/2   quadratic surd (P + R*sqrt(D))/Q, R and /Q optional
/// surd:1/2+3*sqrt(7)   A + B*sqrt(D) with rational A, B
/// rule:const(1)        synthetic rules; see CfRuleKind
/// rule:mu(3)
/// rule:split(3,2.5)
/// rule:liouville
/// ```
#[derive(Debug, Clone, PartialEq)]
pub enum RealSpec {
    /// An exact rational.
    Rational(BigRational),
    /// The quadratic surd `(p + sqrt(d)) / q` with `d > 0` not a square.
    Surd { p: BigInt, d: BigInt, q: BigInt },
    /// A synthetic expansion rule.
    Rule(CfRuleKind),
}

impl RealSpec {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("rational with zero denominator"));
        }
        Ok(RealSpec::Rational(BigRational::new(p.into(), q.into())))
    }

    /// `(p + sqrt(d)) / q`; `d` must be positive and not a perfect
    /// square, `q` nonzero.
    pub fn surd(p: i64, d: i64, q: i64) -> Result<Self> {
        Self::surd_big(p.into(), d.into(), q.into())
    }

    pub fn surd_big(p: BigInt, d: BigInt, q: BigInt) -> Result<Self> {
        if d <= BigInt::zero() {
            return Err(Error::invalid("surd radicand must be positive"));
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(Error::invalid(format!("radicand {d} is a perfect square")));
        }
        if q.is_zero() {
            return Err(Error::invalid("surd with zero denominator"));
        }
        Ok(RealSpec::Surd { p, d, q })
    }

    pub fn rule(kind: CfRuleKind) -> Result<Self> {
        kind.validate()?;
        Ok(RealSpec::Rule(kind))
    }

    /// Floating approximation of the value (for rules, `NaN`: their
    /// value is only defined through the expansion).
    pub fn value_f64(&self) -> f64 {
        match self {
            RealSpec::Rational(r) => cf::ratio_f64(r.numer(), r.denom()),
            RealSpec::Surd { p, d, q } => {
                let df = cf::big_to_f64(d);
                (cf::big_to_f64(p) + df.sqrt()) / cf::big_to_f64(q)
            }
            RealSpec::Rule(_) => f64::NAN,
        }
    }
}

impl fmt::Display for RealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSpec::Rational(r) => write!(f, "rat:{}/{}", r.numer(), r.denom()),
            RealSpec::Surd { p, d, q } => {
                if p.is_zero() && *q == BigInt::from(1) {
                    write!(f, "sqrt:{d}")
                } else {
                    write!(f, "surd:({p}+sqrt({d}))/{q}")
                }
            }
            RealSpec::Rule(kind) => match *kind {
                CfRuleKind::Const { a } => write!(f, "rule:const({a})"),
                CfRuleKind::Mu { target } => write!(f, "rule:mu({target})"),
                CfRuleKind::Split { mu_plus, mu_minus } => {
                    write!(f, "rule:split({mu_plus},{mu_minus})")
                }
                CfRuleKind::Liouville => write!(f, "rule:liouville"),
            },
        }
    }
}

impl FromStr for RealSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = s.strip_prefix("rat:") {
            return Ok(RealSpec::Rational(parse_big_rational(body)?));
        }
        if let Some(body) = s.strip_prefix("sqrt:") {
            let d = BigInt::from_str(body)
                .map_err(|e| Error::invalid(format!("bad radicand '{body}': {e}")))?;
            return RealSpec::surd_big(BigInt::zero(), d, BigInt::from(1));
        }
        if let Some(body) = s.strip_prefix("surd:") {
            return parse_surd(body);
        }
        if let Some(body) = s.strip_prefix("rule:") {
            return parse_rule(body);
        }
        Err(Error::invalid(format!(
            "unrecognized real spec '{s}' (expected rat:, sqrt:, surd: or rule:)"
        )))
    }
}

/// `BigRational::from_str` panics on a zero denominator; parse by hand.
fn parse_big_rational(s: &str) -> Result<BigRational> {
    let (ns, ds) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let bad = || Error::invalid(format!("bad rational '{s}'"));
    let n = BigInt::from_str(ns).map_err(|_| bad())?;
    let d = BigInt::from_str(ds).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::invalid(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

fn parse_rule(body: &str) -> Result<RealSpec> {
    if body == "liouville" {
        return RealSpec::rule(CfRuleKind::Liouville);
    }
    let open = body
        .find('(')
        .ok_or_else(|| Error::invalid(format!("bad rule '{body}'")))?;
    if !body.ends_with(')') {
        return Err(Error::invalid(format!("bad rule '{body}'")));
    }
    let name = &body[..open];
    let args: Vec<&str> = body[open + 1..body.len() - 1].split(',').collect();
    let kind = match (name, args.as_slice()) {
        ("const", [a]) => CfRuleKind::Const {
            a: a.parse().map_err(|e| Error::invalid(format!("bad const rule: {e}")))?,
        },
        ("mu", [t]) => CfRuleKind::Mu {
            target: t.parse().map_err(|e| Error::invalid(format!("bad mu rule: {e}")))?,
        },
        ("split", [a, b]) => CfRuleKind::Split {
            mu_plus: a.parse().map_err(|e| Error::invalid(format!("bad split rule: {e}")))?,
            mu_minus: b.parse().map_err(|e| Error::invalid(format!("bad split rule: {e}")))?,
        },
        _ => return Err(Error::invalid(format!("unrecognized rule '{body}'"))),
    };
    RealSpec::rule(kind)
}

/// Parses `(P+R*sqrt(D))/Q` (integer coefficients, `R*` and `/Q`
/// optional) or `A+B*sqrt(D)` (rational `A`, `B`).
fn parse_surd(body: &str) -> Result<RealSpec> {
    let bad = || Error::invalid(format!("bad surd '{body}'"));
    let (inner, q_str) = if let Some(rest) = body.strip_prefix('(') {
        // find the matching close paren of the leading one
        let mut depth = 1usize;
        let mut close = None;
        for (i, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(bad)?;
        let tail = &rest[close + 1..];
        let q = match tail.strip_prefix('/') {
            Some(qs) if !qs.is_empty() => qs,
            None if tail.is_empty() => "1",
            _ => return Err(bad()),
        };
        (&rest[..close], q)
    } else {
        (body, "1")
    };

    // split `inner` into A and B*sqrt(D) around the sqrt factor
    let sq = inner.find("sqrt(").ok_or_else(bad)?;
    if !inner.ends_with(')') {
        return Err(bad());
    }
    let d = BigInt::from_str(&inner[sq + 5..inner.len() - 1]).map_err(|_| bad())?;
    let before = &inner[..sq];
    // `before` is one of "", "-", "A+", "A-", "B*", "A+B*", "A-B*"
    let (a_str, b_str) = match before.rfind(['+', '-']) {
        // a sign at position 0 with nothing before it belongs to B
        Some(0) => ("0", before),
        Some(i) => (&before[..i], &before[i..]),
        None => ("0", before),
    };
    let parse_coeff = |s: &str, default_one: bool| -> Result<BigRational> {
        let s = s.strip_suffix('*').unwrap_or(s);
        match s {
            "" | "+" if default_one => Ok(BigRational::from(BigInt::from(1))),
            "-" if default_one => Ok(BigRational::from(BigInt::from(-1))),
            _ => parse_big_rational(s),
        }
    };
    let a = parse_coeff(a_str, false)?;
    let b = parse_coeff(b_str, true)?;
    if b.is_zero() {
        return Err(Error::invalid("surd with zero irrational part is a rational"));
    }
    let q = BigInt::from_str(q_str).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::invalid("surd with zero denominator"));
    }

    // (A + B sqrt(D)) / q  =  (P' + sqrt(B'^2 D)) / Q'  with everything integral
    let denom = a.denom() * b.denom() * &q;
    let p_num = a.numer() * b.denom();
    let r_num = b.numer() * a.denom();
    let (p_num, denom) = if r_num.is_negative() { (-p_num, -denom) } else { (p_num, denom) };
    let r_abs = r_num.abs();
    RealSpec::surd_big(p_num, &r_abs * &r_abs * &d, denom)
}
