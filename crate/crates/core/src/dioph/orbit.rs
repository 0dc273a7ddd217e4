//! Lattice orbits attached to a real number.
//!
//! For a real `s` the lattice `Lambda_s` spanned by `(1, s)` and
//! `(0, 1)` contains the vectors `(q, qs - p)` over all integers `p`,
//! `q`. Under the horocycle flow `(x, y) -> (x + t y, y)` the vector of
//! the `n`-th convergent is annihilated in its first coordinate at time
//! `t_n = -q_n/(q_n s - p_n)`, where the lattice momentarily contains a
//! vector of length `|q_n s - p_n|` and the shortest-vector gauge spikes
//! to at least its reciprocal. The quality of the spike relative to the
//! time, `ln alpha_1 / ln |t_n|`, tends to `1 - 1/mu` when `s` has
//! approximation exponent `mu`.
//!
//! The geodesic variant uses the basis `(s, 1)`, `(-1, 0)`, whose
//! vectors are `(qs - p, q)`. The flow `diag(e^{t/2}, e^{-t/2})`
//! balances the convergent vector at `t*_n = ln(q_n / |q_n s - p_n|)`
//! with length `sqrt(2 q_n |q_n s - p_n|)`, and the analogous ratio
//! tends to `1/2 - 1/mu`.
//!
//! All logarithmic quantities are computed through the exact continued
//! fraction (never by the catastrophically cancelling float product
//! `q s - p`), so excursions remain accurate at depths where `t_n`
//! overflows `f64`.

use super::cf::{CfKind, ContinuedFraction};
use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::mat::SquareMatrix;
use crate::scalar::Scalar;

/// Horocycle-adapted basis of `Lambda_s`: columns `(1, s)` and `(0, 1)`.
pub fn lambda_s<F: Scalar>(s: F) -> Result<LatticeBasis<F>> {
    if !s.is_finite() {
        return Err(Error::NonFinite("lattice parameter"));
    }
    let mut m = SquareMatrix::zeros(2);
    m[(0, 0)] = F::one();
    m[(1, 0)] = s;
    m[(1, 1)] = F::one();
    Ok(LatticeBasis::new_unchecked(m))
}

/// Geodesic-adapted basis: columns `(s, 1)` and `(-1, 0)`.
pub fn lambda_s_geodesic<F: Scalar>(s: F) -> Result<LatticeBasis<F>> {
    if !s.is_finite() {
        return Err(Error::NonFinite("lattice parameter"));
    }
    let mut m = SquareMatrix::zeros(2);
    m[(0, 0)] = s;
    m[(1, 0)] = F::one();
    m[(0, 1)] = -F::one();
    Ok(LatticeBasis::new_unchecked(m))
}

/// One excursion of a flow orbit, indexed by the convergent driving it.
///
/// `t` and `alpha_lower` may overflow to infinity at great depth; the
/// logarithmic fields are always finite and authoritative.
#[derive(Debug, Clone)]
pub struct ExcursionTime {
    /// Convergent index `n`.
    pub index: usize,
    /// Flow time of the excursion (sign included; horocycle times
    /// alternate sign with `n`, geodesic times are positive).
    pub t: f64,
    /// `ln |t|`.
    pub log_abs_t: f64,
    /// Certified lower bound for `alpha_1` at time `t`.
    pub alpha_lower: f64,
    /// `ln alpha_lower`.
    pub log_alpha_lower: f64,
    /// `log_alpha_lower / log_abs_t`, the excursion-quality ratio.
    pub ratio: f64,
}

/// Excursion times of the horocycle orbit through `Lambda_s`.
///
/// One entry per convergent `n` with `0 <= n <= len - 2` (the linear
/// form of the last convergent needs the next partial quotient). A
/// complete rational expansion stops before its terminal convergent,
/// where the orbit leaves every compact set for good.
pub fn horocycle_excursions(cf: &ContinuedFraction) -> Result<Vec<ExcursionTime>> {
    excursions(cf, false)
}

/// Excursion times of the geodesic orbit through the `(s, 1)`, `(-1, 0)`
/// basis. Same indexing as [`horocycle_excursions`].
pub fn geodesic_excursions(cf: &ContinuedFraction) -> Result<Vec<ExcursionTime>> {
    excursions(cf, true)
}

fn excursions(cf: &ContinuedFraction, geodesic: bool) -> Result<Vec<ExcursionTime>> {
    if cf.is_empty() {
        return Err(Error::invalid("empty expansion"));
    }
    let mut out = Vec::new();
    let last = cf.len().saturating_sub(1);
    for n in 0..last {
        let lf = cf.ln_linear_form(n)?;
        if lf == f64::NEG_INFINITY {
            // terminal convergent of a rational: the form vanishes
            break;
        }
        let ln_q = cf.ln_q(n);
        let log_abs_t = ln_q - lf;
        let (t, log_alpha_lower) = if geodesic {
            // balanced vector has squared length 2 q_n |q_n s - p_n|
            (log_abs_t, -(std::f64::consts::LN_2 + ln_q + lf) / 2.0)
        } else {
            // sign of q_n s - p_n is (-1)^n, t_n = -q_n/(q_n s - p_n)
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            (sign * log_abs_t.exp(), -lf)
        };
        out.push(ExcursionTime {
            index: n,
            t,
            log_abs_t,
            alpha_lower: log_alpha_lower.exp(),
            log_alpha_lower,
            ratio: log_alpha_lower / log_abs_t,
        });
    }
    if out.is_empty() && cf.kind() != CfKind::Rational {
        return Err(Error::InsufficientDepth { need: 2, have: cf.len() });
    }
    Ok(out)
}
