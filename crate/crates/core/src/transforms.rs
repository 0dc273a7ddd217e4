//! Siegel-type counting transforms and the closed-form means, variance
//! bounds, and tail bounds they are tested against.
//!
//! For a region `A` of measure `a` and a Haar-random unimodular lattice:
//!
//! * the count of nonzero lattice points in `A` has mean `a` (Siegel);
//! * for symmetric `A` in dimension `n >= 3` its second moment is at most
//!   `a^2 + C_n a` with `C_n = 8 zeta(n-1)/zeta(n)` (Rogers-type bound);
//! * `P(log alpha1 > r) <= w_n e^{-n r}` where `w_n` is the unit-ball
//!   volume, by Markov applied to the count in a ball of radius `e^{-r}`;
//! * in dimension 2, where the second moment of the full count diverges,
//!   the primitive count has mean `a / zeta(2)`, its centred second
//!   moment times `zeta(2)` is at most `16 a`, and the probability that a
//!   symmetric star-shaped `A` misses every primitive vector is at most
//!   `16 zeta(2)^2 / a` (vacuous below `a ~ 43`, informative for
//!   `a >= 100`).

use crate::error::{Error, Result};
use crate::lattice::{
    count_points_in_region, enumerate_in_box, for_each_point_in_ball, region_intersects,
    LatticeBasis,
};
use crate::region::{unit_ball_volume, Region};
use crate::scalar::Scalar;
use crate::zeta::{rogers_constant, zeta};

/// Number of nonzero lattice vectors in the region.
pub fn siegel_transform<F: Scalar>(basis: &LatticeBasis<F>, region: &Region<F>) -> Result<u64> {
    if basis.dim() != region.dim() {
        return Err(Error::invalid("siegel_transform: dimension mismatch"));
    }
    match region {
        Region::Ball { radius, .. } => {
            let mut count = 0u64;
            for_each_point_in_ball(basis, *radius, &mut |_, _| {
                count += 1;
                Ok(true)
            })?;
            Ok(count)
        }
        _ => count_points_in_region(basis, &region.bounding_half_widths(), |x| {
            region.contains(x)
        }),
    }
}

/// Number of primitive lattice vectors in the region (gcd of basis
/// coefficients equal to one; the `n = 2` Theta-transform count).
pub fn primitive_transform<F: Scalar>(basis: &LatticeBasis<F>, region: &Region<F>) -> Result<u64> {
    if basis.dim() != region.dim() {
        return Err(Error::invalid("primitive_transform: dimension mismatch"));
    }
    let n = basis.dim();
    let pts = enumerate_in_box(basis, &vec![F::zero(); n], &region.bounding_half_widths())?;
    Ok(pts
        .iter()
        .filter(|v| v.is_primitive() && region.contains(&v.coords))
        .count() as u64)
}

/// True when the lattice has no nonzero vector in the region.
pub fn avoids<F: Scalar>(basis: &LatticeBasis<F>, region: &Region<F>) -> Result<bool> {
    Ok(!region_intersects(basis, region)?)
}

/// Rogers-type bound `a^2 + C_n a` on the second moment of the nonzero
/// count in a symmetric region of measure `a`, `n >= 3`.
pub fn second_moment_bound(n: usize, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::invalid("second_moment_bound needs a > 0"));
    }
    Ok(a * a + rogers_constant(n)? * a)
}

/// Tail bound `w_n e^{-n r}` for `P(log alpha1 > r)`, valid for every
/// `r >= 0` (and vacuous where it exceeds one).
pub fn alpha1_tail_bound(n: usize, r: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("alpha1_tail_bound needs n >= 2"));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::invalid("alpha1_tail_bound needs finite r >= 0"));
    }
    Ok(unit_ball_volume::<f64>(n) * (-(n as f64) * r).exp())
}

/// Mean of the planar primitive count: `a / zeta(2)`.
pub fn theta2_mean(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::invalid("theta2_mean needs a > 0"));
    }
    Ok(a / zeta(2.0)?)
}

/// Bound `16 a` on `zeta(2) * E[(count - a/zeta(2))^2]` for symmetric
/// star-shaped planar regions of measure `a`.
pub fn theta2_mass_moment_bound(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::invalid("theta2_mass_moment_bound needs a > 0"));
    }
    Ok(16.0 * a)
}

/// Chebyshev consequence: the probability that a symmetric star-shaped
/// planar region of measure `a` contains no primitive vector is at most
/// `16 zeta(2)^2 / a`.
pub fn theta2_avoidance_bound(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::invalid("theta2_avoidance_bound needs a > 0"));
    }
    Ok(16.0 * zeta(2.0)?.powi(2) / a)
}

/// Sample statistics of a batch of counts against the closed-form mean
/// and second-moment bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub trials: usize,
    /// Region measure `a`.
    pub measure: f64,
    pub mean: f64,
    pub second_moment: f64,
    /// Siegel mean, equal to the measure.
    pub expected_mean: f64,
    /// `a^2 + C_n a`.
    pub second_moment_bound: f64,
    /// Standard error of the sample mean.
    pub se_mean: f64,
    /// Standard error of the sample second moment.
    pub se_second: f64,
}

pub fn moment_report(counts: &[u64], n: usize, measure: f64) -> Result<MomentReport> {
    if counts.is_empty() {
        return Err(Error::invalid("moment_report needs at least one count"));
    }
    let trials = counts.len();
    let tf = trials as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / tf;
    let second = counts.iter().map(|&c| (c as f64) * (c as f64)).sum::<f64>() / tf;
    let var = (counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / tf).max(0.0);
    let fourth_centered = counts
        .iter()
        .map(|&c| ((c as f64) * (c as f64) - second).powi(2))
        .sum::<f64>()
        / tf;
    Ok(MomentReport {
        n,
        trials,
        measure,
        mean,
        second_moment: second,
        expected_mean: measure,
        second_moment_bound: second_moment_bound(n, measure)?,
        se_mean: (var / tf).sqrt(),
        se_second: (fourth_centered / tf).sqrt(),
    })
}
