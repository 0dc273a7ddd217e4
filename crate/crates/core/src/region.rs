//! Star-shaped regions in R^n used for counting, Siegel averages, and
//! witness searches: balls, boxes, and the sheared "A_k" families whose
//! lattice points certify excursions of unipotent orbits.
//!
//! The A_k families all share one shape. Write a point as
//! `(x_0, ..., x_{n-3}, y, z)`. Membership requires `y/z < 0`, puts `|y|`
//! and `|z|` in explicit bands, and constrains the first `n - 2`
//! coordinates *after* flowing by the unipotent time `t0 = -y/z` (the time
//! that kills the `y` coordinate). For the split shape (Jordan blocks
//! `[1, ..., 1, 2]`) the flow fixes those coordinates, so the constraint
//! is a plain box; for other block shapes it is a sheared (but still
//! volume-true) condition evaluated through the same polynomial as the
//! flow matrix.
//!
//! Band layout and Lebesgue measure:
//!
//! * `ak_split` / `ak_regular` / `ak_general` with parameters `(k, eps)`:
//!   `|u_i| <= k^{-1/n}`, `|y| <= k^{(n-1)/n}`,
//!   `k^{-1/n-eps} <= |z| <= k^{-1/n+eps}`; the measure is
//!   `2^{n-1} (k^eps - k^{-eps})` (the `y/z < 0` constraint keeps two of
//!   the four sign quadrants).
//! * `ak_sharp` with parameters `(k, delta)` and a rate function `r(t)`,
//!   `l(t) = r(t) / t^{1/n}`: `|u_i| <= 1/r(k)`,
//!   `k^{(n-1)/n}/l(k) <= |y| <= k^{(n-1)/n+delta}/l(k)`,
//!   `k^{-1/n-delta}/l(k) <= |z| <= k^{-1/n}/l(k)`; the measure is
//!   `2^{n-1} l(k)^{-n} (k^delta + k^{-delta} - 2)`, and every member has
//!   shear time `t0 = -y/z` in `[k, k^{1+2*delta}]`.

use crate::error::{Error, Result};
use crate::flows::{unipotent_apply, FlowSpec};
use crate::mat::norm2;
use crate::scalar::Scalar;

/// Volume of the unit ball in R^n (recurrence `w_n = 2 pi w_{n-2} / n`).
pub fn unit_ball_volume<F: Scalar>(n: usize) -> F {
    let two_pi = F::PI() * F::from_f64_lossy(2.0);
    let mut vols = [F::one(), F::from_f64_lossy(2.0)]; // w_0, w_1
    if n < 2 {
        return vols[n];
    }
    let mut dim = 1usize;
    while dim < n {
        dim += 1;
        let next = two_pi * vols[0] / F::from_f64_lossy(dim as f64);
        vols[0] = vols[1];
        vols[1] = next;
    }
    vols[1]
}

/// Growth-rate function for the sharp excursion regions, always evaluated
/// together with the ambient dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateFn {
    /// `r(t) = t^{1/n}`; the boundary case `l = 1`.
    Power,
    /// `r(t) = t^{1/n} (ln t)^{q/n}`; `l = (ln t)^{q/n}`. Only meaningful
    /// for `t > 1`. `q = 1` is the classical logarithm-law rate.
    PowerLog { q: f64 },
    /// `r(t) = t^beta`. Satisfies the sharp hypotheses only at
    /// `beta = 1/n`; other values exist to exercise the condition checker.
    PowerBeta { beta: f64 },
}

impl RateFn {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RateFn::Power => Ok(()),
            RateFn::PowerLog { q } => {
                if q.is_finite() && q >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("power_log exponent q = {q} must be >= 0")))
                }
            }
            RateFn::PowerBeta { beta } => {
                if beta.is_finite() && beta > 0.0 && beta < 1.0 {
                    Ok(())
                } else {
                    Err(Error::invalid(format!("power_beta exponent beta = {beta} not in (0, 1)")))
                }
            }
        }
    }

    /// `r(t)`; requires `t > 1`.
    pub fn r<F: Scalar>(&self, n: usize, t: F) -> F {
        let inv_n = F::one() / F::from_f64_lossy(n as f64);
        match *self {
            RateFn::Power => t.powf(inv_n),
            RateFn::PowerLog { q } => {
                t.powf(inv_n) * t.ln().powf(F::from_f64_lossy(q) * inv_n)
            }
            RateFn::PowerBeta { beta } => t.powf(F::from_f64_lossy(beta)),
        }
    }

    /// `l(t) = r(t) / t^{1/n}`.
    pub fn l<F: Scalar>(&self, n: usize, t: F) -> F {
        let inv_n = F::one() / F::from_f64_lossy(n as f64);
        self.r(n, t) / t.powf(inv_n)
    }
}

/// Verify the sharp-region hypotheses for a rate function numerically on a
/// geometric grid spanning `[t_lo, t_hi^{1+2*delta}]`:
///
/// 1. `l` is non-decreasing;
/// 2. `r(t) / t^{(1+delta)/n}` eventually decays: its maximum is attained
///    in the first half of the grid, it is non-increasing afterwards, and
///    the final value sits at least 10% below the maximum;
/// 3. `r(t) t^{2*delta/n} / r(t^{1+2*delta}) > c` at every grid point.
///
/// A grid check cannot certify the limits themselves; it rejects every
/// rate that fails them at practically relevant scales.
pub fn check_rate_conditions(
    rate: &RateFn,
    n: usize,
    delta: f64,
    c: f64,
    t_lo: f64,
    t_hi: f64,
) -> Result<()> {
    rate.validate()?;
    if n < 2 {
        return Err(Error::invalid("rate conditions need n >= 2"));
    }
    if !(delta > 0.0) || !(c > 0.0) || !(t_lo > 1.0) || !(t_hi > t_lo) {
        return Err(Error::invalid(
            "rate conditions need delta > 0, c > 0 and a grid range 1 < t_lo < t_hi",
        ));
    }
    let top = t_hi.powf(1.0 + 2.0 * delta);
    let steps = 200usize;
    let ratio = (top / t_lo).powf(1.0 / steps as f64);
    let grid: Vec<f64> = (0..=steps).map(|j| t_lo * ratio.powi(j as i32)).collect();

    let l_vals: Vec<f64> = grid.iter().map(|&t| rate.l(n, t)).collect();
    for w in l_vals.windows(2) {
        if w[1] < w[0] * (1.0 - 1e-9) {
            return Err(Error::invalid(format!(
                "rate condition failed: l is decreasing ({} -> {})",
                w[0], w[1]
            )));
        }
    }

    let decay: Vec<f64> = grid
        .iter()
        .map(|&t| rate.r(n, t) / t.powf((1.0 + delta) / n as f64))
        .collect();
    let peak = decay
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite decay values"))
        .map(|(j, _)| j)
        .unwrap();
    if peak > steps / 2 {
        return Err(Error::invalid(
            "rate condition failed: r(t)/t^((1+delta)/n) is still growing past the grid midpoint",
        ));
    }
    for w in decay[peak..].windows(2) {
        if w[1] > w[0] * (1.0 + 1e-9) {
            return Err(Error::invalid(format!(
                "rate condition failed: r(t)/t^((1+delta)/n) increases ({} -> {})",
                w[0], w[1]
            )));
        }
    }
    if decay[steps] > 0.9 * decay[peak] {
        return Err(Error::invalid(
            "rate condition failed: r(t)/t^((1+delta)/n) does not decay across the grid",
        ));
    }

    for &t in &grid {
        let lhs = rate.r(n, t) * t.powf(2.0 * delta / n as f64);
        let rhs = rate.r(n, t.powf(1.0 + 2.0 * delta));
        if !(lhs > c * rhs) {
            return Err(Error::invalid(format!(
                "rate condition failed: r(t) t^(2 delta/n) / r(t^(1+2 delta)) = {} <= c = {c} at t = {t}",
                lhs / rhs
            )));
        }
    }
    Ok(())
}

/// Band data shared by every A_k kind; `y_lo = 0` means "no positive lower
/// bound" (the sign constraint still forces `y != 0`).
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct AkBands<F> {
    pub block_sizes: Vec<usize>,
    pub w_x: F,
    pub y_lo: F,
    pub y_hi: F,
    pub z_lo: F,
    pub z_hi: F,
}

/// A measurable region of R^n with exact measure, membership test, and
/// origin-centred bounding data. Build through the validating
/// constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum Region<F> {
    Ball { n: usize, radius: F },
    Box { half_widths: Vec<F> },
    AkSplit { n: usize, k: F, eps: F },
    AkRegular { n: usize, k: F, eps: F },
    AkGeneral { block_sizes: Vec<usize>, k: F, eps: F },
    AkSharp { block_sizes: Vec<usize>, k: F, delta: F, rate: RateFn },
}

impl<F: Scalar> Region<F> {
    pub fn ball(n: usize, radius: F) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ball needs n >= 1"));
        }
        if !(radius > F::zero()) || !radius.is_finite() {
            return Err(Error::invalid("ball radius must be positive and finite"));
        }
        Ok(Region::Ball { n, radius })
    }

    pub fn cuboid(half_widths: Vec<F>) -> Result<Self> {
        if half_widths.is_empty() {
            return Err(Error::invalid("box needs n >= 1"));
        }
        if half_widths.iter().any(|w| !(*w > F::zero()) || !w.is_finite()) {
            return Err(Error::invalid("box half-widths must be positive and finite"));
        }
        Ok(Region::Box { half_widths })
    }

    /// Symmetric cube `[-w, w]^n`.
    pub fn cube(n: usize, half_width: F) -> Result<Self> {
        Self::cuboid(vec![half_width; n])
    }

    pub fn ak_split(n: usize, k: F, eps: F) -> Result<Self> {
        check_ak_params(n, k, eps)?;
        Ok(Region::AkSplit { n, k, eps })
    }

    pub fn ak_regular(n: usize, k: F, eps: F) -> Result<Self> {
        check_ak_params(n, k, eps)?;
        Ok(Region::AkRegular { n, k, eps })
    }

    pub fn ak_general(block_sizes: Vec<usize>, k: F, eps: F) -> Result<Self> {
        let n = block_sizes.iter().sum();
        check_ak_params(n, k, eps)?;
        // same shape constraints as the matching unipotent flow
        FlowSpec::unipotent(n, block_sizes.clone())?;
        Ok(Region::AkGeneral { block_sizes, k, eps })
    }

    pub fn ak_sharp(block_sizes: Vec<usize>, k: F, delta: F, rate: RateFn) -> Result<Self> {
        let n = block_sizes.iter().sum();
        if n < 2 {
            return Err(Error::invalid("A_k regions need n >= 2"));
        }
        if !(k > F::one()) || !k.is_finite() {
            return Err(Error::invalid("A_k parameter k must be > 1 and finite"));
        }
        if !(delta > F::zero()) || !(delta <= F::one()) {
            return Err(Error::invalid("A_k sharp needs delta in (0, 1]"));
        }
        rate.validate()?;
        FlowSpec::unipotent(n, block_sizes.clone())?;
        Ok(Region::AkSharp { block_sizes, k, delta, rate })
    }

    pub fn dim(&self) -> usize {
        match self {
            Region::Ball { n, .. } | Region::AkSplit { n, .. } | Region::AkRegular { n, .. } => *n,
            Region::Box { half_widths } => half_widths.len(),
            Region::AkGeneral { block_sizes, .. } | Region::AkSharp { block_sizes, .. } => {
                block_sizes.iter().sum()
            }
        }
    }

    /// Exact Lebesgue measure (closed forms documented at module level).
    pub fn measure(&self) -> F {
        let two = F::from_f64_lossy(2.0);
        match self {
            Region::Ball { n, radius } => {
                unit_ball_volume::<F>(*n) * radius.powi(*n as i32)
            }
            Region::Box { half_widths } => {
                half_widths.iter().fold(F::one(), |acc, &w| acc * two * w)
            }
            Region::AkSplit { n, k, eps } => ak_measure(*n, *k, *eps),
            Region::AkRegular { n, k, eps } => ak_measure(*n, *k, *eps),
            Region::AkGeneral { block_sizes, k, eps } => {
                ak_measure(block_sizes.iter().sum(), *k, *eps)
            }
            Region::AkSharp { block_sizes, k, delta, rate } => {
                let n: usize = block_sizes.iter().sum();
                let l = rate.l(n, *k);
                two.powi(n as i32 - 1)
                    * l.powi(-(n as i32))
                    * (k.powf(*delta) + k.powf(-*delta) - two)
            }
        }
    }

    pub(crate) fn ak_bands(&self) -> Option<AkBands<F>> {
        let one = F::one();
        match self {
            Region::AkSplit { n, k, eps } => Some(split_bands(*n, *k, *eps, None)),
            Region::AkRegular { n, k, eps } => Some(split_bands(*n, *k, *eps, Some(vec![*n]))),
            Region::AkGeneral { block_sizes, k, eps } => Some(split_bands(
                block_sizes.iter().sum(),
                *k,
                *eps,
                Some(block_sizes.clone()),
            )),
            Region::AkSharp { block_sizes, k, delta, rate } => {
                let n: usize = block_sizes.iter().sum();
                let nf = F::from_f64_lossy(n as f64);
                let l = rate.l(n, *k);
                let base = k.powf(-one / nf);
                Some(AkBands {
                    block_sizes: block_sizes.clone(),
                    w_x: one / rate.r(n, *k),
                    y_lo: k.powf((nf - one) / nf) / l,
                    y_hi: k.powf((nf - one) / nf + *delta) / l,
                    z_lo: base * k.powf(-*delta) / l,
                    z_hi: base / l,
                })
            }
            _ => None,
        }
    }

    pub fn contains(&self, x: &[F]) -> bool {
        assert_eq!(x.len(), self.dim(), "point dimension mismatch");
        match self {
            Region::Ball { radius, .. } => norm2(x) <= *radius,
            Region::Box { half_widths } => {
                x.iter().zip(half_widths).all(|(xi, w)| xi.abs() <= *w)
            }
            _ => {
                let bands = self.ak_bands().expect("A_k kind");
                ak_contains(&bands, x)
            }
        }
    }

    /// Half-widths of an origin-centred box that contains the region.
    pub fn bounding_half_widths(&self) -> Vec<F> {
        match self {
            Region::Ball { n, radius } => vec![*radius; *n],
            Region::Box { half_widths } => half_widths.clone(),
            _ => {
                let bands = self.ak_bands().expect("A_k kind");
                ak_bounding_box(&bands)
            }
        }
    }

    /// Radius of an origin-centred ball that contains the region.
    pub fn bounding_radius(&self) -> F {
        match self {
            Region::Ball { radius, .. } => *radius,
            _ => norm2(&self.bounding_half_widths()),
        }
    }
}

fn check_ak_params<F: Scalar>(n: usize, k: F, eps: F) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("A_k regions need n >= 2"));
    }
    if !(k > F::one()) || !k.is_finite() {
        return Err(Error::invalid("A_k parameter k must be > 1 and finite"));
    }
    if !(eps > F::zero()) || !(eps < F::one()) {
        return Err(Error::invalid("A_k parameter eps must lie in (0, 1)"));
    }
    Ok(())
}

fn ak_measure<F: Scalar>(n: usize, k: F, eps: F) -> F {
    let two = F::from_f64_lossy(2.0);
    two.powi(n as i32 - 1) * (k.powf(eps) - k.powf(-eps))
}

fn split_bands<F: Scalar>(n: usize, k: F, eps: F, blocks: Option<Vec<usize>>) -> AkBands<F> {
    let one = F::one();
    let nf = F::from_f64_lossy(n as f64);
    let base = k.powf(-one / nf); // k^{-1/n}
    let block_sizes = blocks.unwrap_or_else(|| {
        let mut b = vec![1; n - 2];
        b.push(2);
        b
    });
    AkBands {
        block_sizes,
        w_x: base,
        y_lo: F::zero(),
        y_hi: k.powf((nf - one) / nf),
        z_lo: base * k.powf(-eps),
        z_hi: base * k.powf(eps),
    }
}

pub(crate) fn ak_contains<F: Scalar>(bands: &AkBands<F>, x: &[F]) -> bool {
    let n = x.len();
    let y = x[n - 2];
    let z = x[n - 1];
    if !(y * z < F::zero()) {
        return false;
    }
    let (ya, za) = (y.abs(), z.abs());
    if za < bands.z_lo || za > bands.z_hi || ya < bands.y_lo || ya > bands.y_hi {
        return false;
    }
    if n == 2 {
        return true;
    }
    let t0 = -y / z;
    let u = unipotent_apply(&bands.block_sizes, t0, x);
    u[..n - 2].iter().all(|ui| ui.abs() <= bands.w_x)
}

/// Origin-centred bounding box: recover `|x_i|` bounds from the band
/// bounds on the flowed coordinates by inverting the triangular shear,
/// working from the last coordinate down. The maximal shear time is
/// `t_max = y_hi / z_lo`.
fn ak_bounding_box<F: Scalar>(bands: &AkBands<F>) -> Vec<F> {
    let n: usize = bands.block_sizes.iter().sum();
    let t_max = bands.y_hi / bands.z_lo;
    let mut out = vec![F::zero(); n];
    out[n - 1] = bands.z_hi;
    out[n - 2] = bands.y_hi;
    let mut start = 0usize;
    for &b in &bands.block_sizes {
        let end = start + b;
        for i in (start..end.min(n - 2)).rev() {
            let mut bound = bands.w_x;
            let mut pow = F::one();
            let mut fact = F::one();
            for (j, prev) in out.iter().enumerate().take(end).skip(i + 1) {
                let jj = F::from_f64_lossy((j - i) as f64);
                pow = pow * t_max;
                fact = fact * jj;
                bound = bound + pow / fact * *prev;
            }
            out[i] = bound;
        }
        start = end;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn unit_ball_volumes_match_closed_forms() {
        let pi = std::f64::consts::PI;
        assert!((unit_ball_volume::<f64>(1) - 2.0).abs() < 1e-14);
        assert!((unit_ball_volume::<f64>(2) - pi).abs() < 1e-14);
        assert!((unit_ball_volume::<f64>(3) - 4.0 * pi / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume::<f64>(4) - pi * pi / 2.0).abs() < 1e-14);
        assert!((unit_ball_volume::<f64>(5) - 8.0 * pi * pi / 15.0).abs() < 1e-13);
    }

    #[test]
    fn ball_and_box_measures() {
        let b = Region::ball(3, 2.0f64).unwrap();
        assert!((b.measure() - 4.0 * std::f64::consts::PI / 3.0 * 8.0).abs() < 1e-12);
        let c = Region::cuboid(vec![1.0f64, 0.5, 3.0]).unwrap();
        assert!((c.measure() - 2.0 * 1.0 * 3.0 * 2.0).abs() < 1e-12);
        assert!(c.contains(&[0.9, -0.4, 2.9]));
        assert!(!c.contains(&[0.9, 0.6, 0.0]));
    }

    #[test]
    fn constructor_validation() {
        assert!(Region::ball(0, 1.0f64).is_err());
        assert!(Region::ball(2, -1.0f64).is_err());
        assert!(Region::ak_split(3, 0.5f64, 0.1).is_err()); // k <= 1
        assert!(Region::ak_split(3, 4.0f64, 0.0).is_err()); // eps = 0
        assert!(Region::ak_general(vec![3, 1], 4.0f64, 0.1).is_err()); // largest not last
        assert!(Region::ak_general(vec![1, 3], 4.0f64, 0.1).is_ok());
        assert!(Region::ak_sharp(vec![3], 4.0f64, 0.0, RateFn::Power).is_err());
    }

    #[test]
    fn regular_membership_known_points() {
        // n = 3, k = 8, eps = 0.1: |x - y^2/(2z)| <= 8^{-1/3} = 0.5,
        // |y| <= 4, |z| in [8^{-1/3-0.1}, 8^{-1/3+0.1}]
        let r = Region::ak_regular(3, 8.0f64, 0.1).unwrap();
        // y = -2, z = 0.5: t0 = 4, y^2/(2z) = 4
        assert!(r.contains(&[4.2, -2.0, 0.5]));
        assert!(r.contains(&[3.6, -2.0, 0.5]));
        assert!(!r.contains(&[3.4, -2.0, 0.5])); // x-condition fails
        assert!(!r.contains(&[4.2, 2.0, 0.5])); // sign condition fails
        assert!(!r.contains(&[4.2, -4.1, 0.5])); // |y| too big
        assert!(!r.contains(&[4.2, -2.0, 0.7])); // |z| above band
    }

    #[test]
    fn split_equals_general_with_split_blocks() {
        let a = Region::ak_split(4, 9.0f64, 0.2).unwrap();
        let b = Region::ak_general(vec![1, 1, 2], 9.0f64, 0.2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let bb = a.bounding_half_widths();
        for _ in 0..2000 {
            let x: Vec<f64> =
                bb.iter().map(|w| rng.gen_range(-1.2 * w..1.2 * w)).collect();
            assert_eq!(a.contains(&x), b.contains(&x));
        }
        assert!((a.measure() - b.measure()).abs() < 1e-12);
    }

    /// Monte Carlo rejection estimate of the measure from the bounding
    /// box, compared with the closed form.
    fn mc_measure_check(region: &Region<f64>, samples: u64, rel_tol: f64, seed: u64) {
        let bb = region.bounding_half_widths();
        let box_vol: f64 = bb.iter().map(|w| 2.0 * w).product();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut hits = 0u64;
        for _ in 0..samples {
            let x: Vec<f64> = bb.iter().map(|w| rng.gen_range(-*w..*w)).collect();
            if region.contains(&x) {
                hits += 1;
            }
        }
        let est = box_vol * hits as f64 / samples as f64;
        let want = region.measure();
        assert!(
            (est - want).abs() <= rel_tol * want,
            "MC measure {est} vs closed form {want} for {region:?}"
        );
    }

    #[test]
    fn split_measure_matches_monte_carlo() {
        let r = Region::ak_split(3, 4.0f64, 0.25).unwrap();
        assert!((r.measure() - 4.0 * (4f64.powf(0.25) - 4f64.powf(-0.25))).abs() < 1e-12);
        mc_measure_check(&r, 100_000, 0.03, 11);
    }

    #[test]
    fn regular_measure_matches_monte_carlo() {
        let r = Region::ak_regular(3, 3.0f64, 0.2).unwrap();
        mc_measure_check(&r, 400_000, 0.10, 12);
    }

    #[test]
    fn general_measure_matches_monte_carlo() {
        let r = Region::ak_general(vec![2, 2], 2.0f64, 0.2).unwrap();
        mc_measure_check(&r, 200_000, 0.05, 13);
    }

    #[test]
    fn sharp_split_measure_matches_monte_carlo() {
        let r = Region::ak_sharp(vec![1, 2], 2.0f64, 0.5, RateFn::PowerLog { q: 1.0 }).unwrap();
        let l = RateFn::PowerLog { q: 1.0 }.l(3, 2.0f64);
        let want = 4.0 * l.powi(-3) * (2f64.powf(0.5) + 2f64.powf(-0.5) - 2.0);
        assert!((r.measure() - want).abs() < 1e-12);
        mc_measure_check(&r, 200_000, 0.05, 14);
    }

    #[test]
    fn sharp_regular_measure_matches_monte_carlo() {
        let r = Region::ak_sharp(vec![3], 2.0f64, 0.5, RateFn::PowerBeta { beta: 0.4 }).unwrap();
        mc_measure_check(&r, 600_000, 0.12, 15);
    }

    #[test]
    fn constructed_members_lie_inside_bounding_box() {
        // build members from band coordinates and push them back through
        // the inverse shear; each must pass contains() and fit in the box
        let r = Region::ak_regular(3, 5.0f64, 0.15).unwrap();
        let bands = r.ak_bands().unwrap();
        let bb = r.bounding_half_widths();
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let y = rng.gen_range(1e-6..bands.y_hi);
            let z = -rng.gen_range(bands.z_lo..bands.z_hi);
            let u0 = rng.gen_range(-bands.w_x..bands.w_x);
            let t0 = -y / z;
            // invert: u = U(t0) x  =>  x = U(-t0) u with u = (u0, 0, z)
            let x = unipotent_apply(&bands.block_sizes, -t0, &[u0, 0.0, z]);
            let point = [x[0], y, z];
            // the y coordinate reconstructs from the inverse shear
            assert!((x[1] - y).abs() <= 1e-9 * (1.0 + y.abs()));
            assert!(r.contains(&point), "constructed point {point:?} not a member");
            for (xi, w) in point.iter().zip(&bb) {
                assert!(xi.abs() <= *w * (1.0 + 1e-9));
            }
        }
    }

    #[test]
    fn sharp_member_shear_times_stay_in_window() {
        // every member of the sharp region has t0 = -y/z in [k, k^{1+2d}]
        let (k, delta) = (3.0f64, 0.4f64);
        let r = Region::ak_sharp(vec![1, 2], k, delta, RateFn::Power).unwrap();
        let bands = r.ak_bands().unwrap();
        let t_lo = bands.y_lo / bands.z_hi;
        let t_hi = bands.y_hi / bands.z_lo;
        assert!((t_lo - k).abs() < 1e-12 * k);
        assert!((t_hi - k.powf(1.0 + 2.0 * delta)).abs() < 1e-9 * t_hi);
    }

    #[test]
    fn rate_condition_checker() {
        // boundary rate: all three conditions hold for c < 1
        check_rate_conditions(&RateFn::Power, 3, 0.3, 0.9, 2.0, 1e6).unwrap();
        // log rate: condition 3 ratio is (1+2 delta)^{-q/n} ~ 0.855
        check_rate_conditions(&RateFn::PowerLog { q: 1.0 }, 3, 0.3, 0.5, 2.0, 1e6).unwrap();
        assert!(
            check_rate_conditions(&RateFn::PowerLog { q: 1.0 }, 3, 0.3, 0.9, 2.0, 1e6).is_err()
        );
        // beta > 1/n: condition 3 decays to zero
        assert!(check_rate_conditions(&RateFn::PowerBeta { beta: 0.5 }, 3, 0.3, 0.5, 2.0, 1e8)
            .is_err());
        // beta < 1/n: l is decreasing
        assert!(check_rate_conditions(&RateFn::PowerBeta { beta: 0.3 }, 3, 0.3, 0.5, 2.0, 1e6)
            .is_err());
    }

    #[test]
    fn measure_grows_with_k_for_split() {
        let m1 = Region::ak_split(3, 4.0f64, 0.2).unwrap().measure();
        let m2 = Region::ak_split(3, 16.0f64, 0.2).unwrap().measure();
        assert!(m2 > m1);
    }
}
