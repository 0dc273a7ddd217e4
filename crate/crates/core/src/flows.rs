//! One-parameter subgroups acting on lattices: unipotent flows in Jordan
//! form and diagonal (geodesic-like) flows.
//!
//! A unipotent flow is specified by its Jordan block sizes; the matrix of
//! the time-`t` map has `t^j / j!` on the `j`-th superdiagonal within each
//! block and is the identity across blocks. Blocks are listed with the
//! largest block last, so the bottom-right 2x2 corner is always the planar
//! horocycle `[[1, t], [0, 1]]` acting on the last two coordinates.
//!
//! Diagonal flows are `diag(exp(a_i t))` with exponents summing to zero.
//! All matrix entries are guarded against overflow (|entry| <= 1e300); a
//! trace that would overflow reports a resource error instead of feeding
//! infinities downstream.

use crate::consts::OVERFLOW_GUARD;
use crate::error::{Error, Result};
use crate::lattice::{alpha1, LatticeBasis};
use crate::mat::SquareMatrix;
use crate::scalar::Scalar;

/// Specification of a one-parameter flow on the space of lattices.
#[derive(Debug, Clone, PartialEq)]
pub enum FlowSpec {
    /// Unipotent flow with the given Jordan block sizes (a partition of the
    /// dimension, largest block last, at least one block of size >= 2).
    Unipotent { n: usize, block_sizes: Vec<usize> },
    /// `diag(exp(a_i t))` with `sum a_i = 0` and not all `a_i` zero.
    Diagonal { exponents: Vec<f64> },
    /// The planar horocycle `[[1, t], [0, 1]]`; same as `Unipotent` with a
    /// single block of size 2.
    Horocycle2d,
    /// The planar geodesic `diag(e^{t/2}, e^{-t/2})`.
    Geodesic2d,
}

impl FlowSpec {
    /// Unipotent flow with one Jordan block per entry of `block_sizes`.
    pub fn unipotent(n: usize, block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.is_empty() || block_sizes.iter().sum::<usize>() != n {
            return Err(Error::invalid(format!(
                "block sizes {block_sizes:?} do not partition n = {n}"
            )));
        }
        if block_sizes.iter().any(|&b| b == 0) {
            return Err(Error::invalid("zero-size Jordan block"));
        }
        let max = *block_sizes.iter().max().unwrap();
        if max < 2 {
            return Err(Error::invalid("trivial unipotent flow: all blocks have size 1"));
        }
        if *block_sizes.last().unwrap() != max {
            return Err(Error::invalid("largest Jordan block must be listed last"));
        }
        Ok(FlowSpec::Unipotent { n, block_sizes })
    }

    /// The split shape: blocks `[1, ..., 1, 2]` (only the last two
    /// coordinates move).
    pub fn split(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("split flow needs n >= 2"));
        }
        let mut blocks = vec![1; n - 2];
        blocks.push(2);
        Self::unipotent(n, blocks)
    }

    /// The regular shape: a single Jordan block of size `n`.
    pub fn regular(n: usize) -> Result<Self> {
        Self::unipotent(n, vec![n])
    }

    pub fn diagonal(exponents: Vec<f64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::invalid("diagonal flow needs n >= 2"));
        }
        let sum: f64 = exponents.iter().sum();
        if sum.abs() > 1e-12 {
            return Err(Error::invalid(format!("diagonal exponents sum to {sum}, not 0")));
        }
        if exponents.iter().all(|&a| a == 0.0) {
            return Err(Error::invalid("trivial diagonal flow"));
        }
        Ok(FlowSpec::Diagonal { exponents })
    }

    /// Default diagonal flow in dimension n: `(1/2, -1/2, 0, ..., 0)`,
    /// extending the planar geodesic.
    pub fn default_diagonal(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("diagonal flow needs n >= 2"));
        }
        let mut e = vec![0.0; n];
        e[0] = 0.5;
        e[1] = -0.5;
        Self::diagonal(e)
    }

    pub fn dim(&self) -> usize {
        match self {
            FlowSpec::Unipotent { n, .. } => *n,
            FlowSpec::Diagonal { exponents } => exponents.len(),
            FlowSpec::Horocycle2d | FlowSpec::Geodesic2d => 2,
        }
    }

    /// Jordan block sizes for unipotent kinds.
    pub fn block_sizes(&self) -> Option<Vec<usize>> {
        match self {
            FlowSpec::Unipotent { block_sizes, .. } => Some(block_sizes.clone()),
            FlowSpec::Horocycle2d => Some(vec![2]),
            _ => None,
        }
    }
}

/// Matrix entries of a unipotent Jordan flow applied to a coordinate
/// vector: `u_i = sum_j (t^j / j!) x_{i+j}` within the block containing
/// `i`. Shared by the flow matrix and by region membership, which needs
/// the same polynomial at a point-dependent time.
pub(crate) fn unipotent_apply<F: Scalar>(block_sizes: &[usize], t: F, x: &[F]) -> Vec<F> {
    let mut out = x.to_vec();
    let mut start = 0usize;
    for &b in block_sizes {
        for i in start..start + b {
            let mut acc = x[i];
            let mut pow = F::one();
            let mut fact = F::one();
            for (j, &xj) in x.iter().enumerate().take(start + b).skip(i + 1) {
                let jj = F::from_f64_lossy((j - i) as f64);
                pow = pow * t;
                fact = fact * jj;
                acc = acc + pow / fact * xj;
            }
            out[i] = acc;
        }
        start += b;
    }
    out
}

/// The matrix of the time-`t` flow. Entries beyond the overflow guard are
/// a resource error.
pub fn flow_matrix<F: Scalar>(spec: &FlowSpec, t: F) -> Result<SquareMatrix<F>> {
    if !t.is_finite() {
        return Err(Error::NonFinite("flow time"));
    }
    let n = spec.dim();
    let guard = F::from_f64_lossy(OVERFLOW_GUARD);
    let m = match spec {
        FlowSpec::Horocycle2d => {
            let mut m = SquareMatrix::identity(2);
            m[(0, 1)] = t;
            m
        }
        FlowSpec::Geodesic2d => {
            let half = t / F::from_f64_lossy(2.0);
            let mut m = SquareMatrix::zeros(2);
            m[(0, 0)] = half.exp();
            m[(1, 1)] = (-half).exp();
            m
        }
        FlowSpec::Unipotent { block_sizes, .. } => {
            let mut m = SquareMatrix::identity(n);
            let mut start = 0usize;
            for &b in block_sizes {
                for i in start..start + b {
                    let mut pow = F::one();
                    let mut fact = F::one();
                    for j in i + 1..start + b {
                        let jj = F::from_f64_lossy((j - i) as f64);
                        pow = pow * t;
                        fact = fact * jj;
                        m[(i, j)] = pow / fact;
                    }
                }
                start += b;
            }
            m
        }
        FlowSpec::Diagonal { exponents } => {
            let mut m = SquareMatrix::zeros(n);
            for (i, &a) in exponents.iter().enumerate() {
                m[(i, i)] = (F::from_f64_lossy(a) * t).exp();
            }
            m
        }
    };
    if !m.is_finite() || m.max_abs() > guard {
        return Err(Error::Overflow(OVERFLOW_GUARD));
    }
    Ok(m)
}

/// Apply the time-`t` flow to a lattice basis. Unimodularity is preserved
/// by construction (the flow matrix has determinant one exactly), so the
/// result is built through the trusted constructor; re-checking the float
/// determinant would be ill-conditioned at large times.
pub fn apply_flow<F: Scalar>(
    spec: &FlowSpec,
    t: F,
    basis: &LatticeBasis<F>,
) -> Result<LatticeBasis<F>> {
    if spec.dim() != basis.dim() {
        return Err(Error::invalid("flow dimension does not match basis"));
    }
    let m = flow_matrix(spec, t)?;
    let prod = m.mul(basis.matrix());
    if !prod.is_finite() || prod.max_abs() > F::from_f64_lossy(OVERFLOW_GUARD) {
        return Err(Error::Overflow(OVERFLOW_GUARD));
    }
    Ok(LatticeBasis::new_unchecked(prod))
}

/// One sample point of an excursion trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint<F> {
    pub t: F,
    pub alpha1: F,
    /// Running maximum of `log alpha1(t_j) / log t_j` over `t_j > 1` so far.
    pub envelope: F,
}

/// Evaluate `alpha1` along the flow at the given times (positive, strictly
/// increasing) and accumulate the envelope of `log alpha1 / log t`.
pub fn excursion_trace<F: Scalar>(
    spec: &FlowSpec,
    basis: &LatticeBasis<F>,
    times: &[F],
) -> Result<Vec<TracePoint<F>>> {
    if times.iter().any(|&t| !(t > F::zero()) || !t.is_finite()) {
        return Err(Error::invalid("excursion times must be positive and finite"));
    }
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("excursion times must be strictly increasing"));
    }
    let mut env = F::neg_infinity();
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let moved = apply_flow(spec, t, basis)?;
        let a = alpha1(&moved)?;
        if t > F::one() {
            env = env.max(a.ln() / t.ln());
        }
        out.push(TracePoint { t, alpha1: a, envelope: env });
    }
    Ok(out)
}

/// Geometric time grid `t0 * rho^k <= t_max` (the default sampling grid
/// for orbit experiments; `rho = 1.05`).
pub fn geometric_times(t0: f64, rho: f64, t_max: f64) -> Result<Vec<f64>> {
    if !(t0 > 0.0) || !(rho > 1.0) || !(t_max >= t0) {
        return Err(Error::invalid("geometric_times: need t0 > 0, rho > 1, t_max >= t0"));
    }
    let mut out = Vec::new();
    let mut t = t0;
    while t <= t_max {
        out.push(t);
        t *= rho;
    }
    Ok(out)
}
