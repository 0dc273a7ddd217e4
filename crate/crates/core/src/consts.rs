//! Numerical tolerances and resource guards used across the crate.
//!
//! Everything here is a deliberate, documented choice; tests rely on the
//! exact values, so change them only together with the affected tests.

/// A basis is accepted as unimodular when `|det - 1| <= UNIMODULAR_TOL`.
///
/// Determinants are computed in `f64` from well-scaled bases (samplers and
/// hand-written matrices), where LU rounding is far below this threshold.
pub const UNIMODULAR_TOL: f64 = 1e-9;

/// Lovasz parameter for LLL reduction. Close to 1 gives the strongest
/// reduction the algorithm offers, which keeps enumeration trees small.
pub const LLL_DELTA: f64 = 0.99;

/// Relative tolerance for shortest-vector ties: vectors whose norm is within
/// this factor of the minimum compete under the deterministic tie-break.
pub const SVP_REL_TOL: f64 = 1e-9;

/// Hard cap on enumeration work (tree nodes visited + points emitted). An
/// operation that would exceed this returns a resource error instead of
/// running for hours; callers must shrink the region or radius.
pub const ENUM_GUARD: u64 = 10_000_000;

/// Multiplicative fuzz applied to enumeration radii so that points exactly
/// on the boundary are not lost to rounding. Membership is re-tested
/// exactly afterwards where it matters.
pub const RADIUS_FUZZ: f64 = 1.0 + 1e-12;

/// Flow and orbit computations abort when any matrix entry would exceed
/// this bound (well inside `f64` range so downstream arithmetic stays finite).
pub const OVERFLOW_GUARD: f64 = 1e300;

/// Default prime for the index-p sublattice sampler: the smallest prime
/// >= 10^6. Large enough that the sampled distribution is indistinguishable
/// from Haar at the sample sizes used in the experiments.
pub const DEFAULT_GM_PRIME: u64 = 1_000_003;

/// Truncation target for zeta values: direct series plus Euler-Maclaurin
/// correction with remainder provably below this.
pub const ZETA_EPS: f64 = 1e-12;
