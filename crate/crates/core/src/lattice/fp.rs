//! Depth-first enumeration of integer combinations inside an ellipsoid.
//!
//! Given generating columns `C` (any determinant, typically LLL-reduced
//! first), a real center `t` in coefficient space and a radius `r`, visits
//! every integer vector `c` with `||C (c - t)|| <= r`. The classic
//! Gram-Schmidt recursion: at level `i` (processed from the last coordinate
//! down) the contribution is `||c_i - y_i||^2 * ||b*_i||^2` where `y_i`
//! collects the projections of the already-fixed tail, and branches are
//! pruned once the partial sum exceeds the squared radius.
//!
//! Work is bounded by the crate-wide enumeration guard: the engine counts
//! visited nodes and emitted points and aborts with a resource error rather
//! than walking a tree that would never finish.

use crate::consts::{ENUM_GUARD, RADIUS_FUZZ};
use crate::error::{Error, Result};
use crate::lattice::lll::gso;
use crate::scalar::Scalar;

/// Visitor outcome: continue or stop the walk early (used by existence
/// queries that only need one point).
pub(crate) type Keep = bool;

pub(crate) struct FpEngine<F> {
    n: usize,
    cols: Vec<Vec<F>>,
    mu: Vec<Vec<F>>,
    b_star_sq: Vec<F>,
}

impl<F: Scalar> FpEngine<F> {
    /// Build from generating columns. Columns must be linearly independent;
    /// a degenerate Gram-Schmidt norm is reported as a singular input.
    pub fn new(cols: Vec<Vec<F>>) -> Result<Self> {
        let g = gso(&cols);
        if g.b_star_sq.iter().any(|&s| !(s > F::zero()) || !s.is_finite()) {
            return Err(Error::Singular("enumeration basis"));
        }
        Ok(FpEngine { n: cols.len(), cols, mu: g.mu, b_star_sq: g.b_star_sq })
    }

    /// Enumerate all `c` with `||C (c - t)|| <= r * (1 + 1e-12)`.
    ///
    /// The visitor receives the integer coefficients and the coordinates
    /// `C c` (absolute, not relative to the center) and returns whether to
    /// keep going. `c = 0` is *not* filtered here.
    pub fn enumerate<V>(&self, t: &[F], r: F, visit: &mut V) -> Result<()>
    where
        V: FnMut(&[i64], &[F]) -> Result<Keep>,
    {
        debug_assert_eq!(t.len(), self.n);
        let fuzz = F::from_f64_lossy(RADIUS_FUZZ);
        let r2 = (r * fuzz) * (r * fuzz);
        let mut c = vec![0i64; self.n];
        let mut nodes = 0u64;
        self.walk(self.n, F::zero(), t, r2, &mut c, &mut nodes, visit)
            .map(|_| ())
    }

    /// Returns Ok(true) to continue, Ok(false) when the visitor stopped.
    fn walk<V>(
        &self,
        level: usize,
        partial: F,
        t: &[F],
        r2: F,
        c: &mut Vec<i64>,
        nodes: &mut u64,
        visit: &mut V,
    ) -> Result<Keep>
    where
        V: FnMut(&[i64], &[F]) -> Result<Keep>,
    {
        if level == 0 {
            *nodes += 1;
            if *nodes > ENUM_GUARD {
                return Err(Error::EnumerationGuard { limit: ENUM_GUARD });
            }
            let coords = self.coords_of(c);
            return visit(c, &coords);
        }
        let i = level - 1;
        // center of the admissible interval at this level
        let mut y = t[i];
        for j in level..self.n {
            let cj = F::from_f64_lossy(c[j] as f64) - t[j];
            y -= self.mu[j][i] * cj;
        }
        let budget = r2 - partial;
        if budget < F::zero() {
            return Ok(true);
        }
        let w = (budget / self.b_star_sq[i]).sqrt();
        let (lo, hi) = int_window(y, w)?;
        for ci in lo..=hi {
            *nodes += 1;
            if *nodes > ENUM_GUARD {
                return Err(Error::EnumerationGuard { limit: ENUM_GUARD });
            }
            let d = F::from_f64_lossy(ci as f64) - y;
            let contrib = self.b_star_sq[i] * d * d;
            if contrib <= budget {
                c[i] = ci;
                if !self.walk(level - 1, partial + contrib, t, r2, c, nodes, visit)? {
                    return Ok(false);
                }
            }
        }
        c[i] = 0;
        Ok(true)
    }

    fn coords_of(&self, c: &[i64]) -> Vec<F> {
        let dim = self.cols[0].len();
        let mut v = vec![F::zero(); dim];
        for (j, col) in self.cols.iter().enumerate() {
            if c[j] != 0 {
                let cj = F::from_f64_lossy(c[j] as f64);
                for (x, &y) in v.iter_mut().zip(col) {
                    *x += cj * y;
                }
            }
        }
        v
    }
}

/// Integer window `[ceil(y - w), floor(y + w)]`, clamped so a pathological
/// width still trips the node guard instead of overflowing i64.
fn int_window<F: Scalar>(y: F, w: F) -> Result<(i64, i64)> {
    if !y.is_finite() || !w.is_finite() {
        return Err(Error::NonFinite("enumeration window"));
    }
    let y = y.as_f64();
    let w = w.as_f64();
    let clamp = (ENUM_GUARD + 2) as f64;
    let lo = (y - w.min(clamp)).ceil();
    let hi = (y + w.min(clamp)).floor();
    Ok((lo as i64, hi as i64))
}
