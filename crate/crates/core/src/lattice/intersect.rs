//! Existence queries: does a lattice have a nonzero point inside a
//! region? Used by avoidance-probability estimates and witness searches,
//! where only the yes/no answer matters and the walk should stop at the
//! first hit.

use super::fp::FpEngine;
use super::lll::lll_cols;
use super::LatticeBasis;
use crate::consts::LLL_DELTA;
use crate::error::{Error, Result};
use crate::region::Region;
use crate::scalar::Scalar;

/// True when the lattice contains a nonzero vector in the region.
///
/// The region's origin-centred bounding box is enumerated through the
/// circumscribed-ellipsoid trick (per-axis rescaling so the box becomes a
/// cube, then a ball of radius sqrt(n) in the scaled metric), and each
/// candidate is tested against exact membership; the walk stops at the
/// first member.
pub fn region_intersects<F: Scalar>(basis: &LatticeBasis<F>, region: &Region<F>) -> Result<bool> {
    let n = basis.dim();
    if region.dim() != n {
        return Err(Error::invalid("region_intersects: dimension mismatch"));
    }
    let hw = region.bounding_half_widths();
    let scaled: Vec<Vec<F>> = basis
        .cols()
        .iter()
        .map(|col| col.iter().zip(&hw).map(|(&x, &w)| x / w).collect())
        .collect();
    let (red, _) = lll_cols(&scaled, LLL_DELTA);
    let engine = FpEngine::new(red)?;
    let radius = F::from_f64_lossy(n as f64).sqrt();
    let mut found = false;
    engine.enumerate(&vec![F::zero(); n], radius, &mut |c, sc| {
        if c.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        // undo the per-axis rescaling to get absolute coordinates
        let coords: Vec<F> = sc.iter().zip(&hw).map(|(&s, &w)| s * w).collect();
        if region.contains(&coords) {
            found = true;
            return Ok(false);
        }
        Ok(true)
    })?;
    Ok(found)
}
