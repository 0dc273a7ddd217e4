//! Exact enumeration of lattice points in balls and axis-aligned boxes.
//!
//! Wrappers around the Fincke-Pohst engine that reduce the basis first,
//! map coefficients back to the caller's basis through the tracked
//! transform, and return points in a canonical deterministic order
//! (by norm, then lexicographically by coordinates).

use crate::consts::{LLL_DELTA, RADIUS_FUZZ};
use crate::error::{Error, Result};
use crate::lattice::fp::FpEngine;
use crate::lattice::lll::{lll_cols, transform_coeffs};
use crate::lattice::{canonical_order, LatticeBasis, LatticeVector};
use crate::mat::SquareMatrix;
use crate::scalar::Scalar;

/// All nonzero lattice vectors with `||v|| <= radius` (both signs listed).
pub fn enumerate_points<F: Scalar>(
    basis: &LatticeBasis<F>,
    radius: F,
) -> Result<Vec<LatticeVector<F>>> {
    if !(radius > F::zero()) || !radius.is_finite() {
        return Err(Error::invalid("enumerate_points: radius must be positive and finite"));
    }
    let n = basis.dim();
    let (red, u) = lll_cols(&basis.cols(), LLL_DELTA);
    let engine = FpEngine::new(red)?;
    let mut out: Vec<LatticeVector<F>> = Vec::new();
    engine.enumerate(&vec![F::zero(); n], radius, &mut |c, coords| {
        if c.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        out.push(LatticeVector {
            coeffs: transform_coeffs(&u, n, c)?,
            coords: coords.to_vec(),
        });
        Ok(true)
    })?;
    out.sort_by(canonical_order);
    Ok(out)
}

/// Primitive nonzero lattice vectors with `||v|| <= radius`: those whose
/// coefficient gcd is 1 (equivalently, not a proper multiple of a shorter
/// lattice vector).
pub fn enumerate_primitive_points<F: Scalar>(
    basis: &LatticeBasis<F>,
    radius: F,
) -> Result<Vec<LatticeVector<F>>> {
    let mut pts = enumerate_points(basis, radius)?;
    pts.retain(|v| v.is_primitive());
    Ok(pts)
}

/// All nonzero lattice vectors in the axis-aligned box
/// `{ x : |x_i - center_i| <= half_widths_i }`.
///
/// The box is covered by the circumscribed ellipsoid
/// `sum ((x_i - c_i)/w_i)^2 <= n`, enumerated against the rescaled basis,
/// and membership is then re-checked against the box itself; the tree size
/// is proportional to the box volume over the covolume, not to the
/// bounding-ball volume, which is what makes thin boxes affordable.
pub fn enumerate_in_box<F: Scalar>(
    basis: &LatticeBasis<F>,
    center: &[F],
    half_widths: &[F],
) -> Result<Vec<LatticeVector<F>>> {
    let n = basis.dim();
    if center.len() != n || half_widths.len() != n {
        return Err(Error::invalid("enumerate_in_box: dimension mismatch"));
    }
    if half_widths.iter().any(|&w| !(w > F::zero()) || !w.is_finite()) {
        return Err(Error::invalid("enumerate_in_box: half widths must be positive and finite"));
    }
    if center.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite("enumerate_in_box center"));
    }

    // rescale coordinates so the box becomes the unit cube
    let cols = basis.cols();
    let scaled: Vec<Vec<F>> = cols
        .iter()
        .map(|col| col.iter().zip(half_widths).map(|(&x, &w)| x / w).collect())
        .collect();
    let (red, u) = lll_cols(&scaled, LLL_DELTA);
    let engine = FpEngine::new(red.clone())?;

    // center in coefficient space of the reduced scaled basis
    let red_mat = SquareMatrix::from_cols(&red)?;
    let scaled_center: Vec<F> = center.iter().zip(half_widths).map(|(&c, &w)| c / w).collect();
    let t = red_mat.inverse().map_err(|_| Error::Singular("enumerate_in_box"))?.mul_vec(&scaled_center);

    let radius = F::from_f64_lossy(n as f64).sqrt();
    let fuzz = F::from_f64_lossy(RADIUS_FUZZ);
    let mut out: Vec<LatticeVector<F>> = Vec::new();
    engine.enumerate(&t, radius, &mut |c, _| {
        if c.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        let coeffs = transform_coeffs(&u, n, c)?;
        let cf: Vec<F> = coeffs.iter().map(|&x| F::from_f64_lossy(x as f64)).collect();
        let coords = basis.matrix().mul_vec(&cf);
        let inside = coords
            .iter()
            .zip(center)
            .zip(half_widths)
            .all(|((&x, &c0), &w)| (x - c0).abs() <= w * fuzz);
        if inside {
            out.push(LatticeVector { coeffs, coords });
        }
        Ok(true)
    })?;
    out.sort_by(canonical_order);
    Ok(out)
}

/// Visitor over nonzero points in a ball, without allocating the result
/// list. The visitor sees reduced-basis coefficients (their gcd is the
/// basis-independent primitivity test) and absolute coordinates.
pub(crate) fn for_each_point_in_ball<F, V>(
    basis: &LatticeBasis<F>,
    radius: F,
    visit: &mut V,
) -> Result<()>
where
    F: Scalar,
    V: FnMut(&[i64], &[F]) -> Result<bool>,
{
    let n = basis.dim();
    let (red, _) = lll_cols(&basis.cols(), LLL_DELTA);
    let engine = FpEngine::new(red)?;
    engine.enumerate(&vec![F::zero(); n], radius, &mut |c, coords| {
        if c.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        visit(c, coords)
    })
}

/// Count nonzero points in a region by enumerating its bounding box and
/// testing membership; factored here so transforms and witnesses share it.
pub(crate) fn count_points_in_region<F, R>(
    basis: &LatticeBasis<F>,
    half_widths: &[F],
    mut member: R,
) -> Result<u64>
where
    F: Scalar,
    R: FnMut(&[F]) -> bool,
{
    let n = basis.dim();
    let center = vec![F::zero(); n];
    let pts = enumerate_in_box(basis, &center, half_widths)?;
    Ok(pts.iter().filter(|v| member(&v.coords)).count() as u64)
}
