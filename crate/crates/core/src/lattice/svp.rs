//! Exact shortest vectors and the parameter `alpha1 = 1 / (shortest norm)`.
//!
//! Strategy: LLL-reduce, then enumerate the ball of radius equal to the
//! shortest reduced basis vector, which provably contains a shortest
//! lattice vector. Dimension 2 takes a Lagrange-Gauss fast path because
//! orbit experiments call it tens of millions of times.
//!
//! Ties (norms within 1e-9 relative) are broken deterministically: each
//! candidate is sign-normalized so its first nonzero coordinate is
//! positive, then the lexicographically smallest coordinate vector wins.
//! On `Z^2` this selects `(0, 1)` over `(1, 0)`.

use crate::consts::{LLL_DELTA, SVP_REL_TOL};
use crate::error::{Error, Result};
use crate::lattice::lll::{lll_cols, transform_coeffs};
use crate::lattice::{enumerate_points, LatticeBasis, LatticeVector};
use crate::mat::{dot, norm1, norm2};
use crate::scalar::Scalar;

/// A shortest nonzero vector of the lattice, with the deterministic
/// tie-break described in the module docs.
pub fn shortest_vector<F: Scalar>(basis: &LatticeBasis<F>) -> Result<LatticeVector<F>> {
    if basis.dim() == 2 {
        return shortest_vector_2d(basis);
    }
    let (red, u) = lll_cols(&basis.cols(), LLL_DELTA);
    let n = basis.dim();
    let r_min = red.iter().map(|c| norm2(c)).fold(F::infinity(), F::min);
    let red_basis = LatticeBasis::new_unchecked(crate::mat::SquareMatrix::from_cols(&red)?);
    let pts = enumerate_points(&red_basis, r_min)?;
    let best = pick_shortest(pts).ok_or_else(|| Error::invalid("empty enumeration in SVP"))?;
    // map coefficients back to the caller's basis
    let coeffs = transform_coeffs(&u, n, &best.coeffs)?;
    Ok(LatticeVector { coeffs, coords: best.coords })
}

/// `alpha1 = 1 / ||shortest vector||` (Euclidean norm).
pub fn alpha1<F: Scalar>(basis: &LatticeBasis<F>) -> Result<F> {
    Ok(F::one() / shortest_vector(basis)?.norm())
}

/// `alpha1` in the l^1 norm: reciprocal of the minimal l^1 norm over
/// nonzero lattice vectors. Since `||v||_2 <= ||v||_1`, enumerating the
/// Euclidean ball of radius equal to the current best l^1 value is
/// exhaustive.
pub fn alpha1_l1<F: Scalar>(basis: &LatticeBasis<F>) -> Result<F> {
    let (red, _) = lll_cols(&basis.cols(), LLL_DELTA);
    let mut best = red.iter().map(|c| norm1(c)).fold(F::infinity(), F::min);
    let red_basis = LatticeBasis::new_unchecked(crate::mat::SquareMatrix::from_cols(&red)?);
    for v in enumerate_points(&red_basis, best)? {
        let l1 = v.norm_l1();
        if l1 < best {
            best = l1;
        }
    }
    Ok(F::one() / best)
}

fn pick_shortest<F: Scalar>(pts: Vec<LatticeVector<F>>) -> Option<LatticeVector<F>> {
    let min = pts
        .iter()
        .map(|v| v.norm())
        .fold(F::infinity(), F::min);
    let tol = F::one() + F::from_f64_lossy(SVP_REL_TOL);
    let mut ties: Vec<LatticeVector<F>> = pts
        .into_iter()
        .filter(|v| v.norm() <= min * tol)
        .map(|mut v| {
            v.normalize_sign();
            v
        })
        .collect();
    ties.sort_by(|a, b| {
        for (x, y) in a.coords.iter().zip(&b.coords) {
            match x.partial_cmp(y).expect("finite") {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    });
    ties.into_iter().next()
}

/// Lagrange-Gauss reduction in dimension 2: repeatedly subtract the
/// rounded projection and swap until the first vector is minimal.
fn shortest_vector_2d<F: Scalar>(basis: &LatticeBasis<F>) -> Result<LatticeVector<F>> {
    let mut b1 = basis.basis_vector(0);
    let mut b2 = basis.basis_vector(1);
    // integer coefficient columns for b1, b2 in the original basis
    let mut u1 = [1i64, 0];
    let mut u2 = [0i64, 1];
    let half = F::from_f64_lossy(0.5);
    for _ in 0..256 {
        let n1 = dot(&b1, &b1);
        let n2 = dot(&b2, &b2);
        if n2 < n1 {
            std::mem::swap(&mut b1, &mut b2);
            std::mem::swap(&mut u1, &mut u2);
            continue;
        }
        if n1 == F::zero() {
            return Err(Error::Singular("gauss reduction"));
        }
        let m = dot(&b1, &b2) / n1;
        if m.abs() <= half {
            break;
        }
        let q = m.round();
        let qi = q.as_f64() as i64;
        for (x, &y) in b2.iter_mut().zip(&b1) {
            *x = *x - q * y;
        }
        u2[0] -= qi * u1[0];
        u2[1] -= qi * u1[1];
    }
    // minimal vectors of a reduced 2d basis lie among b1, b2, b1 +- b2
    let candidates = [
        (vec![b1[0], b1[1]], [u1[0], u1[1]]),
        (vec![b2[0], b2[1]], [u2[0], u2[1]]),
        (
            vec![b1[0] + b2[0], b1[1] + b2[1]],
            [u1[0] + u2[0], u1[1] + u2[1]],
        ),
        (
            vec![b1[0] - b2[0], b1[1] - b2[1]],
            [u1[0] - u2[0], u1[1] - u2[1]],
        ),
    ];
    let pts: Vec<LatticeVector<F>> = candidates
        .iter()
        .flat_map(|(v, c)| {
            [
                LatticeVector { coeffs: vec![c[0], c[1]], coords: v.clone() },
                LatticeVector {
                    coeffs: vec![-c[0], -c[1]],
                    coords: vec![-v[0], -v[1]],
                },
            ]
        })
        .collect();
    pick_shortest(pts).ok_or_else(|| Error::invalid("gauss reduction produced no candidates"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::SquareMatrix;

    fn z2() -> LatticeBasis<f64> {
        LatticeBasis::from_cols(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn z2_tie_break_selects_0_1() {
        let v = shortest_vector(&z2()).unwrap();
        assert_eq!(v.coords, vec![0.0, 1.0]);
        assert!((alpha1(&z2()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z3_tie_break_first_axis_last() {
        let b = LatticeBasis::new(SquareMatrix::<f64>::identity(3)).unwrap();
        let v = shortest_vector(&b).unwrap();
        assert_eq!(v.coords, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn sheared_basis_still_finds_unit_vector() {
        let b = LatticeBasis::<f64>::from_cols(&[vec![1.0, 0.0], vec![100.0, 1.0]]).unwrap();
        let v = shortest_vector(&b).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alpha1_scales_inversely_under_dilation() {
        // dilation leaves unimodularity behind, so go through the
        // unchecked constructor; alpha1(c * B) = alpha1(B) / c
        for c in [2.0, 0.5] {
            let mut m = SquareMatrix::<f64>::identity(2);
            m[(0, 0)] = c;
            m[(1, 1)] = c;
            let b = LatticeBasis::new_unchecked(m);
            let a = alpha1(&b).unwrap();
            assert!((a - 1.0 / c).abs() < 1e-12, "c = {c}, alpha1 = {a}");
        }
    }

    #[test]
    fn l1_alpha1_on_z2_and_hexagonal_like() {
        assert!((alpha1_l1(&z2()).unwrap() - 1.0).abs() < 1e-12);
        // sheared: shortest l1 vector still a unit vector
        let b = LatticeBasis::<f64>::from_cols(&[vec![1.0, 0.0], vec![0.5, 1.0]]).unwrap();
        let a = alpha1_l1(&b).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
    }

    #[test]
    fn svp_matches_enumeration_on_skewed_basis() {
        let b = LatticeBasis::from_cols(&[vec![0.02, 0.0], vec![31.7, 50.0]]).unwrap();
        let v = shortest_vector(&b).unwrap();
        // brute force over a generous coefficient box
        let mut best = f64::INFINITY;
        for a in -200i64..=200 {
            for c in -200i64..=200 {
                if a == 0 && c == 0 {
                    continue;
                }
                let x = 0.02 * a as f64 + 31.7 * c as f64;
                let y = 50.0 * c as f64;
                best = best.min((x * x + y * y).sqrt());
            }
        }
        assert!((v.norm() - best).abs() < 1e-9 * best.max(1.0));
    }
}
