//! LLL reduction with a tracked unimodular transform.
//!
//! Textbook size reduction + Lovasz exchanges on the basis columns. The
//! Gram-Schmidt data is recomputed after every change; dimensions are tiny
//! here, so robustness wins over asymptotics. The integer transform `U`
//! with `reduced = original * U` is tracked so that coefficients found in
//! the reduced basis can be mapped back to the caller's basis.

use crate::consts::LLL_DELTA;
use crate::error::{Error, Result};
use crate::lattice::{IntegerForm, LatticeBasis};
use crate::mat::{dot, SquareMatrix};
use crate::scalar::Scalar;

/// Gram-Schmidt state for a set of columns: `mu[i][j]` (j < i) and the
/// squared norms of the orthogonalized vectors.
pub(crate) struct Gso<F> {
    pub mu: Vec<Vec<F>>,
    pub b_star_sq: Vec<F>,
}

pub(crate) fn gso<F: Scalar>(cols: &[Vec<F>]) -> Gso<F> {
    let n = cols.len();
    let mut mu = vec![vec![F::zero(); n]; n];
    let mut b_star: Vec<Vec<F>> = Vec::with_capacity(n);
    let mut b_star_sq = vec![F::zero(); n];
    for i in 0..n {
        let mut v = cols[i].clone();
        for j in 0..i {
            let m = if b_star_sq[j] == F::zero() {
                F::zero()
            } else {
                dot(&cols[i], &b_star[j]) / b_star_sq[j]
            };
            mu[i][j] = m;
            for (x, y) in v.iter_mut().zip(&b_star[j]) {
                *x = *x - m * *y;
            }
        }
        b_star_sq[i] = dot(&v, &v);
        b_star.push(v);
    }
    Gso { mu, b_star_sq }
}

/// LLL-reduce raw columns; returns the reduced columns and the integer
/// transform `U` (column-major as a flat i128 row-major matrix) with
/// `reduced = original * U`.
pub(crate) fn lll_cols<F: Scalar>(
    cols: &[Vec<F>],
    delta: f64,
) -> (Vec<Vec<F>>, Vec<i128>) {
    let n = cols.len();
    let mut b: Vec<Vec<F>> = cols.to_vec();
    // u is row-major n x n; column k of u holds the original-basis
    // coefficients of reduced column k.
    let mut u: Vec<i128> = vec![0; n * n];
    for i in 0..n {
        u[i * n + i] = 1;
    }
    let delta = F::from_f64_lossy(delta);
    let half = F::from_f64_lossy(0.5);

    let mut k = 1usize;
    let mut g = gso(&b);
    let mut iterations = 0u64;
    while k < n {
        // safety valve; never hit at our dimensions
        iterations += 1;
        if iterations > 1_000_000 {
            break;
        }
        // size-reduce column k against all previous columns
        for j in (0..k).rev() {
            let m = g.mu[k][j];
            if m.abs() > half {
                let q = m.round();
                let qi = q.as_f64() as i128;
                for i in 0..n {
                    let s = q * b[j][i];
                    b[k][i] = b[k][i] - s;
                }
                for i in 0..n {
                    u[i * n + k] -= qi * u[i * n + j];
                }
                g = gso(&b);
            }
        }
        // Lovasz condition
        let lhs = g.b_star_sq[k];
        let rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.b_star_sq[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            for i in 0..n {
                u.swap(i * n + k, i * n + (k - 1));
            }
            g = gso(&b);
            k = k.max(2) - 1;
        }
    }
    (b, u)
}

/// LLL reduction of a lattice basis (Lovasz parameter 0.99).
///
/// The output spans the same lattice: it differs from the input by the
/// unimodular transform tracked internally, so the determinant is preserved
/// up to rounding. An attached [`IntegerForm`] is carried through by
/// applying the same integer column operations.
pub fn lll_reduce<F: Scalar>(basis: &LatticeBasis<F>) -> Result<LatticeBasis<F>> {
    let (b, u) = lll_cols(&basis.cols(), LLL_DELTA);
    let mat = SquareMatrix::from_cols(&b)?;
    let reduced = LatticeBasis::new_unchecked(mat);
    let n = basis.dim();
    match basis.integer_form() {
        None => Ok(reduced),
        Some(form) => {
            // new integer matrix = M * U, if it stays within i64
            let mut new_mat = vec![0i64; n * n];
            let mut ok = true;
            'outer: for i in 0..n {
                for j in 0..n {
                    let mut acc: i128 = 0;
                    for t in 0..n {
                        acc += form.entry(i, t) as i128 * u[t * n + j];
                        if acc.unsigned_abs() > i64::MAX as u128 {
                            ok = false;
                            break 'outer;
                        }
                    }
                    match i64::try_from(acc) {
                        Ok(v) => new_mat[i * n + j] = v,
                        Err(_) => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                Ok(reduced.with_integer_form(IntegerForm {
                    n,
                    mat: new_mat,
                    scale: form.scale,
                    index: form.index,
                }))
            } else {
                Ok(reduced)
            }
        }
    }
}

/// Map coefficients in the reduced basis back to the original basis via the
/// tracked transform: `c_orig = U * c_red`.
pub(crate) fn transform_coeffs(u: &[i128], n: usize, c: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; n];
    for i in 0..n {
        let mut acc: i128 = 0;
        for j in 0..n {
            acc += u[i * n + j] * c[j] as i128;
        }
        out[i] = i64::try_from(acc)
            .map_err(|_| Error::unsupported("coefficient overflow in basis transform"))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::norm2;

    #[test]
    fn shear_reduces_to_unit_vectors() {
        // columns (1,0), (100,1) generate Z^2; the reduced basis must have
        // both columns of norm <= sqrt(2) (here: exactly the unit vectors
        // up to sign)
        let basis = LatticeBasis::from_cols(&[vec![1.0, 0.0], vec![100.0, 1.0]]).unwrap();
        let red = lll_reduce(&basis).unwrap();
        for j in 0..2 {
            assert!(norm2(&red.basis_vector(j)) <= 2.0f64.sqrt() + 1e-12);
        }
        let det = red.matrix().det();
        assert!((det.abs() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn transform_maps_reduced_to_original() {
        let cols: Vec<Vec<f64>> =
            vec![vec![1.0, 0.0, 0.0], vec![3.0, 1.0, 0.0], vec![7.0, 5.0, 1.0]];
        let (red, u) = lll_cols(&cols, LLL_DELTA);
        // reconstruct each reduced column from the original columns via U
        for k in 0..3 {
            for i in 0..3 {
                let mut acc = 0.0;
                for t in 0..3 {
                    acc += cols[t][i] * u[t * 3 + k] as f64;
                }
                assert!((acc - red[k][i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn determinant_preserved_on_random_like_basis() {
        // a fixed well-conditioned unimodular basis
        let basis = LatticeBasis::<f64>::from_cols(&[
            vec![1.0, 0.2, -0.3],
            vec![0.0, 1.0, 0.7],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let red = lll_reduce(&basis).unwrap();
        assert!((red.matrix().det().abs() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn integer_form_follows_reduction() {
        // Z^2 sheared, integer form with scale 1
        let basis = LatticeBasis::from_cols(&[vec![1.0, 0.0], vec![100.0, 1.0]])
            .unwrap()
            .with_integer_form(IntegerForm {
                n: 2,
                mat: vec![1, 100, 0, 1],
                scale: 1.0,
                index: Some(1),
            });
        let red = lll_reduce(&basis).unwrap();
        let form = red.integer_form().expect("form carried through");
        for i in 0..2 {
            for j in 0..2 {
                let approx = form.scale * form.entry(i, j) as f64;
                assert!((approx - red.matrix()[(i, j)]).abs() < 1e-9);
            }
        }
    }
}
