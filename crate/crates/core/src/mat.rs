//! Small dense square matrices over a [`Scalar`].
//!
//! Dimensions here are tiny (2..=8 in every experiment), so the
//! implementation favours clarity over blocking: flat row-major storage,
//! textbook LU with partial pivoting for determinants and inverses.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<F> {
    n: usize,
    /// Row-major entries, `a[i * n + j]` is row `i`, column `j`.
    a: Vec<F>,
}

impl<F: Scalar> SquareMatrix<F> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, a: vec![F::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Build from rows; every row must have length `n`.
    pub fn from_rows(rows: &[Vec<F>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("from_rows: ragged row lengths"));
        }
        let a = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(SquareMatrix { n, a })
    }

    /// Build from columns (convenient when columns are basis vectors).
    pub fn from_cols(cols: &[Vec<F>]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transposed())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn set_col(&mut self, j: usize, v: &[F]) {
        debug_assert_eq!(v.len(), self.n);
        for i in 0..self.n {
            self[(i, j)] = v[i];
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().all(|x| x.is_finite())
    }

    pub fn max_abs(&self) -> F {
        self.a.iter().fold(F::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn transposed(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik != F::zero() {
                    for j in 0..n {
                        out[(i, j)] += aik * rhs[(k, j)];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        debug_assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    /// Determinant via LU with partial pivoting. Exact (no elimination steps)
    /// for triangular input, which keeps flow matrices at `det == 1`.
    pub fn det(&self) -> F {
        let n = self.n;
        let mut lu = self.a.clone();
        let mut det = F::one();
        for k in 0..n {
            // pivot: largest |entry| in column k at or below the diagonal
            let mut p = k;
            for i in k + 1..n {
                if lu[i * n + k].abs() > lu[p * n + k].abs() {
                    p = i;
                }
            }
            if lu[p * n + k] == F::zero() {
                return F::zero();
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            det *= lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / lu[k * n + k];
                if f != F::zero() {
                    for j in k..n {
                        let s = lu[k * n + j] * f;
                        lu[i * n + j] -= s;
                    }
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut aug = self.a.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let mut p = k;
            for i in k + 1..n {
                if aug[i * n + k].abs() > aug[p * n + k].abs() {
                    p = i;
                }
            }
            if aug[p * n + k] == F::zero() {
                return Err(Error::Singular("inverse"));
            }
            if p != k {
                for j in 0..n {
                    aug.swap(k * n + j, p * n + j);
                    inv.a.swap(k * n + j, p * n + j);
                }
            }
            let piv = aug[k * n + k];
            for j in 0..n {
                aug[k * n + j] /= piv;
                inv.a[k * n + j] /= piv;
            }
            for i in 0..n {
                if i != k {
                    let f = aug[i * n + k];
                    if f != F::zero() {
                        for j in 0..n {
                            let s = aug[k * n + j] * f;
                            aug[i * n + j] -= s;
                            let s = inv.a[k * n + j] * f;
                            inv.a[i * n + j] -= s;
                        }
                    }
                }
            }
        }
        Ok(inv)
    }
}

impl<F> std::ops::Index<(usize, usize)> for SquareMatrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.a[i * self.n + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for SquareMatrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.a[i * self.n + j]
    }
}

/// Euclidean norm of a slice.
pub fn norm2<F: Scalar>(v: &[F]) -> F {
    v.iter().map(|&x| x * x).sum::<F>().sqrt()
}

/// l^1 norm of a slice.
pub fn norm1<F: Scalar>(v: &[F]) -> F {
    v.iter().map(|&x| x.abs()).sum()
}

/// Dot product.
pub fn dot<F: Scalar>(u: &[F], v: &[F]) -> F {
    u.iter().zip(v).map(|(&a, &b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_known_matrices() {
        let m = SquareMatrix::<f64>::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert!((m.det() + 2.0).abs() < 1e-14);
        let id = SquareMatrix::<f64>::identity(5);
        assert_eq!(id.det(), 1.0);
    }

    #[test]
    fn det_exact_for_upper_triangular() {
        // no pivoting/elimination happens, so there is no rounding at all
        let m = SquareMatrix::from_rows(&[
            vec![1.0, 1e8, 5e15],
            vec![0.0, 1.0, 1e8],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(m.det(), 1.0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = SquareMatrix::<f64>::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mul_vec_matches_columns() {
        let m = SquareMatrix::from_cols(&[vec![1.0, 0.0], vec![0.5, 1.0]]).unwrap();
        let v = m.mul_vec(&[2.0, 3.0]);
        assert_eq!(v, vec![2.0 * 1.0 + 3.0 * 0.5, 3.0]);
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(m.inverse().is_err());
        assert_eq!(m.det(), 0.0);
    }
}
