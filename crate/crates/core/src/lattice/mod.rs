//! Unimodular lattices, their bases, and exact operations on lattice points.
//!
//! A lattice is represented by a basis matrix whose *columns* are the basis
//! vectors; unimodularity (`|det - 1| <= 1e-9`) is enforced at construction.
//! Lattice vectors carry both integer coefficients and real coordinates so
//! that downstream checks can re-verify `coords = basis * coeffs`.

mod enumerate;
mod fp;
mod intersect;
mod lll;
mod svp;

pub use enumerate::{enumerate_in_box, enumerate_points, enumerate_primitive_points};
pub use intersect::region_intersects;
pub use lll::lll_reduce;
pub use svp::{alpha1, alpha1_l1, shortest_vector};

pub(crate) use enumerate::{count_points_in_region, for_each_point_in_ball};

use crate::consts::UNIMODULAR_TOL;
use crate::error::{Error, Result};
use crate::mat::{norm1, norm2, SquareMatrix};
use crate::scalar::Scalar;

/// Optional exact description of a basis as `scale * M` for an integer
/// matrix `M` (columns are the basis vectors divided by `scale`).
///
/// Samplers that construct sublattices of `Z^n` attach this; it survives
/// LLL reduction (which only performs integer column operations) and is the
/// backbone of the complete search in sheared witness regions, where the
/// last coordinate of every lattice point lies on a discrete set of layers.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerForm {
    pub n: usize,
    /// Row-major integer entries of `M`.
    pub mat: Vec<i64>,
    /// Real scale with `basis = scale * M` (for an index-p sublattice of
    /// `Z^n` this is `p^(-1/n)`, which need not be rational).
    pub scale: f64,
    /// Sublattice index `|det M|` when known.
    pub index: Option<u64>,
}

impl IntegerForm {
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.mat[i * self.n + j]
    }

    /// Integer row `i` of `M` (used for layer decompositions).
    pub fn row(&self, i: usize) -> &[i64] {
        &self.mat[i * self.n..(i + 1) * self.n]
    }
}

/// A basis of a unimodular lattice in `R^n`. Columns are basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBasis<F> {
    mat: SquareMatrix<F>,
    integer_form: Option<IntegerForm>,
}

impl<F: Scalar> LatticeBasis<F> {
    /// Validating constructor: entries must be finite and `|det - 1| <= 1e-9`.
    pub fn new(mat: SquareMatrix<F>) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::NonFinite("lattice basis"));
        }
        let det = mat.det().as_f64();
        if (det - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NotUnimodular { det });
        }
        Ok(LatticeBasis { mat, integer_form: None })
    }

    /// Trusted constructor for callers that preserve unimodularity by
    /// construction (flows multiply by determinant-one matrices whose
    /// float determinant check would be ill-conditioned at large times) or
    /// that deliberately test non-unimodular scaling behaviour.
    pub fn new_unchecked(mat: SquareMatrix<F>) -> Self {
        LatticeBasis { mat, integer_form: None }
    }

    /// Attach an exact integer description (see [`IntegerForm`]). The caller
    /// promises `mat ≈ scale * M` entrywise.
    pub fn with_integer_form(mut self, form: IntegerForm) -> Self {
        debug_assert_eq!(form.n, self.dim());
        self.integer_form = Some(form);
        self
    }

    pub fn from_cols(cols: &[Vec<F>]) -> Result<Self> {
        Self::new(SquareMatrix::from_cols(cols)?)
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &SquareMatrix<F> {
        &self.mat
    }

    pub fn integer_form(&self) -> Option<&IntegerForm> {
        self.integer_form.as_ref()
    }

    pub fn basis_vector(&self, j: usize) -> Vec<F> {
        self.mat.col(j)
    }

    pub fn cols(&self) -> Vec<Vec<F>> {
        (0..self.dim()).map(|j| self.mat.col(j)).collect()
    }

    /// The lattice vector with the given integer coefficients.
    pub fn vector(&self, coeffs: Vec<i64>) -> LatticeVector<F> {
        let cf: Vec<F> = coeffs.iter().map(|&c| F::from_f64_lossy(c as f64)).collect();
        let coords = self.mat.mul_vec(&cf);
        LatticeVector { coeffs, coords }
    }
}

/// A nonzero point of a lattice: integer coefficients with respect to the
/// basis it came from, together with its real coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeVector<F> {
    pub coeffs: Vec<i64>,
    pub coords: Vec<F>,
}

impl<F: Scalar> LatticeVector<F> {
    pub fn norm(&self) -> F {
        norm2(&self.coords)
    }

    pub fn norm_l1(&self) -> F {
        norm1(&self.coords)
    }

    /// A vector is primitive when it is not a proper multiple of a shorter
    /// lattice vector, i.e. gcd of its coefficients is 1. Primitivity is
    /// intrinsic to the lattice, so any basis gives the same answer.
    pub fn is_primitive(&self) -> bool {
        coeff_gcd(&self.coeffs) == 1
    }

    /// Sign-normalize in place: flip so the first nonzero coordinate is
    /// positive (the deterministic half of the shortest-vector tie-break).
    pub fn normalize_sign(&mut self) {
        for &x in &self.coords {
            if x != F::zero() {
                if x < F::zero() {
                    for c in &mut self.coeffs {
                        *c = -*c;
                    }
                    for y in &mut self.coords {
                        *y = -*y;
                    }
                }
                return;
            }
        }
    }
}

pub(crate) fn coeff_gcd(coeffs: &[i64]) -> u64 {
    coeffs
        .iter()
        .fold(0u64, |g, &c| num_integer::gcd(g, c.unsigned_abs()))
}

/// Deterministic ordering for point lists: by norm, then lexicographic on
/// coordinates. Total because all coordinates are finite.
pub(crate) fn canonical_order<F: Scalar>(a: &LatticeVector<F>, b: &LatticeVector<F>) -> std::cmp::Ordering {
    a.norm()
        .partial_cmp(&b.norm())
        .expect("finite norms")
        .then_with(|| {
            for (x, y) in a.coords.iter().zip(&b.coords) {
                match x.partial_cmp(y).expect("finite coords") {
                    std::cmp::Ordering::Equal => continue,
                    o => return o,
                }
            }
            std::cmp::Ordering::Equal
        })
}
