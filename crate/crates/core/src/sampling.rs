//! Random unimodular lattices.
//!
//! Two samplers are provided:
//!
//! * [`SamplerSpec::GoldsteinMayer`]: a uniformly random index-`p`
//!   sublattice of `Z^n`, rescaled by `p^{-1/n}` to covolume one. For
//!   `p` prime there are `(p^n - 1)/(p - 1)` such sublattices, in
//!   bijection with column-style Hermite forms that are the identity
//!   except for one pivot row `i` carrying `H[i][i] = p` and entries
//!   `H[i][j] in [0, p)` for `j > i`; drawing the pivot row with weight
//!   `p^{n-1-i}` and the off-diagonal entries uniformly is exactly
//!   uniform over sublattices. As `p` grows these lattices
//!   equidistribute toward Haar measure, and the exact integer form is
//!   attached for downstream exact arithmetic.
//! * [`SamplerSpec::Exact2d`]: exactly Haar-distributed planar lattices,
//!   through the hyperbolic-area measure `dx dy / y^2` on the standard
//!   fundamental domain `{ |x| <= 1/2, x^2 + y^2 >= 1 }` and a uniform
//!   rotation: `x` by rejection with weight `1/sqrt(1 - x^2)`, `y` by
//!   inverse CDF `y = sqrt(1 - x^2)/(1 - u)`, then
//!   `B = R(theta) y^{-1/2} [[1, x], [0, y]]`.
//!
//! Reproducibility: every trial uses its own ChaCha12 substream
//! [`substream_rng`]`(seed, trial_index)`, so results are independent of
//! thread scheduling and trial order.

use crate::error::{Error, Result};
use crate::lattice::{IntegerForm, LatticeBasis};
use crate::mat::SquareMatrix;
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Deterministic per-trial random stream.
pub fn substream_rng(seed: u64, trial: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9e3779b97f4a7c15))
}

/// Trial-division primality (sufficient for the sizes used here).
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= m) {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= m`.
pub fn next_prime(m: u64) -> u64 {
    let mut c = m.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Specification of a lattice sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerSpec {
    /// Uniform index-`p` sublattice of `Z^n`, rescaled to covolume one.
    GoldsteinMayer { n: usize, p: u64 },
    /// Exact Haar sampler in dimension 2.
    Exact2d,
}

impl SamplerSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SamplerSpec::GoldsteinMayer { n, p } => {
                if n < 2 {
                    return Err(Error::invalid("Goldstein-Mayer sampler needs n >= 2"));
                }
                if n > 16 {
                    return Err(Error::invalid("Goldstein-Mayer sampler supports n <= 16"));
                }
                if !is_prime(p) {
                    return Err(Error::invalid(format!("Goldstein-Mayer modulus {p} is not prime")));
                }
                if p >= 1 << 62 {
                    return Err(Error::invalid("Goldstein-Mayer modulus too large for i64 forms"));
                }
                Ok(())
            }
            SamplerSpec::Exact2d => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            SamplerSpec::GoldsteinMayer { n, .. } => n,
            SamplerSpec::Exact2d => 2,
        }
    }

    pub fn sample<F: Scalar>(&self, rng: &mut ChaCha12Rng) -> Result<LatticeBasis<F>> {
        self.validate()?;
        match *self {
            SamplerSpec::GoldsteinMayer { n, p } => sample_gm(n, p, rng),
            SamplerSpec::Exact2d => {
                let (x, y, theta) = exact2d_params(rng);
                Ok(exact2d_basis(x, y, theta))
            }
        }
    }
}

fn sample_gm<F: Scalar>(n: usize, p: u64, rng: &mut ChaCha12Rng) -> Result<LatticeBasis<F>> {
    // pivot row i with weight p^{n-1-i}; exact in f64 whenever
    // p^{n-1} < 2^53, and within one ulp otherwise
    let pf = p as f64;
    let weights: Vec<f64> = (0..n).map(|i| pf.powi((n - 1 - i) as i32)).collect();
    let total: f64 = weights.iter().sum();
    let mut draw = rng.gen_range(0.0..total);
    let mut pivot = n - 1;
    for (i, w) in weights.iter().enumerate() {
        if draw < *w {
            pivot = i;
            break;
        }
        draw -= w;
    }

    let mut h = vec![0i64; n * n];
    for i in 0..n {
        h[i * n + i] = 1;
    }
    h[pivot * n + pivot] = p as i64;
    for j in pivot + 1..n {
        h[pivot * n + j] = rng.gen_range(0..p) as i64;
    }

    let scale = pf.powf(-1.0 / n as f64);
    let sf = F::from_f64_lossy(scale);
    let mut m = SquareMatrix::<F>::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = sf * F::from_f64_lossy(h[i * n + j] as f64);
        }
    }
    let form = IntegerForm { n, mat: h, scale, index: Some(p) };
    Ok(LatticeBasis::new(m)?.with_integer_form(form))
}

/// Fundamental-domain coordinates and rotation angle of one exact planar
/// sample (exposed to the tests that check the marginals).
pub(crate) fn exact2d_params(rng: &mut ChaCha12Rng) -> (f64, f64, f64) {
    let x: f64 = loop {
        let cand: f64 = rng.gen_range(-0.5..0.5);
        let accept: f64 = rng.gen();
        if accept < (0.75 / (1.0 - cand * cand)).sqrt() {
            break cand;
        }
    };
    let u: f64 = rng.gen();
    let y = (1.0 - x * x).sqrt() / (1.0 - u);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    (x, y, theta)
}

fn exact2d_basis<F: Scalar>(x: f64, y: f64, theta: f64) -> LatticeBasis<F> {
    let (s, c) = theta.sin_cos();
    let r = 1.0 / y.sqrt();
    // R(theta) * y^{-1/2} * [[1, x], [0, y]]
    let cols = [
        [r * c, r * s],
        [r * (x * c - y * s), r * (x * s + y * c)],
    ];
    let mut m = SquareMatrix::<F>::zeros(2);
    for (j, col) in cols.iter().enumerate() {
        m[(0, j)] = F::from_f64_lossy(col[0]);
        m[(1, j)] = F::from_f64_lossy(col[1]);
    }
    // determinant is y^{-1} * y = 1 by construction
    LatticeBasis::new_unchecked(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::alpha1;

    #[test]
    fn primality_basics() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(1000000));
        assert!(is_prime(1_000_003));
        assert_eq!(next_prime(1_000_000), 1_000_003);
        assert_eq!(next_prime(2), 2);
    }

    #[test]
    fn gm_n2_p3_is_uniform_over_the_four_sublattices() {
        // index-3 sublattices of Z^2: [[3,0],[0,1]], [[3,1],[0,1]],
        // [[3,2],[0,1]], [[1,0],[0,3]] - each with probability 1/4
        let spec = SamplerSpec::GoldsteinMayer { n: 2, p: 3 };
        let mut counts = std::collections::HashMap::new();
        let trials = 8000u64;
        for t in 0..trials {
            let mut rng = substream_rng(1234, t);
            let b: LatticeBasis<f64> = spec.sample(&mut rng).unwrap();
            let key = b.integer_form().unwrap().mat.clone();
            *counts.entry(key).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 4);
        for (key, c) in &counts {
            // 3 sigma ~ 116 at p = 1/4
            assert!(
                (*c as i64 - 2000).abs() < 150,
                "HNF {key:?} drawn {c} times out of {trials}"
            );
        }
    }

    #[test]
    fn gm_bases_are_unimodular_with_exact_form() {
        let spec = SamplerSpec::GoldsteinMayer { n: 3, p: 1009 };
        for t in 0..20 {
            let mut rng = substream_rng(9, t);
            let b: LatticeBasis<f64> = spec.sample(&mut rng).unwrap();
            assert!((b.matrix().det() - 1.0).abs() < 1e-9);
            let form = b.integer_form().unwrap();
            assert_eq!(form.index, Some(1009));
            // alpha1 is finite and positive on these lattices
            let a = alpha1(&b).unwrap();
            assert!(a.is_finite() && a > 0.0);
        }
    }

    #[test]
    fn exact2d_inverse_mean_matches_closed_form() {
        // E[1/y] over the fundamental domain with density prop to 1/y^2 is
        // (3/pi) * integral of dx / (2 (1 - x^2)) = 3 ln 3 / (2 pi);
        // verify the closed form by Simpson quadrature, then the sampler
        // against it
        let f = |x: f64| 3.0 / (std::f64::consts::PI * 2.0 * (1.0 - x * x));
        let steps = 1000usize;
        let hstep = 1.0 / steps as f64;
        let mut integral = 0.0;
        for j in 0..steps {
            let a = -0.5 + j as f64 * hstep;
            integral += hstep / 6.0 * (f(a) + 4.0 * f(a + hstep / 2.0) + f(a + hstep));
        }
        let closed = 3.0 * 3.0f64.ln() / (2.0 * std::f64::consts::PI);
        assert!((integral - closed).abs() < 1e-10);

        let trials = 20_000u64;
        let mut sum = 0.0;
        for t in 0..trials {
            let mut rng = substream_rng(77, t);
            let (_, y, _) = exact2d_params(&mut rng);
            sum += 1.0 / y;
        }
        let mean = sum / trials as f64;
        assert!((mean - closed).abs() < 0.008, "mean 1/y = {mean}, want {closed}");
    }

    #[test]
    fn exact2d_bases_are_unimodular() {
        let spec = SamplerSpec::Exact2d;
        for t in 0..50 {
            let mut rng = substream_rng(5, t);
            let b: LatticeBasis<f64> = spec.sample(&mut rng).unwrap();
            assert!((b.matrix().det() - 1.0).abs() < 1e-12);
            // shortest vector of a reduced planar lattice is at most
            // (4/3)^{1/4} by Hermite's bound
            let a = alpha1(&b).unwrap();
            assert!(a >= 1.0 / (4.0f64 / 3.0).powf(0.25) - 1e-9);
        }
    }

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let spec = SamplerSpec::GoldsteinMayer { n: 3, p: 101 };
        let mut r1 = substream_rng(42, 7);
        let mut r2 = substream_rng(42, 7);
        let a: LatticeBasis<f64> = spec.sample(&mut r1).unwrap();
        let b: LatticeBasis<f64> = spec.sample(&mut r2).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        let mut r3 = substream_rng(42, 8);
        let c: LatticeBasis<f64> = spec.sample(&mut r3).unwrap();
        assert_ne!(a.integer_form().unwrap().mat, c.integer_form().unwrap().mat);
    }

    #[test]
    fn sampler_validation() {
        assert!(SamplerSpec::GoldsteinMayer { n: 1, p: 3 }.validate().is_err());
        assert!(SamplerSpec::GoldsteinMayer { n: 3, p: 4 }.validate().is_err());
        assert!(SamplerSpec::GoldsteinMayer { n: 3, p: 3 }.validate().is_ok());
    }
}
