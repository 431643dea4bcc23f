use super::svd::op_norm;
use super::{herm_eig, CMat, LinalgError, Result};
use crate::scalar::{c_re, c_zero, Cplx, Scalar};
use num_complex::Complex;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Splittable counter-based generator keyed by a 64-bit seed.
///
/// Output n is `mix(key + n·φ)`, so streams derived by [`SeedRng::split`]
/// never share state and every draw is reproducible from the seed alone.
#[derive(Debug, Clone)]
pub struct SeedRng {
    key: u64,
    ctr: u64,
}

impl SeedRng {
    pub fn new(seed: u64) -> Self {
        Self { key: mix(seed ^ GOLDEN), ctr: 0 }
    }

    /// Derive an independent stream labeled by `label`.
    pub fn split(&self, label: u64) -> Self {
        Self { key: mix(self.key ^ mix(label.wrapping_add(GOLDEN))), ctr: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.ctr = self.ctr.wrapping_add(1);
        mix(self.key.wrapping_add(self.ctr.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn next_usize(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Standard normal via Box–Muller.
    pub fn next_gauss(&mut self) -> f64 {
        let u1 = (1.0 - self.next_f64()).max(f64::MIN_POSITIVE);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn next_cplx<T: Scalar>(&mut self) -> Cplx<T> {
        Complex::new(
            T::from_f64(self.next_gauss()).unwrap(),
            T::from_f64(self.next_gauss()).unwrap(),
        )
    }

    pub fn gaussian_matrix<T: Scalar>(&mut self, rows: usize, cols: usize) -> CMat<T> {
        CMat::from_fn(rows, cols, |_, _| self.next_cplx())
    }
}

/// Random d×d unitary: Gram–Schmidt on a Gaussian matrix, with one
/// reorthogonalization pass.
pub fn random_unitary<T: Scalar>(d: usize, rng: &mut SeedRng) -> CMat<T> {
    let g = rng.gaussian_matrix::<T>(d, d);
    let mut cols: Vec<Vec<Cplx<T>>> = (0..d).map(|j| (0..d).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..d {
        for _pass in 0..2 {
            for k in 0..j {
                let proj = dot(&cols[k], &cols[j]);
                for i in 0..d {
                    let ck = cols[k][i];
                    cols[j][i] -= proj * ck;
                }
            }
        }
        let nrm = norm(&cols[j]);
        let inv = T::one() / nrm;
        for v in cols[j].iter_mut() {
            *v *= c_re(inv);
        }
    }
    CMat::from_fn(d, d, |i, j| cols[j][i])
}

fn dot<T: Scalar>(a: &[Cplx<T>], b: &[Cplx<T>]) -> Cplx<T> {
    a.iter().zip(b).fold(c_zero(), |acc, (x, y)| acc + x.conj() * *y)
}

fn norm<T: Scalar>(a: &[Cplx<T>]) -> T {
    a.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Random rank-r orthogonal projection in M_d, deterministic in the seed.
pub fn random_projection<T: Scalar>(d: usize, r: usize, seed: u64) -> Result<CMat<T>> {
    if r > d {
        return Err(LinalgError::RankOutOfRange { rank: r, dim: d });
    }
    if r == 0 {
        return Ok(CMat::zeros(d, d));
    }
    if r == d {
        return Ok(CMat::identity(d));
    }
    let mut rng = SeedRng::new(seed).split(0x70726F6A); // "proj"
    let u = random_unitary::<T>(d, &mut rng);
    // P = V V* over the first r columns.
    Ok(CMat::from_fn(d, d, |i, j| {
        (0..r).fold(c_zero(), |acc, k| acc + u[(i, k)] * u[(j, k)].conj())
    }))
}

/// Random contraction (‖·‖ ≤ 1), deterministic in the seed.
///
/// With `positive` set, the result is self-adjoint with spectrum in [0, 1];
/// eigenvalues are drawn slightly outside the interval and clamped, so exact
/// 0 and 1 eigenvalues occur.
pub fn random_contraction<T: Scalar>(d: usize, seed: u64, positive: bool) -> CMat<T> {
    let mut rng = SeedRng::new(seed).split(0x636F6E74); // "cont"
    if positive {
        let u = random_unitary::<T>(d, &mut rng);
        let eigs: Vec<T> = (0..d)
            .map(|_| T::from_f64(rng.uniform(-0.15, 1.15).clamp(0.0, 1.0)).unwrap())
            .collect();
        let lam = CMat::diag_re(&eigs);
        let prod = u.matmul(&lam).matmul(&u.adjoint());
        // Re-symmetrize to kill rounding skew.
        (&prod + &prod.adjoint()).scale_re(T::from_f64(0.5).unwrap())
    } else {
        let g = rng.gaussian_matrix::<T>(d, d);
        let nrm = op_norm(&g).to_f64().unwrap();
        let target = rng.uniform(0.35, 1.0);
        g.scale_re(T::from_f64(target / nrm.max(1e-300)).unwrap())
    }
}

/// Positive contraction with spectrum strictly inside (margin, 1−margin).
///
/// Used where a spectral gap is needed, e.g. support-projection cutoffs.
pub fn random_positive_gapped<T: Scalar>(d: usize, seed: u64, margin: f64) -> CMat<T> {
    let mut rng = SeedRng::new(seed).split(0x67617070); // "gapp"
    let u = random_unitary::<T>(d, &mut rng);
    let eigs: Vec<T> = (0..d)
        .map(|_| T::from_f64(rng.uniform(margin, 1.0 - margin)).unwrap())
        .collect();
    let lam = CMat::diag_re(&eigs);
    let prod = u.matmul(&lam).matmul(&u.adjoint());
    (&prod + &prod.adjoint()).scale_re(T::from_f64(0.5).unwrap())
}

#[allow(unused)]
fn spectrum_of<T: Scalar>(h: &CMat<T>) -> Vec<T> {
    herm_eig(h).expect("hermitian").eigenvalues
}
