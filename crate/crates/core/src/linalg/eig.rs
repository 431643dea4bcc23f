use super::{CMat, LinalgError, Result};
use crate::scalar::{c_re, c_zero, Cplx, Scalar};
use num_complex::Complex;

/// Hermitian eigendecomposition H = U·diag(λ)·U*, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermEig<T: Scalar> {
    pub eigenvalues: Vec<T>,
    pub vectors: CMat<T>,
}

impl<T: Scalar> HermEig<T> {
    pub fn reconstruct(&self) -> CMat<T> {
        let lam = CMat::diag_re(&self.eigenvalues);
        let u = &self.vectors;
        u.matmul(&lam).matmul(&u.adjoint())
    }

    /// U·diag(f(λ))·U* for an arbitrary eigenvalue map.
    pub fn map(&self, f: impl Fn(T) -> Cplx<T>) -> CMat<T> {
        let vals: Vec<Cplx<T>> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let u = &self.vectors;
        u.matmul(&CMat::diag(&vals)).matmul(&u.adjoint())
    }
}

/// Cyclic complex Jacobi iteration. Quadratic convergence; intended for the
/// desk-scale matrices of this crate (n ≲ a few hundred).
pub fn herm_eig<T: Scalar>(h: &CMat<T>) -> Result<HermEig<T>> {
    assert!(h.is_square(), "herm_eig needs a square matrix");
    let n = h.rows();
    let mut a = h.clone();
    let mut u = CMat::identity(n);
    if n > 0 {
        let scale = a.norm_fro().max(T::one());
        let stop = scale * T::from_f64(1e-15).unwrap() * T::from_usize(n).unwrap();
        let mut converged = false;
        for _sweep in 0..64 {
            let mut off = T::zero();
            for p in 0..n {
                for q in p + 1..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= stop {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut u, p, q);
                }
            }
        }
        if !converged {
            // One final check: the last full sweep may have finished the job.
            let mut off = T::zero();
            for p in 0..n {
                for q in p + 1..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() > stop {
                return Err(LinalgError::NoConvergence);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let eigs: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| eigs[i].partial_cmp(&eigs[j]).unwrap());
    let eigenvalues: Vec<T> = order.iter().map(|&i| eigs[i]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok(HermEig { eigenvalues, vectors })
}

/// Zero a[(p,q)] with the unitary V = diag(1, e^{-iφ})·G(θ) and update a ← V*aV, u ← uV.
fn rotate<T: Scalar>(a: &mut CMat<T>, u: &mut CMat<T>, p: usize, q: usize) {
    let beta = a[(p, q)];
    let b = beta.norm();
    if b.is_zero() {
        return;
    }
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    // Skip rotations that cannot change anything at working precision; the
    // absolute floor keeps |β|² out of the subnormal range where the phase
    // division degenerates.
    let eps = T::from_f64(1e-17).unwrap();
    if b <= eps * (alpha.abs() + gamma.abs()) || b < T::min_positive_value().sqrt() {
        a[(p, q)] = c_zero();
        a[(q, p)] = c_zero();
        return;
    }
    let phase = beta / c_re(b); // e^{iφ}
    let tau = (gamma - alpha) / (b + b);
    let t = {
        let root = (T::one() + tau * tau).sqrt();
        if tau >= T::zero() {
            T::one() / (tau + root)
        } else {
            -T::one() / (-tau + root)
        }
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // V = [[c, s], [−s·conj(phase), c·conj(phase)]]
    let v11 = c_re::<T>(c);
    let v12 = c_re::<T>(s);
    let v21 = -phase.conj() * s;
    let v22 = phase.conj() * c;

    let n = a.rows();
    // Column update: A ← A·V on columns p,q.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * v11 + aiq * v21;
        a[(i, q)] = aip * v12 + aiq * v22;
    }
    // Row update: A ← V*·A on rows p,q.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = v11.conj() * apj + v21.conj() * aqj;
        a[(q, j)] = v12.conj() * apj + v22.conj() * aqj;
    }
    // Clean the pivot to exact zero and keep the diagonal real.
    a[(p, q)] = c_zero();
    a[(q, p)] = c_zero();
    a[(p, p)] = c_re(a[(p, p)].re);
    a[(q, q)] = c_re(a[(q, q)].re);
    for i in 0..n {
        let uip = u[(i, p)];
        let uiq = u[(i, q)];
        u[(i, p)] = uip * v11 + uiq * v21;
        u[(i, q)] = uip * v12 + uiq * v22;
    }
}

/// Eigenvalue maps available through [`herm_funcalc`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunTag {
    /// t ↦ √max(t, 0); eigenvalues below −1e−8 are rejected.
    SqrtClamped,
    /// t ↦ max(t, 0).
    PosPart,
    /// t ↦ e^{2πit}.
    Exp2PiI,
    /// t ↦ (1 + max(t−1, 0))^{−1/2}, the contraction-normalizing map.
    InvSqrtShifted,
}

const HERM_TOL: f64 = 1e-10;
const SQRT_CLAMP: f64 = 1e-8;

/// Functional calculus U·diag(f(λ))·U* for self-adjoint input.
pub fn herm_funcalc<T: Scalar>(h: &CMat<T>, f: FunTag) -> Result<CMat<T>> {
    let scale = h.norm_fro().max(T::one());
    let defect = h.herm_defect();
    if defect > T::from_f64(HERM_TOL).unwrap() * scale {
        return Err(LinalgError::NonHermitian {
            asym: defect.to_f64().unwrap(),
            tol: HERM_TOL * scale.to_f64().unwrap(),
        });
    }
    let half = T::from_f64(0.5).unwrap();
    let sym = (h + &h.adjoint()).scale_re(half);
    let eig = herm_eig(&sym)?;
    if f == FunTag::SqrtClamped {
        if let Some(&low) = eig.eigenvalues.first() {
            if low < T::from_f64(-SQRT_CLAMP).unwrap() {
                return Err(LinalgError::NegativeSpectrum(low.to_f64().unwrap()));
            }
        }
    }
    let two_pi = T::from_f64(std::f64::consts::TAU).unwrap();
    Ok(eig.map(|l| match f {
        FunTag::SqrtClamped => c_re(l.max(T::zero()).sqrt()),
        FunTag::PosPart => c_re(l.max(T::zero())),
        FunTag::Exp2PiI => Complex::from_polar(T::one(), two_pi * l),
        FunTag::InvSqrtShifted => c_re((T::one() + (l - T::one()).max(T::zero())).sqrt().recip()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_contraction, random_unitary, SeedRng};

    type M = CMat<f64>;

    fn random_herm(d: usize, seed: u64) -> M {
        let mut rng = SeedRng::new(seed);
        let g = rng.gaussian_matrix::<f64>(d, d);
        (&g + &g.adjoint()).scale_re(0.5)
    }

    #[test]
    fn eig_reconstructs() {
        for seed in 0..12u64 {
            let h = random_herm(7, seed);
            let e = herm_eig(&h).unwrap();
            let resid = (&e.reconstruct() - &h).norm_fro();
            let unit = (&e.vectors.adjoint().matmul(&e.vectors) - &M::identity(7)).norm_fro();
            assert!(resid <= 1e-12 * h.norm_fro().max(1.0), "residual {resid}");
            assert!(unit <= 1e-12, "orthogonality {unit}");
            for w in e.eigenvalues.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn eig_of_diagonal_is_exact() {
        let d = M::diag_re(&[0.0, 0.25, 1.0]);
        let e = herm_eig(&d).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0, 0.25, 1.0]);
        assert_eq!(e.vectors, M::identity(3));
    }

    #[test]
    fn sqrt_clamped_diagonal() {
        let d = M::diag_re(&[0.0, 0.25, 1.0]);
        let s = herm_funcalc(&d, FunTag::SqrtClamped).unwrap();
        assert_eq!(s, M::diag_re(&[0.0, 0.5, 1.0]));
    }

    #[test]
    fn sqrt_squares_back() {
        for seed in 0..8u64 {
            let l = random_contraction::<f64>(6, seed, true);
            let s = herm_funcalc(&l, FunTag::SqrtClamped).unwrap();
            let resid = (&s.matmul(&s) - &l).norm_fro();
            assert!(resid < 1e-9, "sqrt² residual {resid}");
        }
    }

    #[test]
    fn exp_of_projection_is_identity() {
        let p = crate::linalg::random_projection::<f64>(5, 2, 3).unwrap();
        let v = herm_funcalc(&p, FunTag::Exp2PiI).unwrap();
        assert!((&v - &M::identity(5)).norm_fro() < 1e-10);
    }

    #[test]
    fn exp_is_unitary() {
        for seed in 0..8u64 {
            let h = random_herm(6, seed);
            let v = herm_funcalc(&h, FunTag::Exp2PiI).unwrap();
            let defect = (&v.adjoint().matmul(&v) - &M::identity(6)).norm_fro();
            assert!(defect < 1e-10, "unitarity defect {defect}");
        }
    }

    #[test]
    fn exp_scalar_matches() {
        for &t in &[0.0, 0.3, 0.75, 1.0] {
            let h = M::diag_re(&[t]);
            let v = herm_funcalc(&h, FunTag::Exp2PiI).unwrap();
            let want = Complex::from_polar(1.0, std::f64::consts::TAU * t);
            assert!((v[(0, 0)] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn funcalc_equivariant_under_conjugation() {
        let mut rng = SeedRng::new(99);
        for seed in 0..6u64 {
            let h = random_herm(5, seed);
            let u = random_unitary::<f64>(5, &mut rng);
            let lhs = herm_funcalc(&u.matmul(&h).matmul(&u.adjoint()), FunTag::PosPart).unwrap();
            let rhs =
                u.matmul(&herm_funcalc(&h, FunTag::PosPart).unwrap()).matmul(&u.adjoint());
            assert!((&lhs - &rhs).norm_fro() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = M::unit(2, 0, 1);
        assert!(matches!(
            herm_funcalc(&m, FunTag::PosPart),
            Err(LinalgError::NonHermitian { .. })
        ));
    }

    #[test]
    fn rejects_negative_spectrum_for_sqrt() {
        let m = M::diag_re(&[-0.5, 1.0]);
        assert!(matches!(
            herm_funcalc(&m, FunTag::SqrtClamped),
            Err(LinalgError::NegativeSpectrum(_))
        ));
    }

    #[test]
    fn inv_sqrt_shifted_normalizes() {
        // b = 2·unitary: b·f(b*b) should have norm 1.
        let mut rng = SeedRng::new(11);
        let u = random_unitary::<f64>(4, &mut rng).scale_re(2.0);
        let f = herm_funcalc(&u.adjoint().matmul(&u), FunTag::InvSqrtShifted).unwrap();
        let a = u.matmul(&f);
        let nrm = crate::linalg::op_norm(&a);
        assert!((nrm - 1.0).abs() < 1e-10, "norm {nrm}");
    }
}
