use super::{pres_arc, Rep, RepError, Result};
use crate::linalg::{herm_funcalc, CMat, FunTag};
use crate::scalar::{c_re, Scalar};
use std::collections::BTreeMap;

fn g2st_rep2<T: Scalar>(h: CMat<T>, k: CMat<T>, x: CMat<T>) -> Result<Rep<T>> {
    let mut images = BTreeMap::new();
    images.insert("h".to_string(), h);
    images.insert("k".to_string(), k);
    images.insert("x".to_string(), x);
    Rep::new(pres_arc("G2st"), images)
}

/// First segment of the null homotopy of id ⊕ η at parameter α ∈ [0, 1]
/// (α = 1 is the start):
///
///   H = diag(h, k), K = diag(k, h),
///   X = [[αx, −β√(xx*)], [β√(x*x), αx*]],  β = √(1−α²).
pub fn null_homotopy_first<T: Scalar>(rep: &Rep<T>, alpha: T) -> Result<Rep<T>> {
    let (h, k, x) = (rep.image("h"), rep.image("k"), rep.image("x"));
    let beta = (T::one() - alpha * alpha).max(T::zero()).sqrt();
    let z = CMat::zeros(rep.dim, rep.dim);
    let sqrt_xxs = herm_funcalc(&x.matmul(&x.adjoint()), FunTag::SqrtClamped)?;
    let sqrt_xsx = herm_funcalc(&x.adjoint().matmul(x), FunTag::SqrtClamped)?;
    let hh = CMat::from_blocks(&[vec![h.clone(), z.clone()], vec![z.clone(), k.clone()]]);
    let kk = CMat::from_blocks(&[vec![k.clone(), z.clone()], vec![z.clone(), h.clone()]]);
    let xx = CMat::from_blocks(&[
        vec![x.scale_re(alpha), -sqrt_xxs.scale_re(beta)],
        vec![sqrt_xsx.scale_re(beta), x.adjoint().scale_re(alpha)],
    ]);
    g2st_rep2(hh, kk, xx)
}

/// Second segment at parameter γ ∈ [0, 1] (γ = 1 joins the first segment,
/// γ = 0 is the zero representation):
///
///   H = γ·diag(h, k), K = γ·diag(k, h),
///   X = [[0, −√(γk−(γk)²)], [√(γh−(γh)²), 0]].
pub fn null_homotopy_second<T: Scalar>(rep: &Rep<T>, gamma: T) -> Result<Rep<T>> {
    let (h, k, x) = (rep.image("h"), rep.image("k"), rep.image("x"));
    let _ = x;
    let z = CMat::zeros(rep.dim, rep.dim);
    let gh = h.scale_re(gamma);
    let gk = k.scale_re(gamma);
    let pos_h = &gh - &gh.matmul(&gh);
    let pos_k = &gk - &gk.matmul(&gk);
    let sqrt_h = herm_funcalc(&pos_h, FunTag::SqrtClamped)?;
    let sqrt_k = herm_funcalc(&pos_k, FunTag::SqrtClamped)?;
    let hh = CMat::from_blocks(&[vec![gh.clone(), z.clone()], vec![z.clone(), gk.clone()]]);
    let kk = CMat::from_blocks(&[vec![gk, z.clone()], vec![z.clone(), gh]]);
    let xx = CMat::from_blocks(&[vec![z.clone(), -sqrt_k], vec![sqrt_h, z.clone()]]);
    g2st_rep2(hh, kk, xx)
}

/// The two-segment null homotopy of id ⊕ η on one clock s ∈ [0, 2]:
/// segment one runs α = 1−s on [0, 1], segment two runs γ = 2−s on [1, 2].
/// At s = 0 the images are the id ⊕ η diagonals; at s = 2 everything is 0.
pub fn null_homotopy_at<T: Scalar>(rep: &Rep<T>, s: T) -> Result<Rep<T>> {
    let two = T::from_f64(2.0).unwrap();
    if s < T::zero() || s > two {
        return Err(RepError::ParamRange {
            name: "s",
            value: s.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 2.0,
        });
    }
    if s <= T::one() {
        null_homotopy_first(rep, T::one() - s)
    } else {
        null_homotopy_second(rep, two - s)
    }
}

/// The homotopy φ_t from λ∘ρ (t = 0) to id ⊗ e₁₁ (t = 1), carried by the
/// partial-isometry path w_t = sin(πt/2)e₁₁ + cos(πt/2)e₂₁:
///
///   φ_t(h) = h ⊗ |w_t|, φ_t(k) = k ⊗ |w_t*|, φ_t(x) = x ⊗ w_t.
///
/// w_t*w_t = e₁₁ for every t, which keeps all five relations exact along
/// the path.
pub fn lambda_rho_homotopy_at<T: Scalar>(rep: &Rep<T>, t: T) -> Result<Rep<T>> {
    let (hh, kk, xx) = w_template(rep, t, ["h", "k", "x"])?;
    g2st_rep2(hh, kk, xx)
}

/// The reverse homotopy from (ρ ⊗ id)∘λ (t = 0) to id ⊗ e₁₁ (t = 1) inside
/// M₂(qC): the same w_t template tensored on the qC generators. The extra
/// orthogonality h₀k₀ = 0 survives because the tensor factors multiply
/// entrywise.
pub fn rho_lambda_homotopy_at<T: Scalar>(rep: &Rep<T>, t: T) -> Result<Rep<T>> {
    let (hh, kk, xx) = w_template(rep, t, ["h0", "k0", "x0"])?;
    let mut images = BTreeMap::new();
    images.insert("h0".to_string(), hh);
    images.insert("k0".to_string(), kk);
    images.insert("x0".to_string(), xx);
    Rep::new(pres_arc("qC"), images)
}

fn w_template<T: Scalar>(
    rep: &Rep<T>,
    t: T,
    names: [&str; 3],
) -> Result<(CMat<T>, CMat<T>, CMat<T>)> {
    if t < T::zero() || t > T::one() {
        return Err(RepError::ParamRange {
            name: "t",
            value: t.to_f64().unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let half_pi = T::from_f64(std::f64::consts::FRAC_PI_2).unwrap();
    let s = (half_pi * t).sin();
    let c = (half_pi * t).cos();
    let mut w = CMat::<T>::zeros(2, 2);
    w[(0, 0)] = c_re(s);
    w[(1, 0)] = c_re(c);
    let w_abs = herm_funcalc(&w.adjoint().matmul(&w), FunTag::SqrtClamped)?;
    let w_star_abs = herm_funcalc(&w.matmul(&w.adjoint()), FunTag::SqrtClamped)?;
    let (h, k, x) = (rep.image(names[0]), rep.image(names[1]), rep.image(names[2]));
    Ok((h.kron_left(&w_abs), k.kron_left(&w_star_abs), x.kron_left(&w)))
}
