use super::{BoundaryError, Result};
use crate::conegrid::GridFun;
use crate::linalg::{herm_funcalc, op_norm, CMat, FunTag};
use crate::scalar::Scalar;
use crate::toeplitz::ToepOp;

/// An element of one of the two concrete extension algebras.
#[derive(Debug, Clone)]
pub enum ModelElem<T: Scalar> {
    Toep(ToepOp<T>),
    Grid(GridFun<T>),
}

const QUOTIENT_UNITARY_TOL: f64 = 1e-8;
const NORM_SLACK: f64 = 1e-10;

/// Normalize a lift whose quotient is unitary into a contraction with the
/// same quotient: a = b·(1 + (b*b − 1)₊)^{−1/2}. Because the quotient of
/// b*b is 1, the positive part sits in the ideal and the quotient is
/// untouched.
pub fn contraction_lift<T: Scalar>(b: &ModelElem<T>) -> Result<ModelElem<T>> {
    match b {
        ModelElem::Toep(b) => Ok(ModelElem::Toep(contraction_lift_toep(b)?)),
        ModelElem::Grid(b) => Ok(ModelElem::Grid(contraction_lift_grid(b)?)),
    }
}

/// The bare normalization a = b·(1 + (b*b − 1)₊)^{−1/2}, with no quotient
/// requirement: a*a = b*b/(1 + (b*b − 1)₊) has spectrum ≤ 1.
pub fn contraction_normalize<T: Scalar>(b: &ModelElem<T>) -> Result<ModelElem<T>> {
    match b {
        ModelElem::Toep(b) => {
            let s = b.block();
            let one = ToepOp::one(s);
            let gram = b.adjoint().mul(b)?;
            let excess = gram.sub(&one)?.into_ideal(1e-9)?;
            Ok(ModelElem::Toep(normalize_toep(b, &excess, s)?))
        }
        ModelElem::Grid(b) => {
            let mut out = Vec::with_capacity(b.grid() + 1);
            for m in b.samples() {
                let gram = m.adjoint().matmul(m);
                let normalizer = herm_funcalc(&gram, FunTag::InvSqrtShifted)?;
                out.push(m.matmul(&normalizer));
            }
            Ok(ModelElem::Grid(GridFun::new(out, false, false)?))
        }
    }
}

fn normalize_toep<T: Scalar>(
    b: &ToepOp<T>,
    excess: &ToepOp<T>,
    s: usize,
) -> Result<ToepOp<T>> {
    if excess.corner_blocks() == 0 {
        return Ok(b.clone());
    }
    let one = ToepOp::one(s);
    let m = excess.corner().rows();
    let pos = herm_funcalc(excess.corner(), FunTag::PosPart)?;
    let shifted = &CMat::identity(m) + &pos;
    let inv_sqrt = herm_funcalc(&shifted, FunTag::InvSqrtShifted)?;
    let normalizer = one.add(&ToepOp::ideal(&inv_sqrt - &CMat::identity(m), s))?;
    Ok(b.mul(&normalizer)?)
}

fn contraction_lift_toep<T: Scalar>(b: &ToepOp<T>) -> Result<ToepOp<T>> {
    let u = b.quotient_symbol();
    let resid = u.unitarity_residual();
    if resid > QUOTIENT_UNITARY_TOL {
        return Err(BoundaryError::NonUnitaryQuotient(resid));
    }
    let s = b.block();
    let one = ToepOp::one(s);
    let gram = b.adjoint().mul(b)?;
    // gram = 1 + ideal; its positive excess lives in the corner.
    let excess = gram.sub(&one)?.into_ideal(1e-9)?;
    let a = normalize_toep(b, &excess, s)?;
    // ‖a‖² = ‖a*a‖ with a*a of constant-plus-ideal shape.
    let norm_sq = a.adjoint().mul(&a)?.norm_const_plus_ideal()?;
    if norm_sq.sqrt() > 1.0 + NORM_SLACK {
        return Err(BoundaryError::NonUnitaryQuotient(norm_sq.sqrt() - 1.0));
    }
    Ok(a)
}

fn contraction_lift_grid<T: Scalar>(b: &GridFun<T>) -> Result<GridFun<T>> {
    // Quotient = evaluation at 1 must be unitary.
    let top = b.eval_at_one();
    let id = CMat::identity(top.rows());
    let resid = op_norm(&(&top.adjoint().matmul(&top) - &id)).to_f64().unwrap();
    if resid > QUOTIENT_UNITARY_TOL {
        return Err(BoundaryError::NonUnitaryQuotient(resid));
    }
    let mut out = Vec::with_capacity(b.grid() + 1);
    for m in b.samples() {
        let gram = m.adjoint().matmul(m);
        let normalizer = herm_funcalc(&gram, FunTag::InvSqrtShifted)?;
        let a = m.matmul(&normalizer);
        if op_norm(&a).to_f64().unwrap() > 1.0 + NORM_SLACK {
            return Err(BoundaryError::NonUnitaryQuotient(op_norm(&a).to_f64().unwrap() - 1.0));
        }
        out.push(a);
    }
    Ok(GridFun::new(out, false, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_unitary, SeedRng};
    use crate::toeplitz::{parse_symbol, LaurentPoly};
    use num_complex::Complex;

    #[test]
    fn contraction_passes_through() {
        let b = ToepOp::toep(parse_symbol::<f64>("z").unwrap());
        let a = contraction_lift_toep(&b).unwrap();
        assert_eq!(a, b, "norm-1 lift should be unchanged");
    }

    #[test]
    fn doubled_unitary_normalizes_to_norm_one() {
        // b = 2·(unitary-valued lift): a*a = 4/(1+3) = 1 pointwise.
        let mut rng = SeedRng::new(5);
        let u = random_unitary::<f64>(3, &mut rng);
        let b = GridFun::sample(32, 3, |_t| u.scale_re(2.0));
        let a = match contraction_normalize(&ModelElem::Grid(b)).unwrap() {
            ModelElem::Grid(a) => a,
            _ => unreachable!(),
        };
        for m in a.samples() {
            let n = op_norm(m);
            assert!((n - 1.0).abs() <= 1e-10, "norm {n}");
        }
    }

    #[test]
    fn unitary_quotient_grid_lift_preserved() {
        let mut rng = SeedRng::new(6);
        let u = random_unitary::<f64>(3, &mut rng);
        // b(1) = u unitary; earlier samples exceed norm 1 and get squashed.
        let b = GridFun::sample(32, 3, |t| u.scale_re(2.0 - t));
        let a = contraction_lift_grid(&b).unwrap();
        for m in a.samples() {
            assert!(op_norm(m) <= 1.0 + 1e-10);
        }
        assert!((&a.eval_at_one() - &u).max_abs() < 1e-9, "quotient moved");
    }

    #[test]
    fn perturbed_toeplitz_lift_keeps_quotient() {
        let u = parse_symbol::<f64>("z^-2").unwrap();
        let mut rng = SeedRng::new(8);
        let noise = rng.gaussian_matrix::<f64>(3, 3);
        let noise = noise.scale(Complex::new(
            0.3 / nccell_norm(&noise),
            0.0,
        ));
        let b = ToepOp::toep(u.clone()).add(&ToepOp::ideal(noise, 1)).unwrap();
        let a = contraction_lift_toep(&b).unwrap();
        assert!(a.quotient_symbol().sub(&u).max_coeff_norm() < 1e-12);
        let norm_sq = a.adjoint().mul(&a).unwrap().norm_const_plus_ideal().unwrap();
        assert!(norm_sq.sqrt() <= 1.0 + 1e-10);
    }

    #[test]
    fn rejects_non_unitary_quotient() {
        let f: LaurentPoly<f64> = parse_symbol("0.5*z").unwrap();
        let b = ToepOp::toep(f);
        assert!(contraction_lift_toep(&b).is_err());
    }

    fn nccell_norm(m: &CMat<f64>) -> f64 {
        op_norm(m)
    }
}
