use super::{check_relations, pres_arc, Rep, RepError, Result};
use crate::linalg::{herm_eig, herm_funcalc, op_norm, CMat, FunTag};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

const INPUT_TOL: f64 = 1e-10;
const FACTORY_TOL: f64 = 1e-9;

fn projection_residual<T: Scalar>(p: &CMat<T>) -> f64 {
    let idem = op_norm(&(&p.matmul(p) - p)).to_f64().unwrap();
    let herm = p.herm_defect().to_f64().unwrap();
    idem.max(herm)
}

fn positive_contraction_residual<T: Scalar>(l: &CMat<T>) -> f64 {
    let herm = l.herm_defect().to_f64().unwrap();
    let eig = match herm_eig(&(&l.clone() + &l.adjoint()).scale_re(T::from_f64(0.5).unwrap())) {
        Ok(e) => e,
        Err(_) => return f64::INFINITY,
    };
    let lo = eig.eigenvalues.first().map(|v| v.to_f64().unwrap()).unwrap_or(0.0);
    let hi = eig.eigenvalues.last().map(|v| v.to_f64().unwrap()).unwrap_or(0.0);
    herm.max(-lo).max(hi - 1.0).max(0.0)
}

fn require(what: &'static str, residual: f64, tol: f64) -> Result<()> {
    if residual <= tol {
        Ok(())
    } else {
        Err(RepError::InputResidual { what, residual, tol })
    }
}

/// qC representation from a pair of projections:
/// h₀ = p − pqp, k₀ = (1−p)q(1−p), x₀ = (1−p)qp.
pub fn qc_rep_from_projections<T: Scalar>(p: &CMat<T>, q: &CMat<T>) -> Result<Rep<T>> {
    require("projection p", projection_residual(p), INPUT_TOL)?;
    require("projection q", projection_residual(q), INPUT_TOL)?;
    let rep = conjugation_images(pres_arc("qC"), &["h0", "k0", "x0"], p, q)?;
    check_relations(&rep, FACTORY_TOL)?.require("qC")?;
    Ok(rep)
}

/// 𝒫 representation from a projection and a positive contraction:
/// h = p − plp, k = (1−p)l(1−p), x = (1−p)lp.
pub fn p_rep_from_pair<T: Scalar>(p: &CMat<T>, l: &CMat<T>) -> Result<Rep<T>> {
    require("projection p", projection_residual(p), INPUT_TOL)?;
    require("positive contraction l", positive_contraction_residual(l), INPUT_TOL)?;
    let rep = conjugation_images(pres_arc("P"), &["h", "k", "x"], p, l)?;
    check_relations(&rep, FACTORY_TOL)?.require("P")?;
    Ok(rep)
}

fn conjugation_images<T: Scalar>(
    pres: std::sync::Arc<crate::presentations::Presentation>,
    names: &[&str; 3],
    p: &CMat<T>,
    l: &CMat<T>,
) -> Result<Rep<T>> {
    let d = p.rows();
    let id = CMat::identity(d);
    let pc = &id - p;
    let h = p - &p.matmul(l).matmul(p);
    let k = pc.matmul(l).matmul(&pc);
    let x = pc.matmul(l).matmul(p);
    let mut images = BTreeMap::new();
    images.insert(names[0].to_string(), h);
    images.insert(names[1].to_string(), k);
    images.insert(names[2].to_string(), x);
    Rep::new(pres, images)
}

/// G2st representation from a contraction a:
/// h = 1 − a*a, k = 1 − aa*, x = a·√(1 − a*a).
pub fn g2st_rep_from_contraction<T: Scalar>(a: &CMat<T>) -> Result<Rep<T>> {
    let nrm = op_norm(a).to_f64().unwrap();
    require("contraction a", (nrm - 1.0).max(0.0), INPUT_TOL)?;
    let d = a.rows();
    let id = CMat::identity(d);
    let h = &id - &a.adjoint().matmul(a);
    let k = &id - &a.matmul(&a.adjoint());
    let x = a.matmul(&herm_funcalc(&h, FunTag::SqrtClamped)?);
    let mut images = BTreeMap::new();
    images.insert("h".to_string(), h);
    images.insert("k".to_string(), k);
    images.insert("x".to_string(), x);
    let rep = Rep::new(pres_arc("G2st"), images)?;
    check_relations(&rep, FACTORY_TOL)?.require("G2st")?;
    Ok(rep)
}
