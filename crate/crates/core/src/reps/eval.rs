use super::{Rep, RepError, Result};
use crate::linalg::CMat;
use crate::presentations::StarExpr;
use crate::scalar::{Cplx, Scalar};
use crate::symbolic::NCPoly;
use num_complex::Complex;
use std::collections::BTreeMap;

/// Evaluation result: scalars stay symbolic until a matrix fixes the shape,
/// implementing the "relations read in the unitization" convention.
pub(crate) enum Value<T: Scalar> {
    Scalar(Cplx<T>),
    Mat(CMat<T>),
}

impl<T: Scalar> Value<T> {
    fn promote(self, rows: usize, cols: usize) -> Result<CMat<T>> {
        match self {
            Value::Mat(m) => Ok(m),
            Value::Scalar(c) => {
                if rows != cols {
                    return Err(RepError::Eval("scalar promoted to non-square shape".into()));
                }
                Ok(CMat::scalar(rows, c))
            }
        }
    }
}

fn value<T: Scalar>(rep: &Rep<T>, expr: &StarExpr) -> Result<Value<T>> {
    Ok(match expr {
        StarExpr::Ref(n) => {
            if rep.pres.generators.iter().any(|g| g == n) {
                Value::Mat(rep.image(n).clone())
            } else if let Some(e) = rep.pres.let_expr(n) {
                value(rep, e)?
            } else {
                return Err(RepError::Eval(format!("unresolved name `{n}`")));
            }
        }
        StarExpr::Unit => Value::Scalar(Complex::new(T::one(), T::zero())),
        StarExpr::Scalar(c) => {
            let z = c.to_c64();
            Value::Scalar(Complex::new(
                T::from_f64(z.re).unwrap(),
                T::from_f64(z.im).unwrap(),
            ))
        }
        StarExpr::Sum(a, b) => additive(rep, a, b, false)?,
        StarExpr::Diff(a, b) => additive(rep, a, b, true)?,
        StarExpr::Prod(a, b) => {
            let va = value(rep, a)?;
            let vb = value(rep, b)?;
            match (va, vb) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
                (Value::Scalar(x), Value::Mat(m)) | (Value::Mat(m), Value::Scalar(x)) => {
                    Value::Mat(m.scale(x))
                }
                (Value::Mat(ma), Value::Mat(mb)) => {
                    if ma.cols() != mb.rows() {
                        return Err(RepError::Eval(format!(
                            "product shape mismatch {}x{} * {}x{}",
                            ma.rows(),
                            ma.cols(),
                            mb.rows(),
                            mb.cols()
                        )));
                    }
                    Value::Mat(ma.matmul(&mb))
                }
            }
        }
        StarExpr::Neg(a) => match value(rep, a)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Mat(m) => Value::Mat(-m),
        },
        StarExpr::Adj(a) => match value(rep, a)? {
            Value::Scalar(c) => Value::Scalar(c.conj()),
            Value::Mat(m) => Value::Mat(m.adjoint()),
        },
        StarExpr::Block(rows) => {
            let d = rep.dim;
            let mut blocks = Vec::with_capacity(rows.len());
            for row in rows {
                let mut brow = Vec::with_capacity(row.len());
                for e in row {
                    let m = value(rep, e)?.promote(d, d)?;
                    if (m.rows(), m.cols()) != (d, d) {
                        return Err(RepError::Eval("block entry is not entry-level".into()));
                    }
                    brow.push(m);
                }
                blocks.push(brow);
            }
            Value::Mat(CMat::from_blocks(&blocks))
        }
    })
}

fn additive<T: Scalar>(
    rep: &Rep<T>,
    a: &StarExpr,
    b: &StarExpr,
    subtract: bool,
) -> Result<Value<T>> {
    let va = value(rep, a)?;
    let vb = value(rep, b)?;
    Ok(match (va, vb) {
        (Value::Scalar(x), Value::Scalar(y)) => {
            Value::Scalar(if subtract { x - y } else { x + y })
        }
        (Value::Scalar(x), Value::Mat(m)) => {
            let s = CMat::scalar(m.rows(), x);
            Value::Mat(if subtract { &s - &m } else { &s + &m })
        }
        (Value::Mat(m), Value::Scalar(x)) => {
            let s = CMat::scalar(m.rows(), x);
            Value::Mat(if subtract { &m - &s } else { &m + &s })
        }
        (Value::Mat(ma), Value::Mat(mb)) => {
            if (ma.rows(), ma.cols()) != (mb.rows(), mb.cols()) {
                return Err(RepError::Eval(format!(
                    "sum shape mismatch {}x{} vs {}x{}",
                    ma.rows(),
                    ma.cols(),
                    mb.rows(),
                    mb.cols()
                )));
            }
            Value::Mat(if subtract { &ma - &mb } else { &ma + &mb })
        }
    })
}

/// Evaluate an expression to a matrix; a pure scalar takes the hinted shape
/// (or the representation dimension).
pub(crate) fn eval_to_mat<T: Scalar>(
    rep: &Rep<T>,
    expr: &StarExpr,
    hint: Option<(usize, usize)>,
) -> Result<CMat<T>> {
    match value(rep, expr)? {
        Value::Mat(m) => Ok(m),
        v => {
            let (r, c) = hint.unwrap_or((rep.dim, rep.dim));
            v.promote(r, c)
        }
    }
}

/// Evaluate an expression over a representation's generators.
pub fn eval_expr<T: Scalar>(rep: &Rep<T>, expr: &StarExpr) -> Result<CMat<T>> {
    eval_to_mat(rep, expr, None)
}

/// Evaluate an exact polynomial on matrix images (symbolic/numeric bridge).
pub fn eval_ncpoly<T: Scalar>(
    poly: &NCPoly,
    images: &BTreeMap<String, CMat<T>>,
    dim: usize,
) -> Result<CMat<T>> {
    let mut acc = CMat::zeros(dim, dim);
    for (word, coeff) in poly.terms() {
        let mut prod = CMat::identity(dim);
        for letter in &word.0 {
            let img = images
                .get(&letter.name)
                .ok_or_else(|| RepError::MissingImage(letter.name.clone()))?;
            let img = if letter.star { img.adjoint() } else { img.clone() };
            prod = prod.matmul(&img);
        }
        let z = coeff.to_c64();
        let z = Complex::new(T::from_f64(z.re).unwrap(), T::from_f64(z.im).unwrap());
        acc = &acc + &prod.scale(z);
    }
    Ok(acc)
}
