use super::ModelId;
use crate::conegrid::GridFun;
use crate::linalg::{op_norm, CMat};
use crate::scalar::Scalar;
use crate::toeplitz::{LaurentPoly, ToepOp};

/// A concrete extension 0 → ideal → algebra → quotient → 0 with a
/// distinguished set-theoretic lift of the quotient.
///
/// Invariants: `quotient(lift(q)) = q` within 1e−9, and
/// `ideal_residual(x) = 0` iff `quotient(x) = 0` within 1e−9.
pub trait ExtensionModel<T: Scalar> {
    type Elem;
    type Quot;

    fn id(&self) -> ModelId;
    fn lift(&self, q: &Self::Quot) -> Self::Elem;
    fn quotient(&self, e: &Self::Elem) -> Self::Quot;
    fn ideal_residual(&self, e: &Self::Elem) -> f64;
}

/// Toeplitz-plus-finite-rank over its Laurent symbol algebra; the canonical
/// lift is the zero-correction Toeplitz operator.
pub struct ToeplitzModel;

impl<T: Scalar> ExtensionModel<T> for ToeplitzModel {
    type Elem = ToepOp<T>;
    type Quot = LaurentPoly<T>;

    fn id(&self) -> ModelId {
        ModelId::Toeplitz
    }

    fn lift(&self, q: &LaurentPoly<T>) -> ToepOp<T> {
        ToepOp::toep(q.clone())
    }

    fn quotient(&self, e: &ToepOp<T>) -> LaurentPoly<T> {
        e.quotient_symbol()
    }

    fn ideal_residual(&self, e: &ToepOp<T>) -> f64 {
        e.ideal_residual()
    }
}

/// The cone over M_d on a sample grid, with quotient evaluation at t = 1;
/// the canonical lift is linear scaling t·m.
pub struct ConeGridModel {
    pub grid: usize,
}

impl<T: Scalar> ExtensionModel<T> for ConeGridModel {
    type Elem = GridFun<T>;
    type Quot = CMat<T>;

    fn id(&self) -> ModelId {
        ModelId::ConeGrid
    }

    fn lift(&self, q: &CMat<T>) -> GridFun<T> {
        let m = q.clone();
        GridFun::sample(self.grid, q.rows(), move |t| m.scale_re(t))
    }

    fn quotient(&self, e: &GridFun<T>) -> CMat<T> {
        e.eval_at_one()
    }

    fn ideal_residual(&self, e: &GridFun<T>) -> f64 {
        op_norm(&e.eval_at_one()).to_f64().unwrap()
    }
}
