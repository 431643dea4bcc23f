use super::laurent::LaurentPoly;
use super::op::ToepOp;
use super::{Result, ToepError, UNITARY_TOL};
use crate::linalg::{rank_with_cutoff, CMat, FunTag};
use crate::scalar::Scalar;

/// G2st-shaped triple of ideal Toeplitz operators produced by the index
/// boundary: h₁ = 1 − a*a, k₁ = 1 − aa*, x₁ = a√(1 − a*a).
#[derive(Debug, Clone)]
pub struct ToepG2Rep<T: Scalar> {
    pub h1: ToepOp<T>,
    pub k1: ToepOp<T>,
    pub x1: ToepOp<T>,
}

impl<T: Scalar> ToepG2Rep<T> {
    /// Worst residual of the five standard-picture relations, measured on a
    /// dense window just past every corner.
    pub fn relation_residual(&self) -> Result<f64> {
        let (h, k, x) = (&self.h1, &self.k1, &self.x1);
        let rels = [
            h.adjoint().sub(h)?,
            k.adjoint().sub(k)?,
            h.mul(h)?.add(&x.adjoint().mul(x)?)?.sub(h)?,
            k.mul(x)?.sub(&x.mul(h)?)?,
            k.mul(k)?.add(&x.mul(&x.adjoint())?)?.sub(k)?,
        ];
        let window = 1 + [h, k, x]
            .iter()
            .map(|o| o.corner_blocks())
            .chain(rels.iter().map(|o| o.corner_blocks()))
            .max()
            .unwrap_or(0);
        Ok(rels.iter().map(|r| r.window_residual(window)).fold(0.0, f64::max))
    }

    /// Largest symbol residual: zero iff all three sit in the ideal.
    pub fn ideal_residual(&self) -> f64 {
        self.h1
            .ideal_residual()
            .max(self.k1.ideal_residual())
            .max(self.x1.ideal_residual())
    }

    /// Trace pairing tr(h₁) − tr(k₁) before rounding.
    pub fn class_pre_round(&self) -> Result<(f64, f64)> {
        let th = self.h1.trace_ideal()?;
        let tk = self.k1.trace_ideal()?;
        let diff = th - tk;
        Ok((diff.re.to_f64().unwrap(), diff.im.to_f64().unwrap()))
    }
}

/// Result of the index-cell boundary on a unitary symbol.
#[derive(Debug, Clone)]
pub struct IndexBoundary<T: Scalar> {
    pub rep: ToepG2Rep<T>,
    pub class: i64,
    /// |pre-rounding value − class|, including any imaginary part.
    pub drift: f64,
}

const IDEAL_SNAP_TOL: f64 = 1e-9;
const DRIFT_HARD_LIMIT: f64 = 1e-6;

/// The index boundary: lift the unitary symbol u to the contraction
/// a = toep(u), form the ideal triple (h₁, k₁, x₁), and read the class off
/// the trace pairing; class = tr(h₁) − tr(k₁) = −(Fredholm index sign
/// convention: ∂[z^w] = −w).
pub fn index_boundary<T: Scalar>(u: &LaurentPoly<T>) -> Result<IndexBoundary<T>> {
    let resid = u.unitarity_residual();
    if resid > UNITARY_TOL {
        return Err(ToepError::NonUnitarySymbol(resid));
    }
    let a = ToepOp::toep(u.clone());
    index_boundary_with_lift(u, &a)
}

/// Same boundary with an explicit lift of the symbol (used by the
/// lift-choice invariance suite). The lift must be a contraction with
/// quotient u.
pub fn index_boundary_with_lift<T: Scalar>(
    u: &LaurentPoly<T>,
    a: &ToepOp<T>,
) -> Result<IndexBoundary<T>> {
    let quotient_gap = a.quotient_symbol().sub(u).max_coeff_norm();
    if quotient_gap > 1e-9 {
        return Err(ToepError::NonUnitarySymbol(quotient_gap));
    }
    let one = ToepOp::one(u.block());
    let h1 = one.sub(&a.adjoint().mul(a)?)?.into_ideal(IDEAL_SNAP_TOL)?;
    let k1 = one.sub(&a.mul(&a.adjoint())?)?.into_ideal(IDEAL_SNAP_TOL)?;
    let sqrt_h1 = h1.ideal_funcalc(FunTag::SqrtClamped)?;
    let x1 = a.mul(&sqrt_h1)?.into_ideal(IDEAL_SNAP_TOL)?;
    let rep = ToepG2Rep { h1, k1, x1 };
    let (re, im) = rep.class_pre_round()?;
    let class = re.round();
    let drift = (re - class).abs().max(im.abs());
    if drift > DRIFT_HARD_LIMIT {
        return Err(ToepError::DriftExceeded(drift));
    }
    Ok(IndexBoundary { rep, class: class as i64, drift })
}

/// Independent Fredholm index oracle: kernel and cokernel dimensions from
/// rectangular dense truncations (columns 0..n, every row they can hit),
/// ranks by singular values with cutoff 1e−8, stabilized across two sizes.
pub fn fredholm_oracle<T: Scalar>(u: &LaurentPoly<T>) -> Result<i64> {
    let resid = u.unitarity_residual();
    if resid > UNITARY_TOL {
        return Err(ToepError::NonUnitarySymbol(resid));
    }
    let band = u.band().max(1) as usize;
    let n0 = 24 + 2 * band;
    let n1 = n0 + band;
    let ind0 = index_at(u, n0);
    let ind1 = index_at(u, n1);
    if ind0 != ind1 {
        return Err(ToepError::NonStabilizedRank(n0, n1));
    }
    Ok(ind0)
}

fn kernel_dim_at<T: Scalar>(u: &LaurentPoly<T>, n: usize) -> usize {
    let s = u.block();
    let extra = u.max_exp().max(0) as usize;
    let rows = n + extra;
    let a = CMat::from_fn(rows * s, n * s, |i, j| {
        let (bi, ii) = (i / s, i % s);
        let (bj, jj) = (j / s, j % s);
        u.coeff(bi as i64 - bj as i64)[(ii, jj)]
    });
    n * s - rank_with_cutoff(&a, T::from_f64(1e-8).unwrap())
}

fn index_at<T: Scalar>(u: &LaurentPoly<T>, n: usize) -> i64 {
    let ker = kernel_dim_at(u, n) as i64;
    let coker = kernel_dim_at(&u.adjoint(), n) as i64;
    ker - coker
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    type L = LaurentPoly<f64>;

    #[test]
    fn oracle_on_monomials() {
        let z = L::monomial(1, Complex::new(1.0, 0.0));
        assert_eq!(fredholm_oracle(&z).unwrap(), -1);
        let zbar2 = L::monomial(-2, Complex::new(1.0, 0.0));
        assert_eq!(fredholm_oracle(&zbar2).unwrap(), 2);
        let constant = L::monomial(0, Complex::new(0.0, 1.0));
        assert_eq!(fredholm_oracle(&constant).unwrap(), 0);
    }

    #[test]
    fn oracle_rejects_non_unitary() {
        let f = L::monomial(1, Complex::new(0.3, 0.0));
        assert!(matches!(fredholm_oracle(&f), Err(ToepError::NonUnitarySymbol(_))));
    }

    #[test]
    fn boundary_of_shift() {
        let z = L::monomial(1, Complex::new(1.0, 0.0));
        let out = index_boundary(&z).unwrap();
        assert_eq!(out.class, -1);
        assert!(out.drift <= 1e-12);
        assert!(out.rep.h1.window_residual(2) < 1e-15, "h1 should vanish");
        assert!((out.rep.k1.trace_ideal().unwrap().re - 1.0).abs() < 1e-15);
        assert!(out.rep.x1.window_residual(2) < 1e-15);
        assert!(out.rep.relation_residual().unwrap() < 1e-12);
    }

    #[test]
    fn boundary_of_identity_symbol() {
        let one = L::one(1);
        let out = index_boundary(&one).unwrap();
        assert_eq!(out.class, 0);
        assert!(out.rep.h1.window_residual(1) < 1e-15);
        assert!(out.rep.k1.window_residual(1) < 1e-15);
    }
}
