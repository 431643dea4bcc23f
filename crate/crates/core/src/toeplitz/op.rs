use super::laurent::LaurentPoly;
use super::{Result, ToepError};
use crate::linalg::{op_norm, CMat};
use crate::scalar::{c_zero, Cplx, Scalar};
use num_traits::Zero;

/// Toeplitz operator with Laurent-polynomial symbol plus a finite square
/// corner correction, supported in the top-left of the semi-infinite matrix.
/// The block entry (i, j) of the modeled operator is
/// `symbol.coeff(i − j) + corner block (i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToepOp<T: Scalar> {
    symbol: LaurentPoly<T>,
    corner: CMat<T>,
}

impl<T: Scalar> ToepOp<T> {
    /// Canonical lift of a symbol: zero correction.
    pub fn toep(symbol: LaurentPoly<T>) -> Self {
        Self { symbol, corner: CMat::zeros(0, 0) }
    }

    /// Ideal element: zero symbol, given corner (size must be a multiple of
    /// the block size).
    pub fn ideal(corner: CMat<T>, block: usize) -> Self {
        assert!(corner.is_square() && corner.rows().is_multiple_of(block));
        Self { symbol: LaurentPoly::zero(block), corner }.trimmed()
    }

    pub fn zero(block: usize) -> Self {
        Self::toep(LaurentPoly::zero(block))
    }

    pub fn one(block: usize) -> Self {
        Self::toep(LaurentPoly::one(block))
    }

    pub fn block(&self) -> usize {
        self.symbol.block()
    }

    /// Corner size in blocks.
    pub fn corner_blocks(&self) -> usize {
        self.corner.rows() / self.block()
    }

    pub fn corner(&self) -> &CMat<T> {
        &self.corner
    }

    /// The quotient (symbol) map; multiplicative and *-preserving exactly,
    /// with kernel the ideal of zero-symbol operators.
    pub fn quotient_symbol(&self) -> LaurentPoly<T> {
        self.symbol.clone()
    }

    /// Residual distance from the ideal: symbol sup-norm over the circle.
    pub fn ideal_residual(&self) -> f64 {
        self.symbol.max_coeff_norm()
    }

    /// Trace on the ideal: sum of the corner diagonal. Errors when the
    /// symbol is nonzero.
    pub fn trace_ideal(&self) -> Result<Cplx<T>> {
        if !self.symbol.is_zero() {
            return Err(ToepError::NonZeroSymbol(self.symbol.max_coeff_norm()));
        }
        if self.corner.rows() == 0 {
            return Ok(c_zero());
        }
        Ok(self.corner.trace())
    }

    /// Assert the symbol is numerically dead and project it away exactly.
    pub fn into_ideal(mut self, tol: f64) -> Result<Self> {
        let resid = self.symbol.max_coeff_norm();
        if resid > tol {
            return Err(ToepError::NonZeroSymbol(resid));
        }
        self.symbol = LaurentPoly::zero(self.block());
        Ok(self.trimmed())
    }

    /// Dense truncation: `rows`×`cols` blocks of the modeled operator.
    pub fn dense(&self, rows: usize, cols: usize) -> CMat<T> {
        let s = self.block();
        let mc = self.corner_blocks();
        CMat::from_fn(rows * s, cols * s, |i, j| {
            let (bi, ii) = (i / s, i % s);
            let (bj, jj) = (j / s, j % s);
            let mut v = self.symbol.coeff(bi as i64 - bj as i64)[(ii, jj)];
            if bi < mc && bj < mc {
                v += self.corner[(i, j)];
            }
            v
        })
    }

    fn trimmed(mut self) -> Self {
        let s = self.block();
        let mut mc = self.corner_blocks();
        'outer: while mc > 0 {
            let lo = (mc - 1) * s;
            let hi = mc * s;
            for i in 0..hi {
                for j in lo..hi {
                    if !self.corner[(i, j)].is_zero() || !self.corner[(j, i)].is_zero() {
                        break 'outer;
                    }
                }
            }
            mc -= 1;
            self.corner = self.corner.block(0, 0, mc * s, mc * s);
        }
        self
    }

    fn check_block(&self, rhs: &Self) -> Result<()> {
        if self.block() != rhs.block() {
            return Err(ToepError::BlockMismatch(self.block(), rhs.block()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_block(rhs)?;
        let s = self.block();
        let mc = self.corner_blocks().max(rhs.corner_blocks());
        let corner = &self.corner.pad_to(mc * s) + &rhs.corner.pad_to(mc * s);
        Ok(Self { symbol: self.symbol.add(&rhs.symbol), corner }.trimmed())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self { symbol: self.symbol.neg(), corner: -&self.corner }
    }

    pub fn scale(&self, z: Cplx<T>) -> Self {
        Self { symbol: self.symbol.scale(z), corner: self.corner.scale(z) }
    }

    /// Adjoint: reverses and conjugates the symbol, conjugate-transposes the
    /// corner.
    pub fn adjoint(&self) -> Self {
        Self { symbol: self.symbol.adjoint(), corner: self.corner.adjoint() }
    }

    /// Exact product. The result is Toeplitz-plus-finite-rank again; the
    /// corner is recovered from a dense window wide enough to see every
    /// correction term.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_block(rhs)?;
        let band_a = self.symbol.band() as usize;
        let band_b = rhs.symbol.band() as usize;
        let w = (self.corner_blocks() + rhs.corner_blocks() + band_a + band_b).max(1);
        let inner = w + band_a + self.corner_blocks();
        let left = self.dense(w, inner);
        let right = rhs.dense(inner, w);
        let window = left.matmul(&right);
        let symbol = self.symbol.mul(&rhs.symbol);
        let toeplitz_part = Self::toep(symbol.clone()).dense(w, w);
        let corner = &window - &toeplitz_part;
        Ok(Self { symbol, corner }.trimmed())
    }

    /// Operator norm for constant-symbol-plus-corner operators (the shape
    /// produced by a*a for a lifted unitary): the operator is block-diagonal
    /// diag(c₀·I_m + corner, c₀, c₀, …). Nonconstant symbol coefficients
    /// below 1e−9 are float dust from inexact inputs and are ignored for
    /// this norm diagnostic only.
    pub fn norm_const_plus_ideal(&self) -> Result<f64> {
        let mut worst_offdiag = 0.0f64;
        for (&k, c) in self.symbol.coeffs() {
            if k != 0 {
                worst_offdiag = worst_offdiag.max(op_norm(c).to_f64().unwrap());
            }
        }
        if worst_offdiag > 1e-9 {
            return Err(ToepError::NonZeroSymbol(worst_offdiag));
        }
        let c0 = self.symbol.coeff(0);
        let tail = op_norm(&c0).to_f64().unwrap();
        let mc = self.corner_blocks().max(1);
        let head = op_norm(&self.dense(mc, mc)).to_f64().unwrap();
        Ok(tail.max(head))
    }

    /// Hermitian functional calculus on an ideal element: applies to the
    /// corner, which is the whole operator.
    pub fn ideal_funcalc(&self, f: crate::linalg::FunTag) -> Result<Self> {
        if !self.symbol.is_zero() {
            return Err(ToepError::NonZeroSymbol(self.symbol.max_coeff_norm()));
        }
        if self.corner.rows() == 0 {
            return Ok(self.clone());
        }
        let corner = crate::linalg::herm_funcalc(&self.corner, f)?;
        Ok(Self { symbol: self.symbol.clone(), corner }.trimmed())
    }

    /// Largest entry magnitude over a dense window plus symbol residual;
    /// zero iff the operator is exactly zero on that window and has a zero
    /// symbol.
    pub fn window_residual(&self, blocks: usize) -> f64 {
        let dense = self.dense(blocks, blocks);
        dense.max_abs().to_f64().unwrap().max(self.symbol.max_coeff_norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    type L = LaurentPoly<f64>;
    type Op = ToepOp<f64>;

    fn z() -> Op {
        Op::toep(L::monomial(1, Complex::new(1.0, 0.0)))
    }

    #[test]
    fn shift_times_adjoint_has_rank_one_corner() {
        // T_z T_z̄ = 1 − e₀₀.
        let prod = z().mul(&z().adjoint()).unwrap();
        assert_eq!(prod.quotient_symbol(), L::one(1));
        assert_eq!(prod.corner_blocks(), 1);
        assert!((prod.corner()[(0, 0)].re + 1.0).abs() < 1e-15);
        // T_z̄ T_z = 1 exactly.
        let other = z().adjoint().mul(&z()).unwrap();
        assert_eq!(other.quotient_symbol(), L::one(1));
        assert_eq!(other.corner_blocks(), 0);
    }

    #[test]
    fn identity_is_neutral() {
        let x = z().mul(&z()).unwrap().add(&Op::ideal(CMat::unit(2, 0, 1), 1)).unwrap();
        let e = Op::one(1);
        assert_eq!(x.mul(&e).unwrap(), x);
        assert_eq!(e.mul(&x).unwrap(), x);
    }

    #[test]
    fn adjoint_of_shift_is_backward_shift() {
        let a = z().adjoint();
        assert_eq!(a.quotient_symbol(), L::monomial(-1, Complex::new(1.0, 0.0)));
        let d = a.dense(3, 3);
        assert!((d[(0, 1)].re - 1.0).abs() < 1e-15);
        assert!(d[(1, 0)].is_zero());
    }

    #[test]
    fn quotient_is_multiplicative() {
        let mut rng = crate::linalg::SeedRng::new(9);
        for _ in 0..20 {
            let mut fa = L::zero(1);
            let mut fb = L::zero(1);
            for k in -3i64..=3 {
                fa.set_coeff(k, CMat::scalar(1, rng.next_cplx()));
                fb.set_coeff(k, CMat::scalar(1, rng.next_cplx()));
            }
            let a = Op::toep(fa.clone());
            let b = Op::toep(fb.clone());
            let prod = a.mul(&b).unwrap();
            assert_eq!(prod.quotient_symbol(), fa.mul(&fb));
        }
    }

    #[test]
    fn trace_ideal_requires_zero_symbol() {
        assert!(z().trace_ideal().is_err());
        let e = Op::ideal(CMat::unit(1, 0, 0), 1);
        assert!((e.trace_ideal().unwrap().re - 1.0).abs() < 1e-15);
        assert!(Op::zero(1).trace_ideal().unwrap().re.abs() < 1e-15);
    }

    #[test]
    fn norm_of_constant_plus_ideal() {
        // 1 − e₀₀ has norm 1; 2·1 + corner(−e₀₀) has norm 2.
        let p = z().mul(&z().adjoint()).unwrap();
        assert!((p.norm_const_plus_ideal().unwrap() - 1.0).abs() < 1e-12);
        let q = Op::one(1).scale(Complex::new(2.0, 0.0)).add(&Op::ideal(-CMat::unit(1, 0, 0), 1)).unwrap();
        assert!((q.norm_const_plus_ideal().unwrap() - 2.0).abs() < 1e-12);
    }
}
