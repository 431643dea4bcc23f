use super::{Result, ToepError, CIRCLE_SAMPLES};
use crate::linalg::{op_norm, CMat};
use crate::scalar::{Cplx, Scalar};
use num_complex::Complex;
use std::collections::BTreeMap;

/// Matrix-valued Laurent polynomial: finitely many s×s coefficient blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<T: Scalar> {
    block: usize,
    coeffs: BTreeMap<i64, CMat<T>>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn zero(block: usize) -> Self {
        Self { block, coeffs: BTreeMap::new() }
    }

    pub fn one(block: usize) -> Self {
        let mut p = Self::zero(block);
        p.set_coeff(0, CMat::identity(block));
        p
    }

    /// Scalar monomial c·z^k in block size 1.
    pub fn monomial(k: i64, c: Cplx<T>) -> Self {
        let mut p = Self::zero(1);
        p.set_coeff(k, CMat::scalar(1, c));
        p
    }

    /// z·P + (1−P) for a projection P: the Bott-type unitary symbol.
    pub fn bott(p: &CMat<T>) -> Self {
        let s = p.rows();
        let mut out = Self::zero(s);
        out.set_coeff(0, &CMat::identity(s) - p);
        out.set_coeff(1, p.clone());
        out
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn coeff(&self, k: i64) -> CMat<T> {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| CMat::zeros(self.block, self.block))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &CMat<T>)> {
        self.coeffs.iter()
    }

    pub fn set_coeff(&mut self, k: i64, c: CMat<T>) {
        assert_eq!((c.rows(), c.cols()), (self.block, self.block), "coefficient block size");
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(0)
    }

    pub fn max_exp(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Largest absolute exponent.
    pub fn band(&self) -> i64 {
        self.min_exp().abs().max(self.max_exp().abs())
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| op_norm(c).to_f64().unwrap())
            .fold(0.0, f64::max)
    }

    /// Promote a block-1 polynomial to block size s (scalar · identity).
    pub fn promote(&self, s: usize) -> Result<Self> {
        if self.block == s {
            return Ok(self.clone());
        }
        if self.block != 1 {
            return Err(ToepError::BlockMismatch(self.block, s));
        }
        let mut out = Self::zero(s);
        for (&k, c) in &self.coeffs {
            out.set_coeff(k, CMat::scalar(s, c[(0, 0)]));
        }
        Ok(out)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&CMat<T>, &CMat<T>) -> CMat<T>) -> Self {
        assert_eq!(self.block, rhs.block);
        let mut out = Self::zero(self.block);
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(rhs.coeffs.keys()).copied().collect();
        for k in keys {
            out.set_coeff(k, f(&self.coeff(k), &rhs.coeff(k)));
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.block);
        for (&k, c) in &self.coeffs {
            out.set_coeff(k, -c);
        }
        out
    }

    pub fn scale(&self, z: Cplx<T>) -> Self {
        let mut out = Self::zero(self.block);
        for (&k, c) in &self.coeffs {
            out.set_coeff(k, c.scale(z));
        }
        out
    }

    /// Convolution product.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.block, rhs.block);
        let mut out = Self::zero(self.block);
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &rhs.coeffs {
                let k = ka + kb;
                let prod = ca.matmul(cb);
                let cur = out.coeff(k);
                out.set_coeff(k, &cur + &prod);
            }
        }
        out
    }

    /// Adjoint on the circle: coefficient k ↦ coefficient(−k)*.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.block);
        for (&k, c) in &self.coeffs {
            out.set_coeff(-k, c.adjoint());
        }
        out
    }

    /// Evaluate at a point of the unit circle.
    pub fn eval(&self, z: Cplx<T>) -> CMat<T> {
        let mut acc = CMat::zeros(self.block, self.block);
        for (&k, c) in &self.coeffs {
            acc = &acc + &c.scale(z.powi(k as i32));
        }
        acc
    }

    /// sup over sampled circle points of ‖f(z)‖.
    pub fn sup_circle_norm(&self, samples: usize) -> f64 {
        let mut sup = 0.0f64;
        for j in 0..samples {
            let theta = std::f64::consts::TAU * (j as f64) / (samples as f64);
            let z = Complex::new(
                T::from_f64(theta.cos()).unwrap(),
                T::from_f64(theta.sin()).unwrap(),
            );
            sup = sup.max(op_norm(&self.eval(z)).to_f64().unwrap());
        }
        sup
    }

    /// Worst deviation from unitarity over sampled circle points.
    pub fn unitarity_residual(&self) -> f64 {
        let id = CMat::identity(self.block);
        let mut worst = 0.0f64;
        for j in 0..CIRCLE_SAMPLES {
            let theta = std::f64::consts::TAU * (j as f64) / (CIRCLE_SAMPLES as f64);
            let z = Complex::new(
                T::from_f64(theta.cos()).unwrap(),
                T::from_f64(theta.sin()).unwrap(),
            );
            let u = self.eval(z);
            let r1 = op_norm(&(&u.adjoint().matmul(&u) - &id)).to_f64().unwrap();
            let r2 = op_norm(&(&u.matmul(&u.adjoint()) - &id)).to_f64().unwrap();
            worst = worst.max(r1).max(r2);
        }
        worst
    }

    /// Rotate the loop: coefficient k picks up e^{ikθ}; a homotopy of
    /// unitary symbols.
    pub fn rotate(&self, theta: f64) -> Self {
        let mut out = Self::zero(self.block);
        for (&k, c) in &self.coeffs {
            let phase = Complex::from_polar(
                T::one(),
                T::from_f64(theta * k as f64).unwrap(),
            );
            out.set_coeff(k, c.scale(phase));
        }
        out
    }

    /// Conjugate by a constant unitary: f ↦ v* f v.
    pub fn conjugate(&self, v: &CMat<T>) -> Self {
        let va = v.adjoint();
        let mut out = Self::zero(self.block);
        for (&k, c) in &self.coeffs {
            out.set_coeff(k, va.matmul(c).matmul(v));
        }
        out
    }

    /// Direct sum with the constant identity of size `extra` (amplification
    /// u ↦ diag(u, 1)).
    pub fn dsum_identity(&self, extra: usize) -> Self {
        let s = self.block + extra;
        let mut out = Self::zero(s);
        for (&k, c) in &self.coeffs {
            let grown = if k == 0 { c.dsum(&CMat::identity(extra)) } else { c.pad_to(s) };
            out.set_coeff(k, grown);
        }
        if self.coeff(0).is_zero() {
            // Place the identity block even when the original had no
            // constant term.
            let mut c0 = CMat::zeros(s, s);
            for i in self.block..s {
                c0[(i, i)] = crate::scalar::c_one();
            }
            let cur = out.coeff(0);
            out.set_coeff(0, &cur + &c0);
        }
        out
    }
}
