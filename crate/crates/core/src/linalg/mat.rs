use super::{LinalgError, Result};
use crate::scalar::{c_one, c_re, c_zero, Cplx, Scalar};
use num_complex::Complex;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Scalar> fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> CMat<T> {
    /// Validating constructor: rejects NaN/Inf entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Cplx<T>>) -> Result<Self> {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        for (n, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite(n / cols, n % cols));
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<Cplx<T>>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_raw(rows, cols, vec![c_zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c_one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, z: Cplx<T>) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cplx<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_raw(rows, cols, data)
    }

    /// Real diagonal matrix.
    pub fn diag_re(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { c_re(entries[i]) } else { c_zero() })
    }

    pub fn diag(entries: &[Cplx<T>]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { c_zero() })
    }

    /// Matrix unit e_{ij} of size n.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = c_one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Cplx<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, z: Cplx<T>) -> Self {
        Self::from_raw(self.rows, self.cols, self.data.iter().map(|w| w * z).collect())
    }

    pub fn scale_re(&self, x: T) -> Self {
        self.scale(c_re(x))
    }

    pub fn trace(&self) -> Cplx<T> {
        assert!(self.is_square());
        (0..self.rows).fold(c_zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn norm_fro(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.is_zero())
    }

    /// Hermitian deviation ‖M − M*‖_F.
    pub fn herm_defect(&self) -> T {
        (self - &self.adjoint()).norm_fro()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Assemble a block matrix; all blocks must share common dimensions.
    pub fn from_blocks(blocks: &[Vec<CMat<T>>]) -> Self {
        let br = blocks.len();
        let bc = blocks[0].len();
        let h = blocks[0][0].rows;
        let w = blocks[0][0].cols;
        for row in blocks {
            assert_eq!(row.len(), bc, "ragged block matrix");
            for b in row {
                assert_eq!((b.rows, b.cols), (h, w), "uneven blocks");
            }
        }
        Self::from_fn(br * h, bc * w, |i, j| blocks[i / h][j / w][(i % h, j % w)])
    }

    /// Extract the (bi, bj) block of size h×w from a block-partitioned matrix.
    pub fn block(&self, bi: usize, bj: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self[(bi * h + i, bj * w + j)])
    }

    /// Kronecker-style amplification: entries of `small` scale copies of `self`,
    /// so `a.kron_left(e11)` is a ⊗ e₁₁ laid out in block form.
    pub fn kron_left(&self, small: &CMat<T>) -> Self {
        let (d, p, q) = (self.rows, small.rows, small.cols);
        assert!(self.is_square());
        CMat::from_fn(p * d, q * d, |i, j| {
            let (bi, ii) = (i / d, i % d);
            let (bj, jj) = (j / d, j % d);
            small[(bi, bj)] * self[(ii, jj)]
        })
    }

    /// Direct sum diag(self, other).
    pub fn dsum(&self, other: &CMat<T>) -> Self {
        let (r1, c1) = (self.rows, self.cols);
        CMat::from_fn(r1 + other.rows, c1 + other.cols, |i, j| {
            if i < r1 && j < c1 {
                self[(i, j)]
            } else if i >= r1 && j >= c1 {
                other[(i - r1, j - c1)]
            } else {
                c_zero()
            }
        })
    }

    /// Grow to n×n by zero-padding (corner embedding).
    pub fn pad_to(&self, n: usize) -> Self {
        assert!(n >= self.rows && n >= self.cols);
        CMat::from_fn(n, n, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)]
            } else {
                c_zero()
            }
        })
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> Cplx<T> {
        assert!(self.is_square());
        let n = self.rows;
        let mut lu = self.clone();
        let mut det = c_one::<T>();
        for k in 0..n {
            let mut piv = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best.is_zero() {
                return c_zero();
            }
            if piv != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = tmp;
                }
                det = -det;
            }
            let d = lu[(k, k)];
            det *= d;
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                for j in k + 1..n {
                    lu[(i, j)] = lu[(i, j)] - f * lu[(k, j)];
                }
            }
        }
        det
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for CMat<T> {
    type Output = Cplx<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Cplx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for CMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cplx<T> {
        &mut self.data[i * self.cols + j]
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, T: Scalar> $trait<&'a CMat<T>> for &'a CMat<T> {
            type Output = CMat<T>;
            fn $method(self, rhs: &'a CMat<T>) -> CMat<T> {
                assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
                CMat::from_raw(
                    self.rows,
                    self.cols,
                    self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                )
            }
        }
        impl<T: Scalar> $trait<CMat<T>> for CMat<T> {
            type Output = CMat<T>;
            fn $method(self, rhs: CMat<T>) -> CMat<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl<'a, T: Scalar> Mul<&'a CMat<T>> for &'a CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: &'a CMat<T>) -> CMat<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar> Mul<CMat<T>> for CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: CMat<T>) -> CMat<T> {
        self.matmul(&rhs)
    }
}

impl<T: Scalar> Neg for &CMat<T> {
    type Output = CMat<T>;
    fn neg(self) -> CMat<T> {
        CMat::from_raw(self.rows, self.cols, self.data.iter().map(|z| -z).collect())
    }
}

impl<T: Scalar> Neg for CMat<T> {
    type Output = CMat<T>;
    fn neg(self) -> CMat<T> {
        -&self
    }
}

#[allow(unused)]
fn _complex_is_zero<T: Scalar>(z: &Complex<T>) -> bool {
    z.re.is_zero() && z.im.is_zero()
}
