//! Exact complex-rational arithmetic for the symbolic layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Gaussian rational a + bi with exact `BigRational` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// Exact value of a decimal literal like `3.5` or `0.125`.
    pub fn from_decimal(text: &str) -> Option<BigRational> {
        let (int_part, frac_part) = match text.split_once('.') {
            Some((a, b)) => (a, b),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        if digits.chars().any(|c| !c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u8).pow(frac_part.len() as u32);
        Some(BigRational::new(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_c64(&self) -> num_complex::Complex<f64> {
        num_complex::Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(
            self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

/// Render a nonnegative rational as an exact decimal when the denominator is
/// 2^a·5^b, falling back to `p/q`.
pub fn rational_str(r: &BigRational) -> String {
    let num = r.numer();
    let den = r.denom();
    if den.is_one() {
        return num.to_string();
    }
    let (two, five, ten) = (BigInt::from(2u8), BigInt::from(5u8), BigInt::from(10u8));
    let mut d = den.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if d.is_one() {
        let shift = twos.max(fives);
        let scale = ten.pow(shift) / den;
        let scaled = (num * scale).abs();
        let s = scaled.to_string();
        let s = format!("{:0>width$}", s, width = shift as usize + 1);
        let split = s.len() - shift as usize;
        let sign = if num.is_negative() { "-" } else { "" };
        format!("{sign}{}.{}", &s[..split], &s[split..])
    } else {
        format!("{num}/{den}")
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", rational_str(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rational_str(&self.im))
        } else if self.im.is_negative() {
            write!(f, "({}-{}i)", rational_str(&self.re), rational_str(&(-self.im.clone())))
        } else {
            write!(f, "({}+{}i)", rational_str(&self.re), rational_str(&self.im))
        }
    }
}
