use super::laurent::LaurentPoly;
use super::{Result, ToepError};
use crate::linalg::CMat;
use crate::scalar::Scalar;
use num_complex::Complex;

/// Parse a symbol literal: `z`, `z^-2`, `3.5*z^1 + (0+1i)`, `bott(r,s)`
/// (the unitary (1−P) + zP with P = diag(I_r, 0) in block size s).
pub fn parse_symbol<T: Scalar>(text: &str) -> Result<LaurentPoly<T>> {
    let mut p = SymParser { chars: text.chars().collect(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(ToepError::Parse(format!("trailing input at offset {}", p.pos)));
    }
    Ok(poly)
}

struct SymParser {
    chars: Vec<char>,
    pos: usize,
}

impl SymParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            other => Err(ToepError::Parse(format!("expected `{want}`, found {other:?}"))),
        }
    }

    fn expr<T: Scalar>(&mut self) -> Result<LaurentPoly<T>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = combine(acc, t, false)?;
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = combine(acc, t, true)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: Scalar>(&mut self) -> Result<LaurentPoly<T>> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.bump();
            let f = self.factor()?;
            let (a, b) = same_block(acc, f)?;
            acc = a.mul(&b);
        }
        Ok(acc)
    }

    fn factor<T: Scalar>(&mut self) -> Result<LaurentPoly<T>> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(self.factor::<T>()?.neg())
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('z') => {
                self.bump();
                let exp = if self.peek() == Some('^') {
                    self.bump();
                    self.signed_int()?
                } else {
                    1
                };
                Ok(LaurentPoly::monomial(exp, Complex::new(T::one(), T::zero())))
            }
            Some('b') => {
                for want in ['b', 'o', 't', 't'] {
                    self.expect(want)?;
                }
                self.expect('(')?;
                let r = self.signed_int()? as usize;
                self.expect(',')?;
                let s = self.signed_int()? as usize;
                self.expect(')')?;
                if r > s || s == 0 {
                    return Err(ToepError::Parse(format!("bott({r},{s}) needs 0 ≤ r ≤ s, s ≥ 1")));
                }
                let mut p = CMat::<T>::zeros(s, s);
                for i in 0..r {
                    p[(i, i)] = crate::scalar::c_one();
                }
                Ok(LaurentPoly::bott(&p))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let v = self.number()?;
                let imag = if self.peek() == Some('i') {
                    self.bump();
                    true
                } else {
                    false
                };
                let z = if imag {
                    Complex::new(T::zero(), T::from_f64(v).unwrap())
                } else {
                    Complex::new(T::from_f64(v).unwrap(), T::zero())
                };
                Ok(LaurentPoly::monomial(0, z))
            }
            other => Err(ToepError::Parse(format!("unexpected {other:?} in symbol"))),
        }
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ToepError::Parse("expected integer".into()));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let v: i64 =
            text.parse().map_err(|_| ToepError::Parse(format!("bad integer `{text}`")))?;
        Ok(if neg { -v } else { v })
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '.')
        {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| ToepError::Parse(format!("bad number `{text}`")))
    }
}

fn same_block<T: Scalar>(
    a: LaurentPoly<T>,
    b: LaurentPoly<T>,
) -> Result<(LaurentPoly<T>, LaurentPoly<T>)> {
    let s = a.block().max(b.block());
    Ok((a.promote(s)?, b.promote(s)?))
}

fn combine<T: Scalar>(
    a: LaurentPoly<T>,
    b: LaurentPoly<T>,
    subtract: bool,
) -> Result<LaurentPoly<T>> {
    let (a, b) = same_block(a, b)?;
    Ok(if subtract { a.sub(&b) } else { a.add(&b) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_spec_literals() {
        let z = parse_symbol::<f64>("z").unwrap();
        assert_eq!(z.max_exp(), 1);
        let zm2 = parse_symbol::<f64>("z^-2").unwrap();
        assert_eq!(zm2.min_exp(), -2);
        let mixed = parse_symbol::<f64>("3.5*z^1 + (0+1i)").unwrap();
        assert_eq!(mixed.coeff(1)[(0, 0)].re, 3.5);
        assert_eq!(mixed.coeff(0)[(0, 0)].im, 1.0);
        let bott = parse_symbol::<f64>("bott(1,2)").unwrap();
        assert_eq!(bott.block(), 2);
        assert!(bott.unitarity_residual() < 1e-14);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_symbol::<f64>("z^").is_err());
        assert!(parse_symbol::<f64>("bott(3,2)").is_err());
        assert!(parse_symbol::<f64>("q").is_err());
        assert!(parse_symbol::<f64>("z z").is_err());
    }
}
