use super::{Result, SymError};
use crate::exact::GaussRat;
use crate::presentations::StarExpr;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// One letter of a word: a generator, possibly starred.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub name: String,
    pub star: bool,
}

impl Letter {
    pub fn plain(name: &str) -> Self {
        Self { name: name.to_string(), star: false }
    }
    pub fn starred(name: &str) -> Self {
        Self { name: name.to_string(), star: true }
    }
}

/// Finite word in the free *-monoid; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    /// Reversal with stars flipped: (uv)* = v*u*.
    pub fn adjoint(&self) -> Word {
        Word(
            self.0
                .iter()
                .rev()
                .map(|l| Letter { name: l.name.clone(), star: !l.star })
                .collect(),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.star { format!("adj({})", l.name) } else { l.name.clone() })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Exact noncommutative *-polynomial: map word → Gaussian-rational
/// coefficient, with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, GaussRat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::scalar(GaussRat::one())
    }

    pub fn scalar(c: GaussRat) -> Self {
        let mut p = Self::default();
        p.add_term(Word::empty(), c);
        p
    }

    pub fn gen(name: &str) -> Self {
        let mut p = Self::default();
        p.add_term(Word::single(Letter::plain(name)), GaussRat::one());
        p
    }

    pub fn word(w: Word) -> Self {
        let mut p = Self::default();
        p.add_term(w, GaussRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> GaussRat {
        self.terms.get(w).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn add_term(&mut self, w: Word, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.clone() * c.clone());
        }
        out
    }

    /// Adjoint: conjugate coefficients, reverse words with stars flipped.
    pub fn adjoint(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.adjoint(), c.conj());
        }
        out
    }

    /// All generator names used.
    pub fn letters(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .keys()
            .flat_map(|w| w.0.iter().map(|l| l.name.clone()))
            .collect();
        names.sort();
        names.dedup();
        names
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_term(w, c);
        }
        out
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_term(w, -c);
        }
        out
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in self.terms {
            out.add_term(w, -c);
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Rectangular matrix of polynomials (blockwise expansion of amplified
/// relations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<NCPoly>,
}

impl PolyMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![NCPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = NCPoly::unit();
        }
        m
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = NCPoly::scalar(c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<NCPoly>>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged PolyMat");
        Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn adjoint(&self) -> PolyMat {
        let mut out = PolyMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].adjoint();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows, "PolyMat product shape mismatch");
        let mut out = PolyMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = self[(i, k)].clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.clone() + b.clone();
        }
        out
    }

    pub fn sub(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a = a.clone() - b.clone();
        }
        out
    }

    pub fn neg(&self) -> PolyMat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = -e.clone();
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &NCPoly)> {
        self.entries.iter().enumerate().map(|(n, p)| ((n / self.cols, n % self.cols), p))
    }
}

impl std::ops::Index<(usize, usize)> for PolyMat {
    type Output = NCPoly;
    fn index(&self, (i, j): (usize, usize)) -> &NCPoly {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut NCPoly {
        &mut self.entries[i * self.cols + j]
    }
}

/// Shape-polymorphic value of a symbolic expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymVal {
    /// Scalar c·1, promotable to any square shape.
    Scalar(GaussRat),
    /// Entry-level polynomial.
    Poly(NCPoly),
    /// Block matrix of entry-level polynomials.
    Mat(PolyMat),
}

impl SymVal {
    /// Collapse to an entry-level polynomial; scalars become c·unit.
    pub fn into_poly(self) -> Result<NCPoly> {
        match self {
            SymVal::Scalar(c) => Ok(NCPoly::scalar(c)),
            SymVal::Poly(p) => Ok(p),
            SymVal::Mat(_) => Err(SymError::NotEntryLevel("block matrix value".into())),
        }
    }

    pub fn adjoint(&self) -> SymVal {
        match self {
            SymVal::Scalar(c) => SymVal::Scalar(c.conj()),
            SymVal::Poly(p) => SymVal::Poly(p.adjoint()),
            SymVal::Mat(m) => SymVal::Mat(m.adjoint()),
        }
    }
}

fn combine(
    a: SymVal,
    b: SymVal,
    op: impl Fn(NCPoly, NCPoly) -> NCPoly,
    mat_op: impl Fn(&PolyMat, &PolyMat) -> PolyMat,
    is_mul: bool,
) -> Result<SymVal> {
    use SymVal::*;
    Ok(match (a, b) {
        (Scalar(x), Scalar(y)) => {
            if is_mul {
                Scalar(x * y)
            } else {
                Scalar(op(NCPoly::scalar(x), NCPoly::scalar(y)).coeff(&Word::empty()))
            }
        }
        (Scalar(x), Poly(p)) => {
            if is_mul {
                Poly(p.scale(&x))
            } else {
                Poly(op(NCPoly::scalar(x), p))
            }
        }
        (Poly(p), Scalar(x)) => {
            if is_mul {
                Poly(p.scale(&x))
            } else {
                Poly(op(p, NCPoly::scalar(x)))
            }
        }
        (Poly(p), Poly(q)) => Poly(op(p, q)),
        (Scalar(x), Mat(m)) => {
            if m.rows != m.cols && !is_mul {
                return Err(SymError::ShapeMismatch("scalar with non-square block".into()));
            }
            let s = PolyMat::scalar(m.rows, x);
            Mat(mat_op(&s, &m))
        }
        (Mat(m), Scalar(x)) => {
            if m.rows != m.cols && !is_mul {
                return Err(SymError::ShapeMismatch("scalar with non-square block".into()));
            }
            let s = PolyMat::scalar(m.cols, x);
            Mat(mat_op(&m, &s))
        }
        (Mat(m), Mat(n)) => {
            if is_mul {
                if m.cols != n.rows {
                    return Err(SymError::ShapeMismatch(format!(
                        "{}x{} * {}x{}",
                        m.rows, m.cols, n.rows, n.cols
                    )));
                }
            } else if (m.rows, m.cols) != (n.rows, n.cols) {
                return Err(SymError::ShapeMismatch(format!(
                    "{}x{} vs {}x{}",
                    m.rows, m.cols, n.rows, n.cols
                )));
            }
            Mat(mat_op(&m, &n))
        }
        (Poly(_), Mat(_)) | (Mat(_), Poly(_)) => {
            return Err(SymError::ShapeMismatch("entry combined with block".into()))
        }
    })
}

/// Interpret a [`StarExpr`] in the free *-algebra. `Ref` names become
/// generators; resolve let-bindings before calling.
pub fn expr_to_sym(expr: &StarExpr) -> Result<SymVal> {
    Ok(match expr {
        StarExpr::Ref(n) => SymVal::Poly(NCPoly::gen(n)),
        StarExpr::Unit => SymVal::Scalar(GaussRat::one()),
        StarExpr::Scalar(c) => SymVal::Scalar(c.clone()),
        StarExpr::Sum(a, b) => combine(
            expr_to_sym(a)?,
            expr_to_sym(b)?,
            |p, q| p + q,
            |m, n| m.add(n),
            false,
        )?,
        StarExpr::Diff(a, b) => combine(
            expr_to_sym(a)?,
            expr_to_sym(b)?,
            |p, q| p - q,
            |m, n| m.sub(n),
            false,
        )?,
        StarExpr::Prod(a, b) => combine(
            expr_to_sym(a)?,
            expr_to_sym(b)?,
            |p, q| p * q,
            |m, n| m.matmul(n),
            true,
        )?,
        StarExpr::Neg(a) => match expr_to_sym(a)? {
            SymVal::Scalar(c) => SymVal::Scalar(-c),
            SymVal::Poly(p) => SymVal::Poly(-p),
            SymVal::Mat(m) => SymVal::Mat(m.neg()),
        },
        StarExpr::Adj(a) => expr_to_sym(a)?.adjoint(),
        StarExpr::Block(rows) => {
            let mut prows = Vec::with_capacity(rows.len());
            for row in rows {
                let mut prow = Vec::with_capacity(row.len());
                for e in row {
                    prow.push(expr_to_sym(e)?.into_poly()?);
                }
                prows.push(prow);
            }
            SymVal::Mat(PolyMat::from_rows(prows))
        }
    })
}
