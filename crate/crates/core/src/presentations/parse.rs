use super::{Meta, PresError, Presentation, Relation, Result, StarExpr};
use crate::exact::GaussRat;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Number { text: String, imag: bool },
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Assign,
    EqEq,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Lexed {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const RESERVED: &[&str] = &[
    "presentation", "unital", "nonunital", "gen", "let", "rel", "meta", "adj", "proj", "selfadj",
    "eq", "range01", "normle", "zero", "unitary", "modulo",
];

pub(crate) fn lex(src: &str) -> Result<Vec<Lexed>> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    macro_rules! err {
        ($($arg:tt)*) => {
            return Err(PresError::Syntax { line, col, msg: format!($($arg)*) })
        };
    }
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut push = |tok: Tok| toks.push(Lexed { tok, line: tline, col: tcol });
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c2) = chars.peek() {
                    if c2 == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '"' => {
                chars.next();
                col += 1;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            col += 1;
                            break;
                        }
                        Some('\n') | None => err!("unterminated string"),
                        Some(c2) => {
                            s.push(c2);
                            col += 1;
                        }
                    }
                }
                push(Tok::Str(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_alphanumeric() || c2 == '_' {
                        s.push(c2);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                push(Tok::Ident(s));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                let mut seen_dot = false;
                while let Some(&c2) = chars.peek() {
                    if c2.is_ascii_digit() || (c2 == '.' && !seen_dot) {
                        if c2 == '.' {
                            seen_dot = true;
                        }
                        s.push(c2);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let imag = matches!(chars.peek(), Some('i'));
                if imag {
                    chars.next();
                    col += 1;
                }
                push(Tok::Number { text: s, imag });
            }
            '=' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    push(Tok::EqEq);
                } else {
                    push(Tok::Assign);
                }
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    other => err!("unexpected character `{other}`"),
                };
                chars.next();
                col += 1;
                push(tok);
            }
        }
    }
    toks.push(Lexed { tok: Tok::Eof, line, col });
    Ok(toks)
}

pub(crate) struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    pub fn new(toks: Vec<Lexed>) -> Self {
        Self { toks, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].line, self.toks[self.pos].col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<V>(&self, msg: impl Into<String>) -> Result<V> {
        let (line, col) = self.here();
        Err(PresError::Syntax { line, col, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {:?}", self.peek()))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected {what}, found {other:?}")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => self.error(format!("expected `{kw}`, found {other:?}")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    /// Nonnegative rational literal: decimal, or `p/q` for reparse of
    /// programmatic values.
    fn rational(&mut self) -> Result<BigRational> {
        match self.peek().clone() {
            Tok::Number { text, imag: false } => {
                self.bump();
                let Some(r) = GaussRat::from_decimal(&text) else {
                    return self.error(format!("bad number literal `{text}`"));
                };
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Number { text: den, imag: false } => {
                            self.bump();
                            let Some(d) = GaussRat::from_decimal(&den) else {
                                return self.error(format!("bad denominator `{den}`"));
                            };
                            if d.is_zero() {
                                return self.error("zero denominator");
                            }
                            Ok(r / d)
                        }
                        other => self.error(format!("expected denominator, found {other:?}")),
                    }
                } else {
                    Ok(r)
                }
            }
            other => self.error(format!("expected number, found {other:?}")),
        }
    }

    pub fn expr(&mut self) -> Result<StarExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = StarExpr::sum(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = StarExpr::diff(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<StarExpr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = StarExpr::prod(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<StarExpr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(StarExpr::neg(self.factor()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<StarExpr> {
        match self.peek().clone() {
            Tok::Number { text, imag } => {
                self.bump();
                if !imag && text == "1" && *self.peek() != Tok::Slash {
                    return Ok(StarExpr::Unit);
                }
                let Some(mut r) = GaussRat::from_decimal(&text) else {
                    return self.error(format!("bad number literal `{text}`"));
                };
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Number { text: den, imag: false } => {
                            self.bump();
                            let Some(d) = GaussRat::from_decimal(&den) else {
                                return self.error(format!("bad denominator `{den}`"));
                            };
                            if d.is_zero() {
                                return self.error("zero denominator");
                            }
                            r /= d;
                        }
                        other => {
                            return self.error(format!("expected denominator, found {other:?}"))
                        }
                    }
                }
                let c = if imag {
                    GaussRat::new(BigRational::from_integer(0.into()), r)
                } else {
                    GaussRat::new(r, BigRational::from_integer(0.into()))
                };
                Ok(StarExpr::Scalar(c))
            }
            Tok::Ident(name) => {
                if name == "adj" {
                    self.bump();
                    self.expect(Tok::LParen, "`(` after adj")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(StarExpr::adj(inner))
                } else if RESERVED.contains(&name.as_str()) {
                    self.error(format!("reserved word `{name}` in expression"))
                } else {
                    self.bump();
                    Ok(StarExpr::Ref(name))
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::LBracket => self.block(),
            other => self.error(format!("expected expression, found {other:?}")),
        }
    }

    fn block(&mut self) -> Result<StarExpr> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket, "`[` opening a block row")?;
            let mut row = vec![self.expr()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                row.push(self.expr()?);
            }
            self.expect(Tok::RBracket, "`]` closing a block row")?;
            rows.push(row);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBracket, "`]` closing the block")?;
        Ok(StarExpr::Block(rows))
    }

    pub fn relation(&mut self) -> Result<Relation> {
        let kind = self.expect_ident("constraint name")?;
        self.expect(Tok::LParen, "`(`")?;
        let rel = match kind.as_str() {
            "proj" => Relation::Proj(self.expr()?),
            "selfadj" => Relation::SelfAdj(self.expr()?),
            "range01" => Relation::Range01(self.expr()?),
            "zero" => Relation::Zero(self.expr()?),
            "unitary" => Relation::Unitary(self.expr()?),
            "eq" => {
                let lhs = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let rhs = self.expr()?;
                Relation::Eq(lhs, rhs)
            }
            "normle" => {
                let e = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let bound = self.rational()?;
                if bound.is_negative() {
                    return self.error("normle bound must be nonnegative");
                }
                Relation::NormLe(e, bound)
            }
            other => return self.error(format!("unknown constraint `{other}`")),
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(rel)
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect_keyword("presentation")?;
        let name = self.expect_ident("presentation name")?;
        let unital = if self.at_keyword("unital") {
            self.bump();
            true
        } else if self.at_keyword("nonunital") {
            self.bump();
            false
        } else {
            return self.error("expected `unital` or `nonunital`");
        };
        self.expect(Tok::LBrace, "`{`")?;
        let mut p = Presentation {
            name,
            unital,
            generators: Vec::new(),
            lets: Vec::new(),
            relations: Vec::new(),
            meta: Meta::default(),
        };
        loop {
            if *self.peek() == Tok::RBrace {
                self.bump();
                break;
            }
            if self.at_keyword("gen") {
                self.bump();
                loop {
                    let g = self.expect_ident("generator name")?;
                    if RESERVED.contains(&g.as_str()) {
                        return self.error(format!("reserved word `{g}` as generator"));
                    }
                    p.generators.push(g);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi, "`;`")?;
            } else if self.at_keyword("let") {
                self.bump();
                let name = self.expect_ident("let name")?;
                if RESERVED.contains(&name.as_str()) {
                    return self.error(format!("reserved word `{name}` as let name"));
                }
                self.expect(Tok::Assign, "`=`")?;
                let e = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                p.lets.push((name, e));
            } else if self.at_keyword("rel") {
                self.bump();
                let r = self.relation()?;
                self.expect(Tok::Semi, "`;`")?;
                p.relations.push(r);
            } else if self.at_keyword("meta") {
                self.bump();
                match self.peek().clone() {
                    Tok::Ident(s) if s == "projective" => {
                        self.bump();
                        p.meta.projective = true;
                    }
                    Tok::Ident(s) if s == "semiprojective" => {
                        self.bump();
                        p.meta.semiprojective = true;
                    }
                    Tok::Ident(s) if s == "source" => {
                        self.bump();
                        match self.peek().clone() {
                            Tok::Str(text) => {
                                self.bump();
                                p.meta.source = Some(text);
                            }
                            other => {
                                return self.error(format!("expected string, found {other:?}"))
                            }
                        }
                    }
                    other => return self.error(format!("unknown meta flag {other:?}")),
                }
                self.expect(Tok::Semi, "`;`")?;
            } else {
                return self.error(format!(
                    "expected `gen`, `let`, `rel`, `meta` or `}}`, found {:?}",
                    self.peek()
                ));
            }
        }
        Ok(p)
    }
}

/// Parse one presentation from DSL source and validate it.
pub fn parse_presentation(src: &str) -> Result<Presentation> {
    let mut parser = Parser::new(lex(src)?);
    let p = parser.presentation()?;
    if !parser.at_eof() {
        return parser.error("trailing input after presentation");
    }
    let diags = super::validate_presentation(&p);
    if diags.is_empty() {
        Ok(p)
    } else {
        Err(PresError::Invalid(diags))
    }
}

/// Parse a standalone expression (identity files, tests, CLI).
pub fn parse_expr_str(src: &str) -> Result<StarExpr> {
    let mut parser = Parser::new(lex(src)?);
    let e = parser.expr()?;
    if !parser.at_eof() {
        return parser.error("trailing input after expression");
    }
    Ok(e)
}
