//! Generators-and-relations DSL for universal C*-algebra presentations.
//!
//! Grammar:
//!
//! ```text
//! presentation <ident> (unital|nonunital) "{" (gen-decl | let-decl | rel-decl | meta-decl)* "}"
//! gen-decl  := "gen" ident ("," ident)* ";"
//! let-decl  := "let" ident "=" expr ";"
//! rel-decl  := "rel" constraint ";"
//! meta-decl := "meta" ("projective" | "semiprojective" | "source" string) ";"
//! constraint := proj(e) | selfadj(e) | eq(e, e) | range01(e) | normle(e, c) | zero(e) | unitary(e)
//! expr := + - * adj(..) 1 decimal-literals [i] and block matrices [[e, e], [e, e]]
//! ```
//!
//! `#` starts a line comment. The unit literal is written `1`; in nonunital
//! presentations relations are read in the unitization, so `1` may appear in
//! relation operands (and in let-bindings those operands use).

mod parse;
mod printer;
mod registry;
mod validate;

pub use parse::{parse_expr_str, parse_presentation};
pub use printer::{print_expr, print_presentation};
pub use registry::{cone_mn_source, registry_get, registry_names, REGISTRY_FILES};
pub use validate::{validate_presentation, Diagnostic, Shape};

use crate::exact::GaussRat;
use num_rational::BigRational;
use thiserror::Error;

/// Expression of the free *-algebra over declared generators.
#[derive(Debug, Clone, PartialEq)]
pub enum StarExpr {
    /// Generator or let-binding reference.
    Ref(String),
    /// The unit literal, written `1`.
    Unit,
    /// Exact complex-rational scalar (acts as scalar·unit).
    Scalar(GaussRat),
    Sum(Box<StarExpr>, Box<StarExpr>),
    Diff(Box<StarExpr>, Box<StarExpr>),
    Prod(Box<StarExpr>, Box<StarExpr>),
    Neg(Box<StarExpr>),
    Adj(Box<StarExpr>),
    /// Rectangular block matrix of entry-level expressions.
    Block(Vec<Vec<StarExpr>>),
}

impl StarExpr {
    pub fn sum(a: StarExpr, b: StarExpr) -> StarExpr {
        StarExpr::Sum(Box::new(a), Box::new(b))
    }
    pub fn diff(a: StarExpr, b: StarExpr) -> StarExpr {
        StarExpr::Diff(Box::new(a), Box::new(b))
    }
    pub fn prod(a: StarExpr, b: StarExpr) -> StarExpr {
        StarExpr::Prod(Box::new(a), Box::new(b))
    }
    pub fn adj(a: StarExpr) -> StarExpr {
        StarExpr::Adj(Box::new(a))
    }
    pub fn neg(a: StarExpr) -> StarExpr {
        StarExpr::Neg(Box::new(a))
    }
    pub fn gen(name: &str) -> StarExpr {
        StarExpr::Ref(name.to_string())
    }

    /// Normalization step for the involution: adj(adj(e)) collapses to e.
    pub fn cancel_double_adj(&self) -> StarExpr {
        match self {
            StarExpr::Adj(inner) => match inner.cancel_double_adj() {
                StarExpr::Adj(e) => *e,
                e => StarExpr::Adj(Box::new(e)),
            },
            StarExpr::Sum(a, b) => StarExpr::sum(a.cancel_double_adj(), b.cancel_double_adj()),
            StarExpr::Diff(a, b) => StarExpr::diff(a.cancel_double_adj(), b.cancel_double_adj()),
            StarExpr::Prod(a, b) => StarExpr::prod(a.cancel_double_adj(), b.cancel_double_adj()),
            StarExpr::Neg(a) => StarExpr::neg(a.cancel_double_adj()),
            StarExpr::Block(rows) => StarExpr::Block(
                rows.iter().map(|r| r.iter().map(|e| e.cancel_double_adj()).collect()).collect(),
            ),
            other => other.clone(),
        }
    }

    /// Collect all `Ref` names occurring in the expression.
    pub fn refs(&self, out: &mut Vec<String>) {
        match self {
            StarExpr::Ref(n) => out.push(n.clone()),
            StarExpr::Sum(a, b) | StarExpr::Diff(a, b) | StarExpr::Prod(a, b) => {
                a.refs(out);
                b.refs(out);
            }
            StarExpr::Neg(a) | StarExpr::Adj(a) => a.refs(out),
            StarExpr::Block(rows) => {
                for r in rows {
                    for e in r {
                        e.refs(out);
                    }
                }
            }
            _ => {}
        }
    }

    pub(crate) fn contains_unit_like(&self) -> bool {
        match self {
            StarExpr::Unit => true,
            StarExpr::Scalar(c) => !c.is_zero(),
            StarExpr::Sum(a, b) | StarExpr::Diff(a, b) | StarExpr::Prod(a, b) => {
                a.contains_unit_like() || b.contains_unit_like()
            }
            StarExpr::Neg(a) | StarExpr::Adj(a) => a.contains_unit_like(),
            StarExpr::Block(rows) => rows.iter().flatten().any(|e| e.contains_unit_like()),
            StarExpr::Ref(_) => false,
        }
    }
}

/// Relation constraint over [`StarExpr`] operands.
#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    Proj(StarExpr),
    SelfAdj(StarExpr),
    Eq(StarExpr, StarExpr),
    Range01(StarExpr),
    NormLe(StarExpr, BigRational),
    Zero(StarExpr),
    Unitary(StarExpr),
}

impl Relation {
    /// Operands, for scope walks.
    pub fn operands(&self) -> Vec<&StarExpr> {
        match self {
            Relation::Proj(e)
            | Relation::SelfAdj(e)
            | Relation::Range01(e)
            | Relation::NormLe(e, _)
            | Relation::Zero(e)
            | Relation::Unitary(e) => vec![e],
            Relation::Eq(a, b) => vec![a, b],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Relation::Proj(_) => "proj",
            Relation::SelfAdj(_) => "selfadj",
            Relation::Eq(..) => "eq",
            Relation::Range01(_) => "range01",
            Relation::NormLe(..) => "normle",
            Relation::Zero(_) => "zero",
            Relation::Unitary(_) => "unitary",
        }
    }
}

/// Documentation flags carried by a presentation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Meta {
    pub projective: bool,
    pub semiprojective: bool,
    pub source: Option<String>,
}

/// A parsed and validated presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub unital: bool,
    pub generators: Vec<String>,
    pub lets: Vec<(String, StarExpr)>,
    pub relations: Vec<Relation>,
    pub meta: Meta,
}

impl Presentation {
    pub fn let_expr(&self, name: &str) -> Option<&StarExpr> {
        self.lets.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    /// Substitute let-bindings away. Assumes the binding graph is acyclic.
    pub fn resolve(&self, expr: &StarExpr) -> StarExpr {
        match expr {
            StarExpr::Ref(n) => match self.let_expr(n) {
                Some(e) => self.resolve(e),
                None => expr.clone(),
            },
            StarExpr::Sum(a, b) => StarExpr::sum(self.resolve(a), self.resolve(b)),
            StarExpr::Diff(a, b) => StarExpr::diff(self.resolve(a), self.resolve(b)),
            StarExpr::Prod(a, b) => StarExpr::prod(self.resolve(a), self.resolve(b)),
            StarExpr::Neg(a) => StarExpr::neg(self.resolve(a)),
            StarExpr::Adj(a) => StarExpr::adj(self.resolve(a)),
            StarExpr::Block(rows) => StarExpr::Block(
                rows.iter().map(|r| r.iter().map(|e| self.resolve(e)).collect()).collect(),
            ),
            other => other.clone(),
        }
    }

    /// Expand derived constraints to the primitive set {eq, range01, normle}:
    ///
    /// - proj(E)    → eq(adj(E), E), eq(E·E, E)
    /// - selfadj(E) → eq(adj(E), E)
    /// - unitary(E) → eq(adj(E)·E, 1), eq(E·adj(E), 1)
    /// - zero(E)    → eq(E, 0)
    pub fn expanded_relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for rel in &self.relations {
            match rel {
                Relation::Proj(e) => {
                    out.push(Relation::Eq(StarExpr::adj(e.clone()), e.clone()));
                    out.push(Relation::Eq(StarExpr::prod(e.clone(), e.clone()), e.clone()));
                }
                Relation::SelfAdj(e) => {
                    out.push(Relation::Eq(StarExpr::adj(e.clone()), e.clone()));
                }
                Relation::Unitary(e) => {
                    out.push(Relation::Eq(
                        StarExpr::prod(StarExpr::adj(e.clone()), e.clone()),
                        StarExpr::Unit,
                    ));
                    out.push(Relation::Eq(
                        StarExpr::prod(e.clone(), StarExpr::adj(e.clone())),
                        StarExpr::Unit,
                    ));
                }
                Relation::Zero(e) => {
                    out.push(Relation::Eq(e.clone(), StarExpr::Scalar(GaussRat::zero())));
                }
                primitive => out.push(primitive.clone()),
            }
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum PresError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid presentation: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("unknown registry name `{0}`")]
    UnknownName(String),
}

pub type Result<V> = std::result::Result<V, PresError>;
