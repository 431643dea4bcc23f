//! Exact free *-algebra over Gaussian rationals with oriented rewriting.
//!
//! Supports the *-polynomial identity proofs: normal forms modulo a
//! terminating rule set, counterexample certificates, and homomorphic
//! substitution of generator images (entry-level or block matrices).

mod identity;
mod poly;
mod rules;
mod subst;

pub use identity::{parse_identity_file, prove_identity_line, prove_sym, Identity, ProofOutcome};
pub use poly::{expr_to_sym, Letter, NCPoly, PolyMat, SymVal, Word};
pub use rules::{rules_by_name, rules_free_pl, rules_free_pq, rules_g2st, RewriteSystem, Rule};
pub use subst::substitute_genmap;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SymError {
    #[error("rewrite rule `{0}` does not decrease the word order")]
    RuleOrder(String),
    #[error("letter `{0}` not covered by rule system `{1}`")]
    UnknownLetter(String, String),
    #[error("rewriting exceeded the step bound (non-terminating rule set?)")]
    StepBound,
    #[error("missing image for generator `{0}`")]
    MissingImage(String),
    #[error("inconsistent image shapes: {0}")]
    ShapeMismatch(String),
    #[error("expression is not entry-level: {0}")]
    NotEntryLevel(String),
    #[error("unknown rule system `{0}`")]
    UnknownRules(String),
    #[error("identity line malformed: {0}")]
    BadIdentity(String),
    #[error(transparent)]
    Parse(#[from] crate::presentations::PresError),
}

pub type Result<V> = std::result::Result<V, SymError>;

/// Reduce to normal form modulo `rules`; idempotent and terminating for
/// order-decreasing rule sets.
pub fn normal_form(poly: &NCPoly, rules: &RewriteSystem) -> Result<NCPoly> {
    rules.normal_form(poly)
}

/// Decide lhs = rhs modulo `rules`; on failure the reduced difference is the
/// counterexample certificate.
pub fn prove_identity(lhs: &NCPoly, rhs: &NCPoly, rules: &RewriteSystem) -> Result<(bool, NCPoly)> {
    let diff = lhs.clone() - rhs.clone();
    let reduced = rules.normal_form(&diff)?;
    Ok((reduced.is_zero(), reduced))
}
