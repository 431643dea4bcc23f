use super::poly::{expr_to_sym, NCPoly, SymVal};
use super::rules::{rules_by_name, RewriteSystem};
use super::{Result, SymError};
use crate::presentations::parse_expr_str;

/// One line of an identity file: `lhs == rhs  modulo <rules-name>`.
#[derive(Debug, Clone)]
pub struct Identity {
    pub lhs_src: String,
    pub rhs_src: String,
    pub rules_name: String,
    pub line: usize,
}

/// Result of proving one identity.
#[derive(Debug, Clone)]
pub struct ProofOutcome {
    pub ok: bool,
    /// First nonzero reduced entry: (block position, reduced difference).
    pub certificate: Option<((usize, usize), NCPoly)>,
}

/// Parse an identity file: one identity per line, `#` comments and blank
/// lines skipped.
pub fn parse_identity_file(text: &str) -> Result<Vec<Identity>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (body, rules_name) = line
            .rsplit_once("modulo")
            .ok_or_else(|| SymError::BadIdentity(format!("line {}: missing `modulo`", n + 1)))?;
        let (lhs, rhs) = body
            .split_once("==")
            .ok_or_else(|| SymError::BadIdentity(format!("line {}: missing `==`", n + 1)))?;
        out.push(Identity {
            lhs_src: lhs.trim().to_string(),
            rhs_src: rhs.trim().to_string(),
            rules_name: rules_name.trim().to_string(),
            line: n + 1,
        });
    }
    Ok(out)
}

/// Prove one parsed identity, blockwise when the sides are block matrices.
pub fn prove_identity_line(id: &Identity) -> Result<ProofOutcome> {
    let rules = rules_by_name(&id.rules_name)?;
    let lhs = expr_to_sym(&parse_expr_str(&id.lhs_src)?)?;
    let rhs = expr_to_sym(&parse_expr_str(&id.rhs_src)?)?;
    prove_sym(&lhs, &rhs, &rules)
}

/// Prove equality of two shape-polymorphic values modulo `rules`.
pub fn prove_sym(lhs: &SymVal, rhs: &SymVal, rules: &RewriteSystem) -> Result<ProofOutcome> {
    match (lhs, rhs) {
        (SymVal::Mat(a), SymVal::Mat(b)) => {
            if (a.rows, a.cols) != (b.rows, b.cols) {
                return Err(SymError::ShapeMismatch(format!(
                    "{}x{} vs {}x{}",
                    a.rows, a.cols, b.rows, b.cols
                )));
            }
            let diff = a.sub(b);
            for ((i, j), entry) in diff.entries() {
                let reduced = rules.normal_form(entry)?;
                if !reduced.is_zero() {
                    return Ok(ProofOutcome { ok: false, certificate: Some(((i, j), reduced)) });
                }
            }
            Ok(ProofOutcome { ok: true, certificate: None })
        }
        (SymVal::Mat(a), b) | (b, SymVal::Mat(a)) => {
            // Scalar against a square block: compare to c·identity.
            let c = match b {
                SymVal::Scalar(c) => c.clone(),
                SymVal::Poly(_) => {
                    return Err(SymError::ShapeMismatch("entry vs block".into()))
                }
                SymVal::Mat(_) => unreachable!(),
            };
            if a.rows != a.cols {
                return Err(SymError::ShapeMismatch("scalar vs non-square block".into()));
            }
            let scalar = super::poly::PolyMat::scalar(a.rows, c);
            prove_sym(&SymVal::Mat(a.clone()), &SymVal::Mat(scalar), rules)
        }
        (a, b) => {
            let pa = a.clone().into_poly()?;
            let pb = b.clone().into_poly()?;
            let reduced = rules.normal_form(&(pa - pb))?;
            if reduced.is_zero() {
                Ok(ProofOutcome { ok: true, certificate: None })
            } else {
                Ok(ProofOutcome { ok: false, certificate: Some(((0, 0), reduced)) })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_prove_simple_line() {
        let ids = parse_identity_file(
            "# comment\n\n(p - p*l*p) * p == p - p*l*p  modulo free-pl\n",
        )
        .unwrap();
        assert_eq!(ids.len(), 1);
        let out = prove_identity_line(&ids[0]).unwrap();
        assert!(out.ok);
    }

    #[test]
    fn failing_identity_certificate() {
        let ids = parse_identity_file("p * l == l * p  modulo free-pl\n").unwrap();
        let out = prove_identity_line(&ids[0]).unwrap();
        assert!(!out.ok);
        let (_, cert) = out.certificate.unwrap();
        assert_eq!(cert.num_terms(), 2);
    }

    #[test]
    fn malformed_lines_rejected() {
        assert!(parse_identity_file("p == p\n").is_err());
        assert!(parse_identity_file("p modulo free-pl\n").is_err());
        let ids = parse_identity_file("p == p modulo nosuch\n").unwrap();
        assert!(matches!(prove_identity_line(&ids[0]), Err(SymError::UnknownRules(_))));
    }
}
