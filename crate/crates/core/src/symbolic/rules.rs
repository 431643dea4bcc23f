use super::poly::{Letter, NCPoly, Word};
use super::{Result, SymError};
use std::cmp::Ordering;

/// Oriented rewrite rule: a word redex replaced by a polynomial.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl Rule {
    pub fn new(lhs: Word, rhs: NCPoly) -> Self {
        Self { lhs, rhs }
    }
}

/// Terminating rewrite system: rules strictly decrease the word order
/// (length first, then lexicographic in the declared generator precedence,
/// unstarred before starred).
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub name: String,
    precedence: Vec<String>,
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(name: &str, precedence: &[&str], rules: Vec<Rule>) -> Result<Self> {
        let sys = Self {
            name: name.to_string(),
            precedence: precedence.iter().map(|s| s.to_string()).collect(),
            rules,
        };
        for rule in &sys.rules {
            if rule.lhs.is_empty() {
                return Err(SymError::RuleOrder(format!("{} -> {}", rule.lhs, rule.rhs)));
            }
            for (w, _) in rule.rhs.terms() {
                if sys.word_cmp(w, &rule.lhs)? != Ordering::Less {
                    return Err(SymError::RuleOrder(format!("{} -> {}", rule.lhs, rule.rhs)));
                }
            }
        }
        Ok(sys)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn rank(&self, letter: &Letter) -> Result<(usize, bool)> {
        match self.precedence.iter().position(|g| *g == letter.name) {
            Some(i) => Ok((i, letter.star)),
            None => Err(SymError::UnknownLetter(letter.name.clone(), self.name.clone())),
        }
    }

    /// (length, lexicographic) word order used for termination.
    pub fn word_cmp(&self, a: &Word, b: &Word) -> Result<Ordering> {
        match a.len().cmp(&b.len()) {
            Ordering::Equal => {}
            other => return Ok(other),
        }
        for (la, lb) in a.0.iter().zip(&b.0) {
            let ra = self.rank(la)?;
            let rb = self.rank(lb)?;
            match ra.cmp(&rb) {
                Ordering::Equal => {}
                other => return Ok(other),
            }
        }
        Ok(Ordering::Equal)
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                let k = rule.lhs.len();
                if pos + k <= w.len() && w.0[pos..pos + k] == rule.lhs.0[..] {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Fully reduce; each step strictly decreases a well-founded multiset
    /// order, so this terminates for validated rule sets.
    pub fn normal_form(&self, poly: &NCPoly) -> Result<NCPoly> {
        // Validate letters up front so scope errors surface even for
        // already-normal input.
        for (w, _) in poly.terms() {
            for l in &w.0 {
                self.rank(l)?;
            }
        }
        let mut current = poly.clone();
        for _step in 0..200_000 {
            let mut redex = None;
            for (w, c) in current.terms() {
                if let Some((pos, ri)) = self.find_redex(w) {
                    redex = Some((w.clone(), c.clone(), pos, ri));
                    break;
                }
            }
            let Some((w, c, pos, ri)) = redex else {
                return Ok(current);
            };
            let rule = &self.rules[ri];
            let prefix = Word(w.0[..pos].to_vec());
            let suffix = Word(w.0[pos + rule.lhs.len()..].to_vec());
            let mut replacement = NCPoly::zero();
            for (rw, rc) in rule.rhs.terms() {
                replacement.add_term(prefix.concat(rw).concat(&suffix), rc.clone() * c.clone());
            }
            current.add_term(w, -c);
            current = current + replacement;
        }
        Err(SymError::StepBound)
    }
}

fn w(letters: &[Letter]) -> Word {
    Word(letters.to_vec())
}

fn selfadj_rules(names: &[&str]) -> Vec<Rule> {
    names
        .iter()
        .map(|n| Rule::new(w(&[Letter::starred(n)]), NCPoly::gen(n)))
        .collect()
}

/// ℂ ∗ C₀(0,1]: a projection p and a positive contraction l.
/// Polynomial content: p² = p* = p, l* = l.
pub fn rules_free_pl() -> RewriteSystem {
    let mut rules = selfadj_rules(&["p", "l"]);
    rules.push(Rule::new(
        w(&[Letter::plain("p"), Letter::plain("p")]),
        NCPoly::gen("p"),
    ));
    RewriteSystem::new("free-pl", &["p", "l"], rules).expect("free-pl is order-decreasing")
}

/// ℂ ∗ ℂ: two projections p0, q0.
pub fn rules_free_pq() -> RewriteSystem {
    let mut rules = selfadj_rules(&["p0", "q0"]);
    for n in ["p0", "q0"] {
        rules.push(Rule::new(w(&[Letter::plain(n), Letter::plain(n)]), NCPoly::gen(n)));
    }
    RewriteSystem::new("free-pq", &["p0", "q0"], rules).expect("free-pq is order-decreasing")
}

/// The standard-picture Grassmannian relations oriented leftmost-longest:
/// h² → h − x*x, k² → k − xx*, kx → xh, and the adjoint companion
/// hx* → x*k. Precedence x < h < k makes all four order-decreasing.
pub fn rules_g2st() -> RewriteSystem {
    let (h, k, x) = (Letter::plain("h"), Letter::plain("k"), Letter::plain("x"));
    let xs = Letter::starred("x");
    let mut rules = selfadj_rules(&["h", "k"]);
    rules.push(Rule::new(
        w(&[h.clone(), h.clone()]),
        NCPoly::gen("h") - NCPoly::word(w(&[xs.clone(), x.clone()])),
    ));
    rules.push(Rule::new(
        w(&[k.clone(), k.clone()]),
        NCPoly::gen("k") - NCPoly::word(w(&[x.clone(), xs.clone()])),
    ));
    rules.push(Rule::new(
        w(&[k.clone(), x.clone()]),
        NCPoly::word(w(&[x.clone(), h.clone()])),
    ));
    rules.push(Rule::new(
        w(&[h.clone(), xs.clone()]),
        NCPoly::word(w(&[xs.clone(), k.clone()])),
    ));
    RewriteSystem::new("g2st", &["x", "h", "k"], rules).expect("g2st is order-decreasing")
}

/// Look up a shipped rule system by its identity-file name.
pub fn rules_by_name(name: &str) -> Result<RewriteSystem> {
    match name {
        "free-pl" => Ok(rules_free_pl()),
        "free-pq" => Ok(rules_free_pq()),
        "g2st" => Ok(rules_g2st()),
        other => Err(SymError::UnknownRules(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_rewriting() {
        let rules = rules_free_pl();
        let p = NCPoly::gen("p");
        let ppp = p.clone() * p.clone() * p.clone();
        let nf = rules.normal_form(&ppp).unwrap();
        assert_eq!(nf, p);
        assert_eq!(rules.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn involution_reversal_reduces() {
        // adj(p·l) = l*·p* → l·p for self-adjoint p, l.
        let rules = rules_free_pl();
        let pl = NCPoly::gen("p") * NCPoly::gen("l");
        let nf = rules.normal_form(&pl.adjoint()).unwrap();
        assert_eq!(nf, NCPoly::gen("l") * NCPoly::gen("p"));
    }

    #[test]
    fn order_violation_rejected() {
        // p → p·p grows the word.
        let bad = Rule::new(
            Word(vec![Letter::plain("p")]),
            NCPoly::gen("p") * NCPoly::gen("p"),
        );
        assert!(matches!(
            RewriteSystem::new("bad", &["p"], vec![bad]),
            Err(SymError::RuleOrder(_))
        ));
    }

    #[test]
    fn unknown_letter_rejected() {
        let rules = rules_free_pl();
        let q = NCPoly::gen("q");
        assert!(matches!(rules.normal_form(&q), Err(SymError::UnknownLetter(..))));
    }

    #[test]
    fn g2st_orientations_validate() {
        // Construction itself asserts the order decrease; touch each system.
        assert_eq!(rules_g2st().rules().len(), 6);
        assert_eq!(rules_free_pl().rules().len(), 3);
        assert_eq!(rules_free_pq().rules().len(), 4);
    }
}
