use super::{Presentation, Relation, StarExpr};
use std::collections::{HashMap, HashSet};
use std::fmt;

/// Structural shape of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Unit or scalar only: promotes to any square shape.
    ScalarLike,
    /// Entry level (a d×d matrix once represented).
    Entry,
    /// Block matrix of entry-level expressions.
    Block(usize, usize),
}

/// Validation finding with an expression path like `rel[1].operand[0].block[0][1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

struct Ctx<'a> {
    pres: &'a Presentation,
    gens: HashSet<&'a str>,
    lets: HashMap<&'a str, &'a StarExpr>,
    diags: Vec<Diagnostic>,
}

impl<'a> Ctx<'a> {
    fn diag(&mut self, path: &str, msg: impl Into<String>) {
        self.diags.push(Diagnostic { path: path.to_string(), message: msg.into() });
    }

    /// Shape-check an expression; `None` when a reference is unresolved or
    /// shapes conflict (a diagnostic has been recorded).
    fn shape(&mut self, e: &'a StarExpr, path: &str) -> Option<Shape> {
        match e {
            StarExpr::Unit | StarExpr::Scalar(_) => Some(Shape::ScalarLike),
            StarExpr::Ref(n) => {
                if self.gens.contains(n.as_str()) {
                    Some(Shape::Entry)
                } else if let Some(inner) = self.lets.get(n.as_str()).copied() {
                    self.shape(inner, path)
                } else {
                    self.diag(path, format!("undeclared generator {n}"));
                    None
                }
            }
            StarExpr::Sum(a, b) | StarExpr::Diff(a, b) => {
                let sa = self.shape(a, &format!("{path}.lhs"))?;
                let sb = self.shape(b, &format!("{path}.rhs"))?;
                self.join_additive(sa, sb, path)
            }
            StarExpr::Prod(a, b) => {
                let sa = self.shape(a, &format!("{path}.lhs"))?;
                let sb = self.shape(b, &format!("{path}.rhs"))?;
                match (sa, sb) {
                    (Shape::ScalarLike, s) | (s, Shape::ScalarLike) => Some(s),
                    (Shape::Entry, Shape::Entry) => Some(Shape::Entry),
                    (Shape::Block(r, k1), Shape::Block(k2, c)) => {
                        if k1 == k2 {
                            Some(Shape::Block(r, c))
                        } else {
                            self.diag(path, format!("block product shape mismatch {k1} vs {k2}"));
                            None
                        }
                    }
                    _ => {
                        self.diag(path, "cannot multiply entry and block expressions");
                        None
                    }
                }
            }
            StarExpr::Neg(a) => self.shape(a, path),
            StarExpr::Adj(a) => self.shape(a, path).map(|s| match s {
                Shape::Block(r, c) => Shape::Block(c, r),
                other => other,
            }),
            StarExpr::Block(rows) => {
                if rows.is_empty() || rows[0].is_empty() {
                    self.diag(path, "empty block matrix");
                    return None;
                }
                let width = rows[0].len();
                let mut ok = true;
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != width {
                        self.diag(path, format!("block row {i} has {} entries, expected {width}", row.len()));
                        ok = false;
                    }
                    for (j, entry) in row.iter().enumerate() {
                        let p = format!("{path}.block[{i}][{j}]");
                        match self.shape(entry, &p) {
                            Some(Shape::Block(..)) => {
                                self.diag(&p, "nested block matrix");
                                ok = false;
                            }
                            Some(_) => {}
                            None => ok = false,
                        }
                    }
                }
                ok.then_some(Shape::Block(rows.len(), width))
            }
        }
    }

    fn join_additive(&mut self, a: Shape, b: Shape, path: &str) -> Option<Shape> {
        match (a, b) {
            (Shape::ScalarLike, Shape::ScalarLike) => Some(Shape::ScalarLike),
            (Shape::ScalarLike, Shape::Block(r, c)) | (Shape::Block(r, c), Shape::ScalarLike) => {
                if r == c {
                    Some(Shape::Block(r, c))
                } else {
                    self.diag(path, "scalar added to non-square block");
                    None
                }
            }
            (Shape::ScalarLike, s) | (s, Shape::ScalarLike) => Some(s),
            (Shape::Entry, Shape::Entry) => Some(Shape::Entry),
            (Shape::Block(r1, c1), Shape::Block(r2, c2)) => {
                if (r1, c1) == (r2, c2) {
                    Some(Shape::Block(r1, c1))
                } else {
                    self.diag(path, format!("block sum shape mismatch {r1}x{c1} vs {r2}x{c2}"));
                    None
                }
            }
            _ => {
                self.diag(path, "cannot add entry and block expressions");
                None
            }
        }
    }
}

/// Structural validation. Returns an empty list iff the presentation
/// invariants hold; diagnostics carry expression paths.
pub fn validate_presentation(p: &Presentation) -> Vec<Diagnostic> {
    let mut ctx = Ctx {
        pres: p,
        gens: p.generators.iter().map(|s| s.as_str()).collect(),
        lets: p.lets.iter().map(|(n, e)| (n.as_str(), e)).collect(),
        diags: Vec::new(),
    };

    let mut seen = HashSet::new();
    for g in &p.generators {
        if !seen.insert(g.as_str()) {
            ctx.diag("gen", format!("duplicate generator {g}"));
        }
    }
    for (n, _) in &p.lets {
        if ctx.gens.contains(n.as_str()) {
            ctx.diag("let", format!("let {n} shadows a generator"));
        }
        if !seen.insert(n.as_str()) {
            ctx.diag("let", format!("duplicate binding {n}"));
        }
    }

    // Cycle detection over the let-reference graph.
    let mut cyclic: HashSet<&str> = HashSet::new();
    for (name, _) in &p.lets {
        if has_cycle(name, &ctx.lets, &mut HashSet::new()) {
            cyclic.insert(name.as_str());
        }
    }
    for name in &cyclic {
        ctx.diags.push(Diagnostic {
            path: format!("let {name}"),
            message: format!("cyclic binding {name}"),
        });
    }

    // Shape and scope checks; skip let-shape walks when cyclic to avoid
    // infinite recursion.
    if cyclic.is_empty() {
        for (i, (name, e)) in p.lets.iter().enumerate() {
            ctx.shape(e, &format!("let[{i}] {name}"));
        }
        for (i, rel) in p.relations.iter().enumerate() {
            let ops = rel.operands();
            let mut shapes = Vec::new();
            for (j, op) in ops.iter().enumerate() {
                let path = format!("rel[{i}].operand[{j}]");
                shapes.push(ctx.shape(op, &path));
            }
            if let Relation::Eq(..) = rel {
                if let (Some(Some(sa)), Some(Some(sb))) = (shapes.first(), shapes.get(1)) {
                    let compatible = matches!(
                        (sa, sb),
                        (Shape::ScalarLike, _)
                            | (_, Shape::ScalarLike)
                            | (Shape::Entry, Shape::Entry)
                    ) || matches!((sa, sb), (Shape::Block(r1, c1), Shape::Block(r2, c2)) if r1 == r2 && c1 == c2);
                    if !compatible {
                        ctx.diag(&format!("rel[{i}]"), "eq operand shapes differ");
                    }
                }
            }
        }
    }

    // Unit literals in a nonunital presentation must sit inside a relation
    // context: relations are read in the unitization, so the only offending
    // spots are let-bindings no relation ever uses.
    if !p.unital && cyclic.is_empty() {
        let mut reachable: HashSet<String> = HashSet::new();
        let mut work: Vec<String> = Vec::new();
        for rel in &p.relations {
            for op in rel.operands() {
                op.refs(&mut work);
            }
        }
        while let Some(n) = work.pop() {
            if reachable.insert(n.clone()) {
                if let Some(e) = ctx.lets.get(n.as_str()) {
                    e.refs(&mut work);
                }
            }
        }
        for (i, (name, e)) in p.lets.iter().enumerate() {
            if !reachable.contains(name) && e.contains_unit_like() {
                ctx.diags.push(Diagnostic {
                    path: format!("let[{i}] {name}"),
                    message: format!(
                        "unit literal in nonunital presentation outside a relation context (binding {name} is not used by any relation)"
                    ),
                });
            }
        }
    }

    let _ = ctx.pres;
    ctx.diags
}

fn has_cycle<'a>(
    name: &'a str,
    lets: &HashMap<&'a str, &'a StarExpr>,
    stack: &mut HashSet<&'a str>,
) -> bool {
    if !stack.insert(name) {
        return true;
    }
    if let Some(e) = lets.get(name) {
        let mut refs = Vec::new();
        e.refs(&mut refs);
        for r in refs {
            if let Some((key, _)) = lets.get_key_value(r.as_str()) {
                if has_cycle(key, lets, stack) {
                    stack.remove(name);
                    return true;
                }
            }
        }
    }
    stack.remove(name);
    false
}
