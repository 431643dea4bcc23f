use super::{Presentation, Relation, StarExpr};
use crate::exact::rational_str;
use num_traits::{Signed, Zero};
use std::fmt::Write;

/// Canonical expression rendering with minimal parentheses.
pub fn print_expr(e: &StarExpr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, 0);
    s
}

fn write_expr(out: &mut String, e: &StarExpr, prec: u8) {
    match e {
        StarExpr::Ref(n) => out.push_str(n),
        StarExpr::Unit => out.push('1'),
        StarExpr::Scalar(c) => {
            if c.is_real() && !c.re.is_negative() {
                out.push_str(&rational_str(&c.re));
            } else if c.re.is_zero() && !c.im.is_negative() {
                let _ = write!(out, "{}i", rational_str(&c.im));
            } else {
                // Negative or mixed scalars re-enter through the expression
                // grammar: -2, (1+2i), (1-2i).
                let _ = write!(out, "{c}");
            }
        }
        StarExpr::Sum(a, b) => {
            let wrap = prec > 1;
            if wrap {
                out.push('(');
            }
            write_expr(out, a, 1);
            out.push_str(" + ");
            write_expr(out, b, 2);
            if wrap {
                out.push(')');
            }
        }
        StarExpr::Diff(a, b) => {
            let wrap = prec > 1;
            if wrap {
                out.push('(');
            }
            write_expr(out, a, 1);
            out.push_str(" - ");
            write_expr(out, b, 2);
            if wrap {
                out.push(')');
            }
        }
        StarExpr::Prod(a, b) => {
            let wrap = prec > 2;
            if wrap {
                out.push('(');
            }
            write_expr(out, a, 2);
            out.push_str(" * ");
            write_expr(out, b, 3);
            if wrap {
                out.push(')');
            }
        }
        StarExpr::Neg(a) => {
            let wrap = prec > 2;
            if wrap {
                out.push('(');
            }
            out.push('-');
            write_expr(out, a, 3);
            if wrap {
                out.push(')');
            }
        }
        StarExpr::Adj(a) => {
            out.push_str("adj(");
            write_expr(out, a, 0);
            out.push(')');
        }
        StarExpr::Block(rows) => {
            out.push('[');
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push('[');
                for (j, entry) in row.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    write_expr(out, entry, 0);
                }
                out.push(']');
            }
            out.push(']');
        }
    }
}

fn print_relation(r: &Relation) -> String {
    match r {
        Relation::Proj(e) => format!("proj({})", print_expr(e)),
        Relation::SelfAdj(e) => format!("selfadj({})", print_expr(e)),
        Relation::Eq(a, b) => format!("eq({}, {})", print_expr(a), print_expr(b)),
        Relation::Range01(e) => format!("range01({})", print_expr(e)),
        Relation::NormLe(e, c) => format!("normle({}, {})", print_expr(e), rational_str(c)),
        Relation::Zero(e) => format!("zero({})", print_expr(e)),
        Relation::Unitary(e) => format!("unitary({})", print_expr(e)),
    }
}

/// Canonical presentation rendering; `parse(print(parse(s))) == parse(s)`.
pub fn print_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    let kind = if p.unital { "unital" } else { "nonunital" };
    let _ = writeln!(out, "presentation {} {} {{", p.name, kind);
    if !p.generators.is_empty() {
        let _ = writeln!(out, "  gen {};", p.generators.join(", "));
    }
    for (name, e) in &p.lets {
        let _ = writeln!(out, "  let {} = {};", name, print_expr(e));
    }
    for r in &p.relations {
        let _ = writeln!(out, "  rel {};", print_relation(r));
    }
    if p.meta.projective {
        let _ = writeln!(out, "  meta projective;");
    }
    if p.meta.semiprojective {
        let _ = writeln!(out, "  meta semiprojective;");
    }
    if let Some(src) = &p.meta.source {
        let _ = writeln!(out, "  meta source \"{src}\";");
    }
    out.push_str("}\n");
    out
}
