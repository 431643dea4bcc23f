use super::{parse_presentation, PresError, Presentation, Result};
use std::collections::HashMap;
use std::fmt::Write;
use std::sync::OnceLock;

macro_rules! shipped {
    ($file:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../presentations/", $file))
    };
}

/// Shipped presentation sources, `(registry name, file name, source)`.
pub const REGISTRY_FILES: &[(&str, &str, &str)] = &[
    ("G2nc", "g2nc.ncp", shipped!("g2nc.ncp")),
    ("G2st", "g2st.ncp", shipped!("g2st.ncp")),
    ("qC", "qc.ncp", shipped!("qc.ncp")),
    ("P", "p.ncp", shipped!("p.ncp")),
    ("C0_01", "c0_01.ncp", shipped!("c0_01.ncp")),
    ("D", "d.ncp", shipped!("d.ncp")),
    ("ConeMn(2)", "cone_m2.ncp", shipped!("cone_m2.ncp")),
    ("ConeMn(3)", "cone_m3.ncp", shipped!("cone_m3.ncp")),
];

fn fixed() -> &'static HashMap<&'static str, Presentation> {
    static CACHE: OnceLock<HashMap<&'static str, Presentation>> = OnceLock::new();
    CACHE.get_or_init(|| {
        REGISTRY_FILES
            .iter()
            .map(|(name, file, src)| {
                let p = parse_presentation(src)
                    .unwrap_or_else(|e| panic!("shipped presentation {file} invalid: {e}"));
                (*name, p)
            })
            .collect()
    })
}

/// Names served by [`registry_get`]; `ConeMn(n)` is accepted for any n ≥ 1.
pub fn registry_names() -> Vec<&'static str> {
    vec!["G2nc", "G2st", "qC", "P", "C0_01", "D", "ConeMn(n)"]
}

/// Fetch a built-in presentation by name.
pub fn registry_get(name: &str) -> Result<Presentation> {
    if let Some(p) = fixed().get(name) {
        return Ok(p.clone());
    }
    if let Some(rest) = name.strip_prefix("ConeMn(") {
        if let Some(num) = rest.strip_suffix(')') {
            if let Ok(n) = num.parse::<usize>() {
                if n >= 1 {
                    return parse_presentation(&cone_mn_source(n));
                }
            }
        }
    }
    Err(PresError::UnknownName(name.to_string()))
}

/// DSL source of the cone over M_n: matrix units scaled by one positive
/// contraction. Products collapse against the diagonal sum d, adjoints
/// transpose the indices, and d caps the scale at 1.
pub fn cone_mn_source(n: usize) -> String {
    assert!(n >= 1);
    let t = |i: usize, j: usize| format!("t{}{}", i + 1, j + 1);
    let mut out = String::new();
    let _ = writeln!(out, "# Cone over M_{n}: entries of one positive M_{n}-column scaled by t.");
    let _ = writeln!(out, "presentation ConeM{n} nonunital {{");
    let gens: Vec<String> =
        (0..n).flat_map(|i| (0..n).map(move |j| t(i, j))).collect();
    let _ = writeln!(out, "  gen {};", gens.join(", "));
    let diag: Vec<String> = (0..n).map(|i| t(i, i)).collect();
    let _ = writeln!(out, "  let d = {};", diag.join(" + "));
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let entries: Vec<String> = (0..n).map(|j| t(i, j)).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    let _ = writeln!(out, "  let T = [{}];", rows.join(", "));
    let _ = writeln!(out, "  rel eq(adj(T), T);");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j != k {
                        let _ = writeln!(out, "  rel zero({} * {});", t(i, j), t(k, l));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let _ = writeln!(out, "  rel eq({} * {}, d * {});", t(i, j), t(j, l), t(i, l));
            }
        }
    }
    let _ = writeln!(out, "  rel range01(d);");
    let _ = writeln!(out, "  meta projective;");
    let _ = writeln!(
        out,
        "  meta source \"Winter, Zacharias, Completely positive maps of order zero, Munster J. Math. 2 (2009)\";"
    );
    out.push_str("}\n");
    out
}
