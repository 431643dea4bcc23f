//! DSL round-trips, registry integrity, and validation diagnostics.

use nccell_core::presentations::{
    parse_presentation, print_presentation, registry_get, validate_presentation, PresError,
    Relation, REGISTRY_FILES,
};

#[test]
fn shipped_sources_roundtrip_canonically() {
    for (name, file, src) in REGISTRY_FILES {
        let first = parse_presentation(src).unwrap_or_else(|e| panic!("{file}: {e}"));
        let printed = print_presentation(&first);
        let second = parse_presentation(&printed)
            .unwrap_or_else(|e| panic!("{file} reprint: {e}\n{printed}"));
        assert_eq!(first, second, "parse∘print∘parse differs from parse for {name}");
        // Canonical form is a fixed point of print∘parse.
        assert_eq!(print_presentation(&second), printed);
    }
}

#[test]
fn registry_entries_validate_clean() {
    for (name, _, _) in REGISTRY_FILES {
        let p = registry_get(name).unwrap();
        assert!(validate_presentation(&p).is_empty(), "{name} has diagnostics");
    }
    for n in 1..=6 {
        let p = registry_get(&format!("ConeMn({n})")).unwrap();
        assert!(validate_presentation(&p).is_empty());
    }
}

#[test]
fn registry_matches_spec_shapes() {
    let g2st = registry_get("G2st").unwrap();
    assert_eq!(g2st.generators, vec!["h", "k", "x"]);
    assert!(!g2st.unital);
    assert!(g2st.meta.semiprojective);
    assert_eq!(g2st.relations.iter().filter(|r| r.kind() == "proj").count(), 1);

    let qc = registry_get("qC").unwrap();
    assert_eq!(qc.generators, vec!["h0", "k0", "x0"]);
    let kinds: Vec<&str> = qc.relations.iter().map(|r| r.kind()).collect();
    assert_eq!(kinds, vec!["zero", "proj"]);

    let p = registry_get("P").unwrap();
    let kinds: Vec<&str> = p.relations.iter().map(|r| r.kind()).collect();
    assert_eq!(kinds, vec!["zero", "range01"]);
    assert!(p.meta.projective);

    let d = registry_get("D").unwrap();
    assert_eq!(d.generators, vec!["y"]);
    assert!(matches!(d.relations[0], Relation::NormLe(..)));

    let c0 = registry_get("C0_01").unwrap();
    assert_eq!(c0.generators, vec!["x"]);
    assert!(matches!(c0.relations[0], Relation::Unitary(_)));
    // unitary expands to the two unitization equations.
    assert_eq!(c0.expanded_relations().len(), 2);

    let g2nc = registry_get("G2nc").unwrap();
    assert!(g2nc.unital);
    assert_eq!(g2nc.generators, vec!["a", "b", "c"]);
}

#[test]
fn free_presentation_parses() {
    let p = parse_presentation("presentation Free nonunital { gen a; }").unwrap();
    assert_eq!(p.generators.len(), 1);
    assert!(p.relations.is_empty());
}

#[test]
fn undeclared_generator_diagnostic() {
    let err = parse_presentation("presentation Bad nonunital { gen a; rel zero(a * z); }");
    match err {
        Err(PresError::Invalid(diags)) => {
            assert_eq!(diags.len(), 1);
            assert!(diags[0].message.contains("undeclared generator z"), "{diags:?}");
        }
        other => panic!("expected invalid, got {other:?}"),
    }
}

#[test]
fn cyclic_let_diagnostic() {
    let err = parse_presentation("presentation Bad nonunital { gen a; let A = A * A; rel zero(A); }");
    match err {
        Err(PresError::Invalid(diags)) => {
            assert!(diags.iter().any(|d| d.message.contains("cyclic binding A")), "{diags:?}");
        }
        other => panic!("expected invalid, got {other:?}"),
    }
}

#[test]
fn unit_outside_relation_context_diagnostic() {
    // Unused let mentioning the unit in a nonunital presentation.
    let err = parse_presentation(
        "presentation Bad nonunital { gen a; let U = 1 - a; rel selfadj(a); }",
    );
    match err {
        Err(PresError::Invalid(diags)) => {
            assert!(
                diags.iter().any(|d| d.message.contains("outside a relation context")),
                "{diags:?}"
            );
        }
        other => panic!("expected invalid, got {other:?}"),
    }
    // The same let is fine once a relation uses it.
    parse_presentation("presentation Ok nonunital { gen a; let U = 1 - a; rel zero(U * a - a); }")
        .unwrap();
}

#[test]
fn syntax_errors_carry_position() {
    let err = parse_presentation("presentation X nonunital {\n  gen a\n}");
    match err {
        Err(PresError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn block_shape_diagnostics() {
    let err = parse_presentation(
        "presentation Bad nonunital { gen a; rel zero([[a, a], [a]]); }",
    );
    assert!(matches!(err, Err(PresError::Invalid(_))));
    let err = parse_presentation(
        "presentation Bad nonunital { gen a; rel zero([[a], [a]] * [[a], [a]]); }",
    );
    assert!(matches!(err, Err(PresError::Invalid(_))));
}

#[test]
fn proj_expansion_shape() {
    let g2st = registry_get("G2st").unwrap();
    let expanded = g2st.expanded_relations();
    // proj(P) → adj eq + square eq.
    assert_eq!(expanded.len(), 2);
    assert!(expanded.iter().all(|r| r.kind() == "eq"));
}
