//! The generic boundary runs, Q-side class extraction, and the invariance
//! suites on both concrete models.

use nccell_core::boundary::{
    boundary_map, class_of_q_rep, cone_cell, exponential_cell, index_cell, invariance_suite,
    BoundaryInput, ModelId, QRep,
};
use nccell_core::linalg::{random_projection, CMat};
use nccell_core::reps::{apply_genmap, g2st_rep_from_contraction, genmap_by_name, pres_arc, Rep};
use nccell_core::toeplitz::{fredholm_oracle, index_boundary, parse_symbol, ToepG2Rep, ToepOp};
use num_traits::ToPrimitive;

type M = CMat<f64>;

#[test]
fn index_cell_boundary_runs() {
    let cell = index_cell();
    let u = parse_symbol::<f64>("z").unwrap();
    let out = boundary_map(&cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(u)).unwrap();
    assert_eq!(out.input_class, 1, "winding of z");
    assert_eq!(out.output_class, -1);
    assert!(out.diagnostics.drift <= 1e-9);
    // Sign convention: output = −input.
    assert_eq!(out.output_class, -out.input_class);
}

#[test]
fn index_cell_matches_oracle_for_every_spec_symbol() {
    let cell = index_cell();
    for src in ["z^-3", "z^-2", "z^-1", "1", "z", "z^2", "z^3", "bott(1,2)", "bott(2,2)"] {
        let u = parse_symbol::<f64>(src).unwrap();
        let out =
            boundary_map(&cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(u.clone()))
                .unwrap();
        assert_eq!(out.output_class, fredholm_oracle(&u).unwrap(), "{src}");
        assert_eq!(out.output_class, -out.input_class, "{src} sign convention");
    }
}

#[test]
fn exponential_cell_boundary_runs() {
    let cell = exponential_cell();
    // Zero rep → class 0.
    let zero = Rep::<f64>::zero_of(pres_arc("qC"), 3);
    let out = boundary_map(&cell, ModelId::ConeGrid, &BoundaryInput::QcRep(zero)).unwrap();
    assert_eq!(out.input_class, 0);
    assert_eq!(out.output_class, 0);

    // (0, p, 0) with rank 2 → class 2.
    let p = random_projection::<f64>(5, 2, 9).unwrap();
    let mut images = std::collections::BTreeMap::new();
    images.insert("h0".to_string(), M::zeros(5, 5));
    images.insert("k0".to_string(), p);
    images.insert("x0".to_string(), M::zeros(5, 5));
    let rep = Rep::new(pres_arc("qC"), images).unwrap();
    let out = boundary_map(&cell, ModelId::ConeGrid, &BoundaryInput::QcRep(rep)).unwrap();
    assert_eq!(out.input_class, 2);
    assert_eq!(out.output_class, 2);
    assert_eq!(out.output_class, out.input_class, "sign convention: equal");
}

#[test]
fn cone_cell_boundary_runs() {
    let cell = cone_cell(4);
    let p = random_projection::<f64>(4, 3, 2).unwrap();
    let out = boundary_map(&cell, ModelId::ConeGrid, &BoundaryInput::Projection(p)).unwrap();
    assert_eq!(out.input_class, 3);
    assert_eq!(out.output_class, 3);
}

#[test]
fn cell_model_mismatch_rejected() {
    let cell = index_cell();
    let zero = Rep::<f64>::zero_of(pres_arc("qC"), 2);
    let err = boundary_map(&cell, ModelId::Toeplitz, &BoundaryInput::QcRep(zero));
    assert!(err.is_err());
    let u = parse_symbol::<f64>("z").unwrap();
    let err = boundary_map(&exponential_cell(), ModelId::ConeGrid, &BoundaryInput::UnitarySymbol(u));
    assert!(err.is_err());
}

#[test]
fn q_rep_classes() {
    let cell = index_cell();
    // Zero rep → 0.
    let zero = ToepG2Rep {
        h1: ToepOp::<f64>::zero(1),
        k1: ToepOp::zero(1),
        x1: ToepOp::zero(1),
    };
    assert_eq!(class_of_q_rep(&cell, &QRep::ToepG2(zero)).unwrap(), 0);

    // (0, e₀₀-corner, 0) → −1.
    let corner_rep = ToepG2Rep {
        h1: ToepOp::<f64>::zero(1),
        k1: ToepOp::ideal(M::unit(1, 0, 0), 1),
        x1: ToepOp::zero(1),
    };
    assert_eq!(class_of_q_rep(&cell, &QRep::ToepG2(corner_rep)).unwrap(), -1);

    // Output of index_boundary(bott(2,2)) → −2.
    let u = parse_symbol::<f64>("bott(2,2)").unwrap();
    let out = index_boundary(&u).unwrap();
    assert_eq!(class_of_q_rep(&cell, &QRep::ToepG2(out.rep)).unwrap(), -2);
}

#[test]
fn invariance_suites_pass() {
    let report = invariance_suite::<f64>(&index_cell(), ModelId::Toeplitz, 10, 0).unwrap();
    assert!(report.pass, "index failures: {:?}", report.trials.iter().filter(|t| !t.pass).collect::<Vec<_>>());
    let report = invariance_suite::<f64>(&exponential_cell(), ModelId::ConeGrid, 6, 0).unwrap();
    assert!(report.pass, "exp failures: {:?}", report.trials.iter().filter(|t| !t.pass).collect::<Vec<_>>());
    let report = invariance_suite::<f64>(&cone_cell(4), ModelId::ConeGrid, 6, 0).unwrap();
    assert!(report.pass, "cone failures: {:?}", report.trials.iter().filter(|t| !t.pass).collect::<Vec<_>>());
}

/// Composition sanity: the trace pairing of a G2st factory rep equals the
/// trace pairing of its λ-pullback qC rep in doubled dimension (both vanish
/// for matrix representations, where tr(a*a) = tr(aa*)).
#[test]
fn composition_sanity_across_the_lambda_jump() {
    for seed in 0..6u64 {
        let a = nccell_core::linalg::random_contraction::<f64>(4, seed, false);
        let g2 = g2st_rep_from_contraction(&a).unwrap();
        let g2_class = (g2.image("k").trace() - g2.image("h").trace()).re.to_f64().unwrap();
        let lambda = genmap_by_name("lambda").unwrap();
        let qc = apply_genmap(&lambda, &g2).unwrap();
        let qc_class = (qc.image("k0").trace() - qc.image("h0").trace()).re.to_f64().unwrap();
        assert!(
            (g2_class.round() - qc_class.round()).abs() < 0.5,
            "classes differ across the dimension jump"
        );
        assert_eq!(g2_class.round() as i64, 0);
    }
}
