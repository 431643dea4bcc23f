//! Homotopy families: the two-segment null homotopy of id ⊕ η and the
//! partial-isometry path from λ∘ρ to id ⊗ e₁₁.

use nccell_core::linalg::{herm_eig, random_contraction, CMat};
use nccell_core::reps::{
    apply_genmap, check_relations, g2st_rep_from_contraction, genmap_by_name,
    lambda_rho_homotopy_at, null_homotopy_at, null_homotopy_first, null_homotopy_second, Rep,
};

type M = CMat<f64>;

fn factory(d: usize, seed: u64) -> Rep<f64> {
    g2st_rep_from_contraction(&random_contraction::<f64>(d, seed, false)).unwrap()
}

#[test]
fn null_homotopy_endpoints() {
    let rep = factory(4, 3);
    let (h, k, x) = (rep.image("h"), rep.image("k"), rep.image("x"));
    let z = M::zeros(4, 4);

    // s = 0 is exactly the id ⊕ η diagonal pair.
    let start = null_homotopy_at(&rep, 0.0).unwrap();
    let want_h = M::from_blocks(&[vec![h.clone(), z.clone()], vec![z.clone(), k.clone()]]);
    let want_k = M::from_blocks(&[vec![k.clone(), z.clone()], vec![z.clone(), h.clone()]]);
    let want_x = M::from_blocks(&[vec![x.clone(), z.clone()], vec![z.clone(), x.adjoint()]]);
    assert!((start.image("h") - &want_h).max_abs() <= 1e-10);
    assert!((start.image("k") - &want_k).max_abs() <= 1e-10);
    assert!((start.image("x") - &want_x).max_abs() <= 1e-10);

    // s = 2 is the zero representation.
    let end = null_homotopy_at(&rep, 2.0).unwrap();
    for g in ["h", "k", "x"] {
        assert!(end.image(g).max_abs() <= 1e-12, "{g} nonzero at s = 2");
    }

    // Out-of-range clock rejected.
    assert!(null_homotopy_at(&rep, -0.1).is_err());
    assert!(null_homotopy_at(&rep, 2.1).is_err());
}

#[test]
fn null_homotopy_junction_matches() {
    // X_{α=0} uses √(xx*), √(x*x); X_{γ=1} uses √(k−k²), √(h−h²). They agree
    // because the factory rep satisfies x*x = h − h², xx* = k − k².
    let rep = factory(5, 2);
    let a = null_homotopy_first(&rep, 0.0).unwrap();
    let b = null_homotopy_second(&rep, 1.0).unwrap();
    let gap = a.distance(&b);
    assert!(gap <= 1e-8, "junction mismatch {gap}");
}

#[test]
fn null_homotopy_relations_along_grid() {
    let d = 6;
    let tol = 1e-7 * (d as f64).sqrt();
    for seed in [0u64, 1, 2] {
        let rep = factory(d, seed);
        for j in 0..=100 {
            let s = 2.0 * (j as f64) / 100.0;
            let ht = null_homotopy_at(&rep, s).unwrap();
            let report = check_relations(&ht, tol).unwrap();
            assert!(
                report.pass,
                "seed {seed} s={s}: residual {}",
                report.worst_residual()
            );
        }
    }
}

#[test]
fn lambda_rho_endpoints() {
    let rep = factory(4, 7);

    // t = 0 equals the ρ-after-λ pullback exactly (same arithmetic path).
    let lambda = genmap_by_name("lambda").unwrap();
    let rho = genmap_by_name("rho").unwrap();
    let qc = apply_genmap(&lambda, &rep).unwrap();
    let pulled = apply_genmap(&rho, &qc).unwrap();
    let at0 = lambda_rho_homotopy_at(&rep, 0.0).unwrap();
    assert_eq!(at0.distance(&pulled), 0.0, "t = 0 differs from λ∘ρ pullback");

    // t = 1 is id ⊗ e₁₁ to 1e−10.
    let at1 = lambda_rho_homotopy_at(&rep, 1.0).unwrap();
    for g in ["h", "k", "x"] {
        let want = rep.image(g).kron_left(&M::unit(2, 0, 0));
        assert!((at1.image(g) - &want).max_abs() <= 1e-10, "{g} at t = 1");
    }
}

#[test]
fn lambda_rho_relations_along_grid() {
    for seed in [0u64, 5] {
        let rep = factory(5, seed);
        for j in 0..=100 {
            let t = (j as f64) / 100.0;
            let ht = lambda_rho_homotopy_at(&rep, t).unwrap();
            let report = check_relations(&ht, 1e-8).unwrap();
            assert!(
                report.pass,
                "seed {seed} t={t}: residual {}",
                report.worst_residual()
            );
        }
    }
}

#[test]
fn lambda_rho_scalar_midpoint_by_hand() {
    // d = 1, a = 0 factory rep: h = k = 1, x = 0. At t = 1/2 the k-image is
    // 1 ⊗ |w*| = ww*, a rank-one projection: eigenvalues {0, 1}.
    let rep = g2st_rep_from_contraction(&M::zeros(1, 1)).unwrap();
    let ht = lambda_rho_homotopy_at(&rep, 0.5).unwrap();
    let eig = herm_eig(ht.image("k")).unwrap();
    assert!((eig.eigenvalues[0] - 0.0).abs() < 1e-12);
    assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
    let report = check_relations(&ht, 1e-12).unwrap();
    assert!(report.pass, "scalar case should be near-exact");
}

#[test]
fn reverse_homotopy_on_qc_side() {
    // (ρ⊗id)∘λ ≃ id⊗e₁₁ in M₂(qC): verified numerically along the grid.
    use nccell_core::linalg::random_projection;
    use nccell_core::reps::{qc_rep_from_projections, rho_lambda_homotopy_at};
    let p = random_projection::<f64>(4, 2, 61).unwrap();
    let q = random_projection::<f64>(4, 1, 62).unwrap();
    let rep = qc_rep_from_projections(&p, &q).unwrap();

    for j in 0..=100 {
        let t = (j as f64) / 100.0;
        let ht = rho_lambda_homotopy_at(&rep, t).unwrap();
        let report = check_relations(&ht, 1e-8).unwrap();
        assert!(report.pass, "t={t}: residual {}", report.worst_residual());
    }

    // Endpoints: t = 0 places the generators at e11/e22/e21; t = 1 at e11.
    let at0 = rho_lambda_homotopy_at(&rep, 0.0).unwrap();
    assert_eq!(at0.image("h0").block(0, 0, 4, 4), rep.image("h0").clone());
    assert_eq!(at0.image("k0").block(1, 1, 4, 4), rep.image("k0").clone());
    assert_eq!(at0.image("x0").block(1, 0, 4, 4), rep.image("x0").clone());
    let at1 = rho_lambda_homotopy_at(&rep, 1.0).unwrap();
    for g in ["h0", "k0", "x0"] {
        let want = rep.image(g).kron_left(&M::unit(2, 0, 0));
        assert!((at1.image(g) - &want).max_abs() <= 1e-10, "{g} at t=1");
    }
}
