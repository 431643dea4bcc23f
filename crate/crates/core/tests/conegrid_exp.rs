//! The cone lift, exponential boundary, and cone cell on grid models.

use nccell_core::conegrid::{cone_cell_check, cone_lift_qc, exp_boundary_u, winding};
use nccell_core::linalg::{random_projection, CMat};
use nccell_core::reps::{pres_arc, qc_rep_from_projections, Rep};
use num_complex::Complex;
use std::collections::BTreeMap;

type M = CMat<f64>;

fn qc_rep_from_images(h0: M, k0: M, x0: M) -> Rep<f64> {
    let mut images = BTreeMap::new();
    images.insert("h0".to_string(), h0);
    images.insert("k0".to_string(), k0);
    images.insert("x0".to_string(), x0);
    Rep::new(pres_arc("qC"), images).unwrap()
}

#[test]
fn cone_lift_reproduces_input_and_satisfies_relations() {
    for seed in 0..8u64 {
        let d = 3 + (seed as usize % 4);
        let p = random_projection::<f64>(d, 1 + (seed as usize % (d - 1)), seed).unwrap();
        let q = random_projection::<f64>(d, 1 + ((seed as usize + 2) % (d - 1)), seed + 31).unwrap();
        let rep = qc_rep_from_projections(&p, &q).unwrap();
        let lift = cone_lift_qc(&rep, 128).unwrap();
        // Quotient (evaluation at 1) gives the inputs back exactly.
        let (h, k, x) = lift.quotient_images();
        assert_eq!(&h, rep.image("h0"));
        assert_eq!(&k, rep.image("k0"));
        assert_eq!(&x, rep.image("x0"));
        // Softened relations hold at every sample.
        let worst = lift.relation_residual().unwrap();
        assert!(worst <= 1e-9, "seed {seed}: residual {worst}");
        // Cone side vanishes at t = 0.
        assert!(lift.h.at(0).is_zero() && lift.k.at(0).is_zero() && lift.x.at(0).is_zero());
    }
}

#[test]
fn exp_boundary_scalar_generator_case() {
    // Images (0, 1, 0) in dimension 1: u(t) = e^{2πit}, class 1.
    let rep = qc_rep_from_images(M::zeros(1, 1), M::identity(1), M::zeros(1, 1));
    let out = exp_boundary_u(&rep, 64).unwrap();
    assert_eq!(out.class, 1);
    for (j, u) in out.loop_u.fun.samples().iter().enumerate() {
        let t = j as f64 / out.grid as f64;
        let want = Complex::from_polar(1.0, std::f64::consts::TAU * t);
        assert!((u[(0, 0)] - want).norm() < 1e-9, "sample {j}");
    }
}

#[test]
fn exp_boundary_zero_rep() {
    let rep = Rep::<f64>::zero_of(pres_arc("qC"), 3);
    let out = exp_boundary_u(&rep, 64).unwrap();
    assert_eq!(out.class, 0);
    for u in out.loop_u.fun.samples() {
        assert!((u - &M::identity(3)).max_abs() < 1e-10);
    }
}

#[test]
fn exp_boundary_projection_rep_winds_by_rank() {
    // Images (0, p, 0) with rank(p) = 3 in dimension 5: det u(t) = e^{2πi·3t}.
    let p = random_projection::<f64>(5, 3, 11).unwrap();
    let rep = qc_rep_from_images(M::zeros(5, 5), p, M::zeros(5, 5));
    let out = exp_boundary_u(&rep, 512).unwrap();
    assert_eq!(out.class, 3);
    assert!(out.loop_u.unitarity_residual <= 1e-8);
    // Hand formula: det u(t) = e^{2πi·rank·t}.
    let j = 100;
    let t = j as f64 / out.grid as f64;
    let det = out.loop_u.fun.at(j).det();
    let want = Complex::from_polar(1.0, std::f64::consts::TAU * 3.0 * t);
    assert!((det - want).norm() < 1e-8);
}

#[test]
fn exp_boundary_class_is_trace_pairing_on_factories() {
    for seed in 0..25u64 {
        let d = 2 + (seed as usize % 7); // d ≤ 8
        let rp = 1 + (seed as usize % d.max(2).min(d));
        let rq = 1 + ((seed as usize + 1) % d);
        let p = random_projection::<f64>(d, rp.min(d), seed).unwrap();
        let q = random_projection::<f64>(d, rq.min(d), seed + 77).unwrap();
        let rep = qc_rep_from_projections(&p, &q).unwrap();
        let out = exp_boundary_u(&rep, 512).unwrap();
        let trace = (rep.image("k0").trace() - rep.image("h0").trace()).re;
        assert!(out.loop_u.unitarity_residual <= 1e-8, "seed {seed}");
        assert_eq!(out.class, trace.round() as i64, "seed {seed}: trace {trace}");
        // Grid doubling never changes the class.
        let doubled = exp_boundary_u(&rep, 1024).unwrap();
        assert_eq!(doubled.class, out.class, "seed {seed} grid doubling");
    }
}

#[test]
fn exp_boundary_class_invariances() {
    let p = random_projection::<f64>(4, 2, 5).unwrap();
    let q = random_projection::<f64>(4, 1, 9).unwrap();
    let rep = qc_rep_from_projections(&p, &q).unwrap();
    let base = exp_boundary_u(&rep, 512).unwrap().class;

    // Unitary conjugation.
    let mut rng = nccell_core::linalg::SeedRng::new(13);
    let u = nccell_core::linalg::random_unitary::<f64>(4, &mut rng);
    let conj = rep.conjugate(&u);
    assert_eq!(exp_boundary_u(&conj, 512).unwrap().class, base);

    // Amplification by a zero block.
    let padded = rep.pad(2);
    assert_eq!(exp_boundary_u(&padded, 512).unwrap().class, base);
}

#[test]
fn cone_cell_examples() {
    assert_eq!(cone_cell_check(&M::zeros(2, 2), 256).unwrap(), (0, 0));
    assert_eq!(cone_cell_check(&M::identity(3), 256).unwrap(), (3, 3));
    let p = random_projection::<f64>(5, 2, 3).unwrap();
    assert_eq!(cone_cell_check(&p, 256).unwrap(), (2, 2));
}

#[test]
fn cone_cell_all_ranks_up_to_six() {
    for n in 1..=6usize {
        for r in 0..=n {
            let p = random_projection::<f64>(n, r, (n * 10 + r) as u64).unwrap();
            let (class_in, class_out) = cone_cell_check(&p, 256).unwrap();
            assert_eq!(class_in, r as i64, "rank into M_{n}");
            assert_eq!(class_out, r as i64, "winding out of M_{n}");
        }
    }
}

#[test]
fn winding_sanity_vs_explicit_loops() {
    let samples: Vec<Complex<f64>> = (0..=96)
        .map(|j| Complex::from_polar(2.5, std::f64::consts::TAU * 2.0 * j as f64 / 96.0))
        .collect();
    assert_eq!(winding(&samples).unwrap(), 2);
}

#[test]
fn grid_doubling_triggers_on_fast_loops() {
    // Rank-4 projection in M4: winding 4 needs fine grids; start at 8.
    let rep = qc_rep_from_images(M::zeros(4, 4), M::identity(4), M::zeros(4, 4));
    let out = exp_boundary_u(&rep, 8).unwrap();
    assert_eq!(out.class, 4);
    assert!(out.grid > 8, "grid should have doubled, got {}", out.grid);
}
