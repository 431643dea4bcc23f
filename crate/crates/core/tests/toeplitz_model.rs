//! Exactness of the Toeplitz-plus-finite-rank arithmetic against dense
//! truncations, and the index boundary against the Fredholm oracle.

use nccell_core::linalg::{random_projection, random_unitary, CMat, SeedRng};
use nccell_core::toeplitz::{
    fredholm_oracle, index_boundary, parse_symbol, LaurentPoly, ToepOp,
};
use num_complex::Complex;

type L = LaurentPoly<f64>;
type Op = ToepOp<f64>;
type M = CMat<f64>;

fn random_band_op(rng: &mut SeedRng, block: usize, band: i64, corner_blocks: usize) -> Op {
    let mut sym = L::zero(block);
    for k in -band..=band {
        sym.set_coeff(k, rng.gaussian_matrix::<f64>(block, block));
    }
    let corner = rng.gaussian_matrix::<f64>(corner_blocks * block, corner_blocks * block);
    Op::toep(sym).add(&Op::ideal(corner, block)).unwrap()
}

/// Dense windows of an exact product match products of dense truncations on
/// the window the bands allow.
#[test]
fn product_matches_dense_truncation_windows() {
    let mut rng = SeedRng::new(41);
    for trial in 0..200 {
        let block = 1 + (trial % 2);
        let band = 1 + (trial as i64 % 3);
        let a = random_band_op(&mut rng, block, band, 2);
        let b = random_band_op(&mut rng, block, band, 1);
        let prod = a.mul(&b).unwrap();

        let n = 14usize;
        let margin = (2 * band) as usize + 3; // one operand's reach into the tail
        let wide_a = a.dense(n, n + margin);
        let wide_b = b.dense(n + margin, n);
        let dense_prod = wide_a.matmul(&wide_b);
        let window = n - margin;
        let got = prod.dense(window, window);
        let mut worst = 0.0f64;
        for i in 0..window * block {
            for j in 0..window * block {
                let diff = (got[(i, j)] - dense_prod[(i, j)]).norm();
                worst = worst.max(diff);
            }
        }
        assert!(worst <= 1e-12, "trial {trial}: window mismatch {worst}");
    }
}

#[test]
fn adjoint_matches_dense_truncation() {
    let mut rng = SeedRng::new(43);
    let a = random_band_op(&mut rng, 2, 2, 2);
    let adj = a.adjoint();
    let n = 10;
    let d = a.dense(n, n).adjoint();
    let got = adj.dense(n, n);
    // The adjoint of the truncation equals the truncation of the adjoint on
    // the interior window.
    let w = (n - 3) * 2;
    for i in 0..w {
        for j in 0..w {
            assert!((d[(i, j)] - got[(i, j)]).norm() <= 1e-13);
        }
    }
}

#[test]
fn toep_norm_is_circle_sup() {
    // ‖T_f‖ = sup over the circle of ‖f(z)‖ for the canonical lift; checked
    // by circle sampling against dense truncation growth.
    let f = parse_symbol::<f64>("0.5*z + 0.25*z^-1 + 0.1").unwrap();
    let sup = f.sup_circle_norm(256);
    let t = Op::toep(f);
    // Dense truncations have norm ≤ sup and approach it from below.
    let n64 = nccell_core::linalg::op_norm(&t.dense(64, 64));
    assert!(n64 <= sup + 1e-8, "truncation norm exceeded symbol sup");
    assert!(sup - n64 <= 2e-2, "sup {sup} vs truncation {n64}");
}

#[test]
fn index_boundary_matches_oracle_on_monomials() {
    for w in -3i64..=3 {
        let u = if w == 0 {
            L::one(1)
        } else {
            L::monomial(w, Complex::new(1.0, 0.0))
        };
        let out = index_boundary(&u).unwrap();
        let oracle = fredholm_oracle(&u).unwrap();
        assert_eq!(out.class, -w, "∂[z^{w}]");
        assert_eq!(out.class, oracle, "class vs oracle at w={w}");
        assert!(out.drift <= 1e-9, "drift {}", out.drift);
        assert!(out.rep.relation_residual().unwrap() <= 1e-12);
        assert!(out.rep.ideal_residual() == 0.0);
    }
}

#[test]
fn index_boundary_matches_oracle_on_bott_symbols() {
    for (r, want) in [(1usize, -1i64), (2, -2)] {
        let u = parse_symbol::<f64>(&format!("bott({r},2)")).unwrap();
        let out = index_boundary(&u).unwrap();
        let oracle = fredholm_oracle(&u).unwrap();
        assert_eq!(out.class, want);
        assert_eq!(out.class, oracle);
        assert!(out.drift <= 1e-9);
        assert!(out.rep.relation_residual().unwrap() <= 1e-12);
    }
}

#[test]
fn class_additive_under_symbol_products() {
    let cases = ["z", "z^-2", "bott(1,2)", "bott(2,2)"];
    for a_src in cases {
        for b_src in cases {
            let a = parse_symbol::<f64>(a_src).unwrap();
            let b = parse_symbol::<f64>(b_src).unwrap();
            let s = a.block().max(b.block());
            let (a, b) = (a.promote(s).unwrap(), b.promote(s).unwrap());
            let ab = a.mul(&b);
            let ca = index_boundary(&a).unwrap().class;
            let cb = index_boundary(&b).unwrap().class;
            let cab = index_boundary(&ab).unwrap().class;
            assert_eq!(cab, ca + cb, "{a_src} * {b_src}");
        }
    }
}

#[test]
fn class_invariant_under_rotation_and_conjugation() {
    let mut rng = SeedRng::new(71);
    for src in ["z", "z^-2", "bott(1,2)"] {
        let u = parse_symbol::<f64>(src).unwrap();
        let base = index_boundary(&u).unwrap().class;
        for _ in 0..5 {
            let theta = rng.uniform(0.0, std::f64::consts::TAU);
            let rotated = u.rotate(theta);
            assert_eq!(index_boundary(&rotated).unwrap().class, base, "{src} rotated");
            let v = random_unitary::<f64>(u.block(), &mut rng);
            let conj = u.conjugate(&v);
            assert_eq!(index_boundary(&conj).unwrap().class, base, "{src} conjugated");
        }
    }
}

#[test]
fn class_invariant_under_identity_amplification() {
    for src in ["z", "bott(1,2)"] {
        let u = parse_symbol::<f64>(src).unwrap();
        let base = index_boundary(&u).unwrap().class;
        let big = u.dsum_identity(1);
        assert_eq!(index_boundary(&big).unwrap().class, base, "{src} ⊕ 1");
        assert_eq!(fredholm_oracle(&big).unwrap(), base);
    }
}

#[test]
fn boundary_rejects_non_unitary_symbols() {
    let f = parse_symbol::<f64>("0.5*z").unwrap();
    assert!(index_boundary(&f).is_err());
}

#[test]
fn bott_projection_rank_drives_the_class() {
    // P^⊥ + zP for random projections: class = −rank(P).
    for seed in 0..6u64 {
        let s = 3;
        let r = 1 + (seed as usize % s);
        let p = random_projection::<f64>(s, r, seed).unwrap();
        let u = L::bott(&p);
        let out = index_boundary(&u).unwrap();
        assert_eq!(out.class, -(r as i64), "seed {seed}");
        assert_eq!(fredholm_oracle(&u).unwrap(), -(r as i64));
        // Random projections have float entries; relations still hold to
        // near round-off.
        assert!(out.rep.relation_residual().unwrap() <= 1e-12);
    }
}

/// The ideal of zero-symbol operators really is the kernel of the quotient.
#[test]
fn quotient_kernel_is_ideal() {
    let mut rng = SeedRng::new(99);
    let x = random_band_op(&mut rng, 1, 2, 2);
    let sym = x.quotient_symbol();
    let canonical = Op::toep(sym);
    let diff = x.sub(&canonical).unwrap();
    assert!(diff.quotient_symbol().is_zero());
    assert!(diff.ideal_residual() == 0.0);
    assert!(diff.trace_ideal().is_ok());
}

#[test]
fn dense_of_shift_is_the_shift_matrix() {
    let t = Op::toep(L::monomial(1, Complex::new(1.0, 0.0)));
    let d = t.dense(4, 4);
    let want = M::from_fn(4, 4, |i, j| {
        if i == j + 1 { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) }
    });
    assert_eq!(d, want);
}
