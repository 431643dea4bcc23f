//! Verification suites behind `nccell verify`. Every suite is deterministic
//! in its seed and returns a [`Report`].

use crate::report::Report;
use nccell_core::boundary::{
    boundary_map, cone_cell, exponential_cell, index_cell, invariance_suite, BoundaryInput,
    ModelId,
};
use nccell_core::conegrid::{cone_cell_check, exp_boundary_u};
use nccell_core::linalg::{random_contraction, random_projection, CMat, SeedRng};
use nccell_core::presentations::parse_expr_str;
use nccell_core::reps::{
    apply_genmap, check_relations, g2st_rep_from_contraction, genmap_by_name,
    lambda_rho_homotopy_at, null_homotopy_at, null_homotopy_first, null_homotopy_second,
    p_rep_from_pair, qc_rep_from_projections, reconstruct_extension, Rep,
};
use nccell_core::symbolic::{
    expr_to_sym, parse_identity_file, prove_identity_line, prove_sym, rules_free_pl,
    rules_free_pq, SymVal,
};
use nccell_core::toeplitz::{fredholm_oracle, parse_symbol};
use std::time::Instant;

pub const IDENTITY_FILE: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../identities/ideal_identities.txt"));

/// Knobs shared by the suites (CLI flags).
#[derive(Debug, Clone, Copy)]
pub struct SuiteOpts {
    pub trials: usize,
    pub dim: usize,
    pub tol: Option<f64>,
    pub grid: usize,
    pub seed: u64,
}

impl Default for SuiteOpts {
    fn default() -> Self {
        Self { trials: 20, dim: 6, tol: None, grid: 512, seed: 0 }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "ideal-identities",
    "homotopy-null",
    "homotopy-lambda-rho",
    "unitization-iso",
    "index-cell",
    "exp-cell",
    "cone-cell",
    "exactness-reconstruction",
    "stability",
];

/// Run one suite by name; `all` concatenates every suite.
pub fn run_suite(name: &str, opts: &SuiteOpts) -> Result<Vec<Report>, String> {
    match name {
        "ideal-identities" => Ok(vec![ideal_identities(opts)]),
        "homotopy-null" => Ok(vec![homotopy_null(opts)]),
        "homotopy-lambda-rho" => Ok(vec![homotopy_lambda_rho(opts)]),
        "unitization-iso" => Ok(vec![unitization_iso(opts)]),
        "index-cell" => Ok(vec![index_cell_suite(opts)]),
        "exp-cell" => Ok(vec![exp_cell_suite(opts)]),
        "cone-cell" => Ok(vec![cone_cell_suite(opts)]),
        "exactness-reconstruction" => Ok(vec![exactness_reconstruction(opts)]),
        "stability" => Ok(vec![stability(opts)]),
        "all" => {
            let mut out = Vec::new();
            for suite in SUITE_NAMES {
                out.extend(run_suite(suite, opts)?);
            }
            Ok(out)
        }
        other => Err(format!("unknown suite `{other}`")),
    }
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// The eight ideal identities plus the l − p decomposition, proved exactly.
pub fn ideal_identities(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("ideal-identities");
    report.convention("rules", "free-pl: p^2 = p* = p, l* = l");
    report.convention("arithmetic", "exact Gaussian rationals, zero tolerance");
    let names = [
        "theta-h-absorbs-p",
        "theta-h-times-l",
        "theta-k-kills-p",
        "theta-k-times-l",
        "theta-x-absorbs-p",
        "p-kills-theta-x",
        "theta-x-times-l",
        "l-times-theta-x",
        "l-minus-p-decomposition",
    ];
    match parse_identity_file(IDENTITY_FILE) {
        Ok(ids) => {
            for (i, id) in ids.iter().enumerate() {
                let t = Instant::now();
                let ok = prove_identity_line(id).map(|o| o.ok).unwrap_or(false);
                let name = names.get(i).copied().unwrap_or("extra-identity");
                report.check_flag(name, ok, opts.seed, ms(t));
            }
        }
        Err(e) => {
            report.check_flag(&format!("identity-file: {e}"), false, opts.seed, 0);
        }
    }
    report
}

/// Two-segment null homotopy of id ⊕ η on a 101-point clock.
pub fn homotopy_null(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("homotopy-null");
    let d = opts.dim;
    let tol = opts.tol.unwrap_or(1e-7 * (d as f64).sqrt());
    report.convention("clock", "s in [0,2]; alpha = 1-s then gamma = 2-s");
    report.convention("grid_points", 101);
    report.convention("relation_tol", tol);
    for trial in 0..opts.trials {
        let seed = opts.seed.wrapping_add(trial as u64);
        let t0 = Instant::now();
        let rep = match g2st_rep_from_contraction(&random_contraction::<f64>(d, seed, false)) {
            Ok(r) => r,
            Err(e) => {
                report.check_flag(&format!("factory-{trial}: {e}"), false, seed, ms(t0));
                continue;
            }
        };
        let mut worst_rel = 0.0f64;
        let mut failed = None;
        for j in 0..=100 {
            let s = 2.0 * (j as f64) / 100.0;
            match null_homotopy_at(&rep, s) {
                Ok(ht) => match check_relations(&ht, tol) {
                    Ok(rep_report) => worst_rel = worst_rel.max(rep_report.worst_residual()),
                    Err(e) => failed = Some(format!("check at s={s}: {e}")),
                },
                Err(e) => failed = Some(format!("homotopy at s={s}: {e}")),
            }
            if failed.is_some() {
                break;
            }
        }
        if let Some(msg) = failed {
            report.check_flag(&format!("relations-{trial}: {msg}"), false, seed, ms(t0));
            continue;
        }
        report.check(&format!("relations-{trial}"), worst_rel, tol, seed, ms(t0));

        // Junction continuity at s = 1 between the two segment formulas.
        let t1 = Instant::now();
        let junction = match (null_homotopy_first(&rep, 0.0), null_homotopy_second(&rep, 1.0)) {
            (Ok(a), Ok(b)) => a.distance(&b),
            _ => f64::INFINITY,
        };
        report.check(&format!("junction-{trial}"), junction, 1e-8, seed, ms(t1));

        // Endpoints: s = 0 is id ⊕ η, s = 2 is zero.
        let t2 = Instant::now();
        let e0 = endpoint_id_eta_distance(&rep);
        report.check(&format!("endpoint-start-{trial}"), e0, 1e-10, seed, ms(t2));
        let t3 = Instant::now();
        let e2 = null_homotopy_at(&rep, 2.0)
            .map(|z| ["h", "k", "x"].iter().map(|g| z.image(g).max_abs()).fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY);
        report.check(&format!("endpoint-end-{trial}"), e2, 1e-12, seed, ms(t3));
    }
    report
}

fn endpoint_id_eta_distance(rep: &Rep<f64>) -> f64 {
    let Ok(start) = null_homotopy_at(rep, 0.0) else {
        return f64::INFINITY;
    };
    let (h, k, x) = (rep.image("h"), rep.image("k"), rep.image("x"));
    let z = CMat::zeros(rep.dim, rep.dim);
    let want_h = CMat::from_blocks(&[vec![h.clone(), z.clone()], vec![z.clone(), k.clone()]]);
    let want_k = CMat::from_blocks(&[vec![k.clone(), z.clone()], vec![z.clone(), h.clone()]]);
    let want_x = CMat::from_blocks(&[vec![x.clone(), z.clone()], vec![z.clone(), x.adjoint()]]);
    [(start.image("h"), want_h), (start.image("k"), want_k), (start.image("x"), want_x)]
        .iter()
        .map(|(got, want)| (*got - want).max_abs())
        .fold(0.0, f64::max)
}

/// The φ_t path from λ∘ρ to id ⊗ e₁₁ on a 101-point clock.
pub fn homotopy_lambda_rho(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("homotopy-lambda-rho");
    let d = opts.dim;
    let tol = opts.tol.unwrap_or(1e-8);
    report.convention("path", "w_t = sin(pi t/2) e11 + cos(pi t/2) e21");
    report.convention("grid_points", 101);
    report.convention("relation_tol", tol);
    let lambda = genmap_by_name("lambda").expect("shipped map");
    let rho = genmap_by_name("rho").expect("shipped map");
    for trial in 0..opts.trials {
        let seed = opts.seed.wrapping_add(trial as u64);
        let t0 = Instant::now();
        let rep = match g2st_rep_from_contraction(&random_contraction::<f64>(d, seed, false)) {
            Ok(r) => r,
            Err(e) => {
                report.check_flag(&format!("factory-{trial}: {e}"), false, seed, ms(t0));
                continue;
            }
        };
        let mut worst_rel = 0.0f64;
        let mut failed = None;
        for j in 0..=100 {
            let t = (j as f64) / 100.0;
            match lambda_rho_homotopy_at(&rep, t) {
                Ok(ht) => match check_relations(&ht, tol) {
                    Ok(r) => worst_rel = worst_rel.max(r.worst_residual()),
                    Err(e) => failed = Some(format!("check at t={t}: {e}")),
                },
                Err(e) => failed = Some(format!("homotopy at t={t}: {e}")),
            }
            if failed.is_some() {
                break;
            }
        }
        if let Some(msg) = failed {
            report.check_flag(&format!("relations-{trial}: {msg}"), false, seed, ms(t0));
            continue;
        }
        report.check(&format!("relations-{trial}"), worst_rel, tol, seed, ms(t0));

        let t1 = Instant::now();
        let start_gap = apply_genmap(&lambda, &rep)
            .and_then(|qc| apply_genmap(&rho, &qc))
            .and_then(|pulled| lambda_rho_homotopy_at(&rep, 0.0).map(|h| h.distance(&pulled)))
            .unwrap_or(f64::INFINITY);
        report.check(&format!("endpoint-lambda-rho-{trial}"), start_gap, 1e-10, seed, ms(t1));

        let t2 = Instant::now();
        let e11 = CMat::unit(2, 0, 0);
        let end_gap = lambda_rho_homotopy_at(&rep, 1.0)
            .map(|h| {
                ["h", "k", "x"]
                    .iter()
                    .map(|g| (h.image(g) - &rep.image(g).kron_left(&e11)).max_abs())
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::INFINITY);
        report.check(&format!("endpoint-id-e11-{trial}"), end_gap, 1e-10, seed, ms(t2));
    }
    report
}

/// Unitization correspondence G2nc ≅ (G2st)~: pull back and return, expect
/// the identity.
pub fn unitization_iso(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("unitization-iso");
    report.convention("maps", "a = 1 - h, b = k, c = x and back");
    let unitize = genmap_by_name("unitize").expect("shipped map");
    let forget = genmap_by_name("forget_unit").expect("shipped map");
    for trial in 0..opts.trials {
        let seed = opts.seed.wrapping_add(trial as u64);
        let t0 = Instant::now();
        let outcome = g2st_rep_from_contraction(&random_contraction::<f64>(opts.dim, seed, false))
            .and_then(|g2| {
                let nc = apply_genmap(&unitize, &g2)?;
                let nc_report = check_relations(&nc, 1e-9)?;
                let back = apply_genmap(&forget, &nc)?;
                Ok((nc_report.worst_residual(), g2.distance(&back)))
            });
        match outcome {
            Ok((nc_resid, roundtrip)) => {
                report.check(&format!("g2nc-relations-{trial}"), nc_resid, 1e-9, seed, ms(t0));
                report.check(&format!("roundtrip-{trial}"), roundtrip, 1e-12, seed, 0);
            }
            Err(e) => report.check_flag(&format!("trial-{trial}: {e}"), false, seed, ms(t0)),
        }
    }
    report
}

/// ∂[z^w] = −w for |w| ≤ 3 and the Bott symbols, checked against the
/// Fredholm oracle.
pub fn index_cell_suite(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("index-cell");
    let cell = index_cell();
    report.convention("sign", cell.sign_convention);
    report.convention("drift_tol", 1e-9);
    let mut symbols: Vec<(String, i64)> = (-3..=3)
        .map(|w| {
            let src = match w {
                0 => "1".to_string(),
                1 => "z".to_string(),
                w => format!("z^{w}"),
            };
            (src, -w)
        })
        .collect();
    symbols.push(("bott(1,2)".to_string(), -1));
    symbols.push(("bott(2,2)".to_string(), -2));
    for (src, want) in symbols {
        let t0 = Instant::now();
        let outcome = parse_symbol::<f64>(&src).map_err(|e| e.to_string()).and_then(|u| {
            let run = boundary_map(&cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(u.clone()))
                .map_err(|e| e.to_string())?;
            let oracle = fredholm_oracle(&u).map_err(|e| e.to_string())?;
            Ok((run, oracle))
        });
        match outcome {
            Ok((run, oracle)) => {
                let ok = run.output_class == want && run.output_class == oracle;
                let residual = if ok { run.diagnostics.drift } else { 1.0 };
                report.check(&format!("boundary[{src}]"), residual, 1e-9, opts.seed, ms(t0));
                report.check_flag(&format!("oracle-match[{src}]"), ok, opts.seed, 0);
            }
            Err(e) => report.check_flag(&format!("boundary[{src}]: {e}"), false, opts.seed, ms(t0)),
        }
    }
    report
}

/// Exponential boundary on seeded qC factory representations.
pub fn exp_cell_suite(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("exp-cell");
    let cell = exponential_cell();
    report.convention("sign", cell.sign_convention);
    report.convention("grid", opts.grid as u64);
    for trial in 0..opts.trials {
        let seed = opts.seed.wrapping_add(trial as u64);
        let mut rng = SeedRng::new(seed).split(0x657870);
        let d = 2 + rng.next_usize(7); // d ≤ 8
        let t0 = Instant::now();
        let outcome = (|| {
            let p = random_projection::<f64>(d, 1 + rng.next_usize(d), rng.next_u64())
                .map_err(|e| e.to_string())?;
            let q = random_projection::<f64>(d, 1 + rng.next_usize(d), rng.next_u64())
                .map_err(|e| e.to_string())?;
            let rep = qc_rep_from_projections(&p, &q).map_err(|e| e.to_string())?;
            let out = exp_boundary_u(&rep, opts.grid).map_err(|e| e.to_string())?;
            let trace = (rep.image("k0").trace() - rep.image("h0").trace()).re;
            let doubled = exp_boundary_u(&rep, opts.grid * 2).map_err(|e| e.to_string())?;
            Ok::<_, String>((out, trace, doubled.class))
        })();
        match outcome {
            Ok((out, trace, doubled_class)) => {
                report.check(
                    &format!("unitary-{trial}"),
                    out.loop_u.unitarity_residual,
                    1e-8,
                    seed,
                    ms(t0),
                );
                let drift = (trace - trace.round()).abs();
                let ok = out.class == trace.round() as i64 && doubled_class == out.class;
                report.check(
                    &format!("class-{trial}"),
                    if ok { drift } else { 1.0 },
                    1e-6,
                    seed,
                    0,
                );
            }
            Err(e) => report.check_flag(&format!("trial-{trial}: {e}"), false, seed, ms(t0)),
        }
    }
    report
}

/// Cone cell classes for every rank r ≤ n ≤ 6.
pub fn cone_cell_suite(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("cone-cell");
    let cell = cone_cell(6);
    report.convention("sign", cell.sign_convention);
    report.convention("grid", 256u64);
    for n in 1..=6usize {
        for r in 0..=n {
            let t0 = Instant::now();
            let seed = opts.seed.wrapping_add((n * 16 + r) as u64);
            let outcome = random_projection::<f64>(n, r, seed)
                .map_err(|e| e.to_string())
                .and_then(|p| cone_cell_check(&p, 256).map_err(|e| e.to_string()));
            match outcome {
                Ok((class_in, class_out)) => {
                    let ok = class_in == r as i64 && class_out == r as i64;
                    report.check_flag(&format!("cone-n{n}-r{r}"), ok, seed, ms(t0));
                }
                Err(e) => {
                    report.check_flag(&format!("cone-n{n}-r{r}: {e}"), false, seed, ms(t0))
                }
            }
        }
    }
    report
}

/// Exactness content: the block conjugation identity, the θ₀ projection
/// identity, and the numeric reconstruction round-trip on factory reps.
pub fn exactness_reconstruction(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("exactness-reconstruction");
    report.convention("support_cutoff", 1e-8);
    report.convention("spectrum_slack", 1e-7);

    let t0 = Instant::now();
    let conj_ok = (|| {
        let lhs = expr_to_sym(&parse_expr_str(
            "[[1 - (p - p*l*p), adj((1 - p)*l*p)], [(1 - p)*l*p, (1 - p)*l*(1 - p)]]",
        )
        .ok()?)
        .ok()?;
        let rhs = expr_to_sym(
            &parse_expr_str("[[p, 1 - p], [1 - p, p]] * [[l, 0], [0, 1 - p]] * [[p, 1 - p], [1 - p, p]]")
                .ok()?,
        )
        .ok()?;
        prove_sym(&lhs, &rhs, &rules_free_pl()).ok().map(|o| o.ok)
    })()
    .unwrap_or(false);
    report.check_flag("conjugation-identity", conj_ok, opts.seed, ms(t0));

    let t1 = Instant::now();
    let theta0_ok = (|| {
        let p0 = expr_to_sym(&parse_expr_str(
            "[[1 - (p0 - p0*q0*p0), adj((1 - p0)*q0*p0)], [(1 - p0)*q0*p0, (1 - p0)*q0*(1 - p0)]]",
        )
        .ok()?)
        .ok()?;
        let squared = match &p0 {
            SymVal::Mat(m) => SymVal::Mat(m.matmul(m)),
            _ => return None,
        };
        let rules = rules_free_pq();
        let sq = prove_sym(&squared, &p0, &rules).ok()?.ok;
        let adj = prove_sym(&p0.adjoint(), &p0, &rules).ok()?.ok;
        Some(sq && adj)
    })()
    .unwrap_or(false);
    report.check_flag("theta0-projection", theta0_ok, opts.seed, ms(t1));

    for trial in 0..opts.trials {
        let seed = opts.seed.wrapping_add(trial as u64);
        let mut rng = SeedRng::new(seed).split(0x726563);
        let d = 2 + rng.next_usize(7); // d ≤ 8
        let t2 = Instant::now();
        let outcome = (|| {
            let p = random_projection::<f64>(d, rng.next_usize(d + 1), rng.next_u64())
                .map_err(|e| e.to_string())?;
            let l = random_contraction::<f64>(d, rng.next_u64(), true);
            let rep = p_rep_from_pair(&p, &l).map_err(|e| e.to_string())?;
            reconstruct_extension(&rep).map_err(|e| e.to_string())
        })();
        match outcome {
            Ok(rec) => {
                let spectrum_excess = nccell_core::linalg::herm_eig(&rec.lhat)
                    .map(|e| {
                        let lo = e.eigenvalues.first().copied().unwrap_or(0.0);
                        let hi = e.eigenvalues.last().copied().unwrap_or(0.0);
                        (-lo).max(hi - 1.0).max(0.0)
                    })
                    .unwrap_or(f64::INFINITY);
                report.check(&format!("spectrum-{trial}"), spectrum_excess, 1e-7, seed, 0);
                report.check(&format!("roundtrip-{trial}"), rec.roundtrip_residual, 1e-7, seed, ms(t2));
            }
            Err(e) => report.check_flag(&format!("roundtrip-{trial}: {e}"), false, seed, ms(t2)),
        }
    }
    report
}

/// Invariance suite across the shipped cells: homotopic inputs, lift
/// choices, amplification, corner-embedding naturality.
pub fn stability(opts: &SuiteOpts) -> Report {
    let mut report = Report::new("stability");
    report.convention("variants", "rotate/conjugate, perturbed lift, amplify e11, corner embed");
    let runs = [
        ("index", invariance_suite::<f64>(&index_cell(), ModelId::Toeplitz, opts.trials, opts.seed)),
        (
            "exp",
            invariance_suite::<f64>(&exponential_cell(), ModelId::ConeGrid, opts.trials, opts.seed),
        ),
        ("cone", invariance_suite::<f64>(&cone_cell(6), ModelId::ConeGrid, opts.trials, opts.seed)),
    ];
    for (name, run) in runs {
        let t0 = Instant::now();
        match run {
            Ok(suite) => {
                for trial in &suite.trials {
                    report.check_flag(
                        &format!("{name}-trial-{}", trial.trial),
                        trial.pass,
                        opts.seed,
                        0,
                    );
                }
            }
            Err(e) => report.check_flag(&format!("{name}: {e}"), false, opts.seed, ms(t0)),
        }
    }
    report
}
