use super::cells::{CellDiagram, CellKind};
use super::lift::{contraction_lift, ModelElem};
use super::{boundary_map, BoundaryInput, ModelId, Result};
use crate::conegrid::{exp_boundary_warped, UnitaryLoop};
use crate::linalg::{random_projection, random_unitary, CMat, SeedRng};
use crate::reps::qc_rep_from_projections;
use crate::scalar::Scalar;
use crate::toeplitz::{index_boundary_with_lift, LaurentPoly, ToepOp};
use num_complex::Complex;

/// One invariance trial: the base class and every variant's class.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub trial: usize,
    pub description: String,
    pub classes: Vec<i64>,
    pub pass: bool,
}

/// Aggregated invariance report for one cell/model pair.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub cell: CellKind,
    pub model: ModelId,
    pub seed: u64,
    pub trials: Vec<TrialOutcome>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.pass).count()
    }
}

/// Well-definedness and naturality witnesses, per trial:
/// (a) homotopic inputs (rotation/conjugation or grid reparameterization),
/// (b) a different lift (ideal perturbation then contraction normalization,
///     or a warped cone clock),
/// (c) amplification by ⊗e₁₁,
/// (d) a corner-embedding naturality instance.
/// Every variant must reproduce the base class.
pub fn invariance_suite<T: Scalar>(
    cell: &CellDiagram,
    model: ModelId,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut outcomes = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = SeedRng::new(seed).split(trial as u64);
        let outcome = match cell.kind {
            CellKind::Index => index_trial::<T>(cell, trial, &mut rng)?,
            CellKind::Exponential => exp_trial::<T>(cell, trial, &mut rng)?,
            CellKind::Cone => cone_trial::<T>(cell, trial, &mut rng)?,
        };
        outcomes.push(outcome);
    }
    let pass = outcomes.iter().all(|t| t.pass);
    Ok(SuiteReport { cell: cell.kind, model, seed, trials: outcomes, pass })
}

fn index_trial<T: Scalar>(
    cell: &CellDiagram,
    trial: usize,
    rng: &mut SeedRng,
) -> Result<TrialOutcome> {
    // Alternate monomial and Bott-type inputs.
    let u: LaurentPoly<T> = if trial.is_multiple_of(2) {
        let w = (rng.next_usize(7) as i64) - 3;
        let phase = Complex::from_polar(
            T::one(),
            T::from_f64(rng.uniform(0.0, std::f64::consts::TAU)).unwrap(),
        );
        if w == 0 {
            LaurentPoly::monomial(0, phase)
        } else {
            LaurentPoly::monomial(w, phase)
        }
    } else {
        let r = 1 + rng.next_usize(2);
        let p = random_projection::<T>(2, r, rng.next_u64()).unwrap();
        LaurentPoly::bott(&p)
    };
    let base = boundary_map(cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(u.clone()))?
        .output_class;
    let mut classes = vec![base];
    let mut desc = vec!["base".to_string()];

    // (a) homotopic input: rotate the loop and conjugate by a constant unitary.
    let theta = rng.uniform(0.0, std::f64::consts::TAU);
    let v = random_unitary::<T>(u.block(), rng);
    let homotopic = u.rotate(theta).conjugate(&v);
    classes.push(
        boundary_map(cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(homotopic))?
            .output_class,
    );
    desc.push("rotate+conjugate".into());

    // (b) lift choice: perturb the canonical lift inside the ideal, then
    // normalize back to a contraction.
    let m = 2 + rng.next_usize(2);
    let noise = rng.gaussian_matrix::<T>(m * u.block(), m * u.block());
    let scale = 0.3 / crate::linalg::op_norm(&noise).to_f64().unwrap().max(1e-9);
    let noise = noise.scale(Complex::new(T::from_f64(scale).unwrap(), T::zero()));
    let b = ToepOp::toep(u.clone()).add(&ToepOp::ideal(noise, u.block()))?;
    let a = match contraction_lift(&ModelElem::Toep(b))? {
        ModelElem::Toep(a) => a,
        _ => unreachable!(),
    };
    classes.push(index_boundary_with_lift(&u, &a)?.class);
    desc.push("perturbed lift".into());

    // (c) amplification u ↦ diag(u, 1) doubling the block size.
    let amplified = u.dsum_identity(u.block());
    classes.push(
        boundary_map(cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(amplified))?
            .output_class,
    );
    desc.push("amplify ⊗e11".into());

    // (d) corner embedding M_s → M_{s+1}.
    let embedded = u.dsum_identity(1);
    classes.push(
        boundary_map(cell, ModelId::Toeplitz, &BoundaryInput::UnitarySymbol(embedded))?
            .output_class,
    );
    desc.push("corner embed".into());

    let pass = classes.iter().all(|c| *c == base);
    Ok(TrialOutcome { trial, description: desc.join(", "), classes, pass })
}

fn exp_trial<T: Scalar>(
    cell: &CellDiagram,
    trial: usize,
    rng: &mut SeedRng,
) -> Result<TrialOutcome> {
    let d = 2 + rng.next_usize(5);
    let p = random_projection::<T>(d, 1 + rng.next_usize(d), rng.next_u64()).unwrap();
    let q = random_projection::<T>(d, 1 + rng.next_usize(d), rng.next_u64()).unwrap();
    let rep = qc_rep_from_projections(&p, &q)?;

    let base =
        boundary_map(cell, ModelId::ConeGrid, &BoundaryInput::QcRep(rep.clone()))?.output_class;
    let mut classes = vec![base];
    let mut desc = vec!["base".to_string()];

    // (a) homotopic input: unitary conjugation, plus a grid change.
    let v = random_unitary::<T>(d, rng);
    classes.push(
        boundary_map(cell, ModelId::ConeGrid, &BoundaryInput::QcRep(rep.conjugate(&v)))?
            .output_class,
    );
    desc.push("conjugated".into());
    classes.push(exp_boundary_warped(&rep, cell.default_grid + 128, |t| t)?.class);
    desc.push("regridded".into());

    // (b) lift choice: warped cone clock τ(t) = t².
    classes.push(exp_boundary_warped(&rep, cell.default_grid, |t| t * t)?.class);
    desc.push("warped lift".into());

    // (c) amplification by ⊗e₁₁.
    classes.push(
        boundary_map(
            cell,
            ModelId::ConeGrid,
            &BoundaryInput::QcRep(rep.amplify_e11_numeric()),
        )?
        .output_class,
    );
    desc.push("amplify ⊗e11".into());

    // (d) corner embedding M_d → M_{d+1}.
    classes.push(
        boundary_map(cell, ModelId::ConeGrid, &BoundaryInput::QcRep(rep.pad(1)))?.output_class,
    );
    desc.push("corner embed".into());

    let pass = classes.iter().all(|c| *c == base);
    Ok(TrialOutcome { trial, description: desc.join(", "), classes, pass })
}

fn cone_trial<T: Scalar>(
    cell: &CellDiagram,
    trial: usize,
    rng: &mut SeedRng,
) -> Result<TrialOutcome> {
    let n = 1 + rng.next_usize(6);
    let r = rng.next_usize(n + 1);
    let p = random_projection::<T>(n, r, rng.next_u64()).unwrap();

    let base =
        boundary_map(cell, ModelId::ConeGrid, &BoundaryInput::Projection(p.clone()))?.output_class;
    let mut classes = vec![base];
    let mut desc = vec!["base".to_string()];

    // (a) homotopic input: conjugated projection.
    let v = random_unitary::<T>(n, rng);
    let conj = v.matmul(&p).matmul(&v.adjoint());
    classes.push(
        boundary_map(cell, ModelId::ConeGrid, &BoundaryInput::Projection(conj))?.output_class,
    );
    desc.push("conjugated".into());

    // (b) lift choice: warped suspension clock.
    classes.push(warped_cone_class(&p, cell.default_grid)?);
    desc.push("warped clock".into());

    // (c) amplification by ⊗e₁₁.
    classes.push(
        boundary_map(
            cell,
            ModelId::ConeGrid,
            &BoundaryInput::Projection(p.kron_left(&CMat::unit(2, 0, 0))),
        )?
        .output_class,
    );
    desc.push("amplify ⊗e11".into());

    // (d) corner embedding M_n → M_{n+1}.
    classes.push(
        boundary_map(cell, ModelId::ConeGrid, &BoundaryInput::Projection(p.pad_to(n + 1)))?
            .output_class,
    );
    desc.push("corner embed".into());

    let pass = classes.iter().all(|c| *c == base);
    Ok(TrialOutcome { trial, description: desc.join(", "), classes, pass })
}

fn warped_cone_class<T: Scalar>(p: &CMat<T>, grid: usize) -> Result<i64> {
    let samples: Vec<CMat<T>> = (0..=grid)
        .map(|j| {
            let t = (j as f64) / (grid as f64);
            let tau = t * t * (3.0 - 2.0 * t); // smoothstep, monotone 0→1
            crate::linalg::herm_funcalc(
                &p.scale_re(T::from_f64(tau).unwrap()),
                crate::linalg::FunTag::Exp2PiI,
            )
        })
        .collect::<std::result::Result<_, _>>()?;
    let fun = crate::conegrid::GridFun::new(samples, false, false)?;
    let loop_u = UnitaryLoop::new(fun)?;
    Ok(loop_u.winding()?)
}
