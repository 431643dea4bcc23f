//! The generic cell-diagram boundary: lift an R-representation through the
//! projective middle, restrict to the ideal, compose with ψ₀, and extract
//! integer classes; plus the invariance suites that witness well-definedness
//! and naturality on the two shipped concrete models.

mod cells;
mod invariance;
mod lift;
mod model;

pub use cells::{cone_cell, exponential_cell, index_cell, CellDiagram, CellKind, PairingKind};
pub use invariance::{invariance_suite, SuiteReport, TrialOutcome};
pub use lift::{contraction_lift, contraction_normalize, ModelElem};
pub use model::{ConeGridModel, ExtensionModel, ToeplitzModel};

use crate::conegrid::{exp_boundary_u, ConeError, ExpBoundary, UnitaryLoop};
use crate::linalg::CMat;
use crate::reps::{Rep, RepError};
use crate::scalar::Scalar;
use crate::toeplitz::{index_boundary, LaurentPoly, ToepError, ToepG2Rep};
use num_complex::Complex;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundaryError {
    #[error("cell `{cell}` does not run on model `{model}` with this input")]
    CellModelMismatch { cell: &'static str, model: &'static str },
    #[error("class drift {0:.3e} exceeds tolerance")]
    Drift(f64),
    #[error("Q-representation residual {residual:.3e} exceeds {tol:.3e}")]
    QRepResidual { residual: f64, tol: f64 },
    #[error("quotient of the lift is not unitary: residual {0:.3e}")]
    NonUnitaryQuotient(f64),
    #[error(transparent)]
    Toep(#[from] ToepError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

pub type Result<V> = std::result::Result<V, BoundaryError>;

/// Identity of the concrete extension model backing a boundary run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelId {
    Toeplitz,
    ConeGrid,
}

impl ModelId {
    pub fn name(&self) -> &'static str {
        match self {
            ModelId::Toeplitz => "toeplitz",
            ModelId::ConeGrid => "cone-grid",
        }
    }
}

/// Input data for a boundary run, one variant per shipped cell.
#[derive(Debug, Clone)]
pub enum BoundaryInput<T: Scalar> {
    /// Index cell: the unitary symbol, the image of 1 + x.
    UnitarySymbol(LaurentPoly<T>),
    /// Exponential cell: a qC representation.
    QcRep(Rep<T>),
    /// Cone cell: a projection in M_n.
    Projection(CMat<T>),
}

/// Q-valued output of a boundary run.
#[derive(Debug, Clone)]
pub enum BoundaryOutput<T: Scalar> {
    ToepG2(ToepG2Rep<T>),
    Loop(UnitaryLoop<T>),
    /// Cone cell: the suspension loop.
    SuspensionLoop(UnitaryLoop<T>),
}

/// Diagnostics attached to a boundary result.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    pub drift: f64,
    pub worst_residual: f64,
    pub grid: Option<usize>,
    pub corner_blocks: Option<usize>,
    pub seed: Option<u64>,
}

/// One boundary computation: input class (Ξ pairing), output representation
/// valued in the ideal, output class (Λ pairing).
#[derive(Debug, Clone)]
pub struct BoundaryResult<T: Scalar> {
    pub cell: CellKind,
    pub model: ModelId,
    pub input_class: i64,
    pub output_class: i64,
    pub output: BoundaryOutput<T>,
    pub diagnostics: Diagnostics,
}

/// Winding of det(u) over the sampled circle: the Ξ pairing on the index
/// cell's quotient side.
pub fn symbol_winding<T: Scalar>(u: &LaurentPoly<T>) -> Result<i64> {
    let n = crate::toeplitz::CIRCLE_SAMPLES;
    let samples: Vec<Complex<T>> = (0..=n)
        .map(|j| {
            let theta = std::f64::consts::TAU * (j as f64) / (n as f64);
            let z = Complex::new(
                T::from_f64(theta.cos()).unwrap(),
                T::from_f64(theta.sin()).unwrap(),
            );
            u.eval(z).det()
        })
        .collect();
    Ok(crate::conegrid::winding(&samples)?)
}

/// Trace pairing of a qC representation: round(tr(k₀) − tr(h₀)), the class
/// of [P₀] − [diag(1, 0)].
pub fn qc_trace_class<T: Scalar>(rep: &Rep<T>) -> Result<i64> {
    let t = (rep.image("k0").trace() - rep.image("h0").trace()).re.to_f64().unwrap();
    let class = t.round();
    if (t - class).abs() > 1e-6 {
        return Err(BoundaryError::Drift((t - class).abs()));
    }
    Ok(class as i64)
}

/// Run the boundary map of a cell on a concrete model.
pub fn boundary_map<T: Scalar>(
    cell: &CellDiagram,
    model: ModelId,
    input: &BoundaryInput<T>,
) -> Result<BoundaryResult<T>> {
    match (cell.kind, model, input) {
        (CellKind::Index, ModelId::Toeplitz, BoundaryInput::UnitarySymbol(u)) => {
            let input_class = symbol_winding(u)?;
            let out = index_boundary(u)?;
            let corner = out
                .rep
                .h1
                .corner_blocks()
                .max(out.rep.k1.corner_blocks())
                .max(out.rep.x1.corner_blocks());
            Ok(BoundaryResult {
                cell: cell.kind,
                model,
                input_class,
                output_class: out.class,
                diagnostics: Diagnostics {
                    drift: out.drift,
                    worst_residual: out.rep.relation_residual()?,
                    corner_blocks: Some(corner),
                    ..Default::default()
                },
                output: BoundaryOutput::ToepG2(out.rep),
            })
        }
        (CellKind::Exponential, ModelId::ConeGrid, BoundaryInput::QcRep(rep)) => {
            let input_class = qc_trace_class(rep)?;
            let out: ExpBoundary<T> = exp_boundary_u(rep, cell.default_grid)?;
            Ok(BoundaryResult {
                cell: cell.kind,
                model,
                input_class,
                output_class: out.class,
                diagnostics: Diagnostics {
                    worst_residual: out.loop_u.unitarity_residual,
                    grid: Some(out.grid),
                    ..Default::default()
                },
                output: BoundaryOutput::Loop(out.loop_u),
            })
        }
        (CellKind::Cone, ModelId::ConeGrid, BoundaryInput::Projection(p)) => {
            let (class_in, class_out) = crate::conegrid::cone_cell_check(p, cell.default_grid)?;
            // Rebuild the loop for the output payload.
            let loop_u = cone_loop(p, cell.default_grid)?;
            Ok(BoundaryResult {
                cell: cell.kind,
                model,
                input_class: class_in,
                output_class: class_out,
                diagnostics: Diagnostics {
                    worst_residual: loop_u.unitarity_residual,
                    grid: Some(cell.default_grid),
                    ..Default::default()
                },
                output: BoundaryOutput::SuspensionLoop(loop_u),
            })
        }
        _ => Err(BoundaryError::CellModelMismatch { cell: cell.kind.name(), model: model.name() }),
    }
}

pub(crate) fn cone_loop<T: Scalar>(p: &CMat<T>, grid: usize) -> Result<UnitaryLoop<T>> {
    let samples: Vec<CMat<T>> = (0..=grid)
        .map(|j| {
            let t = T::from_usize(j).unwrap() / T::from_usize(grid).unwrap();
            crate::linalg::herm_funcalc(&p.scale_re(t), crate::linalg::FunTag::Exp2PiI)
        })
        .collect::<std::result::Result<_, _>>()?;
    let fun = crate::conegrid::GridFun::new(samples, false, false)?;
    Ok(UnitaryLoop::new(fun)?)
}

/// Class of a Q-valued representation per the cell's Λ pairing.
pub fn class_of_q_rep<T: Scalar>(cell: &CellDiagram, rep: &QRep<T>) -> Result<i64> {
    match (cell.kind, rep) {
        (CellKind::Index, QRep::ToepG2(t)) => {
            let rel = t.relation_residual()?;
            if rel > 1e-7 {
                return Err(BoundaryError::QRepResidual { residual: rel, tol: 1e-7 });
            }
            let ideal = t.ideal_residual();
            if ideal > 1e-8 {
                return Err(BoundaryError::QRepResidual { residual: ideal, tol: 1e-8 });
            }
            let (re, im) = t.class_pre_round()?;
            let class = re.round();
            let drift = (re - class).abs().max(im.abs());
            if drift > 1e-6 {
                return Err(BoundaryError::Drift(drift));
            }
            Ok(class as i64)
        }
        (CellKind::Exponential, QRep::Loop(l)) | (CellKind::Cone, QRep::Loop(l)) => {
            Ok(l.winding()?)
        }
        _ => Err(BoundaryError::CellModelMismatch { cell: cell.kind.name(), model: "q-rep" }),
    }
}

/// Q-valued representation handed to [`class_of_q_rep`].
#[derive(Debug, Clone)]
pub enum QRep<T: Scalar> {
    ToepG2(ToepG2Rep<T>),
    Loop(UnitaryLoop<T>),
}
