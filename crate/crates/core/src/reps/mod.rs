//! Concrete matrix representations of presentations: relation checking,
//! representation factories, generator-map pullbacks, homotopy families, and
//! the extension reconstruction.

mod eval;
mod factory;
mod genmap;
mod homotopy;
mod reconstruct;

pub use eval::{eval_expr, eval_ncpoly};
pub use factory::{g2st_rep_from_contraction, p_rep_from_pair, qc_rep_from_projections};
pub use genmap::{
    amplify_e11, apply_genmap, certify_genmap_numeric, genmap_by_name, support_pres, GenMap,
};
pub use homotopy::{
    lambda_rho_homotopy_at, null_homotopy_at, null_homotopy_first, null_homotopy_second,
    rho_lambda_homotopy_at,
};
pub use reconstruct::{reconstruct_extension, Reconstruction};

use crate::linalg::{herm_eig, op_norm, CMat, LinalgError};
use crate::presentations::{registry_get, Presentation, Relation};
use crate::scalar::Scalar;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("missing image for generator `{0}`")]
    MissingImage(String),
    #[error("generator images must be square matrices of one size ({0})")]
    ImageShape(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("input fails `{what}`: residual {residual:.3e} exceeds {tol:.3e}")]
    InputResidual { what: &'static str, residual: f64, tol: f64 },
    #[error("representation of {pres} fails relations: worst residual {residual:.3e} > {tol:.3e} ({desc})")]
    RelationsFail { pres: String, residual: f64, tol: f64, desc: String },
    #[error("parameter {name}={value} outside [{lo}, {hi}]")]
    ParamRange { name: &'static str, value: f64, lo: f64, hi: f64 },
    #[error("genmap `{map}` expects target {expected}, got {found}")]
    TargetMismatch { map: String, expected: String, found: String },
    #[error("spectrum of reconstructed contraction outside [-{0:.1e}, 1+{0:.1e}]")]
    SpectrumOutOfRange(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Pres(#[from] crate::presentations::PresError),
}

pub type Result<V> = std::result::Result<V, RepError>;

/// Cached shared handles for the registry presentations.
pub fn pres_arc(name: &str) -> Arc<Presentation> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<String, Arc<Presentation>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(name.to_string())
        .or_insert_with(|| Arc::new(registry_get(name).expect("registry name")))
        .clone()
}

/// Assignment of matrices to the generators of a presentation.
#[derive(Debug, Clone)]
pub struct Rep<T: Scalar> {
    pub pres: Arc<Presentation>,
    pub dim: usize,
    images: BTreeMap<String, CMat<T>>,
}

impl<T: Scalar> Rep<T> {
    pub fn new(pres: Arc<Presentation>, images: BTreeMap<String, CMat<T>>) -> Result<Self> {
        let mut dim = None;
        for g in &pres.generators {
            let m = images.get(g).ok_or_else(|| RepError::MissingImage(g.clone()))?;
            if !m.is_square() {
                return Err(RepError::ImageShape(format!("{g} is {}x{}", m.rows(), m.cols())));
            }
            match dim {
                None => dim = Some(m.rows()),
                Some(d) if d == m.rows() => {}
                Some(d) => {
                    return Err(RepError::ImageShape(format!("{g} is {}x{}, expected {d}x{d}", m.rows(), m.cols())));
                }
            }
        }
        let dim = dim.ok_or_else(|| RepError::ImageShape("presentation has no generators".into()))?;
        Ok(Self { pres, dim, images })
    }

    pub fn image(&self, gen: &str) -> &CMat<T> {
        &self.images[gen]
    }

    pub fn images(&self) -> &BTreeMap<String, CMat<T>> {
        &self.images
    }

    /// Zero representation of the same presentation in dimension d.
    pub fn zero_of(pres: Arc<Presentation>, d: usize) -> Self {
        let images = pres.generators.iter().map(|g| (g.clone(), CMat::zeros(d, d))).collect();
        Self { dim: d, pres, images }
    }

    /// Conjugate every image by a unitary.
    pub fn conjugate(&self, u: &CMat<T>) -> Self {
        let ua = u.adjoint();
        let images = self
            .images
            .iter()
            .map(|(g, m)| (g.clone(), u.matmul(m).matmul(&ua)))
            .collect();
        Self { pres: self.pres.clone(), dim: self.dim, images }
    }

    /// Direct sum with a zero block of dimension `extra`.
    pub fn pad(&self, extra: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|(g, m)| (g.clone(), m.pad_to(self.dim + extra)))
            .collect();
        Self { pres: self.pres.clone(), dim: self.dim + extra, images }
    }

    /// Amplify by e₁₁: images g ↦ diag(g, 0) in doubled dimension.
    pub fn amplify_e11_numeric(&self) -> Self {
        let e11 = CMat::unit(2, 0, 0);
        let images = self
            .images
            .iter()
            .map(|(g, m)| (g.clone(), m.kron_left(&e11)))
            .collect();
        Self { pres: self.pres.clone(), dim: 2 * self.dim, images }
    }

    /// Largest pairwise distance to another representation's images.
    pub fn distance(&self, other: &Rep<T>) -> T {
        let mut worst = T::zero();
        for (g, m) in &self.images {
            let d = op_norm(&(m - other.image(g)));
            worst = worst.max(d);
        }
        worst
    }
}

/// Residual of one relation, as reported by [`check_relations`].
#[derive(Debug, Clone)]
pub struct RelEntry {
    pub index: usize,
    pub kind: &'static str,
    pub residual: f64,
}

/// Relation-by-relation residual report.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub entries: Vec<RelEntry>,
    pub tol: f64,
    pub pass: bool,
    pub worst: Option<usize>,
}

impl RelationReport {
    pub fn worst_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn require(self, pres: &str) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            let worst = self.worst.unwrap_or(0);
            let desc = format!("relation #{worst} ({})", self.entries[worst].kind);
            Err(RepError::RelationsFail {
                pres: pres.to_string(),
                residual: self.worst_residual(),
                tol: self.tol,
                desc,
            })
        }
    }
}

/// Evaluate every (expanded) relation of the representation's presentation.
///
/// Residuals: eq(E, F) ↦ ‖E − F‖ (operator norm), range01(E) ↦
/// max(0, −λ_min, λ_max − 1), normle(E, c) ↦ max(0, ‖E‖ − c).
pub fn check_relations<T: Scalar>(rep: &Rep<T>, tol: f64) -> Result<RelationReport> {
    let expanded = rep.pres.expanded_relations();
    let mut entries = Vec::with_capacity(expanded.len());
    for (index, rel) in expanded.iter().enumerate() {
        let residual = match rel {
            Relation::Eq(a, b) => {
                let ma = eval::eval_to_mat(rep, a, None)?;
                let mb = eval::eval_to_mat(rep, b, Some((ma.rows(), ma.cols())))?;
                if (ma.rows(), ma.cols()) != (mb.rows(), mb.cols()) {
                    // One side may still be scalar-like; re-evaluate with the
                    // other side's shape.
                    let ma2 = eval::eval_to_mat(rep, a, Some((mb.rows(), mb.cols())))?;
                    op_norm(&(&ma2 - &mb)).to_f64().unwrap()
                } else {
                    op_norm(&(&ma - &mb)).to_f64().unwrap()
                }
            }
            Relation::Range01(e) => {
                let m = eval::eval_to_mat(rep, e, None)?;
                let half = T::from_f64(0.5).unwrap();
                let sym = (&m + &m.adjoint()).scale_re(half);
                let eig = herm_eig(&sym)?;
                let lo = eig.eigenvalues.first().copied().unwrap_or_else(T::zero);
                let hi = eig.eigenvalues.last().copied().unwrap_or_else(T::zero);
                let lo = lo.to_f64().unwrap();
                let hi = hi.to_f64().unwrap();
                (-lo).max(hi - 1.0).max(0.0)
            }
            Relation::NormLe(e, c) => {
                let m = eval::eval_to_mat(rep, e, None)?;
                let bound = c.to_f64().unwrap_or(f64::INFINITY);
                (op_norm(&m).to_f64().unwrap() - bound).max(0.0)
            }
            other => {
                return Err(RepError::Eval(format!(
                    "unexpanded relation kind `{}`",
                    other.kind()
                )))
            }
        };
        entries.push(RelEntry { index, kind: rel.kind(), residual });
    }
    let worst = entries
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.residual.partial_cmp(&b.residual).unwrap())
        .map(|(i, _)| i);
    let pass = entries.iter().all(|e| e.residual <= tol);
    Ok(RelationReport { entries, tol, pass, worst })
}
