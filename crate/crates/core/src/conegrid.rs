//! Grid models of cones and suspensions over matrix algebras: the linear
//! cone lift of a qC representation, the exponential-map boundary through
//! u = −1 + Σᵢⱼ vᵢⱼ with v = e^{2πiP}, and winding-number class extraction.

use crate::linalg::{herm_funcalc, op_norm, CMat, FunTag, LinalgError};
use crate::reps::{check_relations, pres_arc, Rep, RepError};
use crate::scalar::{Cplx, Scalar};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("endpoint flagged as vanishing has norm {0:.3e}")]
    EndpointNotVanishing(f64),
    #[error("u(t) fails unitarity: residual {0:.3e} (formula misuse)")]
    UnitarityFailure(f64),
    #[error("phase step {0:.3} ≥ π/2 even at the maximal grid; loop too fast")]
    PhaseStepTooLarge(f64),
    #[error("winding drift {0:.3e} exceeds tolerance")]
    WindingDrift(f64),
    #[error("zero sample in determinant loop at index {0}")]
    ZeroSample(usize),
    #[error("loop endpoints differ by {0:.3e}")]
    EndpointMismatch(f64),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<V> = std::result::Result<V, ConeError>;

/// Matrix-valued function sampled on t_j = j/G, j = 0..G.
#[derive(Debug, Clone)]
pub struct GridFun<T: Scalar> {
    samples: Vec<CMat<T>>,
    pub vanish_at_0: bool,
    pub vanish_at_1: bool,
}

const ENDPOINT_TOL: f64 = 1e-10;

impl<T: Scalar> GridFun<T> {
    pub fn new(samples: Vec<CMat<T>>, vanish_at_0: bool, vanish_at_1: bool) -> Result<Self> {
        assert!(samples.len() >= 2, "need at least the two endpoints");
        let f = Self { samples, vanish_at_0, vanish_at_1 };
        if vanish_at_0 {
            let n = op_norm(f.at(0)).to_f64().unwrap();
            if n > ENDPOINT_TOL {
                return Err(ConeError::EndpointNotVanishing(n));
            }
        }
        if vanish_at_1 {
            let n = op_norm(f.at(f.grid())).to_f64().unwrap();
            if n > ENDPOINT_TOL {
                return Err(ConeError::EndpointNotVanishing(n));
            }
        }
        Ok(f)
    }

    /// Sample the function t ↦ f(t) on a grid of size G.
    pub fn sample(grid: usize, dim: usize, mut f: impl FnMut(T) -> CMat<T>) -> Self {
        let samples: Vec<CMat<T>> = (0..=grid)
            .map(|j| {
                let t = T::from_usize(j).unwrap() / T::from_usize(grid).unwrap();
                let m = f(t);
                assert_eq!((m.rows(), m.cols()), (dim, dim));
                m
            })
            .collect();
        Self { samples, vanish_at_0: false, vanish_at_1: false }
    }

    pub fn grid(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.samples[0].rows()
    }

    pub fn at(&self, j: usize) -> &CMat<T> {
        &self.samples[j]
    }

    pub fn samples(&self) -> &[CMat<T>] {
        &self.samples
    }

    /// Evaluation at t = 1 (the quotient map of the cone extension).
    pub fn eval_at_one(&self) -> CMat<T> {
        self.samples[self.grid()].clone()
    }

    /// Largest sample norm (the C*-norm on the grid model).
    pub fn sup_norm(&self) -> f64 {
        self.samples
            .iter()
            .map(|m| op_norm(m).to_f64().unwrap())
            .fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl FnMut(&CMat<T>) -> CMat<T>) -> Self {
        Self {
            samples: self.samples.iter().map(f).collect(),
            vanish_at_0: false,
            vanish_at_1: false,
        }
    }
}

/// Unitary loop based at the identity, with winding-friendly sampling.
#[derive(Debug, Clone)]
pub struct UnitaryLoop<T: Scalar> {
    pub fun: GridFun<T>,
    pub unitarity_residual: f64,
}

const LOOP_BASE_TOL: f64 = 1e-8;

impl<T: Scalar> UnitaryLoop<T> {
    pub fn new(fun: GridFun<T>) -> Result<Self> {
        let d = fun.dim();
        let id = CMat::identity(d);
        let mut worst = 0.0f64;
        for m in fun.samples() {
            let r = op_norm(&(&m.adjoint().matmul(m) - &id)).to_f64().unwrap();
            worst = worst.max(r);
        }
        if worst > 1e-6 {
            return Err(ConeError::UnitarityFailure(worst));
        }
        let e0 = op_norm(&(fun.at(0) - &id)).to_f64().unwrap();
        let e1 = op_norm(&(&fun.eval_at_one() - &id)).to_f64().unwrap();
        if e0 > LOOP_BASE_TOL || e1 > LOOP_BASE_TOL {
            return Err(ConeError::EndpointMismatch(e0.max(e1)));
        }
        Ok(Self { fun, unitarity_residual: worst })
    }

    /// Winding number of the determinant loop.
    pub fn winding(&self) -> Result<i64> {
        let dets: Vec<Cplx<T>> = self.fun.samples().iter().map(|m| m.det()).collect();
        winding(&dets)
    }
}

/// Integer winding of a loop of nonzero complex samples: sum of principal
/// phase steps over 2π, rounded, with drift reported against 1e−6.
pub fn winding<T: Scalar>(samples: &[Cplx<T>]) -> Result<i64> {
    if samples.len() < 2 {
        return Err(ConeError::EndpointMismatch(f64::INFINITY));
    }
    let first = samples[0];
    let last = samples[samples.len() - 1];
    let gap = (first - last).norm().to_f64().unwrap();
    if gap > 1e-6 * first.norm().to_f64().unwrap().max(1e-12) {
        return Err(ConeError::EndpointMismatch(gap));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut total = 0.0f64;
    for (j, pair) in samples.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if a.norm().to_f64().unwrap() < 1e-300 {
            return Err(ConeError::ZeroSample(j));
        }
        if b.norm().to_f64().unwrap() < 1e-300 {
            return Err(ConeError::ZeroSample(j + 1));
        }
        let step = (b / a).arg().to_f64().unwrap();
        if step.abs() >= half_pi {
            return Err(ConeError::PhaseStepTooLarge(step.abs()));
        }
        total += step;
    }
    let raw = total / std::f64::consts::TAU;
    let class = raw.round();
    let drift = (raw - class).abs();
    if drift > 1e-6 {
        return Err(ConeError::WindingDrift(drift));
    }
    Ok(class as i64)
}

/// The triple of grid functions lifting a qC representation through the
/// softened relations: h(t) = t·h₀, k(t) = t·k₀, x(t) = t·x₀. The block
/// P(t) is the convex combination (1−t)·diag(1, 0) + t·P₀, so the softened
/// relations hold at every sample and evaluation at t = 1 is the input.
#[derive(Debug, Clone)]
pub struct ConeLift<T: Scalar> {
    pub h: GridFun<T>,
    pub k: GridFun<T>,
    pub x: GridFun<T>,
}

const QC_INPUT_TOL: f64 = 1e-9;

pub fn cone_lift_qc<T: Scalar>(rep: &Rep<T>, grid: usize) -> Result<ConeLift<T>> {
    check_relations(rep, QC_INPUT_TOL)?.require("qC")?;
    let d = rep.dim;
    let lift = |name: &'static str| {
        let img = rep.image(name).clone();
        GridFun::sample(grid, d, move |t| img.scale_re(t))
    };
    Ok(ConeLift { h: lift("h0"), k: lift("k0"), x: lift("x0") })
}

impl<T: Scalar> ConeLift<T> {
    /// The 2d×2d block P(t) at sample j.
    pub fn block_at(&self, j: usize) -> CMat<T> {
        let d = self.h.dim();
        let id = CMat::identity(d);
        let h = self.h.at(j);
        let k = self.k.at(j);
        let x = self.x.at(j);
        CMat::from_blocks(&[
            vec![&id - h, x.adjoint()],
            vec![x.clone(), k.clone()],
        ])
    }

    /// Per-sample residual report of the softened (𝒫) relations.
    pub fn relation_residual(&self) -> Result<f64> {
        let p_pres = pres_arc("P");
        let mut worst = 0.0f64;
        for j in 0..=self.h.grid() {
            let mut images = BTreeMap::new();
            images.insert("h".to_string(), self.h.at(j).clone());
            images.insert("k".to_string(), self.k.at(j).clone());
            images.insert("x".to_string(), self.x.at(j).clone());
            let rep = Rep::new(p_pres.clone(), images)?;
            let report = check_relations(&rep, 1.0)?;
            worst = worst.max(report.worst_residual());
        }
        Ok(worst)
    }

    /// Evaluation at t = 1 reproduces the input triple.
    pub fn quotient_images(&self) -> (CMat<T>, CMat<T>, CMat<T>) {
        (self.h.eval_at_one(), self.k.eval_at_one(), self.x.eval_at_one())
    }
}

/// Output of the exponential boundary.
#[derive(Debug, Clone)]
pub struct ExpBoundary<T: Scalar> {
    pub lift: ConeLift<T>,
    pub loop_u: UnitaryLoop<T>,
    pub class: i64,
    pub grid: usize,
}

const MAX_GRID: usize = 1 << 15;

/// The exponential boundary of a qC representation: lift through the cone,
/// set v(t) = e^{2πiP(t)} and u(t) = −1 + Σᵢⱼ vᵢⱼ(t); the class is the
/// winding of det u. The grid doubles automatically (up to 2¹⁵) when the
/// phase steps are too coarse.
pub fn exp_boundary_u<T: Scalar>(rep: &Rep<T>, grid: usize) -> Result<ExpBoundary<T>> {
    exp_boundary_warped(rep, grid, |t| t)
}

/// Exponential boundary through a reparametrized cone lift h(t) = τ(t)·h₀
/// for a monotone clock τ with τ(0) = 0, τ(1) = 1 — a different choice of
/// lift of the same representation.
pub fn exp_boundary_warped<T: Scalar>(
    rep: &Rep<T>,
    grid: usize,
    tau: impl Fn(f64) -> f64 + Copy,
) -> Result<ExpBoundary<T>> {
    let mut g = grid.max(2);
    loop {
        match exp_boundary_at_grid(rep, g, tau) {
            Err(ConeError::PhaseStepTooLarge(_)) if g < MAX_GRID => {
                g *= 2;
            }
            other => return other,
        }
    }
}

fn exp_boundary_at_grid<T: Scalar>(
    rep: &Rep<T>,
    grid: usize,
    tau: impl Fn(f64) -> f64,
) -> Result<ExpBoundary<T>> {
    check_relations(rep, QC_INPUT_TOL)?.require("qC")?;
    let d = rep.dim;
    let lift = {
        let warp = |name: &'static str| {
            let img = rep.image(name).clone();
            GridFun::sample(grid, d, |t: T| {
                let w = tau(t.to_f64().unwrap()).clamp(0.0, 1.0);
                img.scale_re(T::from_f64(w).unwrap())
            })
        };
        ConeLift { h: warp("h0"), k: warp("k0"), x: warp("x0") }
    };
    let mut samples = Vec::with_capacity(grid + 1);
    let mut worst_unitarity = 0.0f64;
    let id = CMat::identity(d);
    for j in 0..=grid {
        let p = lift.block_at(j);
        let v = herm_funcalc(&p, FunTag::Exp2PiI)?;
        let mut u = -&id;
        for bi in 0..2 {
            for bj in 0..2 {
                u = &u + &v.block(bi, bj, d, d);
            }
        }
        let resid = op_norm(&(&u.adjoint().matmul(&u) - &id)).to_f64().unwrap();
        worst_unitarity = worst_unitarity.max(resid);
        if resid > 1e-6 {
            return Err(ConeError::UnitarityFailure(resid));
        }
        samples.push(u);
    }
    let fun = GridFun { samples, vanish_at_0: false, vanish_at_1: false };
    let loop_u = UnitaryLoop::new(fun)?;
    let class = loop_u.winding()?;
    Ok(ExpBoundary { lift, loop_u, class, grid })
}

/// The cone cell over M_n: a projection p determines φ (class = rank p) and
/// the suspension loop ψ(t) = e^{2πitp}; returns (rank p, winding of det ψ).
pub fn cone_cell_check<T: Scalar>(p: &CMat<T>, grid: usize) -> Result<(i64, i64)> {
    let idem = op_norm(&(&p.matmul(p) - p)).to_f64().unwrap();
    let herm = p.herm_defect().to_f64().unwrap();
    if idem.max(herm) > 1e-10 {
        return Err(ConeError::Rep(RepError::InputResidual {
            what: "projection p",
            residual: idem.max(herm),
            tol: 1e-10,
        }));
    }
    let trace = p.trace().re.to_f64().unwrap();
    let class_in = trace.round() as i64;
    let mut samples = Vec::with_capacity(grid + 1);
    for j in 0..=grid {
        let t = T::from_usize(j).unwrap() / T::from_usize(grid).unwrap();
        let v = herm_funcalc(&p.scale_re(t), FunTag::Exp2PiI)?;
        samples.push(v);
    }
    let fun = GridFun { samples, vanish_at_0: false, vanish_at_1: false };
    let loop_u = UnitaryLoop::new(fun)?;
    let class_out = loop_u.winding()?;
    Ok((class_in, class_out))
}
