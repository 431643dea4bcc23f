/// How an integer class is extracted from a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingKind {
    /// round(tr(h) − tr(k)) style trace pairing against a K₀ generator.
    TraceDiff,
    /// Winding of a determinant loop against a K₁ generator.
    DetWinding,
}

/// The shipped cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Index,
    Exponential,
    Cone,
}

impl CellKind {
    pub fn name(&self) -> &'static str {
        match self {
            CellKind::Index => "index",
            CellKind::Exponential => "exponential",
            CellKind::Cone => "cone",
        }
    }
}

/// Descriptor of a cell: the presentations at the Q, P (projective middle)
/// and R corners, the parity, which pairing realizes each side's class, and
/// the sign convention tying them together.
#[derive(Debug, Clone)]
pub struct CellDiagram {
    pub kind: CellKind,
    pub q_name: String,
    pub p_name: String,
    pub r_name: String,
    /// K-theory degree of the R side.
    pub parity: u8,
    /// Class extractor on the R (input) side.
    pub xi: PairingKind,
    /// Class extractor on the Q (output) side.
    pub lambda: PairingKind,
    pub sign_convention: &'static str,
    pub default_grid: usize,
}

/// The index cell: 0 → V → D → C₀(0,1) → 0 with ψ₀: G2st → V; realized on
/// the Toeplitz model. Output class = −(input winding): the Fredholm index
/// of the lift, so ∂[z^w] = −w.
pub fn index_cell() -> CellDiagram {
    CellDiagram {
        kind: CellKind::Index,
        q_name: "G2st".into(),
        p_name: "D".into(),
        r_name: "C0_01".into(),
        parity: 1,
        xi: PairingKind::DetWinding,
        lambda: PairingKind::TraceDiff,
        sign_convention: "output = -input (class is the Fredholm index of the lift a)",
        default_grid: 512,
    }
}

/// The exponential cell: 0 → U → 𝒫 → qC → 0 with ψ₀: C₀(0,1) → U; realized
/// on the cone-grid model. Output class = +input trace class.
pub fn exponential_cell() -> CellDiagram {
    CellDiagram {
        kind: CellKind::Exponential,
        q_name: "C0_01".into(),
        p_name: "P".into(),
        r_name: "qC".into(),
        parity: 0,
        xi: PairingKind::TraceDiff,
        lambda: PairingKind::DetWinding,
        sign_convention: "output = +input (winding of det u equals tr(k0) - tr(h0))",
        default_grid: 512,
    }
}

/// The cone cell over M_n: 0 → SM_n → CM_n → M_n → 0 with ψ₀ = id on the
/// suspension. Output class = +input rank.
pub fn cone_cell(n: usize) -> CellDiagram {
    CellDiagram {
        kind: CellKind::Cone,
        q_name: format!("SM{n}"),
        p_name: format!("ConeMn({n})"),
        r_name: format!("M{n}"),
        parity: 0,
        xi: PairingKind::TraceDiff,
        lambda: PairingKind::DetWinding,
        sign_convention: "output = +input (winding of det e^{2pi i t p} equals rank p)",
        default_grid: 256,
    }
}
