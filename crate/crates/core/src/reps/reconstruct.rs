use super::{check_relations, p_rep_from_pair, Rep, RepError, Result};
use crate::linalg::{herm_eig, CMat};
use crate::scalar::{c_one, c_zero, Scalar};
use std::collections::BTreeMap;

/// Output of [`reconstruct_extension`].
#[derive(Debug, Clone)]
pub struct Reconstruction<T: Scalar> {
    /// Spectral support projection of the h-image.
    pub support: CMat<T>,
    /// The reconstructed positive contraction r − h + x + x* + k.
    pub lhat: CMat<T>,
    /// Representation rebuilt from (support, lhat) through the θ formulas.
    pub rebuilt: Rep<T>,
    /// Worst image distance original vs rebuilt.
    pub roundtrip_residual: f64,
}

const PRE_TOL: f64 = 1e-9;
const SUPPORT_CUTOFF: f64 = 1e-8;
const SPECTRUM_SLACK: f64 = 1e-7;

/// Reverse the θ factory: from a 𝒫 representation, recover a projection r
/// (the support of h) and a positive contraction l̂ = r − h + x + x* + k
/// that reproduce the images through p_rep_from_pair.
pub fn reconstruct_extension<T: Scalar>(rep: &Rep<T>) -> Result<Reconstruction<T>> {
    check_relations(rep, PRE_TOL)?.require("P")?;
    let (h, k, x) = (rep.image("h"), rep.image("k"), rep.image("x"));
    let half = T::from_f64(0.5).unwrap();
    let sym = (h + &h.adjoint()).scale_re(half);
    let eig = herm_eig(&sym)?;
    let hnorm = eig
        .eigenvalues
        .iter()
        .fold(T::zero(), |acc, l| acc.max(l.abs()));
    let cutoff = T::from_f64(SUPPORT_CUTOFF).unwrap() * hnorm.max(T::from_f64(1e-300).unwrap());
    let support = eig.map(|l| if l > cutoff { c_one() } else { c_zero() });

    let lhat = &(&(&support - h) + &(x + &x.adjoint())) + k;
    let slack = T::from_f64(SPECTRUM_SLACK).unwrap();
    let leig = herm_eig(&(&lhat + &lhat.adjoint()).scale_re(half))?;
    let lo = leig.eigenvalues.first().copied().unwrap_or_else(T::zero);
    let hi = leig.eigenvalues.last().copied().unwrap_or_else(T::zero);
    if lo < -slack || hi > T::one() + slack {
        return Err(RepError::SpectrumOutOfRange(SPECTRUM_SLACK));
    }
    // Clamp the spectrum into [0, 1] before feeding the factory, which
    // enforces the tighter input tolerance.
    let l_clamped = leig.map(|l| {
        let clamped = l.max(T::zero()).min(T::one());
        crate::scalar::c_re(clamped)
    });

    let rebuilt = p_rep_from_pair(&support, &l_clamped)?;
    let mut worst = T::zero();
    let mut images = BTreeMap::new();
    for g in ["h", "k", "x"] {
        let dist = crate::linalg::op_norm(&(rep.image(g) - rebuilt.image(g)));
        worst = worst.max(dist);
        images.insert(g.to_string(), rebuilt.image(g).clone());
    }
    Ok(Reconstruction {
        support,
        lhat,
        rebuilt,
        roundtrip_residual: worst.to_f64().unwrap(),
    })
}
