use super::{check_relations, eval, pres_arc, Rep, RepError, Result};
use crate::presentations::{parse_expr_str, Presentation, StarExpr};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A *-homomorphism between presented algebras, given on generators. The
/// pullback direction is computational: a representation of the target
/// yields one of the source.
#[derive(Debug, Clone)]
pub struct GenMap {
    pub name: String,
    pub source: Arc<Presentation>,
    pub target: Arc<Presentation>,
    pub images: BTreeMap<String, StarExpr>,
}

impl GenMap {
    pub fn new(
        name: &str,
        source: Arc<Presentation>,
        target: Arc<Presentation>,
        images: &[(&str, &str)],
    ) -> Self {
        let images = images
            .iter()
            .map(|(g, src)| {
                (g.to_string(), parse_expr_str(src).expect("genmap image parses"))
            })
            .collect();
        Self { name: name.to_string(), source, target, images }
    }
}

const PULLBACK_PRE_TOL: f64 = 1e-8;

/// Pull a target representation back along the map: evaluate each generator
/// image. Fails if the input does not satisfy the target relations at 1e−8.
pub fn apply_genmap<T: Scalar>(map: &GenMap, rep: &Rep<T>) -> Result<Rep<T>> {
    if rep.pres.name != map.target.name {
        return Err(RepError::TargetMismatch {
            map: map.name.clone(),
            expected: map.target.name.clone(),
            found: rep.pres.name.clone(),
        });
    }
    check_relations(rep, PULLBACK_PRE_TOL)?.require(&rep.pres.name)?;
    let mut images = BTreeMap::new();
    for g in &map.source.generators {
        let expr = map
            .images
            .get(g)
            .ok_or_else(|| RepError::MissingImage(format!("{} in genmap {}", g, map.name)))?;
        images.insert(g.clone(), eval::eval_expr(rep, expr)?);
    }
    Rep::new(map.source.clone(), images)
}

/// Numeric certification: pull back sample representations and report the
/// worst source-relation residual.
pub fn certify_genmap_numeric<T: Scalar>(map: &GenMap, samples: &[Rep<T>]) -> Result<f64> {
    let mut worst = 0.0f64;
    for rep in samples {
        let pulled = apply_genmap(map, rep)?;
        let report = check_relations(&pulled, 1.0)?;
        worst = worst.max(report.worst_residual());
    }
    Ok(worst)
}

/// Free-product support presentations for maps whose target is not a
/// registry algebra: a projection with a positive contraction, and a pair
/// of projections.
pub fn support_pres(name: &str) -> Option<Arc<Presentation>> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<String, Arc<Presentation>>>> =
        OnceLock::new();
    let src = match name {
        "FreePC01" => {
            "presentation FreePC01 nonunital { gen p, l; rel proj(p); rel range01(l); }"
        }
        "FreePP" => "presentation FreePP nonunital { gen p0, q0; rel proj(p0); rel proj(q0); }",
        _ => return None,
    };
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap();
    Some(
        guard
            .entry(name.to_string())
            .or_insert_with(|| {
                Arc::new(crate::presentations::parse_presentation(src).expect("support source"))
            })
            .clone(),
    )
}

/// Shipped generator maps.
///
/// - `rho`: G2st → qC, h ↦ h₀ (a surjection; pullback turns qC reps into
///   G2st reps).
/// - `lambda`: qC → M₂(G2st), h₀ ↦ h⊗e₁₁, k₀ ↦ k⊗e₂₂, x₀ ↦ x⊗e₂₁.
/// - `eta`: the flip automorphism of G2st, h ↔ k, x ↦ x*.
/// - `eta_p`: 𝒫 → qC, h ↦ h₀ (softened relations hold a fortiori).
/// - `unitize`: G2nc → (G2st)~, a ↦ 1−h, b ↦ k, c ↦ x.
/// - `forget_unit`: G2st → G2nc, h ↦ 1−a, k ↦ b, x ↦ c.
/// - `theta`: 𝒫 ↪ ℂ∗C₀(0,1], h ↦ p−plp, k ↦ (1−p)l(1−p), x ↦ (1−p)lp.
/// - `theta0`: qC ↪ ℂ∗ℂ, the same images with q₀ in place of l.
/// - `eta1`: ℂ∗C₀(0,1] → ℂ∗ℂ, p ↦ p₀, l ↦ q₀.
pub fn genmap_by_name(name: &str) -> Option<GenMap> {
    let map = match name {
        "rho" => GenMap::new(
            "rho",
            pres_arc("G2st"),
            pres_arc("qC"),
            &[("h", "h0"), ("k", "k0"), ("x", "x0")],
        ),
        "lambda" => GenMap::new(
            "lambda",
            pres_arc("qC"),
            pres_arc("G2st"),
            &[
                ("h0", "[[h, 0], [0, 0]]"),
                ("k0", "[[0, 0], [0, k]]"),
                ("x0", "[[0, 0], [x, 0]]"),
            ],
        ),
        "eta" => GenMap::new(
            "eta",
            pres_arc("G2st"),
            pres_arc("G2st"),
            &[("h", "k"), ("k", "h"), ("x", "adj(x)")],
        ),
        "eta_p" => GenMap::new(
            "eta_p",
            pres_arc("P"),
            pres_arc("qC"),
            &[("h", "h0"), ("k", "k0"), ("x", "x0")],
        ),
        "unitize" => GenMap::new(
            "unitize",
            pres_arc("G2nc"),
            pres_arc("G2st"),
            &[("a", "1 - h"), ("b", "k"), ("c", "x")],
        ),
        "forget_unit" => GenMap::new(
            "forget_unit",
            pres_arc("G2st"),
            pres_arc("G2nc"),
            &[("h", "1 - a"), ("k", "b"), ("x", "c")],
        ),
        "theta" => GenMap::new(
            "theta",
            pres_arc("P"),
            support_pres("FreePC01")?,
            &[
                ("h", "p - p*l*p"),
                ("k", "(1 - p)*l*(1 - p)"),
                ("x", "(1 - p)*l*p"),
            ],
        ),
        "theta0" => GenMap::new(
            "theta0",
            pres_arc("qC"),
            support_pres("FreePP")?,
            &[
                ("h0", "p0 - p0*q0*p0"),
                ("k0", "(1 - p0)*q0*(1 - p0)"),
                ("x0", "(1 - p0)*q0*p0"),
            ],
        ),
        "eta1" => GenMap::new(
            "eta1",
            support_pres("FreePC01")?,
            support_pres("FreePP")?,
            &[("p", "p0"), ("l", "q0")],
        ),
        _ => return None,
    };
    Some(map)
}

/// id ⊗ e₁₁ amplification of any presentation into 2×2 blocks.
pub fn amplify_e11(pres: Arc<Presentation>) -> GenMap {
    let images = pres
        .generators
        .iter()
        .map(|g| {
            (
                g.clone(),
                parse_expr_str(&format!("[[{g}, 0], [0, 0]]")).expect("amplification image"),
            )
        })
        .collect();
    GenMap {
        name: format!("{}⊗e11", pres.name),
        source: pres.clone(),
        target: pres,
        images,
    }
}
