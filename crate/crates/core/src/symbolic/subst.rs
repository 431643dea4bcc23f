use super::poly::{NCPoly, PolyMat, SymVal};
use super::{Result, SymError};
use std::collections::BTreeMap;

/// Homomorphic substitution of generator images into a polynomial.
///
/// Images are entry-level polynomials or block matrices; in the block case
/// all images must share one square shape, the empty word maps to the block
/// identity, and starred letters map to the adjoint of the image.
pub fn substitute_genmap(target: &NCPoly, images: &BTreeMap<String, SymVal>) -> Result<SymVal> {
    let mut shape: Option<usize> = None;
    for v in images.values() {
        if let SymVal::Mat(m) = v {
            if m.rows != m.cols {
                return Err(SymError::ShapeMismatch(format!(
                    "non-square image {}x{}",
                    m.rows, m.cols
                )));
            }
            match shape {
                None => shape = Some(m.rows),
                Some(n) if n == m.rows => {}
                Some(n) => {
                    return Err(SymError::ShapeMismatch(format!(
                        "image shapes {n} vs {}",
                        m.rows
                    )))
                }
            }
        }
    }

    match shape {
        None => {
            // Entry-level substitution.
            let mut acc = NCPoly::zero();
            for (w, c) in target.terms() {
                let mut prod = NCPoly::unit();
                for letter in &w.0 {
                    let img = images
                        .get(&letter.name)
                        .ok_or_else(|| SymError::MissingImage(letter.name.clone()))?;
                    let p = img.clone().into_poly()?;
                    let p = if letter.star { p.adjoint() } else { p };
                    prod = prod * p;
                }
                acc = acc + prod.scale(c);
            }
            Ok(SymVal::Poly(acc))
        }
        Some(n) => {
            let mut acc = PolyMat::zero(n, n);
            for (w, c) in target.terms() {
                let mut prod = PolyMat::identity(n);
                for letter in &w.0 {
                    let img = images
                        .get(&letter.name)
                        .ok_or_else(|| SymError::MissingImage(letter.name.clone()))?;
                    let m = match img {
                        SymVal::Mat(m) => m.clone(),
                        SymVal::Poly(p) => {
                            return Err(SymError::ShapeMismatch(format!(
                                "entry-level image `{p}` mixed with {n}x{n} blocks"
                            )))
                        }
                        SymVal::Scalar(c) => PolyMat::scalar(n, c.clone()),
                    };
                    let m = if letter.star { m.adjoint() } else { m };
                    prod = prod.matmul(&m);
                }
                let mut scaled = PolyMat::zero(n, n);
                for ((i, j), p) in prod.entries() {
                    scaled[(i, j)] = p.scale(c);
                }
                acc = acc.add(&scaled);
            }
            Ok(SymVal::Mat(acc))
        }
    }
}
