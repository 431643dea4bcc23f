use super::CMat;
use crate::scalar::{c_zero, Cplx, Scalar};


/// Singular values by one-sided Jacobi (column orthogonalization),
/// descending. Works for rectangular input; accurate to near machine
/// precision for the small matrices used here.
pub fn singular_values<T: Scalar>(m: &CMat<T>) -> Vec<T> {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return vec![];
    }
    let mut a: Vec<Vec<Cplx<T>>> =
        (0..cols).map(|j| (0..rows).map(|i| m[(i, j)]).collect()).collect();
    let eps = T::from_f64(1e-15).unwrap();
    // Below this, |apq|² underflows and the phase division degenerates.
    let floor = T::min_positive_value().sqrt();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let (app, aqq, apq) = col_gram(&a[p], &a[q]);
                let thresh = eps * app.sqrt() * aqq.sqrt();
                if apq.norm() <= thresh || apq.norm() < floor {
                    continue;
                }
                rotated = true;
                // Diagonalize [[app, apq], [conj(apq), aqq]].
                let b = apq.norm();
                let phase = apq / Cplx::new(b, T::zero());
                let tau = (aqq - app) / (b + b);
                let t = {
                    let root = (T::one() + tau * tau).sqrt();
                    if tau >= T::zero() {
                        T::one() / (tau + root)
                    } else {
                        -T::one() / (-tau + root)
                    }
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let v11 = Cplx::new(c, T::zero());
                let v12 = Cplx::new(s, T::zero());
                let v21 = -phase.conj() * s;
                let v22 = phase.conj() * c;
                for i in 0..rows {
                    let x = a[p][i];
                    let y = a[q][i];
                    a[p][i] = x * v11 + y * v21;
                    a[q][i] = x * v12 + y * v22;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = a
        .iter()
        .map(|col| col.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

fn col_gram<T: Scalar>(p: &[Cplx<T>], q: &[Cplx<T>]) -> (T, T, Cplx<T>) {
    let mut app = T::zero();
    let mut aqq = T::zero();
    let mut apq = c_zero();
    for (x, y) in p.iter().zip(q) {
        app += x.norm_sqr();
        aqq += y.norm_sqr();
        apq += x.conj() * *y;
    }
    (app, aqq, apq)
}

/// Operator (spectral) norm: largest singular value.
pub fn op_norm<T: Scalar>(m: &CMat<T>) -> T {
    singular_values(m).first().copied().unwrap_or_else(T::zero)
}

/// Numerical rank: singular values above `cutoff`.
pub fn rank_with_cutoff<T: Scalar>(m: &CMat<T>, cutoff: T) -> usize {
    singular_values(m).iter().filter(|&&s| s > cutoff).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_unitary, SeedRng};
    use num_complex::Complex;

    type M = CMat<f64>;

    #[test]
    fn zero_matrix_norm() {
        assert_eq!(op_norm(&M::zeros(4, 3)), 0.0);
    }

    #[test]
    fn unitary_norm_one() {
        let mut rng = SeedRng::new(5);
        let u = random_unitary::<f64>(7, &mut rng);
        assert!((op_norm(&u) - 1.0).abs() < 1e-12);
        for s in singular_values(&u) {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diagonal_singular_values() {
        let d = M::diag(&[Complex::new(3.0, 0.0), Complex::new(0.0, -4.0)]);
        let sv = singular_values(&d);
        assert!((sv[0] - 4.0).abs() < 1e-13);
        assert!((sv[1] - 3.0).abs() < 1e-13);
        assert!((op_norm(&d) - 4.0).abs() < 1e-13);
    }

    #[test]
    fn rank_of_projection() {
        let p = crate::linalg::random_projection::<f64>(6, 2, 17).unwrap();
        assert_eq!(rank_with_cutoff(&p, 1e-8), 2);
    }

    #[test]
    fn rectangular_rank() {
        // 3x2 with one dependent column pair structure.
        let m = M::from_fn(3, 2, |i, j| Complex::new((i + 1) as f64 * (j + 1) as f64, 0.0));
        assert_eq!(rank_with_cutoff(&m, 1e-10), 1);
    }

    #[test]
    fn matches_gram_eigendata() {
        let mut rng = SeedRng::new(23);
        let g = rng.gaussian_matrix::<f64>(6, 6);
        let sv = singular_values(&g);
        let gram = g.adjoint().matmul(&g);
        let eig = crate::linalg::herm_eig(&gram).unwrap();
        let mut from_eig: Vec<f64> =
            eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
        from_eig.reverse();
        for (a, b) in sv.iter().zip(from_eig) {
            assert!((a - b).abs() < 1e-9 * sv[0].max(1.0), "{a} vs {b}");
        }
    }
}
