//! Symmetric eigendecomposition by Householder tridiagonalization followed by
//! the implicit QL iteration with Wilkinson-style shifts.

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

use super::Tolerances;

/// Eigendecomposition `A = V diag(λ) V^T` of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymEig<T> {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<T>,
    /// Orthonormal eigenvectors stored as columns.
    pub eigenvectors: RealMatrix<T>,
}

impl<T: Scalar> SymEig<T> {
    /// `V diag(λ) V^T`.
    pub fn reconstruct(&self) -> RealMatrix<T> {
        let v = &self.eigenvectors;
        let n = v.rows();
        let scaled = RealMatrix::from_fn(n, n, |i, j| v[(i, j)] * self.eigenvalues[j]);
        scaled.matmul(&v.transpose())
    }
}

pub fn sym_eig<T: Scalar>(a: &RealMatrix<T>) -> Result<SymEig<T>> {
    sym_eig_with(a, &Tolerances::DEFAULT)
}

/// Eigenvalues ascending; each eigenvector is signed so that its entry of
/// largest magnitude is positive (lowest index wins ties).
pub fn sym_eig_with<T: Scalar>(a: &RealMatrix<T>, tol: &Tolerances) -> Result<SymEig<T>> {
    if !a.is_square() {
        return Err(Error::dim(format!(
            "sym_eig needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::param("matrix has non-finite entries"));
    }
    let residual = a.symmetry_residual();
    if residual > T::lit(tol.symmetry) {
        return Err(Error::NotSymmetric {
            residual: residual.to_f64_lossy(),
        });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(SymEig {
            eigenvalues: Vec::new(),
            eigenvectors: RealMatrix::zeros(0, 0),
        });
    }

    // Work on the exactly symmetrized input.
    let half = T::lit(0.5);
    let mut v = RealMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)]) * half);
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tridiagonalize(&mut v, &mut d, &mut e);
    tridiagonal_ql(&mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let eigenvalues: Vec<T> = order.iter().map(|&k| d[k]).collect();
    let mut eigenvectors = RealMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    fix_signs(&mut eigenvectors, T::lit(tol.sign_tie));
    Ok(SymEig {
        eigenvalues,
        eigenvectors,
    })
}

fn fix_signs<T: Scalar>(v: &mut RealMatrix<T>, tie: T) {
    let n = v.rows();
    for j in 0..v.cols() {
        let max = (0..n).fold(T::zero(), |m, i| m.max(v[(i, j)].abs()));
        let lead = (0..n)
            .find(|&i| v[(i, j)].abs() >= max - tie)
            .unwrap_or(0);
        if v[(lead, j)] < T::zero() {
            for i in 0..n {
                v[(i, j)] = -v[(i, j)];
            }
        }
    }
}

/// Householder reduction to tridiagonal form; on exit `v` holds the
/// accumulated orthogonal transform, `d` the diagonal and `e` the
/// subdiagonal (in `e[1..]`).
fn tridiagonalize<T: Scalar>(v: &mut RealMatrix<T>, d: &mut [T], e: &mut [T]) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in d.iter().take(i) {
            scale = scale + dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = T::zero();
                v[(j, i)] = T::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk = *dk / scale;
                h = h + *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[(j, i)] = f;
                g = e[j] + v[(j, j)] * f;
                for k in j + 1..i {
                    g = g + v[(k, j)] * d[k];
                    e[k] = e[k] + v[(k, j)] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[(k, j)] = v[(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g = g + v[(k, i + 1)] * v[(k, j)];
                }
                for k in 0..=i {
                    v[(k, j)] = v[(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1, j)];
        v[(n - 1, j)] = T::zero();
    }
    v[(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit QL iteration on the symmetric tridiagonal matrix `(d, e)`,
/// accumulating rotations into `v`.
fn tridiagonal_ql<T: Scalar>(v: &mut RealMatrix<T>, d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    const MAX_SWEEPS: usize = 60;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let mut f = T::zero();
    let mut tst1 = T::zero();
    let eps = T::epsilon();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS {
                    return Err(Error::NoConvergence { iterations: iter });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (T::lit(2.0) * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let hk = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * hk;
                        v[(k, i)] = c * v[(k, i)] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_contract(a: &RealMatrix<f64>, eig: &SymEig<f64>) {
        let v = &eig.eigenvectors;
        assert!(v.orthogonality_residual() <= 1e-10);
        let scale = a.frobenius_norm().max(1.0);
        assert!((&eig.reconstruct() - a).frobenius_norm() <= 1e-10 * scale);
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn one_by_one_zero() {
        let eig = sym_eig(&RealMatrix::from_rows(&[[0.0f64]])).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.0]);
        assert_eq!(eig.eigenvectors, RealMatrix::from_rows(&[[1.0]]));
    }

    #[test]
    fn two_node_path_laplacian() {
        let a: RealMatrix<f64> = RealMatrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]);
        let eig = sym_eig(&a).unwrap();
        assert!(eig.eigenvalues[0].abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 2.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = &eig.eigenvectors;
        assert!((v[(0, 0)] - s).abs() < 1e-14 && (v[(1, 0)] - s).abs() < 1e-14);
        assert!((v[(0, 1)] - s).abs() < 1e-14 && (v[(1, 1)] + s).abs() < 1e-14);
    }

    #[test]
    fn identity_four() {
        let a = RealMatrix::<f64>::identity(4);
        let eig = sym_eig(&a).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0; 4]);
        assert_eq!(eig.eigenvectors, RealMatrix::identity(4));
    }

    #[test]
    fn rejects_asymmetric_and_rectangular() {
        let a: RealMatrix<f64> = RealMatrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(matches!(sym_eig(&a), Err(Error::NotSymmetric { .. })));
        let b = RealMatrix::<f64>::zeros(2, 3);
        assert!(matches!(sym_eig(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn random_dense_contract() {
        let n = 17;
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut a = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x = next();
                a[(i, j)] = x;
                a[(j, i)] = x;
            }
        }
        let eig = sym_eig(&a).unwrap();
        check_contract(&a, &eig);
    }

    #[test]
    fn repeated_eigenvalues() {
        // Laplacian of the complete graph K5: eigenvalues 0, 5, 5, 5, 5.
        let n = 5;
        let a = RealMatrix::from_fn(n, n, |i, j| if i == j { 4.0 } else { -1.0 });
        let eig = sym_eig(&a).unwrap();
        check_contract(&a, &eig);
        assert!(eig.eigenvalues[0].abs() < 1e-12);
        for &l in &eig.eigenvalues[1..] {
            assert!((l - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sign_convention_makes_largest_entry_positive() {
        let a: RealMatrix<f64> = RealMatrix::from_rows(&[[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]]);
        let eig = sym_eig(&a).unwrap();
        for j in 0..3 {
            let col = eig.eigenvectors.col(j);
            let (imax, _) = col
                .iter()
                .enumerate()
                .fold((0, 0.0f64), |(bi, bv), (i, &x)| if x.abs() > bv + 1e-10 { (i, x.abs()) } else { (bi, bv) });
            assert!(col[imax] > 0.0);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let a = RealMatrix::from_rows(&[[2.0f32, 1.0], [1.0, 2.0]]);
        let eig = sym_eig(&a).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-5);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-5);
    }
}
