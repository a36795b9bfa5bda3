//! Eigendecomposition of unitary matrices by Hessenberg reduction and the
//! complex single-shift QR algorithm.
//!
//! A unitary matrix is normal, so its complex Schur form is diagonal and the
//! Schur vectors are an orthonormal eigenbasis. The residual contract
//! `||Q V - V diag(λ)||_F` is checked on exit.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::scalar::Scalar;

use super::Tolerances;

/// Eigendecomposition `Q = V diag(λ) V^H` of a unitary matrix.
#[derive(Debug, Clone)]
pub struct UnitaryEig<T> {
    /// Eigenvalues ordered by ascending principal phase, ties by imaginary part.
    pub eigenvalues: Vec<Complex<T>>,
    /// Principal phases `ψ_k ∈ (-π, π]` of the eigenvalues.
    pub phases: Vec<T>,
    /// Orthonormal eigenvectors stored as columns.
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Scalar> UnitaryEig<T> {
    /// `V diag(e^{i α ψ}) V^H` on the principal branch.
    pub fn power(&self, alpha: T) -> ComplexMatrix<T> {
        let gains: Vec<Complex<T>> = self
            .phases
            .iter()
            .map(|&psi| Complex::from_polar(T::one(), alpha * psi))
            .collect();
        self.spectral_function(&gains)
    }

    /// `V diag(g) V^H`.
    pub fn spectral_function(&self, gains: &[Complex<T>]) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let n = v.rows();
        let scaled = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * gains[j]);
        scaled.matmul(&v.adjoint())
    }

    /// `||Q V - V diag(λ)||_F`.
    pub fn residual(&self, q: &ComplexMatrix<T>) -> T {
        let v = &self.eigenvectors;
        let n = v.rows();
        let qv = q.matmul(v);
        let vl = ComplexMatrix::from_fn(n, n, |i, j| v[(i, j)] * self.eigenvalues[j]);
        (&qv - &vl).frobenius_norm()
    }
}

/// Principal phase of `z` in `(-π, π]`; phases within `branch_tol` of `-π`
/// are mapped onto `+π`.
pub fn principal_phase<T: Scalar>(z: Complex<T>, branch_tol: T) -> T {
    let psi = z.im.atan2(z.re);
    if psi <= -T::PI() + branch_tol {
        T::PI()
    } else {
        psi
    }
}

pub fn unitary_eig<T: Scalar>(q: &ComplexMatrix<T>) -> Result<UnitaryEig<T>> {
    unitary_eig_with(q, &Tolerances::DEFAULT)
}

pub fn unitary_eig_real<T: Scalar>(q: &RealMatrix<T>) -> Result<UnitaryEig<T>> {
    unitary_eig_with(&q.to_complex(), &Tolerances::DEFAULT)
}

pub fn unitary_eig_with<T: Scalar>(
    q: &ComplexMatrix<T>,
    tol: &Tolerances,
) -> Result<UnitaryEig<T>> {
    if !q.is_square() {
        return Err(Error::dim(format!(
            "unitary_eig needs a square matrix, got {}x{}",
            q.rows(),
            q.cols()
        )));
    }
    if !q.is_finite() {
        return Err(Error::param("matrix has non-finite entries"));
    }
    let residual = q.unitarity_residual();
    if !(residual <= T::lit(tol.unitarity)) {
        return Err(Error::NotUnitary {
            residual: residual.to_f64_lossy(),
        });
    }
    let n = q.rows();
    let mut h = q.clone();
    let mut z = ComplexMatrix::identity(n);
    hessenberg(&mut h, &mut z);
    schur_qr(&mut h, &mut z)?;

    let branch = T::lit(tol.branch);
    let raw: Vec<Complex<T>> = (0..n).map(|k| h[(k, k)]).collect();
    let raw_phase: Vec<T> = raw.iter().map(|&l| principal_phase(l, branch)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        raw_phase[a]
            .partial_cmp(&raw_phase[b])
            .expect("finite phase")
            .then(raw[a].im.partial_cmp(&raw[b].im).expect("finite eigenvalue"))
    });
    let eig = UnitaryEig {
        eigenvalues: order.iter().map(|&k| raw[k]).collect(),
        phases: order.iter().map(|&k| raw_phase[k]).collect(),
        eigenvectors: ComplexMatrix::from_fn(n, n, |i, j| z[(i, order[j])]),
    };
    Ok(eig)
}

pub fn frac_power_unitary<T: Scalar>(q: &ComplexMatrix<T>, alpha: T) -> Result<ComplexMatrix<T>> {
    frac_power_unitary_with(q, alpha, &Tolerances::DEFAULT)
}

pub fn frac_power_unitary_with<T: Scalar>(
    q: &ComplexMatrix<T>,
    alpha: T,
    tol: &Tolerances,
) -> Result<ComplexMatrix<T>> {
    Ok(unitary_eig_with(q, tol)?.power(alpha))
}

/// Householder reduction to upper Hessenberg form, `Z ← Z H_k`.
fn hessenberg<T: Scalar>(a: &mut ComplexMatrix<T>, z: &mut ComplexMatrix<T>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let zero = Complex::new(T::zero(), T::zero());
    let two = T::lit(2.0);
    let mut v = vec![zero; n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        for i in 0..n {
            v[i] = if i > k { a[(i, k)] } else { zero };
        }
        v[k + 1] = v[k + 1] - alpha;
        let vnorm = (k + 1..n).map(|i| v[i].norm_sqr()).sum::<T>().sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi = *vi / vnorm;
        }

        // A ← (I - 2 v v^H) A
        for j in 0..n {
            let mut s = zero;
            for i in k + 1..n {
                s = s + v[i].conj() * a[(i, j)];
            }
            s = s * two;
            for i in k + 1..n {
                a[(i, j)] = a[(i, j)] - v[i] * s;
            }
        }
        // A ← A (I - 2 v v^H), Z ← Z (I - 2 v v^H)
        for m in [&mut *a, &mut *z] {
            for i in 0..n {
                let mut s = zero;
                for j in k + 1..n {
                    s = s + m[(i, j)] * v[j];
                }
                s = s * two;
                for j in k + 1..n {
                    m[(i, j)] = m[(i, j)] - s * v[j].conj();
                }
            }
        }
        for i in k + 2..n {
            a[(i, k)] = zero;
        }
        a[(k + 1, k)] = alpha;
    }
}

/// Reduces an upper Hessenberg matrix to complex Schur form in place with
/// Wilkinson-shifted single-shift QR sweeps, accumulating into `z`.
fn schur_qr<T: Scalar>(h: &mut ComplexMatrix<T>, z: &mut ComplexMatrix<T>) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let zero = Complex::new(T::zero(), T::zero());
    let eps = T::epsilon();
    let max_iter = 30 * n.max(10);
    let norm = h.frobenius_norm().max(T::min_positive_value());

    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // Locate the top of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let mut scale = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if scale == T::zero() {
                scale = norm;
            }
            if h[(lo, lo - 1)].norm() <= eps * scale {
                h[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total += 1;
        if total > max_iter {
            return Err(Error::NoConvergence { iterations: total });
        }

        let shift = if iter.is_multiple_of(10) {
            let s = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex::new(T::lit(0.75) * s, T::lit(0.4375) * s)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        let mut x = h[(lo, lo)] - shift;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            if k > lo {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s) = givens(x, y);
            // Rows k, k+1 from the left by G = [c s; -conj(s) c].
            let start = if k > lo { k - 1 } else { k };
            for j in start..n {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = b * c - s.conj() * a;
            }
            if k > lo {
                h[(k + 1, k - 1)] = zero;
            }
            // Columns k, k+1 from the right by G^H.
            let end = (k + 2).min(hi);
            for i in 0..=end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + s.conj() * b;
                h[(i, k + 1)] = b * c - s * a;
            }
            for i in 0..n {
                let a = z[(i, k)];
                let b = z[(i, k + 1)];
                z[(i, k)] = a * c + s.conj() * b;
                z[(i, k + 1)] = b * c - s * a;
            }
        }
    }
    Ok(())
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<T: Scalar>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = T::lit(0.5);
    let m = (a + d) * half;
    let delta = (a - d) * half;
    let disc = (delta * delta + b * c).sqrt();
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Rotation `[c s; -conj(s) c]` with real `c` mapping `(x, y)` to `(r, 0)`.
fn givens<T: Scalar>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == T::zero() {
        return (T::one(), Complex::new(T::zero(), T::zero()));
    }
    if ax == T::zero() {
        return (T::zero(), y.conj() / ay);
    }
    let rho = ax.hypot(ay);
    let c = ax / rho;
    let s = (x / ax) * y.conj() / rho;
    (c, s)
}
