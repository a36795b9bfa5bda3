//! Graph spectral transforms: GFT, GFRFT, AGFT and the two angular
//! fractional variants, each materialized as a dense unitary operator with
//! its exact inverse.
//!
//! With `F = U^T` the graph Fourier matrix of a symmetric shift operator and
//! `R` a rotation from [`crate::rotations`]:
//!
//! | kind        | forward        | inverse        |
//! |-------------|----------------|----------------|
//! | `gft`       | `F`            | `U`            |
//! | `gfrft`     | `F^α`          | `F^{-α}`       |
//! | `agft`      | `F R^T`        | `R U`          |
//! | `agfrft-i`  | `(F R^T)^α`    | `(F R^T)^{-α}` |
//! | `agfrft-ii` | `F^α R^T`      | `R F^{-α}`     |
//!
//! Fractional powers use the principal branch with phase `+π` at `-1`.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matcore::{sym_eig, unitary_eig_real, SymEig, UnitaryEig};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::rotations::{AxisKind, Family, RotationSpec};
use crate::scalar::Scalar;

/// Eigendecomposition of a symmetric graph shift operator together with its
/// graph Fourier matrix.
#[derive(Debug)]
pub struct GraphSpectrum<T> {
    pub gso: RealMatrix<T>,
    pub eig: SymEig<T>,
    /// `F = U^T`.
    pub gft: RealMatrix<T>,
    fingerprint: u64,
    gft_eig: OnceLock<std::result::Result<UnitaryEig<T>, String>>,
}

/// Builds the spectrum of a symmetric shift operator.
pub fn build_spectrum<T: Scalar>(gso: &RealMatrix<T>) -> Result<GraphSpectrum<T>> {
    let eig = sym_eig(gso)?;
    let gft = eig.eigenvectors.transpose();
    Ok(GraphSpectrum {
        fingerprint: fingerprint(gso),
        gso: gso.clone(),
        eig,
        gft,
        gft_eig: OnceLock::new(),
    })
}

fn fingerprint<T: Scalar>(m: &RealMatrix<T>) -> u64 {
    let mut h = DefaultHasher::new();
    m.rows().hash(&mut h);
    for x in m.as_slice() {
        x.to_f64_lossy().to_bits().hash(&mut h);
    }
    h.finish()
}

impl<T: Scalar> GraphSpectrum<T> {
    /// Synthetic spectrum whose Fourier matrix is the given orthogonal matrix.
    ///
    /// The shift operator is taken as `F^T diag(0, 1, …, N-1) F`.
    pub fn from_gft(f: RealMatrix<T>) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::dim("Fourier matrix must be square"));
        }
        let residual = f.orthogonality_residual();
        if residual > T::lit(1e-8) {
            return Err(Error::NotUnitary {
                residual: residual.to_f64_lossy(),
            });
        }
        let n = f.rows();
        let eigenvalues: Vec<T> = (0..n).map(T::from_count).collect();
        let u = f.transpose();
        let scaled = RealMatrix::from_fn(n, n, |i, j| u[(i, j)] * eigenvalues[j]);
        let gso = scaled.matmul(&f);
        Ok(GraphSpectrum {
            fingerprint: fingerprint(&gso),
            gso,
            eig: SymEig {
                eigenvalues,
                eigenvectors: u,
            },
            gft: f,
            gft_eig: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.gft.rows()
    }

    /// Hash of the shift operator entries.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// `U` (the inverse graph Fourier matrix).
    pub fn basis(&self) -> &RealMatrix<T> {
        &self.eig.eigenvectors
    }

    /// Eigendecomposition of `F` as a unitary matrix, computed once.
    pub fn gft_unitary_eig(&self) -> Result<&UnitaryEig<T>> {
        self.gft_eig
            .get_or_init(|| unitary_eig_real(&self.gft).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::param(format!("eigendecomposition of the GFT failed: {e}")))
    }
}

/// Transform family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransformKind {
    Gft,
    Gfrft,
    Agft,
    AgfrftI,
    AgfrftII,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::Gft,
        TransformKind::Gfrft,
        TransformKind::Agft,
        TransformKind::AgfrftI,
        TransformKind::AgfrftII,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TransformKind::Gft => "gft",
            TransformKind::Gfrft => "gfrft",
            TransformKind::Agft => "agft",
            TransformKind::AgfrftI => "agfrft-i",
            TransformKind::AgfrftII => "agfrft-ii",
        }
    }

    /// Whether the operator depends on the rotation angle.
    pub fn uses_angle(self) -> bool {
        matches!(
            self,
            TransformKind::Agft | TransformKind::AgfrftI | TransformKind::AgfrftII
        )
    }

    /// Whether the operator depends on the fractional order.
    pub fn uses_order(self) -> bool {
        matches!(
            self,
            TransformKind::Gfrft | TransformKind::AgfrftI | TransformKind::AgfrftII
        )
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "gft" => Ok(TransformKind::Gft),
            "gfrft" => Ok(TransformKind::Gfrft),
            "agft" => Ok(TransformKind::Agft),
            "agfrft-i" | "i-agfrft" => Ok(TransformKind::AgfrftI),
            "agfrft-ii" | "ii-agfrft" => Ok(TransformKind::AgfrftII),
            other => Err(Error::param(format!(
                "unknown transform '{other}' (gft|gfrft|agft|agfrft-i|agfrft-ii)"
            ))),
        }
    }
}

/// A transform kind together with the rotation axis and family it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Method {
    pub kind: TransformKind,
    pub axis: AxisKind,
    pub family: Family,
}

impl Method {
    pub fn new(kind: TransformKind, axis: AxisKind, family: Family) -> Self {
        Self { kind, axis, family }
    }

    /// `(θ, α)` with the parameters the kind ignores pinned: GFT and GFRFT
    /// use `θ = 0`; GFT and AGFT use `α = 1`.
    pub fn canonical<T: Scalar>(&self, theta: T, alpha: T) -> (T, T) {
        let theta = if self.kind.uses_angle() { theta } else { T::zero() };
        let alpha = if self.kind.uses_order() { alpha } else { T::one() };
        (theta, alpha)
    }
}

/// Parameters an operator was built with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams<T> {
    pub theta: T,
    pub alpha: T,
    pub kappa: T,
    pub axis: AxisKind,
    pub family: Family,
}

/// A concrete unitary transform with its exact inverse.
#[derive(Debug, Clone)]
pub struct TransformOperator<T> {
    pub kind: TransformKind,
    pub forward: ComplexMatrix<T>,
    pub inverse: ComplexMatrix<T>,
    pub params: TransformParams<T>,
}

impl<T: Scalar> TransformOperator<T> {
    pub fn n(&self) -> usize {
        self.forward.rows()
    }

    /// Forward transform of a real signal.
    pub fn apply(&self, x: &[T]) -> Result<Vec<Complex<T>>> {
        self.check_len(x.len())?;
        let xc: Vec<Complex<T>> = x.iter().map(|&v| Complex::new(v, T::zero())).collect();
        Ok(self.forward.matvec(&xc))
    }

    pub fn apply_complex(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_len(x.len())?;
        Ok(self.forward.matvec(x))
    }

    pub fn apply_inverse(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_len(x.len())?;
        Ok(self.inverse.matvec(x))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::dim(format!(
                "signal length {len} does not match operator size {}",
                self.n()
            )));
        }
        Ok(())
    }
}

fn params<T: Scalar>(theta: T, alpha: T, kappa: T, axis: AxisKind, family: Family) -> TransformParams<T> {
    TransformParams {
        theta,
        alpha,
        kappa,
        axis,
        family,
    }
}

fn rotation_for<T: Scalar>(spec: &GraphSpectrum<T>, rot: &RotationSpec<T>) -> Result<RealMatrix<T>> {
    let r = rot.matrix(spec.n())?;
    if r.rows() != spec.n() {
        return Err(Error::dim("rotation dimension differs from graph size"));
    }
    Ok(r)
}

pub fn gft_operator<T: Scalar>(spec: &GraphSpectrum<T>) -> TransformOperator<T> {
    TransformOperator {
        kind: TransformKind::Gft,
        forward: spec.gft.to_complex(),
        inverse: spec.basis().to_complex(),
        params: params(T::zero(), T::one(), T::one(), AxisKind::Yaw, Family::DegeneracyFriendly),
    }
}

/// `F^α` with inverse `F^{-α}`.
pub fn gfrft_operator<T: Scalar>(spec: &GraphSpectrum<T>, alpha: T) -> Result<TransformOperator<T>> {
    let eig = spec.gft_unitary_eig()?;
    Ok(TransformOperator {
        kind: TransformKind::Gfrft,
        forward: eig.power(alpha),
        inverse: eig.power(-alpha),
        params: params(T::zero(), alpha, T::one(), AxisKind::Yaw, Family::DegeneracyFriendly),
    })
}

/// Rotated Fourier matrix `F_θ = F R^T`.
pub fn rotated_gft<T: Scalar>(spec: &GraphSpectrum<T>, rot: &RotationSpec<T>) -> Result<RealMatrix<T>> {
    let r = rotation_for(spec, rot)?;
    Ok(spec.gft.matmul(&r.transpose()))
}

/// `F R^T` with inverse `R U`.
pub fn agft_operator<T: Scalar>(
    spec: &GraphSpectrum<T>,
    rot: &RotationSpec<T>,
) -> Result<TransformOperator<T>> {
    let r = rotation_for(spec, rot)?;
    Ok(TransformOperator {
        kind: TransformKind::Agft,
        forward: spec.gft.matmul(&r.transpose()).to_complex(),
        inverse: r.matmul(spec.basis()).to_complex(),
        params: params(rot.theta, T::one(), rot.kappa, rot.axis, rot.family),
    })
}

/// `(F R^T)^α` with inverse `(F R^T)^{-α}`.
pub fn agfrft_i_operator<T: Scalar>(
    spec: &GraphSpectrum<T>,
    rot: &RotationSpec<T>,
    alpha: T,
) -> Result<TransformOperator<T>> {
    let eig = unitary_eig_real(&rotated_gft(spec, rot)?)?;
    Ok(agfrft_i_from_eig(&eig, rot, alpha))
}

/// Type I operator from a precomputed eigendecomposition of `F R^T`.
pub fn agfrft_i_from_eig<T: Scalar>(
    rotated_eig: &UnitaryEig<T>,
    rot: &RotationSpec<T>,
    alpha: T,
) -> TransformOperator<T> {
    TransformOperator {
        kind: TransformKind::AgfrftI,
        forward: rotated_eig.power(alpha),
        inverse: rotated_eig.power(-alpha),
        params: params(rot.theta, alpha, rot.kappa, rot.axis, rot.family),
    }
}

/// `F^α R^T` with inverse `R F^{-α}`.
pub fn agfrft_ii_operator<T: Scalar>(
    spec: &GraphSpectrum<T>,
    rot: &RotationSpec<T>,
    alpha: T,
) -> Result<TransformOperator<T>> {
    let r = rotation_for(spec, rot)?;
    let eig = spec.gft_unitary_eig()?;
    let rc = r.to_complex();
    Ok(TransformOperator {
        kind: TransformKind::AgfrftII,
        forward: eig.power(alpha).matmul(&rc.transpose()),
        inverse: rc.matmul(&eig.power(-alpha)),
        params: params(rot.theta, alpha, rot.kappa, rot.axis, rot.family),
    })
}

/// Builds the operator of `method` at `(θ, α, κ)`.
pub fn build_operator<T: Scalar>(
    spec: &GraphSpectrum<T>,
    method: &Method,
    theta: T,
    alpha: T,
    kappa: T,
) -> Result<TransformOperator<T>> {
    let rot = RotationSpec::new(method.axis, method.family, theta, kappa);
    let mut op = match method.kind {
        TransformKind::Gft => gft_operator(spec),
        TransformKind::Gfrft => gfrft_operator(spec, alpha)?,
        TransformKind::Agft => agft_operator(spec, &rot)?,
        TransformKind::AgfrftI => agfrft_i_operator(spec, &rot, alpha)?,
        TransformKind::AgfrftII => agfrft_ii_operator(spec, &rot, alpha)?,
    };
    op.params.axis = method.axis;
    op.params.family = method.family;
    Ok(op)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct CacheKey {
    gso: u64,
    method: Method,
    theta: u64,
    alpha: u64,
    kappa: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct RotatedKey {
    axis: AxisKind,
    family: Family,
    theta: u64,
    kappa: u64,
}

/// Memoizes operators of one spectrum by exact parameter equality.
///
/// An unmemoized cache keeps only the per-angle eigendecompositions of the
/// rotated Fourier matrix, which bounds memory for large graphs.
pub struct OperatorCache<T> {
    spectrum: Arc<GraphSpectrum<T>>,
    memoize: bool,
    operators: Mutex<HashMap<CacheKey, Arc<TransformOperator<T>>>>,
    rotated: Mutex<HashMap<RotatedKey, Arc<UnitaryEig<T>>>>,
}

impl<T: Scalar> OperatorCache<T> {
    pub fn new(spectrum: Arc<GraphSpectrum<T>>) -> Self {
        Self {
            spectrum,
            memoize: true,
            operators: Mutex::new(HashMap::new()),
            rotated: Mutex::new(HashMap::new()),
        }
    }

    pub fn unmemoized(spectrum: Arc<GraphSpectrum<T>>) -> Self {
        Self {
            memoize: false,
            ..Self::new(spectrum)
        }
    }

    pub fn spectrum(&self) -> &Arc<GraphSpectrum<T>> {
        &self.spectrum
    }

    pub fn len(&self) -> usize {
        self.operators.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, method: &Method, theta: T, alpha: T, kappa: T) -> Result<Arc<TransformOperator<T>>> {
        let (theta, alpha) = method.canonical(theta, alpha);
        let kappa = if method.kind.uses_angle() { kappa } else { T::one() };
        let key = CacheKey {
            gso: self.spectrum.fingerprint(),
            method: *method,
            theta: theta.to_f64_lossy().to_bits(),
            alpha: alpha.to_f64_lossy().to_bits(),
            kappa: kappa.to_f64_lossy().to_bits(),
        };
        if let Some(op) = self.operators.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(op));
        }
        let op = if method.kind == TransformKind::AgfrftI {
            let rot = RotationSpec::new(method.axis, method.family, theta, kappa);
            let eig = self.rotated_eig(&rot)?;
            agfrft_i_from_eig(&eig, &rot, alpha)
        } else {
            build_operator(&self.spectrum, method, theta, alpha, kappa)?
        };
        let op = Arc::new(op);
        if !self.memoize {
            return Ok(op);
        }
        self.operators
            .lock()
            .expect("cache lock")
            .insert(key, Arc::clone(&op));
        Ok(op)
    }

    fn rotated_eig(&self, rot: &RotationSpec<T>) -> Result<Arc<UnitaryEig<T>>> {
        let key = RotatedKey {
            axis: rot.axis,
            family: rot.family,
            theta: rot.theta.to_f64_lossy().to_bits(),
            kappa: rot.kappa.to_f64_lossy().to_bits(),
        };
        if let Some(eig) = self.rotated.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(eig));
        }
        let eig = Arc::new(unitary_eig_real(&rotated_gft(&self.spectrum, rot)?)?);
        self.rotated
            .lock()
            .expect("cache lock")
            .insert(key, Arc::clone(&eig));
        Ok(eig)
    }
}
