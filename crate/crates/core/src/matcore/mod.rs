//! Dense matrix kernels: symmetric and unitary eigendecompositions, the
//! exponential of a skew-symmetric generator and principal-branch fractional
//! powers of unitary matrices.

mod expm;
mod symmetric;
mod unitary;

pub use expm::{expm_skew, expm_skew_with};
pub use symmetric::{sym_eig, sym_eig_with, SymEig};
pub use unitary::{
    frac_power_unitary, frac_power_unitary_with, principal_phase, unitary_eig, unitary_eig_real,
    unitary_eig_with, UnitaryEig,
};

/// Tolerances for input validation and conventions of the matrix kernels.
///
/// The defaults are the library constants; every kernel has a `*_with`
/// variant taking an explicit set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative symmetry residual accepted by [`sym_eig`].
    pub symmetry: f64,
    /// `||Q^H Q - I||_F` accepted by the unitary kernels.
    pub unitarity: f64,
    /// `||J + J^T||_F` (relative to `max(||J||_F, 1)`) accepted by [`expm_skew`].
    pub skew: f64,
    /// Phases within this distance of `-pi` are mapped onto `+pi`.
    pub branch: f64,
    /// Entries within this distance of the largest magnitude count as ties
    /// in the eigenvector sign convention.
    pub sign_tie: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        symmetry: 1e-12,
        unitarity: 1e-8,
        skew: 1e-12,
        branch: 1e-10,
        sign_tie: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
