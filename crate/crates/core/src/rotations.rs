//! Rotation matrix families used to rotate a graph Fourier basis.
//!
//! Two families are provided:
//!
//! * the **legacy** recursive roll/pitch/yaw construction, which combines two
//!   copies of the half-size rotation with fixed `1/√2` weights and therefore
//!   does not reduce to the identity at zero angle once `n ≥ 4`;
//! * the **degeneracy-friendly** construction, which interleaves the
//!   half-size rotation with its double flip, angle-dependent block rotations
//!   and an axis-specific exponential perturbation `exp(φ J_axis)`. Every
//!   member lies in `SO(n)` and equals `I_n` at `θ = 0`.
//!
//! The angle map is `φ(θ) = κ θ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::expm_skew;
use crate::matrix::RealMatrix;
use crate::scalar::Scalar;

/// Rotation axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxisKind {
    Roll,
    Pitch,
    Yaw,
}

impl AxisKind {
    pub const ALL: [AxisKind; 3] = [AxisKind::Roll, AxisKind::Pitch, AxisKind::Yaw];

    pub fn as_str(self) -> &'static str {
        match self {
            AxisKind::Roll => "roll",
            AxisKind::Pitch => "pitch",
            AxisKind::Yaw => "yaw",
        }
    }
}

impl fmt::Display for AxisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "roll" => Ok(AxisKind::Roll),
            "pitch" => Ok(AxisKind::Pitch),
            "yaw" => Ok(AxisKind::Yaw),
            other => Err(Error::param(format!("unknown axis '{other}' (roll|pitch|yaw)"))),
        }
    }
}

/// Rotation family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Family {
    #[default]
    DegeneracyFriendly,
    Legacy,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::DegeneracyFriendly => "df",
            Family::Legacy => "legacy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "df" | "degeneracy-friendly" | "degeneracy_friendly" => Ok(Family::DegeneracyFriendly),
            "legacy" => Ok(Family::Legacy),
            other => Err(Error::param(format!("unknown family '{other}' (df|legacy)"))),
        }
    }
}

/// Full description of one rotation: axis, family, angle and scale.
///
/// `kappa` only affects the degeneracy-friendly family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSpec<T> {
    pub axis: AxisKind,
    pub family: Family,
    pub theta: T,
    pub kappa: T,
}

impl<T: Scalar> RotationSpec<T> {
    pub fn new(axis: AxisKind, family: Family, theta: T, kappa: T) -> Self {
        Self {
            axis,
            family,
            theta,
            kappa,
        }
    }

    pub fn degeneracy_friendly(axis: AxisKind, theta: T, kappa: T) -> Self {
        Self::new(axis, Family::DegeneracyFriendly, theta, kappa)
    }

    pub fn legacy(axis: AxisKind, theta: T) -> Self {
        Self::new(axis, Family::Legacy, theta, T::one())
    }

    fn validate(&self) -> Result<()> {
        if !self.theta.is_finite() || !self.kappa.is_finite() {
            return Err(Error::param("rotation angle and scale must be finite"));
        }
        Ok(())
    }

    /// Builds the `n × n` rotation of this spec.
    pub fn matrix(&self, n: usize) -> Result<RealMatrix<T>> {
        self.validate()?;
        match self.family {
            Family::DegeneracyFriendly => df_rotation(self, n),
            Family::Legacy => legacy_rotation(self.axis, n, self.theta),
        }
    }
}

/// Reverses the row order: row `i` of the output is row `M-1-i` of the input.
pub fn flip_updown<T: Scalar>(r: &RealMatrix<T>) -> RealMatrix<T> {
    let m = r.rows();
    RealMatrix::from_fn(m, r.cols(), |i, j| r[(m - 1 - i, j)])
}

/// Double flip `P X P` with `P` the anti-diagonal permutation.
pub fn diamond<T: Scalar>(x: &RealMatrix<T>) -> RealMatrix<T> {
    let (m, c) = (x.rows(), x.cols());
    RealMatrix::from_fn(m, c, |i, j| x[(m - 1 - i, c - 1 - j)])
}

/// `[[cos θ, sin θ], [-sin θ, cos θ]]`.
pub fn planar_rotation<T: Scalar>(theta: T) -> RealMatrix<T> {
    let (s, c) = theta.sin_cos();
    RealMatrix::from_rows(&[[c, s], [-s, c]])
}

/// Elemental 3-D rotation about the x (roll), y (pitch) or z (yaw) axis.
pub fn base_rotation_3<T: Scalar>(axis: AxisKind, theta: T) -> RealMatrix<T> {
    let (s, c) = theta.sin_cos();
    let (o, z) = (T::one(), T::zero());
    match axis {
        AxisKind::Roll => RealMatrix::from_rows(&[[o, z, z], [z, c, s], [z, -s, c]]),
        AxisKind::Pitch => RealMatrix::from_rows(&[[c, z, -s], [z, o, z], [s, z, c]]),
        AxisKind::Yaw => RealMatrix::from_rows(&[[c, s, z], [-s, c, z], [z, z, o]]),
    }
}

fn base_case<T: Scalar>(axis: AxisKind, n: usize, theta: T) -> Option<RealMatrix<T>> {
    match n {
        1 => Some(RealMatrix::identity(1)),
        2 => Some(planar_rotation(theta)),
        3 => Some(base_rotation_3(axis, theta)),
        _ => None,
    }
}

/// Legacy recursive roll/pitch/yaw rotation.
pub fn legacy_rotation<T: Scalar>(axis: AxisKind, n: usize, theta: T) -> Result<RealMatrix<T>> {
    if n == 0 {
        return Err(Error::dim("rotation dimension must be at least 1"));
    }
    if let Some(base) = base_case(axis, n, theta) {
        return Ok(base);
    }
    let m = n / 2;
    let r = legacy_rotation(axis, m, theta)?;
    let flipped = flip_updown(&r);
    let k = T::one() / T::lit(2.0).sqrt();
    let r = r.scale(k);
    let neg_flipped = flipped.scale(-k);
    let flipped = flipped.scale(k);

    let mut out = RealMatrix::zeros(n, n);
    if n.is_multiple_of(2) {
        out.set_block(0, 0, &r);
        out.set_block(0, m, &r);
        out.set_block(m, 0, &neg_flipped);
        out.set_block(m, m, &flipped);
        return Ok(out);
    }
    match axis {
        AxisKind::Roll => {
            out[(0, 0)] = T::one();
            out.set_block(1, 1, &r);
            out.set_block(1, m + 1, &r);
            out.set_block(m + 1, 1, &neg_flipped);
            out.set_block(m + 1, m + 1, &flipped);
        }
        AxisKind::Pitch => {
            out.set_block(0, 0, &r);
            out.set_block(0, m + 1, &neg_flipped);
            out[(m, m)] = T::one();
            out.set_block(m + 1, 0, &r);
            out.set_block(m + 1, m + 1, &flipped);
        }
        AxisKind::Yaw => {
            out.set_block(0, 0, &r);
            out.set_block(0, m, &r);
            out.set_block(m, 0, &neg_flipped);
            out.set_block(m, m, &flipped);
            out[(2 * m, 2 * m)] = T::one();
        }
    }
    Ok(out)
}

/// Axis-dependent skew-symmetric coupling matrix of size `n`.
///
/// Roll couples every adjacent pair `(i, i+1)`; yaw only pairs whose first
/// (1-based) index is odd; pitch only pairs whose first index is even. Each
/// coupled pair carries `-1` above and `+1` below the diagonal.
pub fn j_matrix<T: Scalar>(axis: AxisKind, n: usize) -> Result<RealMatrix<T>> {
    if n < 2 {
        return Err(Error::dim("coupling matrix needs n >= 2"));
    }
    let mut j = RealMatrix::zeros(n, n);
    for i in 0..n - 1 {
        // `i` is 0-based, so the 1-based first index is odd when `i` is even.
        let coupled = match axis {
            AxisKind::Roll => true,
            AxisKind::Yaw => i % 2 == 0,
            AxisKind::Pitch => i % 2 == 1,
        };
        if coupled {
            j[(i, i + 1)] = -T::one();
            j[(i + 1, i)] = T::one();
        }
    }
    Ok(j)
}

/// `S_m(φ) = [[cos φ I_m, sin φ I_m], [-sin φ I_m, cos φ I_m]]`.
pub fn block_rotation_even<T: Scalar>(m: usize, phi: T) -> Result<RealMatrix<T>> {
    if m == 0 {
        return Err(Error::dim("block size must be at least 1"));
    }
    let (s, c) = phi.sin_cos();
    let mut out = RealMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        out[(i, i)] = c;
        out[(i, m + i)] = s;
        out[(m + i, i)] = -s;
        out[(m + i, m + i)] = c;
    }
    Ok(out)
}

/// Which two of the three blocks an odd-dimensional block rotation couples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockPair {
    /// Layout `(m, m, 1)`.
    P12,
    /// Layout `(m, 1, m)`.
    P13,
    /// Layout `(1, m, m)`.
    P23,
}

impl TryFrom<(usize, usize)> for BlockPair {
    type Error = Error;

    fn try_from(pair: (usize, usize)) -> Result<Self> {
        match pair {
            (1, 2) => Ok(BlockPair::P12),
            (1, 3) => Ok(BlockPair::P13),
            (2, 3) => Ok(BlockPair::P23),
            other => Err(Error::param(format!(
                "block pair {other:?} is not one of (1,2), (1,3), (2,3)"
            ))),
        }
    }
}

/// `T_m^{pair}(φ)`: a Givens coupling of the two size-`m` blocks named by
/// `pair`, identity on the remaining scalar block.
pub fn block_rotation_odd<T: Scalar>(pair: BlockPair, m: usize, phi: T) -> Result<RealMatrix<T>> {
    if m == 0 {
        return Err(Error::dim("block size must be at least 1"));
    }
    let n = 2 * m + 1;
    let (s, c) = phi.sin_cos();
    let (first, second, single) = match pair {
        BlockPair::P12 => (0, m, 2 * m),
        BlockPair::P13 => (0, m + 1, m),
        BlockPair::P23 => (1, m + 1, 0),
    };
    let mut out = RealMatrix::zeros(n, n);
    out[(single, single)] = T::one();
    for i in 0..m {
        let (a, b) = (first + i, second + i);
        out[(a, a)] = c;
        out[(a, b)] = s;
        out[(b, a)] = -s;
        out[(b, b)] = c;
    }
    Ok(out)
}

/// Degeneracy-friendly rotation `R^axis_n(θ)` with `φ(θ) = κθ`.
pub fn df_rotation<T: Scalar>(spec: &RotationSpec<T>, n: usize) -> Result<RealMatrix<T>> {
    let mut levels = Vec::new();
    df_recurse(spec, n, &mut levels)
}

/// Every intermediate matrix produced by the degeneracy-friendly recursion,
/// from the base case up to `n`, tagged with its dimension.
pub fn df_rotation_levels<T: Scalar>(
    spec: &RotationSpec<T>,
    n: usize,
) -> Result<Vec<(usize, RealMatrix<T>)>> {
    let mut levels = Vec::new();
    df_recurse(spec, n, &mut levels)?;
    Ok(levels)
}

fn df_recurse<T: Scalar>(
    spec: &RotationSpec<T>,
    n: usize,
    levels: &mut Vec<(usize, RealMatrix<T>)>,
) -> Result<RealMatrix<T>> {
    if n == 0 {
        return Err(Error::dim("rotation dimension must be at least 1"));
    }
    spec.validate()?;
    let theta = spec.theta;
    if let Some(base) = base_case(spec.axis, n, theta) {
        levels.push((n, base.clone()));
        return Ok(base);
    }
    let m = n / 2;
    let phi = spec.kappa * theta;
    let r = df_recurse(spec, m, levels)?;
    let rd = diamond(&r);
    let one = RealMatrix::identity(1);

    let out = if n.is_multiple_of(2) {
        let blocks = RealMatrix::block_diag(&[&r, &rd]);
        let coupling = j_matrix(spec.axis, n)?;
        blocks
            .matmul(&block_rotation_even(m, phi)?)
            .matmul(&expm_skew(&coupling, phi)?)
    } else {
        let (blocks, pair) = match spec.axis {
            AxisKind::Yaw => (RealMatrix::block_diag(&[&r, &rd, &one]), BlockPair::P12),
            AxisKind::Pitch => (RealMatrix::block_diag(&[&r, &one, &rd]), BlockPair::P13),
            AxisKind::Roll => (RealMatrix::block_diag(&[&one, &r, &rd]), BlockPair::P23),
        };
        blocks.matmul(&block_rotation_odd(pair, m, phi)?)
    };
    levels.push((n, out.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::real_distance;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn m(rows: &[&[f64]]) -> RealMatrix<f64> {
        RealMatrix::from_rows(rows)
    }

    #[test]
    fn flip_and_diamond_examples() {
        let x = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(flip_updown(&x), m(&[&[3.0, 4.0], &[1.0, 2.0]]));
        assert_eq!(diamond(&x), m(&[&[4.0, 3.0], &[2.0, 1.0]]));
        let anti = m(&[&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0]]);
        assert_eq!(flip_updown(&RealMatrix::identity(3)), anti);
        assert_eq!(flip_updown(&m(&[&[5.0]])), m(&[&[5.0]]));
        assert_eq!(diamond(&RealMatrix::<f64>::identity(4)), RealMatrix::identity(4));
        let y = m(&[&[0.0, 1.0], &[2.0, 3.0]]);
        assert_eq!(diamond(&diamond(&y)), y);
    }

    #[test]
    fn legacy_examples() {
        let yaw = legacy_rotation(AxisKind::Yaw, 3, FRAC_PI_2).unwrap();
        let expect = m(&[&[0.0, 1.0, 0.0], &[-1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]]);
        assert!(real_distance(&yaw, &expect) < 1e-15);

        let roll = legacy_rotation(AxisKind::Roll, 4, 0.0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expect = m(&[
            &[s, 0.0, s, 0.0],
            &[0.0, s, 0.0, s],
            &[0.0, -s, 0.0, s],
            &[-s, 0.0, s, 0.0],
        ]);
        assert!(real_distance(&roll, &expect) < 1e-15);
        assert!(real_distance(&roll, &RealMatrix::identity(4)) > 0.1);

        let pitch = legacy_rotation(AxisKind::Pitch, 2, 0.4).unwrap();
        assert_eq!(pitch, planar_rotation(0.4));
        assert!(legacy_rotation::<f64>(AxisKind::Roll, 0, 0.1).is_err());
    }

    #[test]
    fn legacy_is_orthogonal() {
        for axis in AxisKind::ALL {
            for n in 1..=20 {
                let r = legacy_rotation(axis, n, 0.83).unwrap();
                assert!(r.orthogonality_residual() < 1e-12, "{axis} n={n}");
            }
        }
    }

    #[test]
    fn j_matrix_patterns() {
        let roll: RealMatrix<f64> = j_matrix(AxisKind::Roll, 3).unwrap();
        assert_eq!(roll, m(&[&[0.0, -1.0, 0.0], &[1.0, 0.0, -1.0], &[0.0, 1.0, 0.0]]));

        let yaw: RealMatrix<f64> = j_matrix(AxisKind::Yaw, 4).unwrap();
        let mut expect = RealMatrix::zeros(4, 4);
        expect[(0, 1)] = -1.0;
        expect[(1, 0)] = 1.0;
        expect[(2, 3)] = -1.0;
        expect[(3, 2)] = 1.0;
        assert_eq!(yaw, expect);

        let pitch: RealMatrix<f64> = j_matrix(AxisKind::Pitch, 4).unwrap();
        let mut expect = RealMatrix::zeros(4, 4);
        expect[(1, 2)] = -1.0;
        expect[(2, 1)] = 1.0;
        assert_eq!(pitch, expect);

        assert!(j_matrix::<f64>(AxisKind::Roll, 1).is_err());
    }

    #[test]
    fn even_block_rotation_examples() {
        assert_eq!(block_rotation_even(1, 0.3).unwrap(), planar_rotation(0.3));
        assert_eq!(block_rotation_even(2, 0.0).unwrap(), RealMatrix::identity(4));
        let r = block_rotation_even(2, FRAC_PI_2).unwrap();
        let expect = m(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[-1.0, 0.0, 0.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
        ]);
        assert!(real_distance(&r, &expect) < 1e-15);
    }

    #[test]
    fn odd_block_rotation_examples() {
        let phi = 0.9f64;
        let (s, c) = phi.sin_cos();
        let t12 = block_rotation_odd(BlockPair::P12, 1, phi).unwrap();
        assert_eq!(t12, m(&[&[c, s, 0.0], &[-s, c, 0.0], &[0.0, 0.0, 1.0]]));
        assert_eq!(block_rotation_odd(BlockPair::P23, 1, 0.0).unwrap(), RealMatrix::identity(3));
        let t13 = block_rotation_odd(BlockPair::P13, 1, FRAC_PI_2).unwrap();
        let expect = m(&[&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0], &[-1.0, 0.0, 0.0]]);
        assert!(real_distance(&t13, &expect) < 1e-15);
        assert!(BlockPair::try_from((2, 1)).is_err());
    }

    #[test]
    fn df_base_and_identity_cases() {
        for axis in AxisKind::ALL {
            for kappa in [0.5, 1.0, 2.0] {
                let spec = RotationSpec::degeneracy_friendly(axis, 0.0, kappa);
                assert_eq!(df_rotation(&spec, 4).unwrap(), RealMatrix::identity(4));
            }
        }
        let spec = RotationSpec::degeneracy_friendly(AxisKind::Yaw, 0.7, 1.0);
        assert_eq!(df_rotation(&spec, 2).unwrap(), planar_rotation(0.7));
        assert_eq!(df_rotation(&spec, 1).unwrap(), RealMatrix::identity(1));
        assert!(df_rotation(&spec, 0).is_err());
    }

    #[test]
    fn df_members_of_so_n() {
        for axis in AxisKind::ALL {
            for n in 1..=24 {
                let spec = RotationSpec::degeneracy_friendly(axis, 1.3f64, 0.7);
                let r = df_rotation(&spec, n).unwrap();
                assert!(r.orthogonality_residual() < 1e-12, "{axis} n={n}");
                assert!((r.det() - 1.0).abs() < 1e-10, "{axis} n={n}");
            }
        }
    }

    #[test]
    fn df_axes_distinct_in_dimension_eight() {
        let build = |axis| df_rotation(&RotationSpec::degeneracy_friendly(axis, 0.3, 1.0), 8).unwrap();
        let (roll, yaw, pitch) = (build(AxisKind::Roll), build(AxisKind::Yaw), build(AxisKind::Pitch));
        assert!(real_distance(&roll, &yaw) > 1e-6);
        assert!(real_distance(&roll, &pitch) > 1e-6);
        assert!(real_distance(&pitch, &yaw) > 1e-6);
    }

    #[test]
    fn df_levels_follow_halving() {
        let spec = RotationSpec::degeneracy_friendly(AxisKind::Pitch, PI / 5.0, 1.0);
        let dims: Vec<usize> = df_rotation_levels(&spec, 32)
            .unwrap()
            .iter()
            .map(|(n, _)| *n)
            .collect();
        assert_eq!(dims, vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn parse_names() {
        assert_eq!("Yaw".parse::<AxisKind>().unwrap(), AxisKind::Yaw);
        assert_eq!("legacy".parse::<Family>().unwrap(), Family::Legacy);
        assert!("spin".parse::<AxisKind>().is_err());
    }
}
