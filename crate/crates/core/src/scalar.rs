//! Floating-point abstraction for the spectral and audit code.

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Real scalar usable by the eigensolver and the inequality audits.
///
/// The associated constants carry the numerical thresholds that depend on
/// the precision of the type.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Off-diagonal Frobenius norm at which a Jacobi iteration stops.
    const JACOBI_TOL: f64;
    /// Singular values below this are counted as zero when measuring rank.
    const ZERO_SINGULAR: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count fits scalar")
    }
}

impl Scalar for f64 {
    const JACOBI_TOL: f64 = 1e-12;
    const ZERO_SINGULAR: f64 = 1e-7;
}

impl Scalar for f32 {
    const JACOBI_TOL: f64 = 1e-4;
    const ZERO_SINGULAR: f64 = 1e-2;
}
