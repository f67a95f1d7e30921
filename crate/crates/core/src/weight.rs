//! Scalar abstraction for edge weights and distances.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Edge weight / distance scalar.
///
/// Distances use `+∞` as the unreachable sentinel, so only IEEE floating
/// types qualify. All solvers compare with strict `<` and never use an
/// epsilon.
pub trait Weight:
    Float + FromPrimitive + ToPrimitive + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    /// Converts a generator value. Generators work in exact multiples of
    /// [`WEIGHT_QUANTUM`], which every implementor represents exactly within
    /// its integer range.
    fn from_f64_exact(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts to every float type")
    }
}

impl Weight for f32 {}
impl Weight for f64 {}

/// Resolution of generated weights (2^-6 = 0.015625, six decimal digits).
///
/// Dyadic weights keep path sums exact in binary floating point, so every
/// solver reaches bit-identical distances regardless of relaxation order.
pub const WEIGHT_QUANTUM: f64 = 1.0 / 64.0;
