use std::fmt::{Debug, Display};

/// Floating-point scalar the core math is generic over: `f32` or `f64`.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Convert an `f64` constant (tolerances, defaults) into this scalar.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
