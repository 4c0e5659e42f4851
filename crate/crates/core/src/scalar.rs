//! Floating-point scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Relative tolerance used by point-in-hull tests.
    fn containment_eps() -> Self {
        let floor = Self::from_f64(1e-12).unwrap();
        let scaled = Self::epsilon() * Self::from_f64(64.0).unwrap();
        if scaled > floor {
            scaled
        } else {
            floor
        }
    }

    /// Lossy conversion from `f64`. Only used on finite values.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).unwrap()
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_floor() {
        assert_eq!(f64::containment_eps(), 1e-12);
        assert!(f32::containment_eps() > 1e-6);
    }
}
