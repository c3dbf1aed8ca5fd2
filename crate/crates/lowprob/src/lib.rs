//! Exact-arithmetic construction and verification of lower probabilities on
//! finite spaces.
//!
//! Evidence comes in three shapes: a probability measure pushed through a
//! multivalued mapping (the Dempster construction), a dominated lower
//! probability paired with per-outcome conditional lower envelopes, or raw
//! linear constraints on joint measures. Each shape induces a polyhedral
//! family of joint measures whose marginal minima define a lower probability;
//! this crate computes those minima with an exact rational simplex, checks
//! them against an independent enumeration oracle, and verifies the closed
//! forms and monotonicity structure the constructions are known to satisfy.
//!
//! All scalars are arbitrary-precision rationals. Every comparison in the
//! crate, including every test, is exact: there are no tolerances to tune.

mod error;
mod linalg;

pub mod dempster;
pub mod envelope;
pub mod family;
pub mod fixtures;
pub mod lp;
pub mod rational;
pub mod reduction;
pub mod sampling;
pub mod setfun;
pub mod space;

pub use error::{Error, Result};
pub use rational::{parse_rational, rat, Rational};
pub use setfun::{from_mass, mobius, upper_from_lower, ProbMeasure, SetFunction};
pub use space::{FiniteSpace, Subset, MAX_SPACE_SIZE};

#[cfg(test)]
mod thread_safety {
    // every value is immutable after construction and freely shareable
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::FiniteSpace>();
        assert_send_sync::<crate::Subset>();
        assert_send_sync::<crate::SetFunction>();
        assert_send_sync::<crate::ProbMeasure>();
        assert_send_sync::<crate::dempster::MultivaluedMap>();
        assert_send_sync::<crate::family::JointMeasure>();
        assert_send_sync::<crate::family::FamilySpec>();
        assert_send_sync::<crate::lp::LinearProgram>();
    }
}
