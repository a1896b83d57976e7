//! Exact-rational machinery for the complex intersection forms of real plane
//! curves: local canonical/residue forms at singular points, morsification and
//! resolution routes to the same forms, global partition forms of curves and
//! generic line arrangements, and the associated topological inequality
//! right-hand sides.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate.

pub mod arrangements;
pub mod bounds;
pub mod curves;
pub mod euler;
pub mod localforms;
pub mod morsify;
pub mod qforms;
pub mod resolution;

pub use qforms::{rat, ratio, FormError, Inertia, Rat, SymmetricForm};
