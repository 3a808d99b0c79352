//! Isogeometric wildfire spread simulation on tensor-product B-spline spaces.

// Negated float comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod assembly;
pub mod bspline;
pub mod error;
pub mod fuelmap;
pub mod kron;
pub mod mms;
pub mod operators1d;
pub mod physics;
pub mod schemes;
pub mod sim_io;

pub use error::{Error, Result};
