//! Inscribed squares, affine-regular hexagons and rhombi on closed curves,
//! found as zeros of test maps on compactified configuration spaces of the
//! circle, whose combinatorics is the cyclohedron.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod configspace;
pub mod curves;
pub mod cyclohedron;
pub mod error;
pub mod exact;
pub mod solver;
pub mod testmaps;
pub mod verify;

pub use error::{PegsError, Result};
