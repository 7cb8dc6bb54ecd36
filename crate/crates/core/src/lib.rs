//! Exact computations of skew-curvature spaces, skew-prolongations and
//! weight combinatorics for explicit complex Lie algebra representations.

pub mod error;
pub mod curvature;
pub mod lie;
pub mod linalg;
pub mod prolong;
pub mod registry;
pub mod weights;

pub use error::{Error, Result};
