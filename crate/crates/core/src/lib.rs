//! Exact-arithmetic toolkit for truncated graded Lie algebras of maximal
//! class over finite extensions of a prime field, the F-subalgebras generated
//! in degree 1, and the two-step-field analysis that separates ideally
//! constrained subalgebras from ones that are not just infinite.

pub mod error;
mod gfp;
mod poly;

pub mod analyzer;
pub mod fieldtower;
pub mod fsubspace;
pub mod json;
pub mod maxclass;
pub mod presets;
pub mod report;

pub use error::{Error, Result};
