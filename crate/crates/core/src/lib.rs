//! Exact computations with (a,b)-modules over Q[[b]].
//!
//! The algebra is generated by a and b subject to ab − ba = b². Modules are
//! free of finite rank over Q[[b]], stored truncated at a working order N.

pub mod change_of_variable;
pub mod classification;
pub mod cli;
pub mod error;
pub mod levels;
pub mod linalg;
pub mod module;
pub mod ore;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{AbError, Result};
pub use ore::OreOperator;
pub use poly::Poly;
pub use rational::Rat;
pub use series::TruncSeries;
