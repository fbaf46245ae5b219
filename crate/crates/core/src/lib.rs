//! Hermite reduction and reduction-based creative telescoping for
//! hyperexponential functions over ℚ(x)(y).

pub mod arith;
pub mod bench;
pub mod canon;
pub mod error;
pub mod expr;
pub mod hermite;
pub mod polyred;
pub mod reductions;
pub mod telescope;
pub mod verify;

pub use error::{Error, Result};
