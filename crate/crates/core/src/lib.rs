// Domain guards are written as !(lo < x && x < hi) so that incomparable values are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod ball;
pub mod cli;
pub mod error;
pub mod special;
pub mod sums;
pub mod zeros;

pub use error::{Error, Result};
