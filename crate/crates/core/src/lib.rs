pub mod arith;
pub mod cli;
pub mod kernel;
pub mod luqikeng;
pub mod palindrome;
pub mod poly;
pub mod rootloc;

pub use arith::{PairError, PairMN};
