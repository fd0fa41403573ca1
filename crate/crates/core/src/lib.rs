//! Holant partition functions for generalized Fibonacci gates on domains of
//! size 3 and 4.
//!
//! The crate stores symmetric signatures densely ([`signature`]), checks and
//! builds Fibonacci gates ([`fib3`], [`fib4`]), evaluates Holant values in
//! polynomial time by merging dangling edges ([`engine`]) and provides an
//! exhaustive reference evaluator ([`oracle`]).

pub mod basis;
pub mod cubic;
pub mod engine;
pub mod error;
pub mod fib3;
pub mod fib4;
pub mod grid;
pub mod io;
mod lstsq;
pub mod oracle;
pub mod random;
pub mod recurrence;
pub mod signature;
mod tolerance;

pub use num_complex::Complex64 as Complex;

pub use basis::OrthoBasis;
pub use engine::{holant_eval, EdgeOrder, EvalOptions, FibParams, Gate};
pub use error::{Error, Result};
pub use fib3::FibParamsD3;
pub use fib4::FibParamsD4;
pub use grid::SignatureGrid;
pub use oracle::holant_bruteforce;
pub use signature::{count_of_rank, entry_count, rank_of_count, CountVector, SymmetricSignature};
pub use tolerance::{relative_error, Tolerance};
