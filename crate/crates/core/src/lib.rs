//! Exact operator calculus on universal Verma modules of `gl(n)`.
//!
//! Everything here works in a fixed-point basis indexed by integer patterns,
//! over the field of rational functions in `x1..xn`, `h` and `q2..q(n-1)`.
#![no_std]

extern crate alloc;

pub mod error;
pub mod exactalg;
pub mod globalverma;
pub mod gtalg;
pub mod ktheory;
pub mod patterns;
pub mod report;
pub mod shiftarg;
pub mod verma;
pub mod whittaker;

pub use error::Error;
