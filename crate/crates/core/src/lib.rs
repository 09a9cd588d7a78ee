//! Idempotent and positive semirings, matrix closure, weak and strong
//! interval extensions, and an exact solver for the interval Bellman equation
//! `X = 𝐀X ⊕ 𝐁`.
//!
//! ```
//! use semiring_core::{real_matrix, Profile};
//!
//! let a = real_matrix(Profile::MinPlus, &[&[f64::INFINITY, 1.0], &[2.0, f64::INFINITY]]);
//! let d = a.closure().unwrap();
//! assert_eq!(d, real_matrix(Profile::MinPlus, &[&[0.0, 1.0], &[2.0, 0.0]]));
//! ```

pub mod bellman;
pub mod codec;
pub mod error;
pub mod graph;
pub mod interval;
pub mod laws;
pub mod matrix;
pub mod sample;
pub mod semiring;

pub use error::{Error, Result};
pub use interval::{degenerate, merge, split, Interval, IntervalExt, IntervalMatrix, Mode};
pub use matrix::{karp_cycle_mean, real_matrix, BlockStructure, EigenResult, Matrix};
pub use semiring::{make_instance, Counting, Element, Flags, Leq, Product, Profile, Semiring};
