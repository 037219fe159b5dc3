//! Exact graded Lie algebras of Chevalley type, structurable algebras and Kantor pairs
//! over the rationals and prime fields of characteristic other than 2 and 3.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod arith;
pub mod classify;
pub mod cli;
pub mod error;
pub mod hat;
pub mod lie;
pub mod report;
pub mod roots;
pub mod structurable;

pub use error::{Error, Result};
