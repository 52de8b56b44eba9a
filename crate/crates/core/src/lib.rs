//! Exact arithmetic for odd-quadratic Lie superalgebras whose odd part is a
//! weak filiform module over the even part.

// index loops mirror the structure-constant formulas
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod cert;
pub mod classify;
pub mod derivations;
pub mod error;
pub mod exec;
pub mod extensions;
pub mod flags;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use algebra::{Structure, SuperAlgebra};
pub use error::{Error, Result};
pub use exec::Exec;
pub use forms::OddForm;
pub use scalar::Scalar;
