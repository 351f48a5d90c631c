//! Artin approximation over truncated discrete valuation rings.
//!
//! Arithmetic happens in `R/t^M` for `R = Z_p` or `F_p[[t]]`. On top of
//! that the crate provides polynomial systems and their Jacobian ideals,
//! Hensel and Tougeron-style lifting, closed forms with constructive
//! repairs for monomial and determinantal ideals, and a brute-force
//! oracle computing Artin functions of small systems by enumeration.

pub mod determinantal;
pub mod error;
pub mod lifting;
pub mod matrix;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod verify;

pub use error::{ArtinError, Result};
pub use matrix::MatrixR;
pub use poly::{IdealVal, Poly, PolySystem, Var};
pub use ring::{Elem, Flavor, RingCtx, Val};
