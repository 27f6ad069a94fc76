//! Exact genus-0 one-point relative Gromov-Witten invariants of `P^s`
//! relative to a smooth degree-`d` hypersurface, and the maximal-contact
//! counts (flex lines, sextactic conics, maximal-contact cubics) obtained
//! from them after removing multiple-cover contributions.

pub mod counts;
pub mod descendants;
pub mod error;
pub mod gathmann;
pub mod interp;
pub mod qrationals;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use qrationals::{Rational, RationalPolynomial};
