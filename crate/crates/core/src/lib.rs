//! Exact center-of-mass calculus over arbitrary fields.
//!
//! The crate models the vector space of weighty points and mass dipoles of an
//! affine space `k^n`, together with the equivalent pictures of that space:
//! weighted sets modulo null sets ([`weighted`]), moment-like maps
//! ([`moment`]), vectors of `k^{n+1}` ([`embed`]) and gradients of quadratic
//! polynomials ([`quadratic`]). The field `k` is chosen at run time among exact
//! rationals, prime fields and an `f64` adapter ([`field`]).
//!
//! ```
//! use masscalc::field::Field;
//! use masscalc::mass::{reduce, MassElement};
//! use masscalc::weighted::WeightedSet;
//!
//! let q = Field::Rational;
//! let s = WeightedSet::from_i64(q, 2, &[(&[0, 0], 1), (&[6, 0], 2)]).unwrap();
//! let center = reduce(&s).unwrap();
//! assert_eq!(center.to_string(), "{(4, 0), 3}");
//! # let _ = MassElement::zero(q, 2);
//! ```

pub mod affine;
pub mod demos;
pub mod document;
pub mod embed;
pub mod error;
pub mod field;
pub mod linalg;
pub mod mass;
pub mod moment;
pub mod quadratic;
pub mod random;
pub mod svg;
pub mod weighted;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
