//! Exact combinatorics of plane-curve singularities.
//!
//! Given a polynomial germ `f(x, y)` vanishing at the origin, this crate
//! constructs an embedded resolution by iterated point blow-ups and computes,
//! from the resulting intersection data, the log canonical threshold, the
//! candidate jumping numbers, the inner jump multiplicities, and the spectrum
//! multiplicities on `(0, 1]`. Two independent intersection-theoretic formulas
//! produce the multiplicities, and a brute-force valuative oracle checks them
//! against multiplier-ideal colengths computed by exact linear algebra.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and no
//! floating point appears anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod linalg;
pub mod multiplier;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod resdata;
pub mod resolve;
pub mod spectrum;

pub use error::Error;
pub use poly::{SparsePoly2, UniPoly};
pub use rational::Rational;
pub use resdata::{Component, ComponentKind, ResolutionData, Violation};
