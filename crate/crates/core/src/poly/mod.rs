//! Exact polynomial arithmetic: sparse bivariate germs over the rationals,
//! dense univariate residuals, and factorization over the rationals for the
//! residual polynomials that show up on exceptional lines.

mod bivar;
mod bivar_sqfree;
mod factor;
mod parse;
mod uni;

pub use bivar::SparsePoly2;
pub use bivar_sqfree::{exact_div2, gcd2, squarefree_decomposition2};
pub use factor::{rational_roots, squarefree_split, SquarefreePart};
pub use parse::ParsePolyError;
pub use uni::UniPoly;

#[cfg(test)]
pub(crate) use bivar::poly;
