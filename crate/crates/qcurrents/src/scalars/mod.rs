//! Exact arithmetic ground field: `Q(v)` with `q = v^2`.
//!
//! Everything downstream works over [`RatFun`], a reduced fraction of sparse
//! Laurent polynomials in the half-power variable `v = q^{1/2}`. Exposing `v`
//! rather than `q` keeps the vertex-operator coefficients `2 q^{∓n/2}/[n]`
//! inside a single Laurent fraction field.

mod ctx;
mod laurent;
mod ratfun;
mod series;

pub use ctx::ScalarCtx;
pub use laurent::{qfactorial, qint, BigRational, LaurentPoly};
pub use ratfun::RatFun;
pub use series::TruncSeries;
