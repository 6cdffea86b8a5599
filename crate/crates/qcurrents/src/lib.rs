//! Exact computer algebra for twisted quantum current algebras.
//!
//! The crate constructs the level-one Fock representation of a twisted
//! q-deformed current algebra (oscillators indexed by odd integers over an
//! integral lattice) and verifies its defining operator identities
//! coefficient-by-coefficient in exact arithmetic over `Q(v)` with `q = v^2`.
//!
//! Layout:
//! - [`scalars`]: big rationals, sparse Laurent polynomials in `v`,
//!   normalized rational functions, truncated series.
//! - [`qseries`]: the exchange kernel `G(z)`, q-analogs of `(1-z)^r`,
//!   two-variable region expansions, formal delta functions.
//! - [`lattice`]: integral lattices, the sign 2-cocycle, the twisted group
//!   algebra.
//! - [`fock`]: the graded Fock space and the odd-mode Heisenberg action.
//! - [`vertex`]: twisted vertex operators and normal-ordered words as exact
//!   mode operators.
//! - [`relcheck`]: the relation checkers, registered by name and grouped
//!   into suites.
//! - [`hopf`]: symbolic coproduct, counit and antipode data.

pub mod error;
pub mod fock;
pub mod hopf;
pub mod lattice;
pub mod qseries;
pub mod relcheck;
pub mod report;
pub mod scalars;
pub mod vertex;

pub use error::Error;
