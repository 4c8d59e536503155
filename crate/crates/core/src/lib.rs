//! Exact-arithmetic toolkit for the Z/2-graded root-system combinatorics of
//! the exceptional types E7 and E8, and for the plane-curve families attached
//! to them.
//!
//! The crate is organized around a pipeline:
//!
//! * [`rootsys`] builds simply-laced root systems (A, D, E) from hard-coded
//!   Bourbaki Cartan matrices and provides root arithmetic.
//! * [`grading`] splits the roots by height parity into `Φ_G ⊔ Φ_V`, derives
//!   the root basis `S_G` of the even part with its rational coordinate
//!   functions `n_i`, and computes the stabilizer group `Ω`.
//! * [`reducibility`] decides three reducibility criteria with exact
//!   witnesses, backed by a rational simplex feasibility engine.
//! * [`cuspgen`] enumerates cusp data `(M_0, M_1)` over the `n_i` partial
//!   order, prunes and certifies them, and re-verifies finished reports.
//! * [`curves`] counts points on the genus-3/genus-4 curve families over
//!   `F_{2^k}`, reconstructs L-polynomials and Jacobian orders, checks
//!   weighted homogeneity, and counts coefficient vectors of bounded height.
//!
//! All certificate-bearing computations use arbitrary-precision rational
//! arithmetic; floating point appears only in reporting paths (height values
//! and exponent fits).

pub mod cuspgen;
pub mod curves;
pub mod grading;
pub mod reducibility;
pub mod rootsys;

mod linalg;
