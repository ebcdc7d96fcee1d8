//! Exact-arithmetic invariant theory of finite Weyl groups.
//!
//! The crate computes the basic polynomial invariants of the Weyl groups of
//! the simple root systems, the differential pairing `a∘b = (da, db)` on
//! generators modulo decomposables, and the resulting constant tables, all
//! over exact scalar fields (arbitrary-precision rationals and quadratic
//! extensions thereof). Brute-force oracles (exterior algebra of sl2/sl3,
//! Milnor rings, Grassmann-coefficient matrices) verify the structural
//! statements independently.
//!
//! The numeric core is generic over the scalar type; only exact
//! instantiations are exported since every result here is an exact identity.

pub mod scalar;
pub mod matrix;
pub mod poly;
pub mod rootsys;
pub mod genring;
pub mod invariants;
pub mod pairing;
pub mod milnor;
pub mod exterior;
pub mod grassmann;

pub use scalar::{Qx, Rat, Scalar};

/// Pin the global worker pool to `n` threads. Call once, before any parallel
/// computation; later calls fail once the pool exists.
pub fn configure_threads(n: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Polynomial with rational coefficients.
pub type QPoly = poly::Poly<Rat>;
/// Polynomial with coefficients in a quadratic extension of the rationals.
pub type XPoly = poly::Poly<Qx>;
/// Dense matrix over the rationals.
pub type QMat = matrix::Mat<Rat>;
/// Dense matrix over a quadratic extension.
pub type XMat = matrix::Mat<Qx>;
