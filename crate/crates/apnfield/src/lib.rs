//! Finite-field computational algebra for quadratic APN function families.
//!
//! The crate is organized in four layers:
//!
//! * [`gf2e`] — GF(2^n) arithmetic for 2 <= n <= 24 with the sub-operations
//!   the higher layers need: negative-index Frobenius powers, cube tests,
//!   e-th roots, order-3 elements, subfield membership, absolute traces.
//! * [`polyzero`] — zero counting and zero-free constructions for the
//!   trinomials x^(2^s+1) + x + a, their zero-count distributions, the
//!   non-cube coefficient map and its image statistics, normalization of
//!   general quadratic-exponent trinomials, and the norm-form quadrinomial
//!   y^(2^s+1) + c y^(2^s) + c^(2^k) y + 1.
//! * [`apnfam`] — construction and certification of a five-term quadratic
//!   APN family on GF(2^(2k)) for even k not divisible by 3, plus the
//!   hexanomial variant and comparison functions.
//! * [`analysis`] — S-box measurement engines: differential uniformity
//!   (generic and quadratic fast path), Walsh spectra, GF(2) graph rank
//!   (Gamma-rank), and affine-invariance probes.

pub mod analysis;
pub mod apnfam;
pub mod error;
pub mod gf2e;
pub mod polyzero;

mod arith;

pub use apnfam::{ApnCertificate, FamilyParams, VectorFunction};
pub use error::{Error, Result};
pub use gf2e::{FieldCtx, FieldElement, Gf2LinearMap};

pub(crate) fn ms_since(start: std::time::Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
