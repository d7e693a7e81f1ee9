//! S-box measurement engines.
//!
//! Differential spectrum and APN verification (a generic exhaustive counter
//! and a quadratic kernel-rank fast path), Walsh spectra with Gold-shape
//! classification, GF(2) rank of the function graph's group development
//! (Gamma-rank), and randomized affine-invariance probes. Every engine is
//! deterministic: parallel partitions merge associatively and worker count
//! never changes a result.

mod differential;
mod gamma_rank;
mod probe;
mod walsh;

pub use differential::{
    differential_uniformity_generic, differential_uniformity_quadratic, DifferentialMethod,
    DifferentialReport,
};
pub use gamma_rank::{gamma_rank, gamma_rank_detailed, GammaRankReport};
pub use probe::{
    probe_gamma_rank_invariance, probe_spectrum_invariance, probe_uniformity_invariance,
    random_affine_substitution, random_linear_substitution,
};
pub use walsh::{walsh_spectrum, walsh_values_for, walsh_values_with_table, SpectrumReport};
