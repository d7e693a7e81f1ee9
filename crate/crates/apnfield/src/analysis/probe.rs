//! Randomized invariance probes.
//!
//! Differential uniformity, Walsh value sets and Gamma-rank are invariant
//! under affine substitutions; these helpers apply a seeded random
//! invertible substitution and recompute the measure so tests and the CLI
//! can spot-check invariance. The spectrum probe keeps the substitution
//! linear (no output shift), which leaves individual Walsh values intact
//! rather than only up to sign.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::apnfam::VectorFunction;
use crate::error::{Error, Result};
use crate::gf2e::{FieldCtx, FieldElement};

use super::{
    differential_uniformity_generic, gamma_rank, walsh_spectrum,
};

fn rank_of_rows(rows: &[u64]) -> u32 {
    let mut pivots = [0u64; 64];
    let mut rank = 0;
    for &v in rows {
        let mut v = v;
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if pivots[lead] == 0 {
                pivots[lead] = v;
                rank += 1;
                break;
            }
            v ^= pivots[lead];
        }
    }
    rank
}

/// Sample a uniformly random invertible GF(2) matrix by rejection, as
/// basis images.
fn random_invertible(n: u32, rng: &mut ChaCha12Rng) -> Vec<u64> {
    let mask = (1u64 << n) - 1;
    loop {
        let rows: Vec<u64> = (0..n).map(|_| rng.next_u64() & mask).collect();
        if rank_of_rows(&rows) == n {
            return rows;
        }
    }
}

#[inline]
fn apply_rows(rows: &[u64], mut x: u64) -> u64 {
    let mut acc = 0u64;
    while x != 0 {
        acc ^= rows[x.trailing_zeros() as usize];
        x &= x - 1;
    }
    acc
}

fn substituted(f: &VectorFunction, seed: u64, output_shift: bool) -> VectorFunction {
    let n = f.n();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let rows = random_invertible(n, &mut rng);
    let shift = if output_shift {
        rng.next_u64() & ((1u64 << n) - 1)
    } else {
        0
    };
    let table: Vec<FieldElement> = (0..1usize << n)
        .map(|x| {
            let lx = apply_rows(&rows, x as u64) as usize;
            FieldElement::from_raw(f.raw_at(lx) ^ shift)
        })
        .collect();
    VectorFunction::new(n, table, format!("{}~sub({seed})", f.label()))
        .expect("substitution preserves shape")
}

/// x -> f(L(x)) for a seeded random invertible L.
pub fn random_linear_substitution(f: &VectorFunction, seed: u64) -> VectorFunction {
    substituted(f, seed, false)
}

/// x -> f(L(x)) + c for a seeded random invertible L and shift c.
pub fn random_affine_substitution(f: &VectorFunction, seed: u64) -> VectorFunction {
    substituted(f, seed, true)
}

/// Differential uniformity of `f` and of a random affine substitution of
/// it, both by the generic engine. The two must agree.
pub fn probe_uniformity_invariance(f: &VectorFunction, seed: u64) -> Result<(u64, u64)> {
    if f.n() > 10 {
        return Err(Error::TooLarge { n: f.n(), max: 10 });
    }
    let base = differential_uniformity_generic(f)?.uniformity;
    let probed = differential_uniformity_generic(&random_affine_substitution(f, seed))?.uniformity;
    Ok((base, probed))
}

/// Walsh value set of `f` and of a random linear substitution of it.
pub fn probe_spectrum_invariance(
    ctx: &FieldCtx,
    f: &VectorFunction,
    seed: u64,
) -> Result<(Vec<i64>, Vec<i64>)> {
    if f.n() > 10 {
        return Err(Error::TooLarge { n: f.n(), max: 10 });
    }
    let base = walsh_spectrum(ctx, f)?.value_set;
    let probed = walsh_spectrum(ctx, &random_linear_substitution(f, seed))?.value_set;
    Ok((base, probed))
}

/// Gamma-rank of `f` and of a random affine substitution of it.
pub fn probe_gamma_rank_invariance(f: &VectorFunction, seed: u64) -> Result<(u64, u64)> {
    if f.n() > 6 {
        return Err(Error::TooLarge { n: f.n(), max: 6 });
    }
    let base = gamma_rank(f)?;
    let probed = gamma_rank(&random_affine_substitution(f, seed))?;
    Ok((base, probed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apnfam::gold_function;

    #[test]
    fn substitutions_permute_inputs() {
        let ctx = FieldCtx::new(4, None).unwrap();
        let f = gold_function(&ctx, 1);
        let g = random_linear_substitution(&f, 7);
        let mut seen_f: Vec<u64> = f.table().iter().map(|e| e.raw()).collect();
        let mut seen_g: Vec<u64> = g.table().iter().map(|e| e.raw()).collect();
        seen_f.sort_unstable();
        seen_g.sort_unstable();
        assert_eq!(seen_f, seen_g, "value multiset is permuted, not changed");
    }

    #[test]
    fn uniformity_invariant_on_gold() {
        let ctx = FieldCtx::new(6, None).unwrap();
        let f = gold_function(&ctx, 1);
        for seed in 0..3 {
            let (a, b) = probe_uniformity_invariance(&f, seed).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn gamma_rank_invariant_small() {
        let ctx = FieldCtx::new(4, None).unwrap();
        let f = gold_function(&ctx, 1);
        let (a, b) = probe_gamma_rank_invariance(&f, 11).unwrap();
        assert_eq!(a, b);
    }
}
