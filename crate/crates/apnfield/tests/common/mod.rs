//! Shared test support: an independent naive GF(2^n) implementation used
//! as the oracle for the fast field arithmetic, a textbook GF(2) rank
//! eliminator, random quadratic function builders, and JSON canonicalizers
//! for determinism comparisons.
//!
//! The naive field works on explicit coefficient vectors with schoolbook
//! multiplication and long division, and inverts by exhaustive search, so
//! it shares no code path with the word-packed implementation it checks.

#![allow(dead_code)]

use apnfield::apnfam::VectorFunction;
use apnfield::{FieldCtx, FieldElement};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub struct NaiveField {
    pub n: u32,
    modulus: Vec<u8>,
}

impl NaiveField {
    pub fn new(n: u32, modulus: u64) -> Self {
        let modulus = (0..=n).map(|i| ((modulus >> i) & 1) as u8).collect();
        NaiveField { n, modulus }
    }

    pub fn from_ctx(ctx: &FieldCtx) -> Self {
        NaiveField::new(ctx.n(), ctx.modulus())
    }

    fn to_bits(&self, a: u64) -> Vec<u8> {
        (0..self.n).map(|i| ((a >> i) & 1) as u8).collect()
    }

    fn from_bits(&self, bits: &[u8]) -> u64 {
        bits.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let n = self.n as usize;
        let (av, bv) = (self.to_bits(a), self.to_bits(b));
        let mut prod = vec![0u8; 2 * n];
        for (i, &ai) in av.iter().enumerate() {
            if ai == 1 {
                for (j, &bj) in bv.iter().enumerate() {
                    prod[i + j] ^= bj;
                }
            }
        }
        // Long division by the modulus.
        for d in (n..2 * n).rev() {
            if prod[d] == 1 {
                for (t, &m) in self.modulus.iter().enumerate() {
                    prod[d - n + t] ^= m;
                }
            }
        }
        self.from_bits(&prod[..n])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1u64;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert_ne!(a, 0);
        (1..1u64 << self.n)
            .find(|&b| self.mul(a, b) == 1)
            .expect("every nonzero element has an inverse")
    }

    pub fn trace(&self, a: u64) -> u8 {
        let mut s = 0u64;
        let mut t = a;
        for _ in 0..self.n {
            s ^= t;
            t = self.mul(t, t);
        }
        assert!(s <= 1);
        s as u8
    }
}

/// Textbook row-echelon rank of the development matrix of f's graph,
/// materialized in full. Quadratic memory; fine through n = 6.
pub fn naive_gamma_rank(f: &VectorFunction) -> u64 {
    let n = f.n();
    let nrows = 1usize << (2 * n);
    let words = nrows.div_ceil(64);
    let dev: Vec<usize> = (0..1usize << n)
        .map(|x| (x << n) | f.table()[x].raw() as usize)
        .collect();
    let mut m: Vec<Vec<u64>> = (0..nrows)
        .map(|u| {
            let mut row = vec![0u64; words];
            for &d in &dev {
                let v = u ^ d;
                row[v >> 6] |= 1u64 << (v & 63);
            }
            row
        })
        .collect();
    let mut rank = 0u64;
    let mut next = 0usize;
    for col in 0..nrows {
        let (w, b) = (col >> 6, col & 63);
        if let Some(r) = (next..nrows).find(|&r| m[r][w] >> b & 1 == 1) {
            m.swap(next, r);
            let pivot = m[next].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != next && row[w] >> b & 1 == 1 {
                    for (dst, src) in row.iter_mut().zip(&pivot) {
                        *dst ^= src;
                    }
                }
            }
            next += 1;
            rank += 1;
        }
    }
    rank
}

/// A random quadratic function with zero constant term: a sum of monomials
/// x^(2^i + 2^j) for i < j and linear terms x^(2^i), with seeded random
/// coefficients.
pub fn random_quadratic(ctx: &FieldCtx, seed: u64) -> VectorFunction {
    let n = ctx.n();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mask = ctx.size() - 1;
    let frob_tables: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| ctx.elements().map(|x| ctx.frobenius(x, i as i64)).collect())
        .collect();
    let mut coeffs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            coeffs.push((i as usize, j as usize, rng.next_u64() & mask));
        }
    }
    let linear: Vec<u64> = (0..n).map(|_| rng.next_u64() & mask).collect();
    let table: Vec<FieldElement> = ctx
        .elements()
        .map(|x| {
            let xi = x.raw() as usize;
            let mut acc = FieldElement::ZERO;
            for &(i, j, c) in &coeffs {
                let c = ctx.element(c).unwrap();
                acc += ctx.mul(c, ctx.mul(frob_tables[i][xi], frob_tables[j][xi]));
            }
            for (i, &c) in linear.iter().enumerate() {
                acc += ctx.mul(ctx.element(c).unwrap(), frob_tables[i][xi]);
            }
            acc
        })
        .collect();
    VectorFunction::new(n, table, format!("random_quadratic(n={n},seed={seed})")).unwrap()
}

/// Serialize to JSON with every timing field removed, for byte-level
/// determinism comparisons.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).unwrap();
    strip_timings(&mut v);
    serde_json::to_string_pretty(&v).unwrap()
}

fn strip_timings(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.retain(|k, _| k != "elapsed_ms" && k != "timings_ms");
            for (_, child) in map.iter_mut() {
                strip_timings(child);
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                strip_timings(item);
            }
        }
        _ => {}
    }
}

/// Every s in 1..n coprime to n.
pub fn coprime_exponents(n: u32) -> Vec<u32> {
    (1..n).filter(|s| gcd(*s as u64, n as u64) == 1).collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
