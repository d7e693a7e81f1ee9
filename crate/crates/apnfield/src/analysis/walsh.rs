//! Walsh (Fourier) spectrum of a vectorial function.
//!
//! Convention: W(lambda, mu) = sum over x of (-1)^(Tr(lambda f(x)) +
//! Tr(mu x)), with lambda != 0 and mu unrestricted. For each lambda the
//! engine builds the +-1 vector of Tr(lambda f(x)) and applies a fast
//! Walsh-Hadamard transform, obtaining all 2^n values at once; the trace
//! pairing is routed through the field's trace-dual table so transform
//! indices and mu values correspond bijectively.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::apnfam::VectorFunction;
use crate::error::{Error, Result};
use crate::gf2e::FieldCtx;

const WALSH_MAX_N: u32 = 16;

/// Multiset summary of all Walsh values over (lambda != 0, mu).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub n: u32,
    /// Walsh value -> number of (lambda, mu) pairs attaining it.
    pub value_counts: BTreeMap<i64, u64>,
    /// Distinct values, ascending.
    pub value_set: Vec<i64>,
    /// For even n: whether the value set is contained in
    /// {0, +-2^(n/2), +-2^((n+2)/2)}. Undefined for odd n.
    pub is_gold_like: Option<bool>,
}

/// In-place fast Walsh-Hadamard transform; out[w] = sum_x v[x] *
/// (-1)^parity(w & x).
pub(crate) fn fwht(buf: &mut [i32]) {
    let n = buf.len();
    let mut h = 1;
    while h < n {
        let mut i = 0;
        while i < n {
            for j in i..i + h {
                let a = buf[j];
                let b = buf[j + h];
                buf[j] = a + b;
                buf[j + h] = a - b;
            }
            i += 2 * h;
        }
        h *= 2;
    }
}

/// Per-lambda counting with a small inline table; spectra of the functions
/// this crate cares about have a handful of distinct values, and anything
/// richer spills into the overflow map.
struct ValueCounter {
    small: Vec<(i32, u64)>,
    overflow: BTreeMap<i32, u64>,
}

impl ValueCounter {
    fn new() -> Self {
        ValueCounter {
            small: Vec::with_capacity(16),
            overflow: BTreeMap::new(),
        }
    }

    #[inline]
    fn bump(&mut self, v: i32) {
        for entry in &mut self.small {
            if entry.0 == v {
                entry.1 += 1;
                return;
            }
        }
        if self.small.len() < 48 {
            self.small.push((v, 1));
        } else {
            *self.overflow.entry(v).or_insert(0) += 1;
        }
    }

    fn drain_into(self, target: &mut BTreeMap<i64, u64>) {
        for (v, c) in self.small {
            *target.entry(v as i64).or_insert(0) += c;
        }
        for (v, c) in self.overflow {
            *target.entry(v as i64).or_insert(0) += c;
        }
    }
}

fn spectrum_row(tdual: &[u64], f: &VectorFunction, lambda: usize) -> Vec<i32> {
    let size = f.len();
    let mask = tdual[lambda];
    let mut buf: Vec<i32> = (0..size)
        .map(|x| 1 - 2 * ((mask & f.raw_at(x)).count_ones() & 1) as i32)
        .collect();
    fwht(&mut buf);
    buf
}

/// Full spectrum over all lambda != 0. Parseval (sum of squares = 2^(2n)
/// per lambda) is verified exactly for every component; a violation is an
/// arithmetic bug and raises [`Error::InvariantViolation`].
pub fn walsh_spectrum(ctx: &FieldCtx, f: &VectorFunction) -> Result<SpectrumReport> {
    let n = f.n();
    if ctx.n() != n {
        return Err(Error::Precondition(format!(
            "context degree {} does not match function degree {n}",
            ctx.n()
        )));
    }
    if n > WALSH_MAX_N {
        return Err(Error::TooLarge { n, max: WALSH_MAX_N });
    }
    let size = 1usize << n;
    let tdual = ctx.trace_dual_table();
    let parseval_target = 1u64 << (2 * n);

    let value_counts = (1..size)
        .into_par_iter()
        .try_fold(BTreeMap::<i64, u64>::new, |mut acc, lambda| {
            let buf = spectrum_row(&tdual, f, lambda);
            let mut counter = ValueCounter::new();
            let mut square_sum = 0u64;
            for &v in &buf {
                counter.bump(v);
                square_sum += (v as i64 * v as i64) as u64;
            }
            if square_sum != parseval_target {
                return Err(Error::InvariantViolation(format!(
                    "Parseval failed at lambda = {lambda:#x}: {square_sum} != {parseval_target}"
                )));
            }
            counter.drain_into(&mut acc);
            Ok(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (v, c) in b {
                *a.entry(v).or_insert(0) += c;
            }
            Ok(a)
        })?;

    let value_set: Vec<i64> = value_counts.keys().copied().collect();
    let is_gold_like = (n % 2 == 0).then(|| {
        let lo = 1i64 << (n / 2);
        let hi = 1i64 << (n / 2 + 1);
        value_set
            .iter()
            .all(|&v| v == 0 || v.abs() == lo || v.abs() == hi)
    });
    Ok(SpectrumReport {
        n,
        value_counts,
        value_set,
        is_gold_like,
    })
}

/// All W(lambda, mu) for one fixed lambda, indexed by mu's encoding. Used
/// by the CSV dump, which is too large to hold for all lambda at once.
pub fn walsh_values_for(ctx: &FieldCtx, f: &VectorFunction, lambda: u64) -> Result<Vec<i64>> {
    let n = f.n();
    if ctx.n() != n || lambda == 0 || lambda >> n != 0 {
        return Err(Error::Precondition(
            "walsh_values_for needs a nonzero in-range lambda and matching context".into(),
        ));
    }
    let tdual = ctx.trace_dual_table();
    Ok(walsh_values_with_table(&tdual, f, lambda))
}

/// Row accessor against a caller-held trace-dual table, so bulk dumps
/// build the table once instead of per lambda.
pub fn walsh_values_with_table(tdual: &[u64], f: &VectorFunction, lambda: u64) -> Vec<i64> {
    let buf = spectrum_row(tdual, f, lambda as usize);
    (0..f.len()).map(|mu| buf[tdual[mu] as usize] as i64).collect()
}
