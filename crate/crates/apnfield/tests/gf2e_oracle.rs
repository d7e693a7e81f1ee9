//! Field arithmetic against the independent naive oracle, plus the sampled
//! algebraic laws the fast implementation must satisfy.

mod common;

use apnfield::{Error, FieldCtx, FieldElement};
use common::NaiveField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn gf(n: u32) -> FieldCtx {
    FieldCtx::new(n, None).unwrap()
}

#[test]
fn default_octic_modulus_matches_trial_division_oracle() {
    // Oracle: trial division by every polynomial of degree 1..=4.
    fn degree(p: u64) -> i64 {
        63 - p.leading_zeros() as i64
    }
    fn rem(mut a: u64, m: u64) -> u64 {
        while degree(a) >= degree(m) {
            a ^= m << (degree(a) - degree(m));
        }
        a
    }
    let smallest = (1u64 << 8..1u64 << 9)
        .find(|&f| (2u64..32).all(|d| rem(f, d) != 0))
        .unwrap();
    assert_eq!(gf(8).modulus(), smallest);
}

#[test]
fn multiplication_matches_naive_oracle() {
    for n in [2u32, 3, 4, 5, 6, 8] {
        let ctx = gf(n);
        let naive = NaiveField::from_ctx(&ctx);
        for a in 0..ctx.size() {
            for b in 0..ctx.size().min(64) {
                let fast = ctx
                    .mul(ctx.element(a).unwrap(), ctx.element(b).unwrap())
                    .raw();
                assert_eq!(fast, naive.mul(a, b), "n={n}, a={a:#x}, b={b:#x}");
            }
        }
    }
}

#[test]
fn gf16_spec_product_and_inverse_against_oracle() {
    let ctx = FieldCtx::new(4, Some(0b10011)).unwrap();
    let naive = NaiveField::from_ctx(&ctx);
    // x^2 * x^3 = x^2 + x under x^4 + x + 1.
    assert_eq!(naive.mul(0b100, 0b1000), 0b110);
    for a in 1..16u64 {
        let inv = ctx.inv(ctx.element(a).unwrap()).unwrap().raw();
        assert_eq!(inv, naive.inv(a));
    }
}

#[test]
fn field_axioms_hold_on_random_triples() {
    // At least 10^4 sampled triples across a spread of degrees, odd and
    // even, checking associativity, distributivity, inverses and a + a = 0.
    let mut rng = ChaCha12Rng::seed_from_u64(0xA71F);
    let ctxs: Vec<FieldCtx> = [4u32, 7, 12, 16, 21].iter().map(|&n| gf(n)).collect();
    let mut triples = 0usize;
    while triples < 10_500 {
        let ctx = &ctxs[triples % ctxs.len()];
        let mask = ctx.size() - 1;
        let a = ctx.element(rng.random::<u64>() & mask).unwrap();
        let b = ctx.element(rng.random::<u64>() & mask).unwrap();
        let c = ctx.element(rng.random::<u64>() & mask).unwrap();
        assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        assert_eq!(ctx.mul(a, b + c), ctx.mul(a, b) + ctx.mul(a, c));
        assert_eq!(a + a, FieldElement::ZERO);
        if !a.is_zero() {
            assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElement::ONE);
        }
        triples += 1;
    }
}

#[test]
fn frobenius_is_a_field_automorphism() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xBEE);
    for n in [4u32, 6, 9, 12] {
        let ctx = gf(n);
        let mask = ctx.size() - 1;
        for _ in 0..200 {
            let a = ctx.element(rng.random::<u64>() & mask).unwrap();
            let b = ctx.element(rng.random::<u64>() & mask).unwrap();
            let i = rng.random_range(-30i64..30);
            assert_eq!(ctx.frobenius(a + b, i), ctx.frobenius(a, i) + ctx.frobenius(b, i));
            assert_eq!(
                ctx.frobenius(ctx.mul(a, b), i),
                ctx.mul(ctx.frobenius(a, i), ctx.frobenius(b, i))
            );
            assert_eq!(ctx.frobenius(a, n as i64), a);
            assert_eq!(ctx.frobenius(ctx.frobenius(a, -i), i), a);
        }
    }
}

#[test]
fn frobenius_map_agrees_with_pointwise() {
    for n in [5u32, 8] {
        let ctx = gf(n);
        for s in 0..n {
            let map = ctx.frobenius_map(s as i64);
            for x in ctx.elements() {
                assert_eq!(map.apply(x), ctx.frobenius(x, s as i64));
            }
        }
    }
}

#[test]
fn cube_counts_exact_for_even_degrees() {
    for n in [2u32, 4, 6, 8, 10, 12, 14, 16] {
        let ctx = gf(n);
        let cubes = ctx
            .nonzero_elements()
            .filter(|&a| ctx.is_cube(a).unwrap())
            .count() as u64;
        assert_eq!(cubes, ctx.group_order() / 3, "n = {n}");
    }
}

#[test]
fn ninth_root_on_gf256_matches_exhaustive_oracle() {
    let ctx = gf(8);
    let naive = NaiveField::from_ctx(&ctx);
    let g = ctx.generator().raw();
    let y = naive.pow(g, 9);
    // Oracle: some ninth root exists by scanning the whole group.
    let oracle_root = (1..256u64).find(|&z| naive.pow(z, 9) == y).unwrap();
    assert_eq!(naive.pow(oracle_root, 9), y);
    let z = ctx.power_root(ctx.element(y).unwrap(), 9).unwrap();
    assert_eq!(ctx.pow(z, 9).unwrap().raw(), y);
}

#[test]
fn power_root_roundtrip_randomized() {
    let mut rng = ChaCha12Rng::seed_from_u64(17);
    for n in [4u32, 6, 8, 12] {
        let ctx = gf(n);
        let mask = ctx.size() - 1;
        for &e in &[3u64, 5, 9, 17, (1 << 3) + 1] {
            for _ in 0..50 {
                let z = match ctx.element(rng.random::<u64>() & mask) {
                    Ok(z) if !z.is_zero() => z,
                    _ => continue,
                };
                let y = ctx.pow(z, e as i64).unwrap();
                let r = ctx.power_root(y, e).unwrap();
                assert_eq!(ctx.pow(r, e as i64).unwrap(), y, "n={n}, e={e}");
            }
        }
    }
}

#[test]
fn trace_matches_naive_and_is_frobenius_stable() {
    for n in [3u32, 4, 6, 8] {
        let ctx = gf(n);
        let naive = NaiveField::from_ctx(&ctx);
        for a in ctx.elements() {
            assert_eq!(ctx.abs_trace(a), naive.trace(a.raw()), "n={n}, a={a}");
            assert_eq!(ctx.abs_trace(ctx.square(a)), ctx.abs_trace(a));
        }
    }
}

#[test]
fn subfield_sizes() {
    let ctx = gf(12);
    for k in [1u32, 2, 3, 4, 6, 12] {
        let members = ctx
            .elements()
            .filter(|&a| ctx.in_subfield(a, k).unwrap())
            .count() as u64;
        assert_eq!(members, 1 << k, "k = {k}");
    }
    assert_eq!(
        ctx.in_subfield(FieldElement::ONE, 5).unwrap_err(),
        Error::NotASubfieldDegree { k: 5, n: 12 }
    );
}

#[test]
fn custom_modulus_accepted_and_consistent() {
    // x^4 + x^3 + 1 is the other degree-4 irreducible with 5 terms fewer.
    let ctx = FieldCtx::new(4, Some(0b11001)).unwrap();
    let naive = NaiveField::new(4, 0b11001);
    for a in 0..16u64 {
        for b in 0..16u64 {
            assert_eq!(
                ctx.mul(ctx.element(a).unwrap(), ctx.element(b).unwrap()).raw(),
                naive.mul(a, b)
            );
        }
    }
}
