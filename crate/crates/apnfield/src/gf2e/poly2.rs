//! Raw polynomial arithmetic over GF(2).
//!
//! Polynomials are coefficient bit-vectors in a `u64`, bit i = coefficient
//! of x^i. Everything here works on bare words; the field layer in the
//! parent module wraps these with a fixed modulus.

use crate::arith::prime_factors_u64;

/// Degree of `p`, or -1 for the zero polynomial.
#[inline]
pub(crate) fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product. The caller guarantees deg a + deg b <= 63.
#[inline]
pub(crate) fn clmul(a: u64, mut b: u64) -> u64 {
    let mut acc = 0u64;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

/// Remainder of `a` modulo `m` (m != 0).
#[inline]
pub(crate) fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    loop {
        let da = degree(a);
        if da < dm {
            return a;
        }
        a ^= m << (da - dm);
    }
}

/// Polynomial gcd, normalized only in the sense that GF(2) polynomials have
/// no unit multiples to strip.
pub(crate) fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility of a degree-n polynomial over GF(2).
///
/// Rabin's criterion: f is irreducible iff x^(2^n) = x (mod f) and
/// gcd(x^(2^(n/p)) - x, f) = 1 for every prime p dividing n. Deterministic
/// and exact for every degree this crate supports.
pub(crate) fn is_irreducible(f: u64, n: u32) -> bool {
    debug_assert_eq!(degree(f), n as i32);
    if n == 1 {
        return true;
    }
    let checkpoints: Vec<u64> = prime_factors_u64(n as u64)
        .iter()
        .map(|p| n as u64 / p)
        .collect();
    let mut h = 0b10u64; // the polynomial x
    for step in 1..=n as u64 {
        h = poly_rem(clmul(h, h), f);
        if checkpoints.contains(&step) && poly_gcd(h ^ 0b10, f) != 1 {
            return false;
        }
    }
    h == 0b10
}

/// Smallest-encoding irreducible polynomial of exact degree n.
pub(crate) fn smallest_irreducible(n: u32) -> u64 {
    (1u64 << n..1u64 << (n + 1))
        .find(|&f| is_irreducible(f, n))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_clmul() {
        assert_eq!(degree(0), -1);
        assert_eq!(degree(1), 0);
        assert_eq!(degree(0b1011), 3);
        // (x+1)^2 = x^2 + 1
        assert_eq!(clmul(0b11, 0b11), 0b101);
        assert_eq!(clmul(0b10, 0b111), 0b1110);
    }

    #[test]
    fn rem_and_gcd() {
        // (x^3 + x + 1) mod (x^2 + x + 1) = x
        assert_eq!(poly_rem(0b1011, 0b111), 0b10);
        // gcd((x+1)^2, (x+1)x) = x + 1
        assert_eq!(poly_gcd(0b101, 0b110), 0b11);
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(0b111, 2)); // x^2+x+1
        assert!(!is_irreducible(0b101, 2)); // (x+1)^2
        assert!(is_irreducible(0b1011, 3));
        assert!(is_irreducible(0b1101, 3));
        assert!(!is_irreducible(0b1111, 3)); // (x+1)(x^2+x+1)
        assert!(!is_irreducible(0b10101, 4)); // (x^2+x+1)^2
        assert!(is_irreducible(0b10011, 4)); // x^4+x+1
    }

    /// A squarefree product whose factor degrees {1,2,3} have lcm 6 is the
    /// case where testing only x^(2^i) != x for i < n would wrongly accept;
    /// the gcd checkpoints must reject it.
    #[test]
    fn rejects_factor_degree_lcm_trap() {
        let f = clmul(clmul(0b11, 0b111), 0b1011); // (x+1)(x^2+x+1)(x^3+x+1)
        assert_eq!(degree(f), 6);
        assert!(!is_irreducible(f, 6));
    }

    #[test]
    fn smallest_irreducibles_match_trial_division() {
        // Independent check: trial division by every poly of degree 1..=n/2.
        fn divides(d: u64, f: u64) -> bool {
            poly_rem(f, d) == 0
        }
        fn irreducible_by_trial(f: u64, n: u32) -> bool {
            (2u64..1u64 << (n / 2 + 1)).all(|d| degree(d) < 1 || !divides(d, f))
        }
        for n in 2..=12u32 {
            let f = smallest_irreducible(n);
            let oracle = (1u64 << n..1u64 << (n + 1))
                .find(|&c| irreducible_by_trial(c, n))
                .unwrap();
            assert_eq!(f, oracle, "degree {n}");
        }
    }
}
