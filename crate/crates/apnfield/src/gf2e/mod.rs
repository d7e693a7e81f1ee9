//! Arbitrary GF(2^n) arithmetic for 2 <= n <= 24.
//!
//! Elements are residue polynomials over GF(2) stored as little-endian
//! coefficient bits of a `u64` (bit i = coefficient of x^i). A [`FieldCtx`]
//! fixes the degree and an irreducible modulus, verified at construction,
//! and exposes every operation as a pure function of its inputs. Contexts
//! are immutable after construction and freely shareable across threads;
//! the only interior state is the one-time lazy discrete-log table, built
//! race-safely behind a `OnceLock`.
//!
//! Beyond the ring operations the module carries the specific tools the
//! rest of the crate needs: Frobenius powers with negative index
//! (x -> x^(2^(n-s))), cube tests against the index-3 subgroup, e-th root
//! extraction, order-3 elements, subfield membership and absolute traces.

mod poly2;

use std::fmt;
use std::sync::OnceLock;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{gcd_u64, inv_mod_u64, prime_factors_u64};
use crate::error::{Error, Result};

/// Maximum supported field degree. Everything fits comfortably in a word
/// and all exhaustive scans stay tractable below this bound.
pub const MAX_DEGREE: u32 = 24;

/// Discrete-log tables are built eagerly up to this degree ...
const LOG_EAGER_MAX: u32 = 16;
/// ... lazily up to this one, and never beyond it (memory budget ~8 MiB).
const LOG_LAZY_MAX: u32 = 20;

/// An element of GF(2^n) in canonical reduced form: coefficient bits of a
/// residue polynomial, all bits at positions >= n clear.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The raw coefficient bit-vector.
    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(raw: u64) -> FieldElement {
        FieldElement(raw)
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    /// Field addition is coefficient-wise xor; it needs no context.
    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    /// Lowercase hex of the coefficient bit-vector, the encoding used in
    /// all CLI I/O and JSON reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#x})", self.0)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{:x}", self.0))
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<FieldElement, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_hex_element(&s)
            .map_err(|_| D::Error::custom(format!("invalid element hex {s:?}")))
    }
}

/// Parse a bare lowercase-hex element encoding (no field bound check).
pub(crate) fn parse_hex_element(s: &str) -> Result<FieldElement> {
    if s.is_empty() || s.len() > 16 {
        return Err(Error::InvalidElementHex { input: s.to_string() });
    }
    u64::from_str_radix(s, 16)
        .map(FieldElement)
        .map_err(|_| Error::InvalidElementHex { input: s.to_string() })
}

/// A GF(2)-linear map on field elements, stored as its images of the
/// polynomial basis {1, x, ..., x^(n-1)}. Scans use these to apply
/// Frobenius powers in a handful of xors per point.
#[derive(Clone, Debug)]
pub struct Gf2LinearMap {
    n: u32,
    images: [u64; MAX_DEGREE as usize],
}

impl Gf2LinearMap {
    pub(crate) fn from_images(n: u32, images: [u64; MAX_DEGREE as usize]) -> Self {
        Gf2LinearMap { n, images }
    }

    #[inline]
    pub(crate) fn apply_raw(&self, mut x: u64) -> u64 {
        let mut acc = 0u64;
        while x != 0 {
            acc ^= self.images[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        acc
    }

    pub fn apply(&self, x: FieldElement) -> FieldElement {
        debug_assert!(x.raw() >> self.n == 0);
        FieldElement(self.apply_raw(x.raw()))
    }
}

// Raw arithmetic kernels, shared between construction (before a FieldCtx
// exists) and the public methods.

#[inline]
fn reduce_raw(mut v: u64, modulus: u64, n: u32) -> u64 {
    while v >> n != 0 {
        let d = 63 - v.leading_zeros();
        v ^= modulus << (d - n);
    }
    v
}

#[inline]
fn mul_raw(a: u64, b: u64, modulus: u64, n: u32) -> u64 {
    reduce_raw(poly2::clmul(a, b), modulus, n)
}

fn pow_raw(mut base: u64, mut e: u64, modulus: u64, n: u32) -> u64 {
    let mut acc = 1u64;
    while e != 0 {
        if e & 1 == 1 {
            acc = mul_raw(acc, base, modulus, n);
        }
        base = mul_raw(base, base, modulus, n);
        e >>= 1;
    }
    acc
}

/// Immutable description of GF(2^n): degree, verified-irreducible modulus
/// and the constants derived from them (group order, cube index for even
/// degrees, a fixed generator, trace mask, optional discrete-log table).
#[derive(Debug)]
pub struct FieldCtx {
    n: u32,
    modulus: u64,
    group_order: u64,
    cube_index: Option<u64>,
    generator: FieldElement,
    trace_mask: u64,
    log_table: OnceLock<Vec<u32>>,
    log_table_allowed: bool,
}

impl FieldCtx {
    /// Build a field context. When `modulus` is absent the default is the
    /// irreducible degree-n polynomial with the smallest integer encoding,
    /// computed at construction rather than read from a table. The
    /// generator is the first element in ascending encoding order whose
    /// multiplicative order is 2^n - 1.
    pub fn new(n: u32, modulus: Option<u64>) -> Result<FieldCtx> {
        if !(2..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange { n });
        }
        let modulus = match modulus {
            Some(m) => {
                let got = poly2::degree(m);
                if got != n as i32 {
                    return Err(Error::ModulusDegreeMismatch {
                        modulus: m,
                        expected: n,
                        got: got.max(0) as u32,
                    });
                }
                if !poly2::is_irreducible(m, n) {
                    return Err(Error::NotIrreducible { modulus: m });
                }
                m
            }
            None => poly2::smallest_irreducible(n),
        };
        let group_order = (1u64 << n) - 1;
        let order_prime_factors = prime_factors_u64(group_order);
        let generator = (2..1u64 << n)
            .find(|&g| {
                order_prime_factors
                    .iter()
                    .all(|&p| pow_raw(g, group_order / p, modulus, n) != 1)
            })
            .expect("every finite field has a primitive element");
        let cube_index = (n % 2 == 0).then_some(group_order / 3);

        let mut trace_mask = 0u64;
        for i in 0..n {
            let mut acc = 0u64;
            let mut t = 1u64 << i;
            for _ in 0..n {
                acc ^= t;
                t = mul_raw(t, t, modulus, n);
            }
            debug_assert!(acc <= 1, "trace must land in the prime field");
            trace_mask |= acc << i;
        }

        let ctx = FieldCtx {
            n,
            modulus,
            group_order,
            cube_index,
            generator: FieldElement(generator),
            trace_mask,
            log_table: OnceLock::new(),
            log_table_allowed: n <= LOG_LAZY_MAX,
        };
        if n <= LOG_EAGER_MAX {
            ctx.log_table();
        }
        Ok(ctx)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// 2^n - 1, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// (2^n - 1) / 3 when n is even; absent for odd n where every element
    /// is a cube.
    pub fn cube_index(&self) -> Option<u64> {
        self.cube_index
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Number of elements, 2^n.
    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    /// Wrap a raw encoding, rejecting values with bits at or above n.
    pub fn element(&self, raw: u64) -> Result<FieldElement> {
        if raw >> self.n != 0 {
            return Err(Error::ElementOutOfRange { raw, n: self.n });
        }
        Ok(FieldElement(raw))
    }

    /// Parse the lowercase-hex encoding and bound-check it for this field.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let e = parse_hex_element(s)?;
        self.element(e.raw())
    }

    /// All 2^n elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(FieldElement)
    }

    /// All nonzero elements in ascending encoding order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.size()).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    /// Carry-less polynomial product followed by modulus reduction.
    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(mul_raw(a.0, b.0, self.modulus, self.n))
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        mul_raw(a, b, self.modulus, self.n)
    }

    /// Multiplicative inverse, by exponentiation with 2^n - 2.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(pow_raw(
            a.0,
            self.group_order - 1,
            self.modulus,
            self.n,
        )))
    }

    /// General power with an arbitrary signed exponent, taken modulo
    /// 2^n - 1 for nonzero bases. 0^0 = 1, 0^e = 0 for e > 0, and a
    /// negative exponent on zero is a division by zero.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.is_zero() {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let e = e.rem_euclid(self.group_order as i64) as u64;
        Ok(FieldElement(pow_raw(a.0, e, self.modulus, self.n)))
    }

    #[inline]
    pub(crate) fn pow_u64(&self, a: FieldElement, e: u64) -> FieldElement {
        FieldElement(pow_raw(a.0, e % self.group_order.max(1), self.modulus, self.n))
    }

    /// a^(2^i) with the index taken mod n, so `frobenius(a, -s)` is the
    /// inverse of the s-fold Frobenius: a^(2^(n-s)).
    pub fn frobenius(&self, a: FieldElement, i: i64) -> FieldElement {
        let j = i.rem_euclid(self.n as i64) as u32;
        let mut v = a.0;
        for _ in 0..j {
            v = mul_raw(v, v, self.modulus, self.n);
        }
        FieldElement(v)
    }

    /// The Frobenius power x -> x^(2^i) as a linear map over the
    /// polynomial basis, for bulk application in scans.
    pub fn frobenius_map(&self, i: i64) -> Gf2LinearMap {
        let mut images = [0u64; MAX_DEGREE as usize];
        for (b, img) in images.iter_mut().enumerate().take(self.n as usize) {
            *img = self.frobenius(FieldElement(1u64 << b), i).0;
        }
        Gf2LinearMap::from_images(self.n, images)
    }

    /// Whether nonzero `a` lies in the index-3 subgroup of cubes. Defined
    /// only for even degrees, where 3 divides 2^n - 1.
    pub fn is_cube(&self, a: FieldElement) -> Result<bool> {
        let ci = self.cube_index.ok_or(Error::OddDegreeField { n: self.n })?;
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(pow_raw(a.0, ci, self.modulus, self.n) == 1)
    }

    /// The fixed order-3 element g^((2^n-1)/3) for the context generator g.
    /// Deterministic given the context.
    pub fn order3_element(&self) -> Result<FieldElement> {
        let ci = self.cube_index.ok_or(Error::OddDegreeField { n: self.n })?;
        let w = FieldElement(pow_raw(self.generator.0, ci, self.modulus, self.n));
        debug_assert!(w != FieldElement::ONE && self.pow_u64(w, 3) == FieldElement::ONE);
        Ok(w)
    }

    /// Discrete log of a nonzero element with respect to the context
    /// generator, when the table policy admits one for this degree.
    pub fn discrete_log(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        self.log_table().map(|t| t[a.0 as usize] as u64)
    }

    fn log_table(&self) -> Option<&Vec<u32>> {
        if !self.log_table_allowed {
            return None;
        }
        // Lazy one-time build; OnceLock keeps racing initializers safe and
        // idempotent.
        Some(self.log_table.get_or_init(|| {
            let mut table = vec![u32::MAX; self.size() as usize];
            let mut acc = 1u64;
            for i in 0..self.group_order {
                debug_assert!(table[acc as usize] == u32::MAX);
                table[acc as usize] = i as u32;
                acc = mul_raw(acc, self.generator.0, self.modulus, self.n);
            }
            table
        }))
    }

    /// An e-th root of `y`: some z with z^e = y. The caller is expected to
    /// know `y` is an e-th power (checked here via y^((2^n-1)/gcd(e, 2^n-1))
    /// = 1). Roots are chosen deterministically for a given context.
    ///
    /// Route, in order: exponent inversion when gcd(e, 2^n-1) = 1; the
    /// discrete-log table when present (degrees <= 20); exponent inversion
    /// modulo (2^n-1)/d when e is coprime to that cofactor (this covers
    /// e = 2^s+1 on even-degree fields whenever 9 does not divide 2^n-1);
    /// finally a full multiplicative sweep.
    pub fn power_root(&self, y: FieldElement, e: u64) -> Result<FieldElement> {
        if y.is_zero() {
            return Err(Error::ZeroInput);
        }
        let m = self.group_order;
        let e_red = e % m;
        if e_red == 0 {
            return if y == FieldElement::ONE {
                Ok(FieldElement::ONE)
            } else {
                Err(Error::NotAnEthPower { e })
            };
        }
        let d = gcd_u64(e_red, m);
        if pow_raw(y.0, m / d, self.modulus, self.n) != 1 {
            return Err(Error::NotAnEthPower { e });
        }
        if d == 1 {
            return Ok(self.pow_u64(y, inv_mod_u64(e_red, m)));
        }
        if let Some(table) = self.log_table() {
            // Solve e*z = log(y) (mod 2^n - 1); the power test above
            // guarantees d divides log(y). Take the smallest solution.
            let ly = table[y.0 as usize] as u64;
            debug_assert_eq!(ly % d, 0);
            let z = (ly / d) % (m / d) * inv_mod_u64(e_red / d % (m / d), m / d) % (m / d);
            return Ok(self.pow_u64(self.generator, z));
        }
        let cofactor = m / d;
        if gcd_u64(e_red, cofactor) == 1 {
            // y has order dividing m/d, so exponents act modulo m/d and
            // inverting e there yields a root directly.
            let z = self.pow_u64(y, inv_mod_u64(e_red % cofactor, cofactor));
            debug_assert_eq!(self.pow_u64(z, e_red), y);
            return Ok(z);
        }
        // Last resort: sweep z = g^i with z^e maintained incrementally.
        let ge = pow_raw(self.generator.0, e_red, self.modulus, self.n);
        let mut acc = 1u64;
        for i in 0..m {
            if acc == y.0 {
                return Ok(self.pow_u64(self.generator, i));
            }
            acc = mul_raw(acc, ge, self.modulus, self.n);
        }
        Err(Error::NotAnEthPower { e })
    }

    /// Whether `a` lies in the subfield F_(2^k), i.e. a^(2^k) = a.
    pub fn in_subfield(&self, a: FieldElement, k: u32) -> Result<bool> {
        if k == 0 || k > self.n || self.n % k != 0 {
            return Err(Error::NotASubfieldDegree { k, n: self.n });
        }
        Ok(self.frobenius(a, k as i64) == a)
    }

    /// Absolute trace to GF(2): sum of a^(2^i) over 0 <= i < n. Computed
    /// via the precomputed trace mask; Tr(a) = parity(a & mask).
    #[inline]
    pub fn abs_trace(&self, a: FieldElement) -> u8 {
        ((a.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// Trace-dual table: T[y] has bit i = Tr(x^i * y), so that
    /// Tr(u * y) = parity(u & T[y]) for every u. The Walsh engine routes
    /// trace pairings through this table.
    pub fn trace_dual_table(&self) -> Vec<u64> {
        let size = self.size() as usize;
        let mut t = vec![0u64; size];
        for b in 0..self.n {
            let basis = 1usize << b;
            let mut dual = 0u64;
            for i in 0..self.n {
                let prod = self.mul_raw(1u64 << i, 1u64 << b);
                dual |= u64::from(self.abs_trace(FieldElement(prod))) << i;
            }
            // Extend linearly over the span built so far.
            t[basis] = dual;
            for y in 1..basis {
                t[basis | y] = t[y] ^ dual;
            }
        }
        t
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus == other.modulus
    }
}
