//! Arithmetic in binary fields `F_{2^h}` for `1 <= h <= 24`.
//!
//! Elements are stored as bit-vectors in the polynomial basis: bit `i` of
//! [`FieldElement::bits`] is the coefficient of `t^i` in the residue class
//! modulo the field's irreducible modulus. Addition is XOR, multiplication
//! is carryless shift-and-reduce. All operations are pure functions of
//! immutable values and safe to use from any number of threads.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported extension degree. Keeps every `q^2`- and `q^3`-cost
/// sweep in desk-scale time and memory.
pub const MAX_H: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2mError {
    #[error("field exponent h={0} out of range (1..={MAX_H})")]
    InvalidExponent(u32),
    #[error("modulus {modulus:#X} has degree {found}, expected {expected}")]
    WrongModulusDegree {
        modulus: u64,
        found: i32,
        expected: u32,
    },
    #[error("modulus {modulus:#X} is reducible: divisible by {factor:#X}")]
    ReducibleModulus { modulus: u64, factor: u64 },
    #[error("element bits {bits:#x} out of range for field of order {q}")]
    ElementOutOfRange { bits: u64, q: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("F_{{2^{from_h}}} is not a subfield of F_{{2^{to_h}}}")]
    NotASubfield { from_h: u32, to_h: u32 },
    #[error("cannot parse {0:?} as a hexadecimal field element")]
    BadElementLiteral(String),
}

/// Degree of a polynomial over `F_2` stored as a bit-vector; -1 for zero.
pub(crate) fn poly2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Remainder of carryless division of `a` by `b` (`b != 0`).
pub(crate) fn poly2_rem(mut a: u64, b: u64) -> u64 {
    let db = poly2_degree(b);
    debug_assert!(db >= 0);
    while poly2_degree(a) >= db {
        a ^= b << (poly2_degree(a) - db);
    }
    a
}

/// Smallest nontrivial divisor of `p` over `F_2`, scanning divisors in
/// ascending bit-vector order; `None` when `p` is irreducible. The first
/// divisor found has minimal degree, hence is itself irreducible.
pub(crate) fn smallest_nontrivial_factor(p: u64) -> Option<u64> {
    let d = poly2_degree(p);
    for cand in 2u64.. {
        if 2 * poly2_degree(cand) > d {
            return None;
        }
        if poly2_rem(p, cand) == 0 {
            return Some(cand);
        }
    }
    unreachable!()
}

fn default_moduli() -> &'static [u64; MAX_H as usize + 1] {
    static TABLE: OnceLock<[u64; MAX_H as usize + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0u64; MAX_H as usize + 1];
        for h in 1..=MAX_H {
            let mut cand = 1u64 << h;
            loop {
                if smallest_nontrivial_factor(cand).is_none() {
                    table[h as usize] = cand;
                    break;
                }
                cand += 1;
            }
        }
        table
    })
}

/// The field `F_{2^h}` together with a fixed irreducible modulus.
///
/// Two fields compare equal exactly when both `h` and the modulus agree;
/// mixing elements of different fields is a hard error, never a coercion.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinaryField {
    h: u32,
    modulus: u64,
}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{2^{}}}(mod {:#X})", self.h, self.modulus)
    }
}

impl BinaryField {
    /// The field `F_{2^h}` with the lexicographically smallest irreducible
    /// modulus of degree `h`. Deterministic: equal `h` yields equal moduli.
    pub fn new(h: u32) -> Result<Self, Gf2mError> {
        if h == 0 || h > MAX_H {
            return Err(Gf2mError::InvalidExponent(h));
        }
        Ok(BinaryField {
            h,
            modulus: default_moduli()[h as usize],
        })
    }

    /// The field `F_{2^h}` with an explicit modulus, which must be
    /// irreducible of degree exactly `h`.
    pub fn with_modulus(h: u32, modulus: u64) -> Result<Self, Gf2mError> {
        if h == 0 || h > MAX_H {
            return Err(Gf2mError::InvalidExponent(h));
        }
        if poly2_degree(modulus) != h as i32 {
            return Err(Gf2mError::WrongModulusDegree {
                modulus,
                found: poly2_degree(modulus),
                expected: h,
            });
        }
        if let Some(factor) = smallest_nontrivial_factor(modulus) {
            return Err(Gf2mError::ReducibleModulus { modulus, factor });
        }
        Ok(BinaryField { h, modulus })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Field order `q = 2^h`.
    pub fn q(&self) -> u64 {
        1u64 << self.h
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.el(0)
    }

    pub fn one(&self) -> FieldElement {
        self.el(1)
    }

    /// Element with the given bit-vector representative.
    pub fn element(&self, bits: u64) -> Result<FieldElement, Gf2mError> {
        if bits >= self.q() {
            return Err(Gf2mError::ElementOutOfRange { bits, q: self.q() });
        }
        Ok(self.el(bits))
    }

    /// Internal unchecked constructor.
    pub(crate) fn el(&self, bits: u64) -> FieldElement {
        debug_assert!(bits < self.q());
        FieldElement { bits, field: *self }
    }

    /// All `q` elements exactly once, ascending by bit-vector value.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |bits| self.el(bits))
    }

    /// Parse an element from hexadecimal bits (an optional `0x` prefix is
    /// accepted).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, Gf2mError> {
        let t = s.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let bits = u64::from_str_radix(digits, 16)
            .map_err(|_| Gf2mError::BadElementLiteral(s.to_string()))?;
        self.element(bits)
    }

    /// Shift-and-reduce carryless multiplication modulo the field modulus.
    #[inline]
    pub(crate) fn mul_bits(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> self.h) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    #[inline]
    pub(crate) fn sq_bits(&self, a: u64) -> u64 {
        self.mul_bits(a, a)
    }

    pub(crate) fn pow_bits(&self, a: u64, mut n: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while n != 0 {
            if n & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.sq_bits(base);
            n >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element via `a^(q-2)`.
    pub(crate) fn inv_bits(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow_bits(a, self.q() - 2)
    }
}

/// An element of a [`BinaryField`]. Plain value, no hidden state.
///
/// The arithmetic operators panic when the operands belong to different
/// fields; there is deliberately no implicit coercion.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u64,
    field: BinaryField,
}

impl FieldElement {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn inv(&self) -> Result<FieldElement, Gf2mError> {
        if self.bits == 0 {
            return Err(Gf2mError::ZeroInverse);
        }
        Ok(self.field.el(self.field.inv_bits(self.bits)))
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        self.field.el(self.field.pow_bits(self.bits, n))
    }

    /// The squaring automorphism `a -> a^2`.
    pub fn frobenius(&self) -> FieldElement {
        self.field.el(self.field.sq_bits(self.bits))
    }

    /// True when the element lies in the subfield `F_{2^m}`, i.e. is fixed
    /// by the `m`-fold Frobenius.
    pub fn in_subfield(&self, m: u32) -> bool {
        let mut a = self.bits;
        for _ in 0..m {
            a = self.field.sq_bits(a);
        }
        a == self.bits
    }

    fn check_same_field(&self, other: &FieldElement, op: &str) {
        assert!(
            self.field == other.field,
            "cross-field {op}: {:?} vs {:?}",
            self.field,
            other.field
        );
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    // addition in characteristic 2 is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check_same_field(&rhs, "add");
        self.field.el(self.bits ^ rhs.bits)
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    // characteristic 2: subtraction is addition
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self + rhs
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check_same_field(&rhs, "mul");
        self.field.el(self.field.mul_bits(self.bits, rhs.bits))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}∈F_{{2^{}}}", self.bits, self.field.h)
    }
}

/// Precomputed discrete-log tables for fast repeated multiplication.
///
/// Built per hot loop, never stored in the field itself; falls back to
/// shift-and-reduce when the field is too large to tabulate.
pub(crate) struct FieldOps {
    field: BinaryField,
    tables: Option<LogTables>,
}

struct LogTables {
    qm1: u32,
    log: Vec<u32>,
    exp: Vec<u64>,
}

const MAX_TABLE_H: u32 = 20;

impl FieldOps {
    pub fn new(field: &BinaryField) -> FieldOps {
        let tables = if field.h >= 2 && field.h <= MAX_TABLE_H {
            Some(Self::build_tables(field))
        } else {
            None
        };
        FieldOps {
            field: *field,
            tables,
        }
    }

    fn build_tables(field: &BinaryField) -> LogTables {
        let q = field.q();
        let qm1 = q - 1;
        let g = Self::find_generator(field);
        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u64; 2 * qm1 as usize];
        let mut cur = 1u64;
        for i in 0..qm1 {
            exp[i as usize] = cur;
            exp[(i + qm1) as usize] = cur;
            log[cur as usize] = i as u32;
            cur = field.mul_bits(cur, g);
        }
        debug_assert_eq!(cur, 1);
        LogTables {
            qm1: qm1 as u32,
            log,
            exp,
        }
    }

    fn find_generator(field: &BinaryField) -> u64 {
        let qm1 = field.q() - 1;
        let mut primes = Vec::new();
        let mut n = qm1;
        let mut p = 2u64;
        while p * p <= n {
            if n.is_multiple_of(p) {
                primes.push(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        'cand: for g in 2..field.q() {
            for &p in &primes {
                if field.pow_bits(g, qm1 / p) == 1 {
                    continue 'cand;
                }
            }
            return g;
        }
        unreachable!("every finite field has a generator")
    }

    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
                }
            }
            None => self.field.mul_bits(a, b),
        }
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        match &self.tables {
            Some(t) => t.exp[(t.qm1 - t.log[a as usize]) as usize],
            None => self.field.inv_bits(a),
        }
    }

    pub fn pow(&self, a: u64, n: u64) -> u64 {
        self.field.pow_bits(a, n)
    }
}

/// A ring embedding `F_{2^m} -> F_{2^n}` for `m | n`, sending the residue
/// class of `t` to a fixed root of the small field's modulus.
///
/// The root is found exactly: the subfield of order `2^m` is computed as
/// the kernel of the `F_2`-linear map `v -> v^(2^m) + v` and the modulus is
/// evaluated on it.
pub struct Embedding {
    from: BinaryField,
    to: BinaryField,
    /// powers[i] = gamma^i for the chosen root gamma of `from.modulus()`.
    powers: Vec<u64>,
}

impl Embedding {
    pub fn new(from: &BinaryField, to: &BinaryField) -> Result<Embedding, Gf2mError> {
        if !to.h.is_multiple_of(from.h) {
            return Err(Gf2mError::NotASubfield {
                from_h: from.h,
                to_h: to.h,
            });
        }
        if from == to {
            let powers = (0..from.h).map(|i| 1u64 << i).collect();
            return Ok(Embedding {
                from: *from,
                to: *to,
                powers,
            });
        }
        let gamma = Self::find_root(from, to);
        let mut powers = Vec::with_capacity(from.h as usize);
        let mut cur = 1u64;
        for _ in 0..from.h {
            powers.push(cur);
            cur = to.mul_bits(cur, gamma);
        }
        Ok(Embedding {
            from: *from,
            to: *to,
            powers,
        })
    }

    /// Root of `from.modulus()` inside `to`, located by enumerating the
    /// order-`2^m` subfield (kernel of Frobenius^m - id over `F_2`).
    fn find_root(from: &BinaryField, to: &BinaryField) -> u64 {
        let n = to.h as usize;
        let m = from.h;
        // columns of the map v -> v^(2^m) + v on the F_2 basis 1, t, t^2, ...
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = 1u64 << j;
            for _ in 0..m {
                v = to.sq_bits(v);
            }
            cols.push(v ^ (1u64 << j));
        }
        let kernel = f2_kernel_basis(&cols, n);
        debug_assert_eq!(kernel.len(), m as usize);
        // Evaluate the small modulus on every subfield element.
        let mods = from.modulus;
        for mask in 0..(1u64 << kernel.len()) {
            let mut v = 0u64;
            for (i, b) in kernel.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    v ^= b;
                }
            }
            // Horner over the F_2 coefficients of the modulus.
            let mut acc = 0u64;
            for d in (0..=poly2_degree(mods)).rev() {
                acc = to.mul_bits(acc, v);
                if (mods >> d) & 1 == 1 {
                    acc ^= 1;
                }
            }
            if acc == 0 {
                return v;
            }
        }
        unreachable!("an irreducible polynomial splits in the extension of its degree")
    }

    pub fn from_field(&self) -> &BinaryField {
        &self.from
    }

    pub fn to_field(&self) -> &BinaryField {
        &self.to
    }

    /// Image of an element of the small field.
    pub fn map(&self, e: FieldElement) -> FieldElement {
        assert!(e.field == self.from, "embedding applied to foreign element");
        self.to.el(self.map_bits(e.bits))
    }

    #[inline]
    pub(crate) fn map_bits(&self, bits: u64) -> u64 {
        let mut acc = 0u64;
        let mut b = bits;
        let mut i = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= self.powers[i];
            }
            b >>= 1;
            i += 1;
        }
        acc
    }
}

/// Basis of the kernel of the `F_2`-linear map whose `j`-th column is
/// `cols[j]`. Kernel vectors are masks over the basis `t^0, ..., t^(n-1)`,
/// i.e. directly usable as field-element bits.
fn f2_kernel_basis(cols: &[u64], n: usize) -> Vec<u64> {
    // Gaussian elimination on (image, combination-tag) pairs; pairs whose
    // image reduces to zero yield kernel vectors via their tag.
    let mut work: Vec<(u64, u64)> = cols
        .iter()
        .enumerate()
        .map(|(j, &c)| (c, 1u64 << j))
        .collect();
    for bit in (0..n).rev() {
        if let Some(p) = work.iter().position(|&(v, _)| (v >> bit) & 1 == 1) {
            let (pv, pt) = work.remove(p);
            for w in work.iter_mut() {
                if (w.0 >> bit) & 1 == 1 {
                    w.0 ^= pv;
                    w.1 ^= pt;
                }
            }
        }
    }
    work.into_iter()
        .map(|(v, tag)| {
            debug_assert_eq!(v, 0);
            tag
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Carryless product of two bit-vector polynomials over `F_2`.
    fn poly2_mul(a: u64, mut b: u64) -> u64 {
        let mut acc = 0u64;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        acc
    }

    /// Independent oracle: the set of reducible degree-h bit-vectors is the
    /// set of carryless products a*b with deg a + deg b = h, deg a, deg b >= 1.
    fn smallest_irreducible_by_sieve(h: u32) -> u64 {
        let lo = 1u64 << h;
        let hi = 1u64 << (h + 1);
        let mut reducible = vec![false; (hi - lo) as usize];
        for a in 2..hi {
            let da = poly2_degree(a);
            if da < 1 || da as u32 >= h {
                continue;
            }
            for b in a..hi {
                let db = poly2_degree(b);
                if db < 1 || (da + db) as u32 != h {
                    continue;
                }
                let p = poly2_mul(a, b);
                if p >= lo && p < hi {
                    reducible[(p - lo) as usize] = true;
                }
            }
        }
        if let Some(i) = reducible.iter().position(|&r| !r) {
            return lo + i as u64;
        }
        panic!("no irreducible of degree {h}");
    }

    #[test]
    fn default_modulus_is_lexicographically_smallest_irreducible() {
        for h in 1..=10 {
            let f = BinaryField::new(h).unwrap();
            assert_eq!(
                f.modulus(),
                smallest_irreducible_by_sieve(h),
                "wrong default modulus at h={h}"
            );
        }
    }

    #[test]
    fn frozen_default_moduli() {
        // h=1: x (0b10); degree-1 polynomials are irreducible and x < x+1.
        assert_eq!(BinaryField::new(1).unwrap().modulus(), 0b10);
        // h=3: x^3+x+1, derived by the sieve above.
        assert_eq!(BinaryField::new(3).unwrap().modulus(), 0b1011);
        assert_eq!(BinaryField::new(3).unwrap().modulus(), 0xB);
    }

    #[test]
    fn field_new_is_deterministic() {
        for h in [1, 4, 9, 24] {
            assert_eq!(BinaryField::new(h).unwrap(), BinaryField::new(h).unwrap());
        }
    }

    #[test]
    fn explicit_modulus_validation() {
        // x^4+x+1 is irreducible.
        assert!(BinaryField::with_modulus(4, 0b10011).is_ok());
        // x^4+x^2+1 = (x^2+x+1)^2.
        match BinaryField::with_modulus(4, 0b10101) {
            Err(Gf2mError::ReducibleModulus { factor, .. }) => {
                assert_eq!(factor, 0b111);
                // the named factor really divides
                assert_eq!(poly2_rem(0b10101, factor), 0);
            }
            other => panic!("expected reducible-modulus error, got {other:?}"),
        }
        assert!(matches!(
            BinaryField::with_modulus(4, 0b1011),
            Err(Gf2mError::WrongModulusDegree { .. })
        ));
        assert!(matches!(
            BinaryField::new(0),
            Err(Gf2mError::InvalidExponent(0))
        ));
        assert!(matches!(
            BinaryField::new(MAX_H + 1),
            Err(Gf2mError::InvalidExponent(_))
        ));
    }

    #[test]
    fn f8_multiplication_example() {
        // x * x^2 = x^3 = x + 1 mod x^3+x+1
        let f = BinaryField::new(3).unwrap();
        let a = f.element(0b010).unwrap();
        let b = f.element(0b100).unwrap();
        assert_eq!((a * b).bits(), 0b011);
    }

    #[test]
    fn characteristic_two_and_group_identities() {
        let f = BinaryField::new(4).unwrap();
        for a in f.elements() {
            assert!((a + a).is_zero());
            assert_eq!(a.frobenius(), a * a);
            if !a.is_zero() {
                assert_eq!(a.pow(f.q() - 1), f.one());
                assert_eq!((a * a.inv().unwrap()), f.one());
            }
        }
        assert_eq!(f.one().inv().unwrap(), f.one());
        assert!(matches!(f.zero().inv(), Err(Gf2mError::ZeroInverse)));
    }

    #[test]
    fn frobenius_orbit_closes() {
        for h in [1, 2, 5, 8] {
            let f = BinaryField::new(h).unwrap();
            for a in f.elements() {
                let mut b = a;
                for _ in 0..h {
                    b = b.frobenius();
                }
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn element_enumeration() {
        let f2 = BinaryField::new(1).unwrap();
        let elems: Vec<u64> = f2.elements().map(|e| e.bits()).collect();
        assert_eq!(elems, vec![0, 1]);

        let f4 = BinaryField::new(2).unwrap();
        let elems: Vec<u64> = f4.elements().map(|e| e.bits()).collect();
        assert_eq!(elems.len(), 4);
        assert_eq!(elems[0], 0);
        assert_eq!(elems[1], 1);

        assert_eq!(BinaryField::new(3).unwrap().elements().count(), 8);
    }

    #[test]
    fn field_axioms_hold_on_random_triples() {
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for h in [2, 3, 7, 11] {
            let f = BinaryField::new(h).unwrap();
            for _ in 0..200 {
                let a = f.el(next() % f.q());
                let b = f.el(next() % f.q());
                let c = f.el(next() % f.q());
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * b, b * a);
                assert_eq!(a + b, b + a);
                assert_eq!(a * (b + c), a * b + a * c);
            }
        }
    }

    #[test]
    #[should_panic(expected = "cross-field")]
    fn cross_field_mixing_panics() {
        let a = BinaryField::new(2).unwrap().one();
        let b = BinaryField::new(3).unwrap().one();
        let _ = a + b;
    }

    #[test]
    fn element_range_and_parsing() {
        let f = BinaryField::new(3).unwrap();
        assert!(matches!(
            f.element(8),
            Err(Gf2mError::ElementOutOfRange { .. })
        ));
        assert_eq!(f.parse_element("0x5").unwrap().bits(), 5);
        assert_eq!(f.parse_element("7").unwrap().bits(), 7);
        assert!(f.parse_element("zz").is_err());
        assert_eq!(format!("{}", f.el(0x5 ^ 0x2)), "7");
    }

    #[test]
    fn fieldops_matches_plain_arithmetic() {
        for h in [1, 2, 3, 8, 12] {
            let f = BinaryField::new(h).unwrap();
            let ops = FieldOps::new(&f);
            let q = f.q();
            let step = (q / 97).max(1);
            for a in (0..q).step_by(step as usize) {
                for b in (0..q).step_by(step as usize) {
                    assert_eq!(ops.mul(a, b), f.mul_bits(a, b));
                }
                if a != 0 {
                    assert_eq!(ops.inv(a), f.inv_bits(a));
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let f4 = BinaryField::new(2).unwrap();
        let f16 = BinaryField::new(4).unwrap();
        let emb = Embedding::new(&f4, &f16).unwrap();
        assert_eq!(emb.map(f4.one()), f16.one());
        assert_eq!(emb.map(f4.zero()), f16.zero());
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.map(a * b), emb.map(a) * emb.map(b));
                assert_eq!(emb.map(a + b), emb.map(a) + emb.map(b));
            }
            // image lies in the subfield fixed by Frobenius^2
            assert!(emb.map(a).in_subfield(2));
        }
    }

    #[test]
    fn embedding_rejects_non_subfields() {
        let f8 = BinaryField::new(3).unwrap();
        let f16 = BinaryField::new(4).unwrap();
        assert!(matches!(
            Embedding::new(&f8, &f16),
            Err(Gf2mError::NotASubfield { from_h: 3, to_h: 4 })
        ));
    }

    #[test]
    fn embedding_from_f2_is_trivial_on_bits() {
        let f2 = BinaryField::new(1).unwrap();
        let f64f = BinaryField::new(6).unwrap();
        let emb = Embedding::new(&f2, &f64f).unwrap();
        assert_eq!(emb.map(f2.zero()).bits(), 0);
        assert_eq!(emb.map(f2.one()).bits(), 1);
    }
}
