//! Dense univariate polynomials over a binary field.
//!
//! A [`UPoly`] carries its field; coefficients are stored by ascending
//! exponent with a nonzero leading coefficient (the zero polynomial stores
//! nothing). Degrees in this crate stay at most `q - 1` after
//! [`UPoly::reduce_mod_xq_x`], so dense storage is the simple and adequate
//! choice. Mixed-field arithmetic panics; it is a programming error, not a
//! recoverable condition.
//!
//! Text format: terms `C*x^E` joined by `+`, coefficients in hexadecimal
//! bits. The parser accepts an omitted `1*`, a bare constant `C`, and any
//! term order; the printer emits descending exponents.

use std::fmt;

use thiserror::Error;

use crate::gf2m::{BinaryField, FieldElement};
use crate::text;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UPolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient {bits:#x} out of range for field of order {q}")]
    CoefficientOutOfRange { bits: u64, q: u64 },
}

/// Univariate polynomial over `F_{2^h}`, dense by exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: BinaryField,
    /// coeffs[i] is the bit representation of the coefficient of x^i;
    /// empty for the zero polynomial, last entry nonzero otherwise.
    coeffs: Vec<u64>,
}

impl UPoly {
    pub fn zero(field: BinaryField) -> UPoly {
        UPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: BinaryField) -> UPoly {
        UPoly {
            field,
            coeffs: vec![1],
        }
    }

    /// The monic monomial `x^exp`.
    pub fn monomial(field: BinaryField, exp: usize) -> UPoly {
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = 1;
        UPoly { field, coeffs }
    }

    /// Build from coefficient bits by ascending exponent, validating range.
    pub fn from_coeff_bits(field: BinaryField, coeffs: Vec<u64>) -> Result<UPoly, UPolyError> {
        for &c in &coeffs {
            if c >= field.q() {
                return Err(UPolyError::CoefficientOutOfRange {
                    bits: c,
                    q: field.q(),
                });
            }
        }
        Ok(Self::from_bits_unchecked(field, coeffs))
    }

    pub(crate) fn from_bits_unchecked(field: BinaryField, mut coeffs: Vec<u64>) -> UPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff_bits(&self, exp: usize) -> u64 {
        self.coeffs.get(exp).copied().unwrap_or(0)
    }

    pub fn coeff(&self, exp: usize) -> FieldElement {
        self.field.el(self.coeff_bits(exp))
    }

    pub(crate) fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.field.el(self.coeffs.last().copied().unwrap_or(0))
    }

    fn check_same_field(&self, other: &UPoly, op: &str) {
        assert!(
            self.field == other.field,
            "cross-field polynomial {op}: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    /// Horner evaluation at a point of the same field.
    ///
    /// Panics if `x` belongs to a different field.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        assert!(
            x.field() == self.field,
            "cross-field eval: {:?} vs {:?}",
            x.field(),
            self.field
        );
        self.field.el(self.eval_bits(x.bits()))
    }

    pub(crate) fn eval_bits(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.mul_bits(acc, x) ^ c;
        }
        acc
    }

    /// Value table `f(x)` for `x = 0, 1, ..., q-1` (bit representatives).
    pub fn value_table(&self) -> Vec<u64> {
        (0..self.field.q()).map(|x| self.eval_bits(x)).collect()
    }

    /// True when the induced map on the field is a bijection.
    pub fn is_permutation(&self) -> bool {
        let q = self.field.q() as usize;
        let mut seen = vec![false; q];
        for x in 0..q as u64 {
            let v = self.eval_bits(x) as usize;
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// The polynomial `x -> f(x+a) + f(a)`, expanded and reduced. In
    /// characteristic 2 the binomial expansion keeps exactly the submask
    /// exponents, so the expansion is exact and fast.
    pub fn compose_shift(&self, a: FieldElement) -> UPoly {
        assert!(
            a.field() == self.field,
            "cross-field compose_shift: {:?} vs {:?}",
            a.field(),
            self.field
        );
        let f = self.field;
        let ab = a.bits();
        let deg = match self.degree() {
            None => return UPoly::zero(f),
            Some(d) => d,
        };
        // powers of a up to deg
        let mut apow = vec![1u64; deg + 1];
        for i in 1..=deg {
            apow[i] = f.mul_bits(apow[i - 1], ab);
        }
        let mut out = vec![0u64; deg + 1];
        for (i, &ci) in self.coeffs.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            // (x+a)^i = sum over submasks m of i of x^m a^(i-m)  (Lucas)
            let mut m = i;
            loop {
                out[m] ^= f.mul_bits(ci, apow[i - m]);
                if m == 0 {
                    break;
                }
                m = (m - 1) & i;
            }
        }
        // add f(a): cancels the constant term exactly
        out[0] ^= self.eval_bits(ab);
        debug_assert_eq!(out[0], 0);
        UPoly::from_bits_unchecked(f, out)
    }

    /// The unique polynomial of degree <= q-1 inducing the same map,
    /// i.e. the remainder modulo `x^q + x` (exponents reduced via x^q = x).
    pub fn reduce_mod_xq_x(&self) -> UPoly {
        let q = self.field.q() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = vec![0u64; q];
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let target = if e == 0 { 0 } else { ((e - 1) % (q - 1)) + 1 };
            out[target] ^= c;
        }
        UPoly::from_bits_unchecked(self.field, out)
    }

    /// Formal derivative (characteristic 2: even-exponent terms vanish).
    pub fn derivative(&self) -> UPoly {
        let mut out = vec![0u64; self.coeffs.len().saturating_sub(1)];
        for (e, &c) in self.coeffs.iter().enumerate().skip(1) {
            if !e.is_multiple_of(2) {
                out[e - 1] = c;
            }
        }
        UPoly::from_bits_unchecked(self.field, out)
    }

    /// Scale by a field constant.
    pub fn scale(&self, c: FieldElement) -> UPoly {
        assert!(c.field() == self.field, "cross-field scale");
        let cb = c.bits();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| self.field.mul_bits(x, cb))
            .collect();
        UPoly::from_bits_unchecked(self.field, coeffs)
    }

    /// Monic version and the leading unit, for canonical forms.
    pub fn monic(&self) -> (UPoly, FieldElement) {
        if self.is_zero() {
            return (self.clone(), self.field.one());
        }
        let lc = self.leading_coeff();
        if lc.bits() == 1 {
            return (self.clone(), lc);
        }
        (self.scale(lc.inv().expect("leading coefficient nonzero")), lc)
    }

    /// Quotient and remainder; errors when dividing by zero.
    pub fn divrem(&self, den: &UPoly) -> Result<(UPoly, UPoly), UPolyError> {
        self.check_same_field(den, "divrem");
        let dd = den.degree().ok_or(UPolyError::DivisionByZero)?;
        let f = self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() < den.coeffs.len() {
            return Ok((UPoly::zero(f), self.clone()));
        }
        let lc_inv = f.inv_bits(*den.coeffs.last().unwrap());
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let qc = f.mul_bits(c, lc_inv);
            quo[i - dd] = qc;
            for (j, &dc) in den.coeffs.iter().enumerate() {
                rem[i - dd + j] ^= f.mul_bits(qc, dc);
            }
        }
        Ok((
            UPoly::from_bits_unchecked(f, quo),
            UPoly::from_bits_unchecked(f, rem),
        ))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        self.check_same_field(other, "gcd");
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().0
    }

    /// Parse the `C*x^E` term format against the given field.
    pub fn parse(field: BinaryField, s: &str) -> Result<UPoly, UPolyError> {
        let terms = text::split_terms(s).map_err(UPolyError::Parse)?;
        let mut coeffs: Vec<u64> = Vec::new();
        for term in terms {
            let mut coeff: Option<u64> = None;
            let mut exp: Option<u32> = None;
            for part in term.split('*') {
                let p = part.trim();
                if p.is_empty() {
                    return Err(UPolyError::Parse(format!("empty factor in term {term:?}")));
                }
                if p.starts_with('x') {
                    let (_, e) = text::parse_var_pow(p, &["x"]).map_err(UPolyError::Parse)?;
                    if exp.is_some() {
                        return Err(UPolyError::Parse(format!(
                            "variable appears twice in term {term:?}"
                        )));
                    }
                    exp = Some(e);
                } else {
                    let c = text::parse_hex(p).map_err(UPolyError::Parse)?;
                    if coeff.is_some() {
                        return Err(UPolyError::Parse(format!(
                            "two coefficients in term {term:?}"
                        )));
                    }
                    coeff = Some(c);
                }
            }
            let c = coeff.unwrap_or(1);
            if c >= field.q() {
                return Err(UPolyError::CoefficientOutOfRange {
                    bits: c,
                    q: field.q(),
                });
            }
            let e = exp.unwrap_or(0) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] ^= c;
        }
        Ok(UPoly::from_bits_unchecked(field, coeffs))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{:x}*x^{}", c, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({} over {:?})", self, self.field)
    }
}

impl std::ops::Add for &UPoly {
    type Output = UPoly;
    // coefficientwise XOR in characteristic 2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &UPoly) -> UPoly {
        self.check_same_field(rhs, "add");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff_bits(i) ^ rhs.coeff_bits(i);
        }
        UPoly::from_bits_unchecked(self.field, out)
    }
}

impl std::ops::Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        self.check_same_field(rhs, "mul");
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] ^= f.mul_bits(a, b);
            }
        }
        UPoly::from_bits_unchecked(f, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(h: u32) -> BinaryField {
        BinaryField::new(h).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f8 = f(3);
        let sq = UPoly::monomial(f8, 2);
        for a in f8.elements() {
            assert_eq!(sq.eval(a), a * a);
        }
        for h in [1, 2, 5] {
            let fld = f(h);
            let six = UPoly::monomial(fld, 6);
            assert_eq!(six.eval(fld.one()), fld.one());
        }
        // In F_4, a^3 = 1 for every nonzero a.
        let f4 = f(2);
        let cube = UPoly::monomial(f4, 3);
        for a in f4.elements().skip(1) {
            assert_eq!(cube.eval(a), f4.one());
        }
    }

    #[test]
    fn compose_shift_matches_pointwise_table() {
        let f8 = f(3);
        let six = UPoly::monomial(f8, 6);
        for a in f8.elements() {
            let g = six.compose_shift(a);
            assert_eq!(g.coeff_bits(0), 0, "constant term must vanish");
            assert!(g.degree() == Some(6));
            for c in f8.elements() {
                assert_eq!(g.eval(c), six.eval(c + a) + six.eval(a));
            }
        }
    }

    #[test]
    fn compose_shift_trivia() {
        let f8 = f(3);
        // x^2 is invariant under every shift: (x+a)^2 + a^2 = x^2.
        let sq = UPoly::monomial(f8, 2);
        for a in f8.elements() {
            assert_eq!(sq.compose_shift(a), sq);
        }
        // shift by 0 with f(0)=0 is the identity
        let g = UPoly::parse(f8, "3*x^4+1*x^2").unwrap();
        assert_eq!(g.compose_shift(f8.zero()), g);
    }

    #[test]
    fn compose_shift_is_involutive() {
        let f16 = f(4);
        let g = UPoly::parse(f16, "5*x^6+1*x^3+2*x^2+9*x^1").unwrap();
        for a in f16.elements() {
            let twice = g.compose_shift(a).compose_shift(a);
            // f(x+a)+f(a) applied twice returns f + f(0); here f(0)=0.
            assert_eq!(twice, g);
        }
    }

    #[test]
    fn reduce_mod_examples() {
        let f4 = f(2);
        let q = f4.q() as usize;
        assert_eq!(UPoly::monomial(f4, q).reduce_mod_xq_x(), UPoly::monomial(f4, 1));
        assert_eq!(
            UPoly::monomial(f4, q + 1).reduce_mod_xq_x(),
            UPoly::monomial(f4, 2)
        );
        // value table unchanged, checked pointwise over F_8
        let f8 = f(3);
        let big = UPoly::parse(f8, "1*x^19+5*x^11+3*x^2+1*x^1").unwrap();
        let red = big.reduce_mod_xq_x();
        assert!(red.degree().unwrap() < f8.q() as usize);
        assert_eq!(red.value_table(), big.value_table());
    }

    #[test]
    fn permutation_examples() {
        for h in 2..=6 {
            assert!(UPoly::monomial(f(h), 2).is_permutation());
        }
        // x^3 over F_4 maps all three nonzero elements to 1.
        assert!(!UPoly::monomial(f(2), 3).is_permutation());
        // x^6 over F_8 is a permutation.
        assert!(UPoly::monomial(f(3), 6).is_permutation());
    }

    #[test]
    fn permutation_agrees_with_sorted_distinct_count() {
        let f8 = f(3);
        let polys = [
            UPoly::monomial(f8, 6),
            UPoly::monomial(f8, 3),
            UPoly::parse(f8, "1*x^4+1*x^2").unwrap(),
            UPoly::parse(f8, "1*x^6+3*x^4").unwrap(),
        ];
        for p in &polys {
            let mut t = p.value_table();
            t.sort_unstable();
            t.dedup();
            assert_eq!(p.is_permutation(), t.len() == f8.q() as usize);
        }
    }

    #[test]
    fn ring_homomorphism_of_eval() {
        let f16 = f(4);
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let a: Vec<u64> = (0..6).map(|_| next() % 16).collect();
            let b: Vec<u64> = (0..5).map(|_| next() % 16).collect();
            let pa = UPoly::from_coeff_bits(f16, a).unwrap();
            let pb = UPoly::from_coeff_bits(f16, b).unwrap();
            let x = f16.el(next() % 16);
            assert_eq!((&pa + &pb).eval(x), pa.eval(x) + pb.eval(x));
            assert_eq!((&pa * &pb).eval(x), pa.eval(x) * pb.eval(x));
        }
    }

    #[test]
    fn divrem_and_gcd() {
        let f4 = f(2);
        let a = UPoly::parse(f4, "1*x^5+2*x^3+1*x^1+3").unwrap();
        let b = UPoly::parse(f4, "1*x^2+2*x^1").unwrap();
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
        assert!(matches!(
            a.divrem(&UPoly::zero(f4)),
            Err(UPolyError::DivisionByZero)
        ));

        let g = UPoly::parse(f4, "1*x^1+2").unwrap();
        let m1 = &g * &UPoly::parse(f4, "1*x^2+1*x^1+2").unwrap();
        let m2 = &g * &UPoly::parse(f4, "1*x^3+3").unwrap();
        assert!(m1.gcd(&m2).divrem(&g).unwrap().1.is_zero());
    }

    #[test]
    fn parse_and_print() {
        let f8 = f(3);
        let p = UPoly::parse(f8, "1*x^6").unwrap();
        assert_eq!(p, UPoly::monomial(f8, 6));
        assert_eq!(p.to_string(), "1*x^6");

        let q = UPoly::parse(f8, "3*x^4+1*x^2").unwrap();
        assert_eq!(q.to_string(), "3*x^4+1*x^2");
        // omitted 1*, any order, bare constant
        assert_eq!(UPoly::parse(f8, "x^2 + 3*x^4").unwrap(), q);
        let c = UPoly::parse(f8, "5").unwrap();
        assert_eq!(c.coeff_bits(0), 5);
        assert_eq!(c.to_string(), "5*x^0");
        // reparse of printed form is the identity
        assert_eq!(UPoly::parse(f8, &q.to_string()).unwrap(), q);
        // rejects
        assert!(UPoly::parse(f8, "").is_err());
        assert!(UPoly::parse(f8, "y^2").is_err());
        assert!(UPoly::parse(f8, "9*x^1").is_err(), "coefficient 9 >= q");
    }

    #[test]
    #[should_panic(expected = "cross-field")]
    fn cross_field_eval_panics() {
        let p = UPoly::monomial(f(3), 2);
        let _ = p.eval(f(2).one());
    }
}
