//! Sparse multivariate polynomials over a binary field.
//!
//! Terms live in a map from exponent tuples to nonzero coefficient bits.
//! Exact division runs by iterated leading-term elimination under the
//! graded-lexicographic order; a nonzero remainder surfaces as an error
//! carrying its leading term. The exported predicates elsewhere in the
//! crate do not depend on the term order.

use std::collections::BTreeMap;
use std::fmt;

use crate::gf2m::{BinaryField, Embedding, FieldOps};
use crate::text;

/// Variable names per arity: bivariate (x,y), trivariate (x,y,z),
/// four variables (w,x,y,z).
pub(crate) fn var_names<const N: usize>() -> &'static [&'static str] {
    match N {
        2 => &["x", "y"],
        3 => &["x", "y", "z"],
        4 => &["w", "x", "y", "z"],
        _ => panic!("unsupported arity {N}"),
    }
}

/// Error carrier for exact division: the remainder's leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InexactDivision {
    pub leading_term: String,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly<const N: usize> {
    field: BinaryField,
    terms: BTreeMap<[u16; N], u64>,
}

fn grlex<const N: usize>(a: &[u16; N], b: &[u16; N]) -> std::cmp::Ordering {
    let ta: u32 = a.iter().map(|&e| e as u32).sum();
    let tb: u32 = b.iter().map(|&e| e as u32).sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

impl<const N: usize> SparsePoly<N> {
    pub fn zero(field: BinaryField) -> Self {
        SparsePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: BinaryField, bits: u64) -> Self {
        let mut p = Self::zero(field);
        p.insert_add([0u16; N], bits);
        p
    }

    pub fn monomial(field: BinaryField, exps: [u16; N], bits: u64) -> Self {
        let mut p = Self::zero(field);
        p.insert_add(exps, bits);
        p
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16; N], &u64)> {
        self.terms.iter()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Degree in one variable, or `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Total degree if homogeneous, `None` otherwise or when zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// XOR-accumulate a term, dropping it if the coefficient cancels.
    pub fn insert_add(&mut self, exps: [u16; N], bits: u64) {
        if bits == 0 {
            return;
        }
        debug_assert!(bits < self.field.q());
        let entry = self.terms.entry(exps).or_insert(0);
        *entry ^= bits;
        if *entry == 0 {
            self.terms.remove(&exps);
        }
    }

    fn check_same_field(&self, other: &Self, op: &str) {
        assert!(
            self.field == other.field,
            "cross-field sparse {op}: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other, "add");
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.insert_add(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other, "mul");
        let f = self.field;
        let mut out = Self::zero(f);
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &other.terms {
                let mut e = [0u16; N];
                for i in 0..N {
                    e[i] = ea[i]
                        .checked_add(eb[i])
                        .expect("exponent overflow in sparse multiplication");
                }
                out.insert_add(e, f.mul_bits(ca, cb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, bits: u64) -> Self {
        let mut out = Self::zero(self.field);
        for (&e, &c) in &self.terms {
            out.insert_add(e, self.field.mul_bits(c, bits));
        }
        out
    }

    /// Leading term under graded lex, or `None` when zero.
    pub fn leading_term(&self) -> Option<([u16; N], u64)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex(a, b))
            .map(|(&e, &c)| (e, c))
    }

    /// Exact quotient `self / den`; errors with the remainder's leading
    /// term as soon as the elimination gets stuck.
    pub fn exact_div(&self, den: &Self) -> Result<Self, InexactDivision> {
        self.check_same_field(den, "exact_div");
        let f = self.field;
        let (dlt_e, dlt_c) = den.leading_term().expect("division by zero polynomial");
        let dlt_c_inv = f.el(dlt_c).inv().expect("nonzero coefficient").bits();
        let mut rem = self.clone();
        let mut quo = Self::zero(f);
        while let Some((rlt_e, rlt_c)) = rem.leading_term() {
            let mut qe = [0u16; N];
            let mut divides = true;
            for i in 0..N {
                match rlt_e[i].checked_sub(dlt_e[i]) {
                    Some(d) => qe[i] = d,
                    None => {
                        divides = false;
                        break;
                    }
                }
            }
            if !divides {
                return Err(InexactDivision {
                    leading_term: term_text::<N>(&rlt_e, rlt_c),
                });
            }
            let qc = f.mul_bits(rlt_c, dlt_c_inv);
            let factor = Self::monomial(f, qe, qc);
            rem = rem.add(&factor.mul(den));
            quo.insert_add(qe, qc);
        }
        Ok(quo)
    }

    /// Evaluate at a point (bit representatives, same field).
    pub fn eval_bits(&self, point: [u64; N]) -> u64 {
        let ops = FieldOps::new(&self.field);
        self.eval_with(&ops, &point)
    }

    pub(crate) fn eval_with(&self, ops: &FieldOps, point: &[u64; N]) -> u64 {
        let mut acc = 0u64;
        for (&e, &c) in &self.terms {
            let mut t = c;
            for i in 0..N {
                if e[i] != 0 {
                    t = ops.mul(t, ops.pow(point[i], e[i] as u64));
                }
            }
            acc ^= t;
        }
        acc
    }

    /// Lift coefficients along a subfield embedding into a larger field.
    pub fn lift(&self, emb: &Embedding) -> Self {
        assert!(
            *emb.from_field() == self.field,
            "embedding source does not match polynomial field"
        );
        let mut out = Self::zero(*emb.to_field());
        for (&e, &c) in &self.terms {
            out.insert_add(e, emb.map_bits(c));
        }
        out
    }

    /// Formal partial derivative in one variable (characteristic 2).
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.field);
        for (&e, &c) in &self.terms {
            if !e[var].is_multiple_of(2) {
                let mut d = e;
                d[var] -= 1;
                out.insert_add(d, c);
            }
        }
        out
    }

    /// Parse the `C*v^E*...` term format against the given field.
    pub fn parse(field: BinaryField, s: &str) -> Result<Self, String> {
        let vars = var_names::<N>();
        let terms = text::split_terms(s)?;
        let mut out = Self::zero(field);
        if terms.len() == 1 && terms[0] == "0" {
            return Ok(out);
        }
        for term in terms {
            let mut coeff: Option<u64> = None;
            let mut exps = [0u16; N];
            let mut seen = [false; N];
            for part in term.split('*') {
                let p = part.trim();
                if p.is_empty() {
                    return Err(format!("empty factor in term {term:?}"));
                }
                // hex coefficients may start with a..f, so a factor is a
                // variable only when its name part matches one exactly
                let name = p.split('^').next().unwrap_or("").trim();
                if vars.contains(&name) {
                    let (i, e) = text::parse_var_pow(p, vars)?;
                    if seen[i] {
                        return Err(format!("variable {} appears twice in {term:?}", vars[i]));
                    }
                    seen[i] = true;
                    exps[i] = u16::try_from(e).map_err(|_| format!("exponent too large in {term:?}"))?;
                } else {
                    let c = text::parse_hex(p)?;
                    if coeff.is_some() {
                        return Err(format!("two coefficients in term {term:?}"));
                    }
                    coeff = Some(c);
                }
            }
            let c = coeff.unwrap_or(1);
            if c >= field.q() {
                return Err(format!(
                    "coefficient {c:#x} out of range for field of order {}",
                    field.q()
                ));
            }
            out.insert_add(exps, c);
        }
        Ok(out)
    }
}

fn term_text<const N: usize>(exps: &[u16; N], coeff: u64) -> String {
    let vars = var_names::<N>();
    let mut s = format!("{:x}", coeff);
    for i in 0..N {
        s.push('*');
        s.push_str(vars[i]);
        s.push('^');
        s.push_str(&exps[i].to_string());
    }
    s
}

impl<const N: usize> fmt::Display for SparsePoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&[u16; N]> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        let mut first = true;
        for e in keys {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}", term_text::<N>(e, self.terms[e]))?;
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for SparsePoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly<{N}>({} over {:?})", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Tri = SparsePoly<3>;

    fn f2() -> BinaryField {
        BinaryField::new(1).unwrap()
    }

    #[test]
    fn mul_add_and_display() {
        let f = f2();
        let x = Tri::monomial(f, [1, 0, 0], 1);
        let y = Tri::monomial(f, [0, 1, 0], 1);
        let s = x.add(&y);
        let p = s.mul(&s);
        // (x+y)^2 = x^2 + y^2 over F_2
        assert_eq!(p.to_string(), "1*x^2*y^0*z^0+1*x^0*y^2*z^0");
        let back = Tri::parse(f, &p.to_string()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn exact_division_roundtrip_and_failure() {
        let f = f2();
        let x = Tri::monomial(f, [1, 0, 0], 1);
        let y = Tri::monomial(f, [0, 1, 0], 1);
        let z = Tri::monomial(f, [0, 0, 1], 1);
        let den = x.add(&y);
        // x^2+y^2 over F_2 divided by x+y is x+y
        let num = x.mul(&x).add(&y.mul(&y));
        assert_eq!(num.exact_div(&den).unwrap(), den);
        // non-divisible pair errors with a leading term report
        let err = x.add(&y).exact_div(&x.add(&z)).unwrap_err();
        assert!(!err.leading_term.is_empty());
    }

    #[test]
    fn exact_division_random_roundtrip() {
        let f = BinaryField::new(3).unwrap();
        let mut state = 0xDEADBEEFu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let mut den = SparsePoly::<3>::zero(f);
            let mut r = SparsePoly::<3>::zero(f);
            for _ in 0..4 {
                den.insert_add(
                    [
                        (next() % 4) as u16,
                        (next() % 4) as u16,
                        (next() % 4) as u16,
                    ],
                    next() % 8,
                );
                r.insert_add(
                    [
                        (next() % 4) as u16,
                        (next() % 4) as u16,
                        (next() % 4) as u16,
                    ],
                    next() % 8,
                );
            }
            if den.is_zero() {
                continue;
            }
            let num = den.mul(&r);
            assert_eq!(num.exact_div(&den).unwrap(), r);
        }
    }

    #[test]
    fn partial_derivative_char2() {
        let f = f2();
        // d/dx (x^2 + xy) = y
        let p = Tri::parse(f, "1*x^2+1*x^1*y^1").unwrap();
        assert_eq!(p.partial(0), Tri::monomial(f, [0, 1, 0], 1));
    }

    #[test]
    fn homogeneity() {
        let f = f2();
        let p = Tri::parse(f, "1*x^2+1*y^1*z^1").unwrap();
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = Tri::parse(f, "1*x^2+1*y^1").unwrap();
        assert_eq!(q.homogeneous_degree(), None);
        assert_eq!(Tri::zero(f).homogeneous_degree(), None);
    }
}
