//! The surfaces attached to a polynomial over a binary field.
//!
//! For `f` over `F_q`, the trivariate polynomial `Phi_f` is the quotient of
//! the collinearity determinant by `(x+y)(x+z)(y+z)`; `f` satisfies the
//! o-polynomial determinant condition exactly when the surface
//! `Phi_f = 0` has no affine point with pairwise distinct coordinates.
//! The monomial building blocks `phi_j` (the same quotient for `f = x^j`)
//! carry the identities and factorisations used throughout: the diagonal
//! restriction identity, the splitting of `phi_{2^k}` into linear forms
//! over `F_{2^k}`, divisibility by the linear forms `x + z + theta(y+z)`,
//! homogenisation with its `w = 0` slice, binomial parity, and the exact
//! lower-bound evaluator for surface point counts.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::gf2m::{BinaryField, Embedding, FieldElement, FieldOps, Gf2mError};
use crate::sparse::{InexactDivision, SparsePoly};
use crate::upoly::UPoly;

/// Bivariate polynomial (variables `x`, `y`).
pub type BiPoly = SparsePoly<2>;
/// Trivariate polynomial (variables `x`, `y`, `z`).
pub type TriPoly = SparsePoly<3>;
/// Four-variable polynomial (variables `w`, `x`, `y`, `z`).
pub type QuadPoly = SparsePoly<4>;

/// Affine point-count instances are capped at `q^3 <= 2^30`.
pub const MAX_COUNT_POINTS: u128 = 1 << 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("inexact division; remainder leading term {leading_term}")]
    InexactDivision { leading_term: String },
    #[error("instance too large: q^3 = {q_cubed} exceeds {MAX_COUNT_POINTS}")]
    InstanceTooLarge { q_cubed: u128 },
    #[error("binomial range violated: m = {m} > n = {n}")]
    BinomialRange { n: u64, m: u64 },
    #[error("q = {q} is not a power of two at least 2")]
    QNotAPowerOfTwo { q: u64 },
    #[error("exact q^(3/2) needs an even field exponent, got h = {h}; use bound_positive instead")]
    ExactBoundNeedsEvenExponent { h: u32 },
    #[error("homogenisation needs degree at least 2, got {degree:?}")]
    DegreeTooSmall { degree: Option<usize> },
    #[error("operand is not homogeneous")]
    NonHomogeneous,
    #[error(transparent)]
    Field(#[from] Gf2mError),
}

impl From<InexactDivision> for SurfaceError {
    fn from(e: InexactDivision) -> Self {
        SurfaceError::InexactDivision {
            leading_term: e.leading_term,
        }
    }
}

/// `(x+y)(x+z)(y+z)` over `F_2`, the denominator of every `phi` quotient.
pub fn phi_denominator() -> TriPoly {
    let f2 = BinaryField::new(1).expect("F_2 exists");
    let x = TriPoly::monomial(f2, [1, 0, 0], 1);
    let y = TriPoly::monomial(f2, [0, 1, 0], 1);
    let z = TriPoly::monomial(f2, [0, 0, 1], 1);
    x.add(&y).mul(&x.add(&z)).mul(&y.add(&z))
}

/// `x(y^j+z^j) + y(x^j+z^j) + z(x^j+y^j)` over `F_2`.
pub fn phi_numerator(j: u32) -> TriPoly {
    let f2 = BinaryField::new(1).expect("F_2 exists");
    let j16 = u16::try_from(j).expect("exponent fits u16");
    let mut n = TriPoly::zero(f2);
    n.insert_add([1, j16, 0], 1);
    n.insert_add([1, 0, j16], 1);
    n.insert_add([j16, 1, 0], 1);
    n.insert_add([0, 1, j16], 1);
    n.insert_add([j16, 0, 1], 1);
    n.insert_add([0, j16, 1], 1);
    n
}

fn phi_cache() -> &'static Mutex<HashMap<u32, TriPoly>> {
    static CACHE: std::sync::OnceLock<Mutex<HashMap<u32, TriPoly>>> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The quotient `phi_j` over `F_2`. The division is exact for every `j`
/// (the numerator vanishes on each plane `x=y`, `x=z`, `y=z`); a failed
/// division here is an internal-consistency failure and panics.
pub fn phi_j(j: u32) -> TriPoly {
    if let Some(p) = phi_cache().lock().unwrap().get(&j) {
        return p.clone();
    }
    let num = phi_numerator(j);
    let result = if num.is_zero() {
        num
    } else {
        num.exact_div(&phi_denominator())
            .expect("phi_j division is exact by construction")
    };
    phi_cache()
        .lock()
        .unwrap()
        .insert(j, result.clone());
    result
}

/// `Phi_f = sum_i a_i phi_i` over `f`'s field.
pub fn phi_f(f: &UPoly) -> TriPoly {
    let field = f.field();
    let mut out = TriPoly::zero(field);
    let deg = match f.degree() {
        None => return out,
        Some(d) => d,
    };
    for i in 0..=deg {
        let a = f.coeff_bits(i);
        if a == 0 {
            continue;
        }
        for (&e, &c) in phi_j(i as u32).terms() {
            debug_assert_eq!(c, 1);
            out.insert_add(e, a);
        }
    }
    out
}

impl TriPoly {
    /// Substitute the variable `from` by the variable `into`.
    pub fn merge_vars(&self, from: usize, into: usize) -> TriPoly {
        assert!(from < 3 && into < 3 && from != into);
        let mut out = TriPoly::zero(self.field());
        for (&e, &c) in self.terms() {
            let mut d = e;
            d[into] += d[from];
            d[from] = 0;
            out.insert_add(d, c);
        }
        out
    }

    /// Dehomogenise at `z := 1`.
    pub fn dehomogenize_z(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.field());
        for (&[a, b, _], &c) in self.terms() {
            out.insert_add([a, b], c);
        }
        out
    }

    /// Smallest power of `z` dividing every term (`None` when zero).
    pub fn z_valuation(&self) -> Option<u16> {
        self.terms().map(|(e, _)| e[2]).min()
    }
}

impl BiPoly {
    /// Homogenise with `z` up to the polynomial's total degree.
    pub fn homogenize_z(&self) -> TriPoly {
        let d = self.total_degree().unwrap_or(0) as u16;
        let mut out = TriPoly::zero(self.field());
        for (&[a, b], &c) in self.terms() {
            out.insert_add([a, b, d - a - b], c);
        }
        out
    }
}

/// Substitute `z := x`, restricting a surface to the diagonal plane.
pub fn restrict_zx(p: &TriPoly) -> TriPoly {
    p.merge_vars(2, 0)
}

/// Verify `phi_{2i}(x,y,x) = ((x^i + y^i)/(x+y))^2` symbolically.
pub fn check_identity_4(i: u32) -> bool {
    assert!(i >= 1, "identity needs i >= 1");
    let lhs = restrict_zx(&phi_j(2 * i));
    let f2 = BinaryField::new(1).expect("F_2 exists");
    let i16 = u16::try_from(i).expect("exponent fits u16");
    let mut num = TriPoly::zero(f2);
    num.insert_add([i16, 0, 0], 1);
    num.insert_add([0, i16, 0], 1);
    let mut den = TriPoly::zero(f2);
    den.insert_add([1, 0, 0], 1);
    den.insert_add([0, 1, 0], 1);
    let q = match num.exact_div(&den) {
        Ok(q) => q,
        Err(_) => return false,
    };
    lhs == q.mul(&q)
}

/// The `2^k - 2` linear factors `x + z + alpha(y + z)` of `phi_{2^k}`,
/// with `alpha` ranging over `F_{2^k}` minus `F_2`.
pub fn factor_phi_2k(k: u32) -> Result<Vec<TriPoly>, SurfaceError> {
    let field = BinaryField::new(k)?;
    let mut out = Vec::new();
    for alpha in field.elements().skip(2) {
        let mut l = TriPoly::zero(field);
        l.insert_add([1, 0, 0], 1);
        l.insert_add([0, 1, 0], alpha.bits());
        l.insert_add([0, 0, 1], alpha.bits() ^ 1);
        out.push(l);
    }
    Ok(out)
}

/// True when `x + z + theta(y + z)` divides `p`, decided by substituting
/// `x := theta*y + (theta+1)*z` and checking for the zero polynomial.
///
/// `theta`'s field must contain `p`'s coefficient field.
pub fn divides_linear(theta: FieldElement, p: &TriPoly) -> bool {
    let tf = theta.field();
    let lifted;
    let p = if p.field() == tf {
        p
    } else {
        let emb = Embedding::new(&p.field(), &tf)
            .expect("theta must lie in an extension of the coefficient field");
        lifted = p.lift(&emb);
        &lifted
    };
    let t = theta.bits();
    let t1 = t ^ 1;
    let max_a = p.degree_in(0).unwrap_or(0) as usize;
    let mut tpow = vec![1u64; max_a + 1];
    let mut t1pow = vec![1u64; max_a + 1];
    for i in 1..=max_a {
        tpow[i] = tf.mul_bits(tpow[i - 1], t);
        t1pow[i] = tf.mul_bits(t1pow[i - 1], t1);
    }
    let mut acc = TriPoly::zero(tf);
    for (&[a, b, c], &coeff) in p.terms() {
        let a_us = a as usize;
        let mut m = a_us;
        loop {
            let co = tf.mul_bits(coeff, tf.mul_bits(tpow[m], t1pow[a_us - m]));
            acc.insert_add([0, b + m as u16, c + (a_us - m) as u16], co);
            if m == 0 {
                break;
            }
            m = (m - 1) & a_us;
        }
    }
    acc.is_zero()
}

/// Number of points `(x,y,z)` of `F_q^3` with pairwise distinct
/// coordinates on which `p` vanishes. `p`'s coefficient field must be a
/// subfield of `F_q`; instances beyond `q^3 = 2^30` are rejected.
#[allow(clippy::needless_range_loop)] // loop variables are field elements
pub fn count_offdiag_zeros(p: &TriPoly, field: &BinaryField) -> Result<u64, SurfaceError> {
    let q = field.q();
    let q_cubed = (q as u128).pow(3);
    if q_cubed > MAX_COUNT_POINTS {
        return Err(SurfaceError::InstanceTooLarge { q_cubed });
    }
    let lifted;
    let p = if p.field() == *field {
        p
    } else {
        let emb = Embedding::new(&p.field(), field)?;
        lifted = p.lift(&emb);
        &lifted
    };
    if p.is_zero() {
        // every off-diagonal triple is a zero
        return Ok(q * (q - 1) * (q - 2));
    }
    let ops = FieldOps::new(field);

    // Group terms by z-exponent and tabulate powers of every element.
    let mut by_ez: BTreeMap<u16, Vec<([u16; 2], u64)>> = BTreeMap::new();
    let mut max_e = 0u16;
    for (&[a, b, c], &coeff) in p.terms() {
        max_e = max_e.max(a).max(b).max(c);
        by_ez.entry(c).or_default().push(([a, b], coeff));
    }
    let z_exps: Vec<u16> = by_ez.keys().copied().collect();
    // pow[e][v] = v^e
    let mut pow = vec![vec![0u64; q as usize]; max_e as usize + 1];
    pow[0].iter_mut().for_each(|p| *p = 1);
    for e in 1..=max_e as usize {
        for v in 0..q as usize {
            pow[e][v] = ops.mul(pow[e - 1][v], v as u64);
        }
    }

    let mut count = 0u64;
    let mut cz = vec![0u64; z_exps.len()];
    for x in 0..q as usize {
        for y in 0..q as usize {
            if y == x {
                continue;
            }
            for (i, (_, terms)) in by_ez.iter().enumerate() {
                let mut acc = 0u64;
                for &([a, b], coeff) in terms {
                    acc ^= ops.mul(coeff, ops.mul(pow[a as usize][x], pow[b as usize][y]));
                }
                cz[i] = acc;
            }
            for z in 0..q as usize {
                if z == x || z == y {
                    continue;
                }
                let mut v = 0u64;
                for (i, &ez) in z_exps.iter().enumerate() {
                    v ^= ops.mul(cz[i], pow[ez as usize][z]);
                }
                if v == 0 {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Affine zero count of a bivariate polynomial over `F_q` (diagnostics for
/// curve point counts). Capped at `q^2 <= 2^26`.
#[allow(clippy::needless_range_loop)] // loop variables are field elements
pub fn count_affine_zeros_bi(p: &BiPoly, field: &BinaryField) -> Result<u64, SurfaceError> {
    let q = field.q();
    let q_sq = (q as u128).pow(2);
    if q_sq > 1 << 26 {
        return Err(SurfaceError::InstanceTooLarge { q_cubed: q_sq });
    }
    let lifted;
    let p = if p.field() == *field {
        p
    } else {
        let emb = Embedding::new(&p.field(), field)?;
        lifted = p.lift(&emb);
        &lifted
    };
    if p.is_zero() {
        return Ok(q * q);
    }
    let ops = FieldOps::new(field);
    let mut by_ey: BTreeMap<u16, Vec<(u16, u64)>> = BTreeMap::new();
    let mut max_e = 0u16;
    for (&[a, b], &coeff) in p.terms() {
        max_e = max_e.max(a).max(b);
        by_ey.entry(b).or_default().push((a, coeff));
    }
    let mut pow = vec![vec![0u64; q as usize]; max_e as usize + 1];
    pow[0].iter_mut().for_each(|p| *p = 1);
    for e in 1..=max_e as usize {
        for v in 0..q as usize {
            pow[e][v] = ops.mul(pow[e - 1][v], v as u64);
        }
    }
    let y_exps: Vec<u16> = by_ey.keys().copied().collect();
    let mut cy = vec![0u64; y_exps.len()];
    let mut count = 0u64;
    for x in 0..q as usize {
        for (i, (_, terms)) in by_ey.iter().enumerate() {
            let mut acc = 0u64;
            for &(a, coeff) in terms {
                acc ^= ops.mul(coeff, pow[a as usize][x]);
            }
            cy[i] = acc;
        }
        for y in 0..q as usize {
            let mut v = 0u64;
            for (i, &ey) in y_exps.iter().enumerate() {
                v ^= ops.mul(cy[i], pow[ey as usize][y]);
            }
            if v == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The homogenisation `sum_i a_i phi_i(x,y,z) w^(d-i)` of `Phi_f`, a
/// homogeneous polynomial of total degree `d - 2` for `deg f = d >= 2`.
pub fn homogenize(f: &UPoly) -> Result<QuadPoly, SurfaceError> {
    let d = f.degree();
    let d = match d {
        Some(d) if d >= 2 => d,
        other => return Err(SurfaceError::DegreeTooSmall { degree: other }),
    };
    let mut out = QuadPoly::zero(f.field());
    for i in 0..=d {
        let a = f.coeff_bits(i);
        if a == 0 {
            continue;
        }
        let w = (d - i) as u16;
        for (&[ex, ey, ez], &c) in phi_j(i as u32).terms() {
            debug_assert_eq!(c, 1);
            out.insert_add([w, ex, ey, ez], a);
        }
    }
    Ok(out)
}

/// The `w = 0` slice of a homogenisation: `a_d * phi_d`.
pub fn slice_w0(h: &QuadPoly) -> TriPoly {
    let mut out = TriPoly::zero(h.field());
    for (&[w, ex, ey, ez], &c) in h.terms() {
        if w == 0 {
            out.insert_add([ex, ey, ez], c);
        }
    }
    out
}

pub(crate) mod coprime;
pub use coprime::homogeneous_coprime;

pub mod bound;
pub mod lucas;

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> BinaryField {
        BinaryField::new(1).unwrap()
    }

    #[test]
    fn phi_low_indices() {
        assert!(phi_j(0).is_zero());
        // numerator of phi_1 cancels identically in characteristic 2
        assert!(phi_j(1).is_zero());
        assert_eq!(phi_j(2), TriPoly::constant(f2(), 1));
    }

    #[test]
    fn phi_4_frozen_expansion() {
        // (x+z)^2 + (x+z)(y+z) + (y+z)^2 expanded by hand:
        let expected =
            TriPoly::parse(f2(), "x^2+y^2+z^2+x^1*y^1+x^1*z^1+y^1*z^1").unwrap();
        assert_eq!(phi_j(4), expected);
    }

    #[test]
    fn phi_j_is_symmetric_and_homogeneous() {
        for j in [2u32, 4, 6, 10, 16, 23, 24] {
            let p = phi_j(j);
            if p.is_zero() {
                continue;
            }
            if j % 2 == 0 {
                assert_eq!(p.homogeneous_degree(), Some(j - 2));
            }
            // all six coordinate permutations fix p
            let swap01: Vec<_> = p
                .terms()
                .map(|(&[a, b, c], &v)| (([b, a, c]), v))
                .collect();
            let mut q = TriPoly::zero(p.field());
            for (e, v) in swap01 {
                q.insert_add(e, v);
            }
            assert_eq!(p, q, "swap x,y changes phi_{j}");
            let swap12: Vec<_> = p
                .terms()
                .map(|(&[a, b, c], &v)| (([a, c, b]), v))
                .collect();
            let mut r = TriPoly::zero(p.field());
            for (e, v) in swap12 {
                r.insert_add(e, v);
            }
            assert_eq!(p, r, "swap y,z changes phi_{j}");
        }
    }

    #[test]
    fn phi_f_examples() {
        let f8 = BinaryField::new(3).unwrap();
        let sq = UPoly::monomial(f8, 2);
        assert_eq!(phi_f(&sq), TriPoly::constant(f8, 1));
        assert!(phi_f(&UPoly::monomial(f8, 1)).is_zero());
        // linearity: Phi_{x^4 + x^2} = phi_4 + 1
        let s = UPoly::parse(f8, "1*x^4+1*x^2").unwrap();
        let mut expected = TriPoly::zero(f8);
        for (&e, &c) in phi_j(4).terms() {
            expected.insert_add(e, c);
        }
        expected.insert_add([0, 0, 0], 1);
        assert_eq!(phi_f(&s), expected);
    }

    #[test]
    fn identity_4_small_cases() {
        // phi_2(x,y,x) = 1 = ((x+y)/(x+y))^2
        assert!(check_identity_4(1));
        // phi_4(x,y,x) = x^2 + y^2 = (x+y)^2
        let r = restrict_zx(&phi_j(4));
        assert_eq!(r, TriPoly::parse(f2(), "x^2+y^2").unwrap());
        assert!(check_identity_4(2));
    }

    #[test]
    fn factor_phi_2k_k2() {
        let factors = factor_phi_2k(2).unwrap();
        assert_eq!(factors.len(), 2);
        let product = factors[0].mul(&factors[1]);
        let f4 = BinaryField::new(2).unwrap();
        let emb = Embedding::new(&f2(), &f4).unwrap();
        assert_eq!(product, phi_j(4).lift(&emb));
    }

    #[test]
    fn factor_phi_2k_parametrised_vanishing() {
        // each factor vanishes identically at (x,y,z) = (alpha*u+(alpha+1)*v, u, v)
        let k = 3;
        let field = BinaryField::new(k).unwrap();
        let factors = factor_phi_2k(k).unwrap();
        for (alpha, l) in field.elements().skip(2).zip(&factors) {
            assert!(divides_linear(alpha, l));
        }
    }

    #[test]
    fn divides_linear_examples() {
        let f4 = BinaryField::new(2).unwrap();
        let omega = f4.element(2).unwrap();
        assert!(divides_linear(omega, &phi_j(4)));
        assert!(divides_linear(omega * omega, &phi_j(4)));
        // theta = 1 means x+y; phi_4(y,y,z) = y^2 + z^2 != 0
        assert!(!divides_linear(f4.one(), &phi_j(4)));
        assert!(!divides_linear(f4.zero(), &phi_j(4)));
        // constants have no linear divisors
        let one = TriPoly::constant(f2(), 1);
        for theta in f4.elements() {
            assert!(!divides_linear(theta, &one));
        }
    }

    #[test]
    fn count_offdiag_examples() {
        let f8 = BinaryField::new(3).unwrap();
        let sq = UPoly::monomial(f8, 2);
        assert_eq!(count_offdiag_zeros(&phi_f(&sq), &f8).unwrap(), 0);

        // x^4 is not an o-polynomial of F_16 (gcd(2,4) != 1), so its
        // surface has off-diagonal points.
        let f16 = BinaryField::new(4).unwrap();
        let quart = UPoly::monomial(f16, 4);
        assert!(count_offdiag_zeros(&phi_f(&quart), &f16).unwrap() > 0);

        let too_big = BinaryField::new(11).unwrap();
        assert!(matches!(
            count_offdiag_zeros(&TriPoly::constant(too_big, 1), &too_big),
            Err(SurfaceError::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn count_matches_brute_force_determinant() {
        // cross-check against the raw numerator on a non-example
        let f8 = BinaryField::new(3).unwrap();
        let f = UPoly::parse(f8, "1*x^6+3*x^4+1*x^2").unwrap();
        let p = phi_f(&f);
        let mut brute = 0u64;
        for x in f8.elements() {
            for y in f8.elements() {
                for z in f8.elements() {
                    if x == y || x == z || y == z {
                        continue;
                    }
                    // x(f(y)+f(z)) + y(f(x)+f(z)) + z(f(x)+f(y))
                    let num = x * (f.eval(y) + f.eval(z))
                        + y * (f.eval(x) + f.eval(z))
                        + z * (f.eval(x) + f.eval(y));
                    if num.is_zero() {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(count_offdiag_zeros(&p, &f8).unwrap(), brute);
    }

    #[test]
    fn homogenize_and_slice() {
        let f4 = BinaryField::new(2).unwrap();
        // f = x^6 + x^2 over F_4, d = 6: w=0 slice is phi_6
        let f = UPoly::parse(f4, "1*x^6+1*x^2").unwrap();
        let h = homogenize(&f).unwrap();
        assert_eq!(h.homogeneous_degree(), Some(4));
        let emb = Embedding::new(&f2(), &f4).unwrap();
        assert_eq!(slice_w0(&h), phi_j(6).lift(&emb));

        // homogenize(x^2) is the constant 1 (single term, degree 0 in w)
        let sq = UPoly::monomial(f4, 2);
        let h2 = homogenize(&sq).unwrap();
        assert_eq!(h2, QuadPoly::constant(f4, 1));

        assert!(matches!(
            homogenize(&UPoly::monomial(f4, 1)),
            Err(SurfaceError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn merge_vars_detects_linear_divisibility() {
        // (x+y) divides p iff p(x,x,z) = 0
        let den = phi_denominator();
        assert!(den.merge_vars(1, 0).is_zero());
        assert!(den.merge_vars(2, 0).is_zero());
        let p = phi_j(6);
        assert!(!p.merge_vars(1, 0).is_zero());
    }
}
