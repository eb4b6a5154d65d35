//! Dense polynomial arithmetic on raw coefficient vectors, used by the
//! factorisation routines. Coefficients are bit representatives; all
//! multiplication is routed through the table-backed [`FieldOps`].
//! Vectors are kept trimmed (no trailing zeros; empty = zero polynomial).

use crate::gf2m::FieldOps;

pub(crate) fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn deg(p: &[u64]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn is_one(p: &[u64]) -> bool {
    p.len() == 1 && p[0] == 1
}

pub(crate) fn mul(ops: &FieldOps, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            if cb != 0 {
                out[i + j] ^= ops.mul(ca, cb);
            }
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (`m` nonzero).
pub(crate) fn rem(ops: &FieldOps, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = deg(m).expect("modulus nonzero");
    let lc_inv = ops.inv(m[dm]);
    while a.len() > dm {
        let i = a.len() - 1;
        let c = a[i];
        if c != 0 {
            let f = ops.mul(c, lc_inv);
            for (j, &mc) in m.iter().enumerate() {
                if mc != 0 {
                    a[i - dm + j] ^= ops.mul(f, mc);
                }
            }
            debug_assert_eq!(a[i], 0);
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// Exact quotient `a / b`, panicking if the division is not exact.
pub(crate) fn exact_div(ops: &FieldOps, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (q, r) = divrem(ops, a, b);
    assert!(r.is_empty(), "division expected to be exact");
    q
}

pub(crate) fn divrem(ops: &FieldOps, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = deg(b).expect("divisor nonzero");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lc_inv = ops.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let f = ops.mul(c, lc_inv);
        q[i - db] = f;
        for (j, &bc) in b.iter().enumerate() {
            if bc != 0 {
                r[i - db + j] ^= ops.mul(f, bc);
            }
        }
    }
    trim(&mut r);
    (q, r)
}

/// Scale into monic form, returning the former leading coefficient.
pub(crate) fn make_monic(ops: &FieldOps, p: &mut [u64]) -> u64 {
    let lc = *p.last().expect("nonzero polynomial");
    if lc != 1 {
        let inv = ops.inv(lc);
        for c in p.iter_mut() {
            *c = ops.mul(*c, inv);
        }
    }
    lc
}

/// Monic gcd.
pub(crate) fn gcd(ops: &FieldOps, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(ops, x, &y);
        x = y;
        y = r;
    }
    if !x.is_empty() {
        make_monic(ops, &mut x);
    }
    x
}

/// `a^2 mod m`; squaring in characteristic 2 just spreads exponents.
pub(crate) fn sqmod(ops: &FieldOps, a: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut sq = vec![0u64; 2 * a.len() - 1];
    for (i, &c) in a.iter().enumerate() {
        if c != 0 {
            sq[2 * i] = ops.mul(c, c);
        }
    }
    rem(ops, sq, m)
}

/// Formal derivative (characteristic 2).
pub(crate) fn derivative(p: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; p.len().saturating_sub(1)];
    for (e, &c) in p.iter().enumerate().skip(1) {
        if !e.is_multiple_of(2) {
            out[e - 1] = c;
        }
    }
    trim(&mut out);
    out
}

/// Square root of a polynomial in `F[x^2]` (all odd coefficients zero):
/// halve exponents and take coefficient square roots via `c^(2^(m-1))`.
pub(crate) fn poly_sqrt(ops: &FieldOps, p: &[u64]) -> Vec<u64> {
    let field = ops.field();
    let m = field.h();
    let mut out = vec![0u64; p.len().div_ceil(2)];
    for (e, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        debug_assert!(e.is_multiple_of(2), "polynomial is not a square");
        let mut r = c;
        for _ in 0..m.saturating_sub(1) {
            r = ops.mul(r, r);
        }
        out[e / 2] = r;
    }
    trim(&mut out);
    out
}
