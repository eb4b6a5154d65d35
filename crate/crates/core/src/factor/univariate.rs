//! Complete univariate factorisation over `F_{2^m}`: squarefree
//! decomposition, distinct-degree splitting, then randomized equal-degree
//! splitting via the absolute trace (the characteristic-2 variant of
//! Cantor–Zassenhaus). The random walk is driven by a seeded generator
//! and the output is sorted canonically, so results are deterministic
//! given the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2m::FieldOps;
use crate::upoly::UPoly;

use super::arith::{self, deg};
use super::{FactorError, Factorization};

/// Canonical order on factors: by degree, then by coefficient bits from
/// the highest exponent down.
pub(crate) fn canonical_cmp(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

pub fn factor_univariate(f: &UPoly, seed: u64) -> Result<Factorization<UPoly>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let field = f.field();
    let ops = FieldOps::new(&field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut work = f.coeffs().to_vec();
    let unit_bits = arith::make_monic(&ops, &mut work);
    let mut raw: Vec<(Vec<u64>, u32)> = Vec::new();
    if deg(&work) == Some(0) {
        return Ok(Factorization {
            unit: field.el(unit_bits),
            factors: Vec::new(),
        });
    }
    squarefree_decomposition(&ops, work, 1, &mut raw);

    let mut factors: Vec<(Vec<u64>, u32)> = Vec::new();
    for (part, mult) in raw {
        for (product, d) in distinct_degree(&ops, part) {
            for irred in equal_degree(&ops, product, d, &mut rng) {
                factors.push((irred, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| canonical_cmp(a, b));
    Ok(Factorization {
        unit: field.el(unit_bits),
        factors: factors
            .into_iter()
            .map(|(c, m)| (UPoly::from_bits_unchecked(field, c), m))
            .collect(),
    })
}

/// Yun-style squarefree decomposition adapted to characteristic 2: the
/// part left with vanishing derivative is a perfect square whose root is
/// processed recursively with doubled multiplicities.
fn squarefree_decomposition(
    ops: &FieldOps,
    f: Vec<u64>,
    mult: u32,
    out: &mut Vec<(Vec<u64>, u32)>,
) {
    if deg(&f).unwrap_or(0) == 0 {
        return;
    }
    let fp = arith::derivative(&f);
    if fp.is_empty() {
        let root = arith::poly_sqrt(ops, &f);
        squarefree_decomposition(ops, root, mult * 2, out);
        return;
    }
    let mut g = arith::gcd(ops, &f, &fp);
    let mut w = arith::exact_div(ops, &f, &g);
    let mut i = 1u32;
    while !arith::is_one(&w) {
        let y = arith::gcd(ops, &w, &g);
        let z = arith::exact_div(ops, &w, &y);
        if !arith::is_one(&z) {
            out.push((z, mult * i));
        }
        g = arith::exact_div(ops, &g, &y);
        w = y;
        i += 1;
    }
    if !arith::is_one(&g) {
        debug_assert!(arith::derivative(&g).is_empty());
        let root = arith::poly_sqrt(ops, &g);
        squarefree_decomposition(ops, root, mult * 2, out);
    }
}

/// Split a monic squarefree polynomial into products of irreducibles of
/// one common degree each.
fn distinct_degree(ops: &FieldOps, mut f: Vec<u64>) -> Vec<(Vec<u64>, usize)> {
    let m = ops.field().h();
    let mut out = Vec::new();
    let mut h = vec![0u64, 1]; // x
    let mut d = 0usize;
    loop {
        let df = match deg(&f) {
            None | Some(0) => break,
            Some(df) => df,
        };
        d += 1;
        if 2 * d > df {
            out.push((f, df));
            break;
        }
        // h = h^q mod f with q = 2^m
        for _ in 0..m {
            h = arith::sqmod(ops, &h, &f);
        }
        // gcd(h - x, f) collects all irreducible factors of degree d
        let mut hx = h.clone();
        if hx.len() < 2 {
            hx.resize(2, 0);
        }
        hx[1] ^= 1;
        arith::trim(&mut hx);
        let g = arith::gcd(ops, &hx, &f);
        if deg(&g).unwrap_or(0) > 0 {
            f = arith::exact_div(ops, &f, &g);
            if deg(&f).unwrap_or(0) > 0 {
                h = arith::rem(ops, h, &f);
            }
            out.push((g, d));
        }
    }
    out
}

/// Equal-degree splitting by the absolute trace map
/// `T(a) = a + a^2 + a^4 + ... + a^(2^(m d - 1))` modulo `f`; for a random
/// `a` the gcd with `f` is a proper factor with probability about 1/2.
fn equal_degree(
    ops: &FieldOps,
    f: Vec<u64>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u64>> {
    let df = deg(&f).expect("nonzero");
    if df == d {
        return vec![f];
    }
    let m = ops.field().h() as usize;
    let q = ops.field().q();
    loop {
        let mut a: Vec<u64> = (0..df).map(|_| rng.gen_range(0..q)).collect();
        arith::trim(&mut a);
        if deg(&a).unwrap_or(0) < 1 {
            continue;
        }
        let mut t = a.clone();
        let mut acc = a.clone();
        for _ in 1..(m * d) {
            t = arith::sqmod(ops, &t, &f);
            if acc.len() < t.len() {
                acc.resize(t.len(), 0);
            }
            for (slot, &c) in acc.iter_mut().zip(t.iter()) {
                *slot ^= c;
            }
        }
        arith::trim(&mut acc);
        if acc.is_empty() {
            continue;
        }
        let g = arith::gcd(ops, &acc, &f);
        let dg = deg(&g).unwrap_or(0);
        if dg == 0 || dg == df {
            continue;
        }
        let rest = arith::exact_div(ops, &f, &g);
        let mut out = equal_degree(ops, g, d, rng);
        out.extend(equal_degree(ops, rest, d, rng));
        return out;
    }
}
