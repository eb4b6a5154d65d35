//! Exact coprimality decision for homogeneous trivariate polynomials.
//!
//! Used for the square-freeness checks: `p` is square-free whenever it
//! shares no factor with a nonzero partial derivative. The decision
//! dehomogenises both inputs (their factorisations correspond one-to-one
//! once common `z`-powers are handled), tests pure-`y` common factors via
//! univariate contents, and decides common factors of positive `x`-degree
//! by testing whether the `x`-resultant vanishes identically — evaluated
//! exactly at more points of a large extension field than its `y`-degree
//! bound, skipping points where either leading coefficient vanishes.

use crate::gf2m::{BinaryField, Embedding};
use crate::upoly::UPoly;

use super::{BiPoly, SurfaceError, TriPoly};

/// True when the two homogeneous polynomials have no common factor.
pub fn homogeneous_coprime(a: &TriPoly, b: &TriPoly) -> Result<bool, SurfaceError> {
    assert!(a.field() == b.field(), "cross-field coprimality check");
    if a.is_zero() || b.is_zero() {
        // gcd(p, 0) = p: trivial exactly when the other side is a unit
        let other = if a.is_zero() { b } else { a };
        return Ok(other.total_degree() == Some(0));
    }
    if a.homogeneous_degree().is_none() || b.homogeneous_degree().is_none() {
        return Err(SurfaceError::NonHomogeneous);
    }
    if a.z_valuation().unwrap_or(0) > 0 && b.z_valuation().unwrap_or(0) > 0 {
        return Ok(false); // common factor z
    }
    // For z-free homogeneous parts, factorisations correspond exactly to
    // those of the z := 1 dehomogenisations.
    Ok(bivariate_coprime(&a.dehomogenize_z(), &b.dehomogenize_z()))
}

/// gcd of the `F[y]` coefficients of `p` read as a polynomial in `x`.
fn content_x(p: &BiPoly) -> UPoly {
    let field = p.field();
    let dx = p.degree_in(0).unwrap_or(0) as usize;
    let mut content = UPoly::zero(field);
    for ex in 0..=dx {
        let mut coeffs = Vec::new();
        for (&[a, b], &c) in p.terms() {
            if a as usize == ex {
                let b = b as usize;
                if coeffs.len() <= b {
                    coeffs.resize(b + 1, 0);
                }
                coeffs[b] ^= c;
            }
        }
        let cy = UPoly::from_bits_unchecked(field, coeffs);
        if !cy.is_zero() {
            content = content.gcd(&cy);
        }
        if content.degree() == Some(0) {
            break;
        }
    }
    content
}

/// Specialise `p(x, eta)` to a univariate polynomial over the evaluation
/// field, coefficients mapped through the embedding.
fn specialise_y(p: &BiPoly, emb: &Embedding, eta: u64, eval_field: &BinaryField) -> UPoly {
    let dx = p.degree_in(0).unwrap_or(0) as usize;
    let dy = p.degree_in(1).unwrap_or(0) as usize;
    let mut eta_pow = vec![1u64; dy + 1];
    for i in 1..=dy {
        eta_pow[i] = eval_field.mul_bits(eta_pow[i - 1], eta);
    }
    let mut coeffs = vec![0u64; dx + 1];
    for (&[a, b], &c) in p.terms() {
        coeffs[a as usize] ^= eval_field.mul_bits(emb.map_bits(c), eta_pow[b as usize]);
    }
    UPoly::from_bits_unchecked(*eval_field, coeffs)
}

fn bivariate_coprime(a: &BiPoly, b: &BiPoly) -> bool {
    let field = a.field();
    // Pure-y common factors divide both contents.
    let ca = content_x(a);
    let cb = content_x(b);
    if ca.gcd(&cb).degree().unwrap_or(0) >= 1 {
        return false;
    }
    let dxa = a.degree_in(0).unwrap_or(0) as u64;
    let dxb = b.degree_in(0).unwrap_or(0) as u64;
    if dxa == 0 || dxb == 0 {
        // One side is purely in y; any common factor would be pure-y,
        // already excluded by the content test.
        return true;
    }
    let dya = a.degree_in(1).unwrap_or(0) as u64;
    let dyb = b.degree_in(1).unwrap_or(0) as u64;
    // y-degree bound of Res_x(a, b) plus room for skipped bad points.
    let res_degree = dxa * dyb + dxb * dya;
    let needed = res_degree + dya + dyb + 2;
    let m = field.h();
    let mut eh = m;
    while (1u64 << eh) <= needed {
        eh += m;
    }
    assert!(
        eh <= crate::gf2m::MAX_H,
        "evaluation field for the resultant exceeds the supported field sizes"
    );
    let eval_field = BinaryField::new(eh).expect("valid evaluation field");
    let emb = Embedding::new(&field, &eval_field).expect("subfield by construction");

    // leading x-coefficients as polynomials in y over the original field
    let lc = |p: &BiPoly, dx: u64| -> UPoly {
        let fld = p.field();
        let mut coeffs = Vec::new();
        for (&[a2, b2], &c) in p.terms() {
            if a2 as u64 == dx {
                let b2 = b2 as usize;
                if coeffs.len() <= b2 {
                    coeffs.resize(b2 + 1, 0);
                }
                coeffs[b2] ^= c;
            }
        }
        UPoly::from_bits_unchecked(fld, coeffs)
    };
    let lca = lc(a, dxa);
    let lcb = lc(b, dxb);

    let mut good = 0u64;
    for eta in 0..eval_field.q() {
        let lca_eta = specialise_lc(&lca, &emb, eta, &eval_field);
        if lca_eta == 0 {
            continue;
        }
        let lcb_eta = specialise_lc(&lcb, &emb, eta, &eval_field);
        if lcb_eta == 0 {
            continue;
        }
        let fa = specialise_y(a, &emb, eta, &eval_field);
        let fb = specialise_y(b, &emb, eta, &eval_field);
        if fa.gcd(&fb).degree().unwrap_or(0) == 0 {
            // the resultant does not vanish here, so it is not identically
            // zero: no common factor of positive x-degree
            return true;
        }
        good += 1;
        if good > res_degree {
            // more vanishing points than the resultant's degree bound
            return false;
        }
    }
    unreachable!("evaluation field was sized to provide enough good points")
}

fn specialise_lc(lc: &UPoly, emb: &Embedding, eta: u64, eval_field: &BinaryField) -> u64 {
    let mut acc = 0u64;
    for &c in lc.coeffs().iter().rev() {
        acc = eval_field.mul_bits(acc, eta) ^ emb.map_bits(c);
    }
    acc
}
