//! Bivariate factorisation over `F_{2^m}` by Kronecker substitution.
//!
//! The substitution `y := x^D` with `D = 2*(total degree) + 1` separates
//! degrees, so exponents `e = a + D*b` with `a < D` decode uniquely back
//! to monomials `x^a y^b`. The univariate image is factored completely
//! and bivariate factor candidates are recombined from subsets of its
//! irreducible factors, smallest subsets first, each candidate checked by
//! trial exact division. Every successful split restarts on the quotient,
//! which keeps multiplicities and shared image factors honest.

use crate::gf2m::FieldOps;
use crate::surface::BiPoly;
use crate::upoly::UPoly;

use super::arith;
use super::univariate::{canonical_cmp, factor_univariate};
use super::{FactorError, Factorization};

/// Degree cap for bivariate factorisation instances.
pub const MAX_BIVARIATE_DEGREE: u32 = 24;

/// Trial-division budget for the subset recombination; exceeding it means
/// the Kronecker image shattered far beyond anything the supported degree
/// range produces.
const RECOMBINATION_BUDGET: u64 = 1 << 22;

/// gcd of the `F[y]` coefficient polynomials of `p` read in `x`.
pub(crate) fn content_in_y(p: &BiPoly) -> UPoly {
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

fn upoly_to_bipoly_in_y(p: &UPoly) -> BiPoly {
    let mut out = BiPoly::zero(p.field());
    for (e, &c) in p.coeffs().iter().enumerate() {
        if c != 0 {
            out.insert_add([0, e as u16], c);
        }
    }
    out
}

/// `p(x, x^D)` as a dense univariate coefficient vector.
fn kronecker_image(p: &BiPoly, d_sub: u32) -> Vec<u64> {
    let mut out = Vec::new();
    for (&[a, b], &c) in p.terms() {
        let e = a as usize + d_sub as usize * b as usize;
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] ^= c;
    }
    arith::trim(&mut out);
    out
}

/// Undo the substitution on a candidate univariate factor.
fn decode(p: &[u64], d_sub: u32, field: crate::gf2m::BinaryField) -> BiPoly {
    let mut out = BiPoly::zero(field);
    for (e, &c) in p.iter().enumerate() {
        if c != 0 {
            let a = (e % d_sub as usize) as u16;
            let b = (e / d_sub as usize) as u16;
            out.insert_add([a, b], c);
        }
    }
    out
}

/// Involutive coordinate changes tried before the substitution: the
/// symmetric inputs this crate cares about produce heavily shattered
/// Kronecker images in the identity frame, and a translation or shear
/// collapses the splitting back to the true factor count. Every listed
/// map is its own inverse in characteristic 2, so factors found in a
/// transformed frame map back through the same transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Frame {
    Id,
    ShiftX,
    ShiftY,
    ShearYx,
    ShearXy,
}

const FRAMES: [Frame; 5] = [
    Frame::Id,
    Frame::ShiftX,
    Frame::ShiftY,
    Frame::ShearYx,
    Frame::ShearXy,
];

/// Piece-count threshold under which a frame is accepted immediately.
const FRAME_PIECES_GOAL: usize = 12;

fn apply_frame(p: &BiPoly, frame: Frame) -> BiPoly {
    let field = p.field();
    let mut out = BiPoly::zero(field);
    for (&[a, b], &c) in p.terms() {
        match frame {
            Frame::Id => out.insert_add([a, b], c),
            Frame::ShiftX => {
                // x := x + 1: (x+1)^a keeps exactly the submask exponents
                let a_us = a as usize;
                let mut m = a_us;
                loop {
                    out.insert_add([m as u16, b], c);
                    if m == 0 {
                        break;
                    }
                    m = (m - 1) & a_us;
                }
            }
            Frame::ShiftY => {
                let b_us = b as usize;
                let mut m = b_us;
                loop {
                    out.insert_add([a, m as u16], c);
                    if m == 0 {
                        break;
                    }
                    m = (m - 1) & b_us;
                }
            }
            Frame::ShearYx => {
                // y := y + x
                let b_us = b as usize;
                let mut m = b_us;
                loop {
                    out.insert_add([a + (b_us - m) as u16, m as u16], c);
                    if m == 0 {
                        break;
                    }
                    m = (m - 1) & b_us;
                }
            }
            Frame::ShearXy => {
                // x := x + y
                let a_us = a as usize;
                let mut m = a_us;
                loop {
                    out.insert_add([m as u16, b + (a_us - m) as u16], c);
                    if m == 0 {
                        break;
                    }
                    m = (m - 1) & a_us;
                }
            }
        }
    }
    out
}

/// Scale a bivariate polynomial so its graded-lex leading coefficient is 1;
/// returns the former leading coefficient.
fn normalize(p: &mut BiPoly) -> u64 {
    let (_, lc) = p.leading_term().expect("nonzero polynomial");
    if lc != 1 {
        let inv = p.field().el(lc).inv().expect("nonzero").bits();
        *p = p.mul_scalar(inv);
    }
    lc
}

struct SubsetSearch<'a> {
    ops: &'a FieldOps,
    pieces: &'a [Vec<u64>],
    /// pieces[i]'s degree, and suffix minima/maxima of partial degree sums
    /// for subtree pruning.
    degrees: Vec<usize>,
    suffix_sorted: Vec<Vec<usize>>,
    work: &'a BiPoly,
    d_sub: u32,
    deg_x: usize,
    deg_y: usize,
    image_degree: usize,
    trials: u64,
    chosen: Vec<usize>,
}

impl<'a> SubsetSearch<'a> {
    fn new(ops: &'a FieldOps, pieces: &'a [Vec<u64>], work: &'a BiPoly, d_sub: u32) -> Self {
        let degrees: Vec<usize> = pieces.iter().map(|p| p.len() - 1).collect();
        // suffix_sorted[i] = degrees[i..] sorted ascending, for min/max
        // bounds on what the remaining picks can still contribute
        let mut suffix_sorted = vec![Vec::new(); pieces.len() + 1];
        for i in (0..pieces.len()).rev() {
            let mut v = suffix_sorted[i + 1].clone();
            let pos = v.partition_point(|&d| d < degrees[i]);
            v.insert(pos, degrees[i]);
            suffix_sorted[i] = v;
        }
        let image_degree = degrees.iter().sum();
        SubsetSearch {
            ops,
            pieces,
            degrees,
            suffix_sorted,
            deg_x: work.degree_in(0).unwrap_or(0) as usize,
            deg_y: work.degree_in(1).unwrap_or(0) as usize,
            image_degree,
            work,
            d_sub,
            trials: 0,
            chosen: Vec::new(),
        }
    }

    /// A subset degree sum can only decode to a factor when both it and
    /// its complement split as `D*b + a` with `a` within the x-degree and
    /// `b` within the y-degree of `work` (the image of any true bivariate
    /// factor has that shape).
    fn leaf_degree_plausible(&self, sum: usize) -> bool {
        let d = self.d_sub as usize;
        if sum % d > self.deg_x || sum / d > self.deg_y {
            return false;
        }
        let rest = self.image_degree - sum;
        rest % d <= self.deg_x && rest / d <= self.deg_y
    }

    /// First (smallest, lexicographically earliest) subset whose decoded
    /// product divides `work`; `None` when none of size <= pieces/2 does,
    /// which certifies irreducibility.
    fn run(&mut self) -> Result<Option<BiPoly>, FactorError> {
        for size in 1..=self.pieces.len() / 2 {
            if let Some(hit) = self.extend(0, 0, size)? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }

    fn extend(
        &mut self,
        sum: usize,
        from: usize,
        remaining: usize,
    ) -> Result<Option<BiPoly>, FactorError> {
        if remaining == 0 {
            if !self.leaf_degree_plausible(sum) {
                return Ok(None);
            }
            self.trials += 1;
            if self.trials > RECOMBINATION_BUDGET {
                return Err(FactorError::RecombinationBudget {
                    pieces: self.pieces.len(),
                });
            }
            let mut product = vec![1u64];
            for &i in &self.chosen {
                product = arith::mul(self.ops, &product, &self.pieces[i]);
            }
            let mut cand = decode(&product, self.d_sub, self.work.field());
            if cand.total_degree().unwrap_or(0) == 0
                || cand.total_degree() > self.work.total_degree()
            {
                return Ok(None);
            }
            normalize(&mut cand);
            if self.work.exact_div(&cand).is_ok() {
                return Ok(Some(cand));
            }
            return Ok(None);
        }
        // Bound the achievable window of final degree sums from here; if
        // no value in it can decode into `work`, cut the subtree.
        let avail = &self.suffix_sorted[from];
        if avail.len() < remaining {
            return Ok(None);
        }
        let min_rest: usize = avail[..remaining].iter().sum();
        let max_rest: usize = avail[avail.len() - remaining..].iter().sum();
        let d = self.d_sub as usize;
        let lo = sum + min_rest;
        let hi = sum + max_rest;
        if lo / d > self.deg_y {
            return Ok(None);
        }
        // quick emptiness check of the window against the residue filter:
        // a full residue cycle always contains admissible values
        if hi - lo < d {
            let mut any = false;
            let mut e = lo;
            while e <= hi {
                if self.leaf_degree_plausible(e) {
                    any = true;
                    break;
                }
                e += 1;
            }
            if !any {
                return Ok(None);
            }
        }
        for i in from..=(self.pieces.len() - remaining) {
            self.chosen.push(i);
            let hit = self.extend(sum + self.degrees[i], i + 1, remaining - 1)?;
            self.chosen.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }
}

pub fn factor_bivariate(g: &BiPoly, seed: u64) -> Result<Factorization<BiPoly>, FactorError> {
    if g.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let degree = g.total_degree().unwrap();
    if degree > MAX_BIVARIATE_DEGREE {
        return Err(FactorError::DegreeTooLarge {
            degree,
            max: MAX_BIVARIATE_DEGREE,
        });
    }
    let field = g.field();
    let ops = FieldOps::new(&field);
    let mut factors: Vec<(BiPoly, u32)> = Vec::new();
    let mut work = g.clone();

    // monomial content x^vx y^vy
    let vx = work.terms().map(|(e, _)| e[0]).min().unwrap();
    let vy = work.terms().map(|(e, _)| e[1]).min().unwrap();
    if vx > 0 || vy > 0 {
        let mut shifted = BiPoly::zero(field);
        for (&[a, b], &c) in work.terms() {
            shifted.insert_add([a - vx, b - vy], c);
        }
        if vx > 0 {
            factors.push((BiPoly::monomial(field, [1, 0], 1), vx as u32));
        }
        if vy > 0 {
            factors.push((BiPoly::monomial(field, [0, 1], 1), vy as u32));
        }
        work = shifted;
    }

    // pure-y factors live in the content; factoring them out keeps the
    // Kronecker image from shattering into y-only pieces
    let content = content_in_y(&work);
    if content.degree().unwrap_or(0) >= 1 {
        let cf = factor_univariate(&content, seed)?;
        for (p, m) in cf.factors {
            factors.push((upoly_to_bipoly_in_y(&p), m));
        }
        work = work
            .exact_div(&upoly_to_bipoly_in_y(&content))
            .expect("content divides");
    }

    loop {
        if work.total_degree().unwrap_or(0) == 0 {
            break;
        }
        let d_work = work.total_degree().unwrap();
        let d_sub = 2 * d_work + 1;
        // Pick the coordinate frame with the least shattered image.
        let mut best: Option<(Frame, BiPoly, Vec<Vec<u64>>)> = None;
        for frame in FRAMES {
            let t_work = apply_frame(&work, frame);
            debug_assert_eq!(t_work.total_degree(), Some(d_work));
            let image = kronecker_image(&t_work, d_sub);
            let ufac = factor_univariate(&UPoly::from_bits_unchecked(field, image), seed)?;
            let mut pieces: Vec<Vec<u64>> = Vec::new();
            for (p, m) in &ufac.factors {
                for _ in 0..*m {
                    pieces.push(p.coeffs().to_vec());
                }
            }
            pieces.sort_by(|a, b| canonical_cmp(a, b));
            let n = pieces.len();
            if best.as_ref().is_none_or(|(_, _, b)| n < b.len()) {
                best = Some((frame, t_work, pieces));
            }
            if n <= FRAME_PIECES_GOAL {
                break;
            }
        }
        let (frame, t_work, pieces) = best.expect("at least one frame");
        let found = if pieces.len() == 1 {
            None
        } else {
            SubsetSearch::new(&ops, &pieces, &t_work, d_sub)
                .run()?
                .map(|c| {
                    let mut back = apply_frame(&c, frame);
                    normalize(&mut back);
                    back
                })
        };
        match found {
            Some(f) => {
                let mut mult = 0u32;
                while let Ok(q) = work.exact_div(&f) {
                    work = q;
                    mult += 1;
                }
                debug_assert!(mult >= 1);
                factors.push((f, mult));
            }
            None => {
                let mut w = work.clone();
                normalize(&mut w);
                factors.push((w, 1));
                break;
            }
        }
    }

    factors.sort_by(|(a, _), (b, _)| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    // factors are normalized, so the unit is the graded-lex leading
    // coefficient of the input
    let unit = field.el(g.leading_term().unwrap().1);
    Ok(Factorization {
        unit,
        factors,
    })
}
