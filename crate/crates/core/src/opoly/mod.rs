//! The o-polynomial predicate, shift equivalence, hyperovals, and
//! coefficient searches.
//!
//! A polynomial `f` over `F_q` (q even) is an o-polynomial when it
//! permutes the field, fixes 0 and 1, and no three points of its graph
//! are collinear. Two independent implementations decide the last
//! condition:
//!
//! * [`is_opoly_det`] — the oracle: all `C(q,3)` distinct triples against
//!   the collinearity determinant, `O(q^3)`;
//! * [`is_opoly_fast`] — the slope filter: for every base point `a` the
//!   `q-1` secant slopes `(f(x)+f(a))/(x+a)` must be pairwise distinct,
//!   `O(q^2)`. The determinant on a distinct triple `(a,b,c)` equals
//!   `(slope_a(b) + slope_a(c)) (a+b)(a+c)`, so the two agree triple by
//!   triple.
//!
//! Verdicts report the first failing stage in the fixed order value-at-0,
//! value-at-1, permutation, collinearity, with a witness triple for
//! collinearity failures.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gf2m::{BinaryField, FieldElement, FieldOps, Gf2mError};
use crate::upoly::UPoly;

mod checkpoint;
mod search;

pub use checkpoint::{append_checkpoint, load_latest_checkpoint, SearchCheckpoint};
pub use search::{
    search_exponents, search_opolys, search_space_size, SearchConstraint, SearchOptions,
    SearchOutcome, CHECKPOINT_STRIDE, MAX_SEARCH_SPACE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpolyError {
    #[error("not an o-polynomial: {verdict}")]
    NotAnOPolynomial { verdict: OPolyVerdict },
    #[error("degenerate shift: f(1+a) = f(a) for a = {a}")]
    DegenerateShift { a: String },
    #[error("search space of {size} coefficient tuples exceeds {MAX_SEARCH_SPACE}")]
    SearchSpaceTooLarge { size: u128 },
    #[error("operation requires h >= 2, got h = {h} (F_2 is degenerate here)")]
    FieldTooSmall { h: u32 },
    #[error("family pattern must have coefficients in F_2")]
    PatternNotBinary,
    #[error("checkpoint does not match the requested search: {}", diffs.join("; "))]
    CheckpointMismatch { diffs: Vec<String> },
    #[error("checkpoint i/o: {0}")]
    CheckpointIo(String),
    #[error(transparent)]
    Field(#[from] Gf2mError),
}

/// Which stage of the o-polynomial definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailedCondition {
    ValueAtZero,
    ValueAtOne,
    Permutation,
    Collinearity,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailedCondition::ValueAtZero => "value-at-0",
            FailedCondition::ValueAtOne => "value-at-1",
            FailedCondition::Permutation => "permutation",
            FailedCondition::Collinearity => "collinearity",
        };
        write!(f, "{s}")
    }
}

/// Outcome of an o-polynomial test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OPolyVerdict {
    pub is_opoly: bool,
    pub failed_condition: Option<FailedCondition>,
    /// Distinct triple witnessing a collinearity failure; the determinant
    /// vanishes on it.
    pub witness: Option<[FieldElement; 3]>,
}

impl OPolyVerdict {
    fn pass() -> Self {
        OPolyVerdict {
            is_opoly: true,
            failed_condition: None,
            witness: None,
        }
    }

    fn fail(cond: FailedCondition, witness: Option<[FieldElement; 3]>) -> Self {
        OPolyVerdict {
            is_opoly: false,
            failed_condition: Some(cond),
            witness,
        }
    }
}

impl fmt::Display for OPolyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_opoly {
            write!(f, "o-polynomial")
        } else {
            match (&self.failed_condition, &self.witness) {
                (Some(c), Some([a, b, c3])) => {
                    write!(f, "failed {c} at triple ({a}, {b}, {c3})")
                }
                (Some(c), None) => write!(f, "failed {c}"),
                _ => write!(f, "failed"),
            }
        }
    }
}

/// Reusable scratch for repeated o-polynomial tests over one field.
pub(crate) struct OpolyTester {
    field: BinaryField,
    ops: FieldOps,
    inv_table: Vec<u64>,
    stamp: Vec<u32>,
    mark: Vec<u64>,
    generation: u32,
}

impl OpolyTester {
    pub fn new(field: &BinaryField) -> OpolyTester {
        let ops = FieldOps::new(field);
        let q = field.q() as usize;
        let mut inv_table = vec![0u64; q];
        for u in 1..q as u64 {
            inv_table[u as usize] = ops.inv(u);
        }
        OpolyTester {
            field: *field,
            ops,
            inv_table,
            stamp: vec![0u32; q],
            mark: vec![0u64; q],
            generation: 0,
        }
    }

    fn next_generation(&mut self) -> u32 {
        if self.generation >= u32::MAX - 2 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 0;
        }
        self.generation += 1;
        self.generation
    }

    /// Full verdict from a value table `values[x] = f(x)`.
    pub fn verdict_of_table(&mut self, values: &[u64]) -> OPolyVerdict {
        let q = self.field.q() as usize;
        debug_assert_eq!(values.len(), q);
        if values[0] != 0 {
            return OPolyVerdict::fail(FailedCondition::ValueAtZero, None);
        }
        if values[1] != 1 {
            return OPolyVerdict::fail(FailedCondition::ValueAtOne, None);
        }
        // permutation stage
        let gen = self.next_generation();
        for &v in values {
            let slot = &mut self.stamp[v as usize];
            if *slot == gen {
                return OPolyVerdict::fail(FailedCondition::Permutation, None);
            }
            *slot = gen;
        }
        // slope stage: the q-1 secant slopes through (a, f(a)) must be
        // pairwise distinct for every a
        for a in 0..q {
            let va = values[a];
            let gen = self.next_generation();
            for (x, &vx) in values.iter().enumerate() {
                if x == a {
                    continue;
                }
                let s = self.ops.mul(va ^ vx, self.inv_table[x ^ a]) as usize;
                if self.stamp[s] == gen {
                    let prev = self.mark[s];
                    let w = [
                        self.field.el(a as u64),
                        self.field.el(prev),
                        self.field.el(x as u64),
                    ];
                    debug_assert!(self.det_vanishes(values, a as u64, prev, x as u64));
                    return OPolyVerdict::fail(FailedCondition::Collinearity, Some(w));
                }
                self.stamp[s] = gen;
                self.mark[s] = x as u64;
            }
        }
        OPolyVerdict::pass()
    }

    fn det_vanishes(&self, values: &[u64], a: u64, b: u64, c: u64) -> bool {
        let va = values[a as usize];
        let vb = values[b as usize];
        let vc = values[c as usize];
        let det = self.ops.mul(va, b ^ c) ^ self.ops.mul(vb, a ^ c) ^ self.ops.mul(vc, a ^ b);
        det == 0
    }
}

/// Oracle implementation: checks `f(0)=0`, `f(1)=1`, the permutation
/// property, then all `C(q,3)` distinct triples against the collinearity
/// determinant. `O(q^3)`; the witness is the lexicographically first
/// failing triple.
pub fn is_opoly_det(f: &UPoly) -> OPolyVerdict {
    let field = f.field();
    let q = field.q();
    let values = f.value_table();
    if values[0] != 0 {
        return OPolyVerdict::fail(FailedCondition::ValueAtZero, None);
    }
    if values[1] != 1 {
        return OPolyVerdict::fail(FailedCondition::ValueAtOne, None);
    }
    let mut seen = vec![false; q as usize];
    for &v in &values {
        if seen[v as usize] {
            return OPolyVerdict::fail(FailedCondition::Permutation, None);
        }
        seen[v as usize] = true;
    }
    match det_witness_of_table(&field, &values) {
        Some(w) => OPolyVerdict::fail(FailedCondition::Collinearity, Some(w)),
        None => OPolyVerdict::pass(),
    }
}

/// Slope-filter implementation: `O(q^2)` with the same verdict as
/// [`is_opoly_det`]. The two serve as each other's test oracle.
pub fn is_opoly_fast(f: &UPoly) -> OPolyVerdict {
    let mut tester = OpolyTester::new(&f.field());
    tester.verdict_of_table(&f.value_table())
}

/// The collinearity determinant condition of the definition, alone: the
/// lexicographically first distinct triple `(a,b,c)` with vanishing
/// determinant, or `None` when the condition holds. Independent of the
/// permutation stage.
pub fn det_condition_witness(f: &UPoly) -> Option<[FieldElement; 3]> {
    det_witness_of_table(&f.field(), &f.value_table())
}

fn det_witness_of_table(field: &BinaryField, values: &[u64]) -> Option<[FieldElement; 3]> {
    let q = field.q();
    for a in 0..q {
        let va = values[a as usize];
        for b in (a + 1)..q {
            let vb = values[b as usize];
            for c in (b + 1)..q {
                let vc = values[c as usize];
                // det of [[1,1,1],[a,b,c],[f(a),f(b),f(c)]] in char 2
                let det = field.mul_bits(va, b ^ c)
                    ^ field.mul_bits(vb, a ^ c)
                    ^ field.mul_bits(vc, a ^ b);
                if det == 0 {
                    return Some([field.el(a), field.el(b), field.el(c)]);
                }
            }
        }
    }
    None
}

/// The normalisation `g(x) = (f(x+a) + f(a)) / (f(1+a) + f(a))` of a
/// shifted polynomial; preserves the o-polynomial property. Errors when
/// the denominator vanishes (impossible for injective `f`, since
/// `1 + a != a` in characteristic 2).
pub fn equiv_transform(f: &UPoly, a: FieldElement) -> Result<UPoly, OpolyError> {
    assert!(a.field() == f.field(), "cross-field equivalence shift");
    let shifted = f.compose_shift(a);
    let delta = shifted.eval_bits(1);
    if delta == 0 {
        return Err(OpolyError::DegenerateShift { a: a.to_string() });
    }
    let inv = f.field().el(delta).inv().expect("nonzero denominator");
    Ok(shifted.scale(inv))
}

/// Witness `a` with `equiv_transform(f, a) = g` as reduced polynomials,
/// trying all `q` shifts; `None` when the polynomials are inequivalent.
pub fn are_equivalent(f: &UPoly, g: &UPoly) -> Option<FieldElement> {
    assert!(f.field() == g.field(), "cross-field equivalence test");
    let g_red = g.reduce_mod_xq_x();
    for a in f.field().elements() {
        if let Ok(t) = equiv_transform(f, a) {
            if t.reduce_mod_xq_x() == g_red {
                return Some(a);
            }
        }
    }
    None
}

/// A point of the projective plane, normalised so that the leftmost
/// nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    /// Normalising constructor; `None` for the zero vector.
    pub fn new(coords: [FieldElement; 3]) -> Option<ProjPoint> {
        let pivot = coords.iter().find(|c| !c.is_zero())?;
        let inv = pivot.inv().expect("pivot nonzero");
        Some(ProjPoint {
            coords: [coords[0] * inv, coords[1] * inv, coords[2] * inv],
        })
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        self.coords
    }

    fn key(&self) -> [u64; 3] {
        [
            self.coords[0].bits(),
            self.coords[1].bits(),
            self.coords[2].bits(),
        ]
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}:{}:{})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// The `q+2` points of the hyperoval attached to an o-polynomial.
#[derive(Clone, Debug)]
pub struct HyperovalPointSet {
    field: BinaryField,
    points: Vec<ProjPoint>,
}

impl HyperovalPointSet {
    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The point set `{(f(c), c, 1)} ∪ {(1,0,0), (0,1,0)}` of an
/// o-polynomial; errors with the verdict when `f` is not one.
pub fn to_hyperoval(f: &UPoly) -> Result<HyperovalPointSet, OpolyError> {
    let verdict = is_opoly_fast(f);
    if !verdict.is_opoly {
        return Err(OpolyError::NotAnOPolynomial { verdict });
    }
    let field = f.field();
    let mut points = Vec::with_capacity(field.q() as usize + 2);
    points.push(ProjPoint::new([field.one(), field.zero(), field.zero()]).unwrap());
    points.push(ProjPoint::new([field.zero(), field.one(), field.zero()]).unwrap());
    for c in field.elements() {
        points.push(ProjPoint::new([f.eval(c), c, field.one()]).unwrap());
    }
    Ok(HyperovalPointSet { field, points })
}

/// Arc condition: true when the points are pairwise distinct and no three
/// are collinear (3x3 determinant nonzero for every triple).
pub fn verify_hyperoval(points: &[ProjPoint]) -> bool {
    let mut keys: Vec<[u64; 3]> = points.iter().map(|p| p.key()).collect();
    keys.sort_unstable();
    if keys.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            for k in (j + 1)..points.len() {
                if det3(&points[i], &points[j], &points[k]).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn det3(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> FieldElement {
    let [a, b, c] = p.coords;
    let [d, e, f] = q.coords;
    let [g, h, i] = r.coords;
    // char-2 expansion of the 3x3 determinant
    a * (e * i + f * h) + b * (d * i + f * g) + c * (d * h + e * g)
}

/// Exponents `k` in `2..=q-2` for which `x^k` is an o-polynomial.
pub fn monomial_spectrum(field: &BinaryField) -> Result<BTreeSet<u64>, OpolyError> {
    if field.h() < 2 {
        return Err(OpolyError::FieldTooSmall { h: field.h() });
    }
    let mut tester = OpolyTester::new(field);
    let q = field.q();
    let mut out = BTreeSet::new();
    for k in 2..=(q - 2) {
        let values: Vec<u64> = (0..q).map(|x| field.pow_bits(x, k)).collect();
        if tester.verdict_of_table(&values).is_opoly {
            out.insert(k);
        }
    }
    Ok(out)
}

/// Lift an `F_2`-coefficient pattern to each `F_{2^h}` in the range and
/// report whether it is an o-polynomial there.
pub fn check_family(pattern: &UPoly, h_values: &[u32]) -> Result<BTreeMap<u32, bool>, OpolyError> {
    if pattern.field().h() != 1 {
        return Err(OpolyError::PatternNotBinary);
    }
    let mut out = BTreeMap::new();
    for &h in h_values {
        if h < 2 {
            return Err(OpolyError::FieldTooSmall { h });
        }
        let field = BinaryField::new(h)?;
        let lifted = UPoly::from_bits_unchecked(field, pattern.coeffs().to_vec());
        out.insert(h, is_opoly_fast(&lifted).is_opoly);
    }
    Ok(out)
}
