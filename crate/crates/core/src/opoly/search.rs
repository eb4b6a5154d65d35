//! Checkpointed exhaustive searches over coefficient spaces.
//!
//! A search enumerates coefficient tuples in lexicographic order (first
//! exponent most significant), filters with the slope tester, and returns
//! every hit. The cursor is a plain index into the enumeration, saved
//! every [`CHECKPOINT_STRIDE`] candidates; resuming from a checkpoint and
//! running to completion yields the identical found list as an
//! uninterrupted run, at any worker count.

use std::thread;

use crate::gf2m::{BinaryField, FieldOps};
use crate::upoly::UPoly;

use super::checkpoint::SearchCheckpoint;
use super::{OpolyError, OpolyTester};

/// Cursor save granularity: an interrupted multi-minute search loses under
/// a second of work.
pub const CHECKPOINT_STRIDE: u64 = 1 << 16;

/// Hard cap on the number of coefficient tuples of a search.
pub const MAX_SEARCH_SPACE: u128 = 1 << 40;

/// Which coefficient tuples a search enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchConstraint {
    /// All exponents `1..=degree_bound`.
    All,
    /// Even exponents only (every o-polynomial over `q > 2` is of this
    /// shape).
    EvenTermsOnly,
    /// Exponents `2^i` with `i >= 1` (additive polynomials; the exponent 1
    /// is omitted since no o-polynomial over `q > 2` carries it).
    Linearized,
    /// Monic monomials `x^k` for `2 <= k <= degree_bound`.
    Monomial,
}

impl SearchConstraint {
    pub fn tag(&self) -> &'static str {
        match self {
            SearchConstraint::All => "all",
            SearchConstraint::EvenTermsOnly => "even-terms-only",
            SearchConstraint::Linearized => "linearized",
            SearchConstraint::Monomial => "monomial",
        }
    }

    pub fn from_tag(s: &str) -> Option<SearchConstraint> {
        match s {
            "all" => Some(SearchConstraint::All),
            "even-terms-only" => Some(SearchConstraint::EvenTermsOnly),
            "linearized" => Some(SearchConstraint::Linearized),
            "monomial" => Some(SearchConstraint::Monomial),
            _ => None,
        }
    }
}

impl std::fmt::Display for SearchConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// The exponents whose coefficients a (non-monomial) search varies.
pub fn search_exponents(constraint: SearchConstraint, degree_bound: u32) -> Vec<u32> {
    match constraint {
        SearchConstraint::All => (1..=degree_bound).collect(),
        SearchConstraint::EvenTermsOnly => (1..=degree_bound / 2).map(|i| 2 * i).collect(),
        SearchConstraint::Linearized => {
            let mut v = Vec::new();
            let mut e = 2u32;
            while e <= degree_bound {
                v.push(e);
                e *= 2;
            }
            v
        }
        SearchConstraint::Monomial => Vec::new(),
    }
}

/// Number of coefficient tuples the search will enumerate.
pub fn search_space_size(
    field: &BinaryField,
    degree_bound: u32,
    constraint: SearchConstraint,
) -> u128 {
    match constraint {
        SearchConstraint::Monomial => degree_bound.saturating_sub(1) as u128,
        _ => {
            let exps = search_exponents(constraint, degree_bound);
            let bits = field.h() as u64 * exps.len() as u64;
            if bits >= 128 {
                u128::MAX
            } else {
                1u128 << bits
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Contiguous shards processed concurrently within each checkpoint
    /// block; the merged output is identical at any worker count.
    pub workers: usize,
    /// Stop after roughly this many candidates (rounded up to the
    /// checkpoint stride), leaving a resumable checkpoint.
    pub limit: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            limit: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Every hit found so far (including hits carried in from a resumed
    /// checkpoint), in cursor order.
    pub hits: Vec<UPoly>,
    pub checkpoint: SearchCheckpoint,
    pub complete: bool,
}

fn derive_search_id(
    field: &BinaryField,
    degree_bound: u32,
    constraint: SearchConstraint,
) -> String {
    format!(
        "opoly-search/h{}/m{:#X}/d{}/{}",
        field.h(),
        field.modulus(),
        degree_bound,
        constraint.tag()
    )
}

/// Exhaustive o-polynomial search, resumable and deterministic.
///
/// `on_checkpoint` is invoked after every completed block with the current
/// cursor and found list (single writer).
pub fn search_opolys(
    field: &BinaryField,
    degree_bound: u32,
    constraint: SearchConstraint,
    resume: Option<&SearchCheckpoint>,
    options: &SearchOptions,
    mut on_checkpoint: Option<&mut dyn FnMut(&SearchCheckpoint)>,
) -> Result<SearchOutcome, OpolyError> {
    if field.h() < 2 {
        return Err(OpolyError::FieldTooSmall { h: field.h() });
    }
    let size_wide = search_space_size(field, degree_bound, constraint);
    if size_wide > MAX_SEARCH_SPACE {
        return Err(OpolyError::SearchSpaceTooLarge { size: size_wide });
    }
    let size = size_wide as u64;

    let mut checkpoint = match resume {
        Some(cp) => {
            cp.validate(field, degree_bound, constraint)?;
            cp.clone()
        }
        None => SearchCheckpoint {
            search_id: derive_search_id(field, degree_bound, constraint),
            h: field.h(),
            modulus: field.modulus(),
            degree_bound,
            constraint_tag: constraint.tag().to_string(),
            cursor: 0,
            found: Vec::new(),
        },
    };

    let end = match options.limit {
        Some(limit) => size.min(
            checkpoint
                .cursor
                .saturating_add(limit.max(1))
                .div_ceil(CHECKPOINT_STRIDE)
                * CHECKPOINT_STRIDE,
        ),
        None => size,
    };
    let workers = options.workers.max(1);

    let exps = search_exponents(constraint, degree_bound);
    let ops = FieldOps::new(field);
    let q = field.q();
    // power tables per searched exponent
    let pow_tables: Vec<Vec<u64>> = exps
        .iter()
        .map(|&e| (0..q).map(|x| field.pow_bits(x, e as u64)).collect())
        .collect();

    while checkpoint.cursor < end {
        let block_start = checkpoint.cursor;
        let block_end = (block_start + CHECKPOINT_STRIDE).min(end);
        let mut block_hits: Vec<String> = Vec::new();
        if workers == 1 || block_end - block_start < 2 * workers as u64 {
            scan_range(
                field,
                &ops,
                constraint,
                &exps,
                &pow_tables,
                block_start,
                block_end,
                &mut block_hits,
            );
        } else {
            let n = workers as u64;
            let span = block_end - block_start;
            let chunk = span.div_ceil(n);
            let mut results: Vec<Vec<String>> = Vec::new();
            thread::scope(|s| {
                let mut handles = Vec::new();
                for w in 0..n {
                    let from = block_start + w * chunk;
                    let to = (from + chunk).min(block_end);
                    if from >= to {
                        break;
                    }
                    let exps = &exps;
                    let pow_tables = &pow_tables;
                    handles.push(s.spawn(move || {
                        let ops = FieldOps::new(field);
                        let mut hits = Vec::new();
                        scan_range(
                            field, &ops, constraint, exps, pow_tables, from, to, &mut hits,
                        );
                        hits
                    }));
                }
                for h in handles {
                    results.push(h.join().expect("search shard panicked"));
                }
            });
            for mut r in results {
                block_hits.append(&mut r);
            }
        }
        checkpoint.found.append(&mut block_hits);
        checkpoint.cursor = block_end;
        if let Some(cb) = on_checkpoint.as_deref_mut() {
            cb(&checkpoint);
        }
    }

    let hits = checkpoint
        .found
        .iter()
        .map(|t| UPoly::parse(*field, t).expect("checkpointed polynomial text is canonical"))
        .collect();
    Ok(SearchOutcome {
        hits,
        complete: checkpoint.cursor >= size,
        checkpoint,
    })
}

/// Scan a contiguous cursor range, appending hit texts in cursor order.
#[allow(clippy::too_many_arguments)]
fn scan_range(
    field: &BinaryField,
    ops: &FieldOps,
    constraint: SearchConstraint,
    exps: &[u32],
    pow_tables: &[Vec<u64>],
    from: u64,
    to: u64,
    hits: &mut Vec<String>,
) {
    let mut tester = OpolyTester::new(field);
    let q = field.q();
    if constraint == SearchConstraint::Monomial {
        for cur in from..to {
            let k = cur + 2;
            let values: Vec<u64> = (0..q).map(|x| field.pow_bits(x, k)).collect();
            if tester.verdict_of_table(&values).is_opoly {
                hits.push(UPoly::monomial(*field, k as usize).to_string());
            }
        }
        return;
    }
    let d = exps.len();
    if d == 0 {
        return;
    }
    // digits[0] is the most significant (first exponent), base q
    let mut digits = vec![0u64; d];
    let mut rem = from;
    for i in (0..d).rev() {
        digits[i] = rem % q;
        rem /= q;
    }
    debug_assert_eq!(rem, 0);
    let mut coeff_sum: u64 = digits.iter().fold(0, |acc, &v| acc ^ v);
    let mut values = vec![0u64; q as usize];
    for cur in from..to {
        // f(1) = XOR of coefficients must be 1; f(0) = 0 holds by
        // construction since every searched exponent is positive.
        if coeff_sum == 1 {
            for (x, slot) in values.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (i, table) in pow_tables.iter().enumerate() {
                    acc ^= ops.mul(digits[i], table[x]);
                }
                *slot = acc;
            }
            if tester.verdict_of_table(&values).is_opoly {
                let mut coeffs = vec![0u64; *exps.last().unwrap() as usize + 1];
                for (i, &e) in exps.iter().enumerate() {
                    coeffs[e as usize] ^= digits[i];
                }
                hits.push(UPoly::from_bits_unchecked(*field, coeffs).to_string());
            }
        }
        if cur + 1 == to {
            break;
        }
        // odometer increment, keeping the coefficient XOR up to date
        let mut i = d - 1;
        loop {
            let old = digits[i];
            if old + 1 == q {
                digits[i] = 0;
                coeff_sum ^= old;
                if i == 0 {
                    break;
                }
                i -= 1;
            } else {
                digits[i] = old + 1;
                coeff_sum ^= old ^ (old + 1);
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opoly::{are_equivalent, is_opoly_det};

    fn f(h: u32) -> BinaryField {
        BinaryField::new(h).unwrap()
    }

    #[test]
    fn exponent_sets() {
        assert_eq!(search_exponents(SearchConstraint::All, 6), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(
            search_exponents(SearchConstraint::EvenTermsOnly, 6),
            vec![2, 4, 6]
        );
        assert_eq!(
            search_exponents(SearchConstraint::Linearized, 8),
            vec![2, 4, 8]
        );
        assert_eq!(search_exponents(SearchConstraint::Linearized, 7), vec![2, 4]);
    }

    #[test]
    fn space_sizes_and_cap() {
        let f8 = f(3);
        assert_eq!(
            search_space_size(&f8, 6, SearchConstraint::All),
            8u128.pow(6)
        );
        assert_eq!(search_space_size(&f8, 6, SearchConstraint::Monomial), 5);
        // 8 exponents over F_{2^24}: 2^192 tuples, far over the cap
        let f24 = f(24);
        let err = search_opolys(
            &f24,
            8,
            SearchConstraint::All,
            None,
            &SearchOptions::default(),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, OpolyError::SearchSpaceTooLarge { size } if size > MAX_SEARCH_SPACE));
    }

    #[test]
    fn f8_search_finds_only_even_term_hits() {
        let f8 = f(3);
        let out = search_opolys(
            &f8,
            6,
            SearchConstraint::All,
            None,
            &SearchOptions::default(),
            None,
        )
        .unwrap();
        assert!(out.complete);
        assert!(!out.hits.is_empty());
        for hit in &out.hits {
            assert!(is_opoly_det(hit).is_opoly, "search hit {hit} fails the oracle");
            for e in (1..=hit.degree().unwrap()).step_by(2) {
                assert_eq!(hit.coeff_bits(e), 0, "odd-exponent coefficient in {hit}");
            }
        }
    }

    #[test]
    fn monomial_search_matches_spectrum() {
        let f16 = f(4);
        let out = search_opolys(
            &f16,
            14,
            SearchConstraint::Monomial,
            None,
            &SearchOptions::default(),
            None,
        )
        .unwrap();
        let degrees: Vec<u64> = out.hits.iter().map(|h| h.degree().unwrap() as u64).collect();
        let spectrum: Vec<u64> = crate::opoly::monomial_spectrum(&f16)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(degrees, spectrum);
    }

    #[test]
    fn linearized_search_over_f16_finds_exactly_the_coprime_monomials() {
        let f16 = f(4);
        let out = search_opolys(
            &f16,
            8,
            SearchConstraint::Linearized,
            None,
            &SearchOptions::default(),
            None,
        )
        .unwrap();
        // hits arrive in cursor order: the tuple (a_2,a_4,a_8) = (0,0,1)
        // precedes (1,0,0)
        let texts: Vec<String> = out.hits.iter().map(|h| h.to_string()).collect();
        assert_eq!(texts, vec!["1*x^8".to_string(), "1*x^2".to_string()]);
    }

    #[test]
    fn worker_counts_do_not_change_output() {
        let f16 = f(4);
        let mut outputs = Vec::new();
        for workers in [1usize, 2, 4, 7] {
            let out = search_opolys(
                &f16,
                6,
                SearchConstraint::EvenTermsOnly,
                None,
                &SearchOptions {
                    workers,
                    limit: None,
                },
                None,
            )
            .unwrap();
            outputs.push(out.checkpoint.found.clone());
        }
        for w in outputs.windows(2) {
            assert_eq!(w[0], w[1]);
        }
    }

    #[test]
    fn interrupted_and_resumed_equals_uninterrupted() {
        // F_8, all exponents, degree 6: 8^6 = 262144 candidates = 4 blocks
        let f8 = f(3);
        let full = search_opolys(
            &f8,
            6,
            SearchConstraint::All,
            None,
            &SearchOptions::default(),
            None,
        )
        .unwrap();
        assert!(full.complete);

        let partial = search_opolys(
            &f8,
            6,
            SearchConstraint::All,
            None,
            &SearchOptions {
                workers: 3,
                limit: Some(1),
            },
            None,
        )
        .unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.checkpoint.cursor, CHECKPOINT_STRIDE);

        let resumed = search_opolys(
            &f8,
            6,
            SearchConstraint::All,
            Some(&partial.checkpoint),
            &SearchOptions {
                workers: 2,
                limit: None,
            },
            None,
        )
        .unwrap();
        assert!(resumed.complete);
        assert_eq!(resumed.checkpoint.found, full.checkpoint.found);
        assert_eq!(resumed.checkpoint.cursor, full.checkpoint.cursor);
    }

    #[test]
    fn degree6_hits_over_f32_are_equivalent_to_x6() {
        let f32f = f(5);
        let out = search_opolys(
            &f32f,
            6,
            SearchConstraint::EvenTermsOnly,
            None,
            &SearchOptions::default(),
            None,
        )
        .unwrap();
        let six = UPoly::monomial(f32f, 6);
        let mut degree6 = 0;
        for hit in &out.hits {
            if hit.degree() == Some(6) {
                degree6 += 1;
                assert!(are_equivalent(hit, &six).is_some(), "{hit}");
            }
        }
        assert!(degree6 > 0, "the x^6 class is nonempty over F_32");
    }
}
