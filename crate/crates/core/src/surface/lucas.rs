//! Binomial-coefficient parity via the base-2 digit criterion.
//!
//! `C(n,m)` is odd exactly when every base-2 digit of `m` is at most the
//! corresponding digit of `n`, i.e. when `m AND n == m`.

use super::SurfaceError;

/// True when `C(n,m)` is even; rejects `m > n`.
pub fn binom_is_even(n: u64, m: u64) -> Result<bool, SurfaceError> {
    if m > n {
        return Err(SurfaceError::BinomialRange { n, m });
    }
    Ok((m & n) != m)
}

/// True when `C(n,m)` is even for every `m` in `1..n`. Vacuously true for
/// `n <= 1`; for `n >= 2` this holds exactly when `n` is a power of two.
pub fn inner_binoms_all_even(n: u64) -> bool {
    (1..n).all(|m| (m & n) != m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_small_values() {
        // C(6,3) = 20 even; C(6,2) = 15 odd
        assert!(binom_is_even(6, 3).unwrap());
        assert!(!binom_is_even(6, 2).unwrap());
        assert!(matches!(
            binom_is_even(3, 5),
            Err(SurfaceError::BinomialRange { n: 3, m: 5 })
        ));
    }

    #[test]
    fn matches_pascal_triangle_mod_2() {
        // independent oracle: Pascal's rule with XOR
        let n_max = 64usize;
        let mut row = vec![1u8];
        for n in 0..=n_max {
            for (m, &bit) in row.iter().enumerate() {
                assert_eq!(
                    binom_is_even(n as u64, m as u64).unwrap(),
                    bit == 0,
                    "n={n} m={m}"
                );
            }
            let mut next = vec![1u8; n + 2];
            for m in 1..=n {
                next[m] = row[m - 1] ^ row[m];
            }
            row = next;
        }
    }

    #[test]
    fn inner_evenness_characterises_powers_of_two() {
        for n in (2..=512u64).step_by(2) {
            assert_eq!(inner_binoms_all_even(n), n.is_power_of_two(), "n={n}");
        }
    }
}
