//! Factorisation over `F_{2^m}` and the absolute-irreducibility decision.
//!
//! A polynomial irreducible over `F_{2^m}` splits over the algebraic
//! closure into `c` conjugate absolutely irreducible factors with `c`
//! dividing its total degree `D`, and it splits over `F_{2^(m r)}` exactly
//! when the prime `r` divides `c`. Checking irreducibility over
//! `F_{2^(m r)}` for every prime `r | D` therefore decides absolute
//! irreducibility with exact arithmetic only.

use thiserror::Error;

use crate::gf2m::{BinaryField, Embedding, FieldElement, Gf2mError};
use crate::surface::{BiPoly, TriPoly};
use crate::upoly::UPoly;

mod arith;
mod bivariate;
mod univariate;

pub use bivariate::{factor_bivariate, MAX_BIVARIATE_DEGREE};
pub use univariate::factor_univariate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("total degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: u32, max: u32 },
    #[error("input is reducible; absolute irreducibility is defined for irreducible polynomials")]
    ReducibleInput,
    #[error("deciding absolute irreducibility needs F_{{2^{needed_h}}}, beyond the supported field sizes")]
    ExtensionTooLarge { needed_h: u32 },
    #[error("operation requires coefficients over F_2, got F_{{2^{h}}}")]
    BaseFieldNotF2 { h: u32 },
    #[error("input is not homogeneous")]
    NonHomogeneous,
    #[error("input is divisible by z; the z = 1 dehomogenisation would drop degree")]
    DivisibleByZ,
    #[error("subset recombination over {pieces} univariate pieces exceeded its budget")]
    RecombinationBudget { pieces: usize },
    #[error(transparent)]
    Field(#[from] Gf2mError),
}

/// A complete factorisation: `unit * prod factors[i]^mult[i]` equals the
/// input exactly; listed factors are irreducible over the stated field and
/// canonically normalized and ordered.
#[derive(Debug, Clone)]
pub struct Factorization<P> {
    pub unit: FieldElement,
    pub factors: Vec<(P, u32)>,
}

impl Factorization<UPoly> {
    pub fn product(&self) -> UPoly {
        let field = self.unit.field();
        let mut acc = UPoly::one(field).scale(self.unit);
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * p;
            }
        }
        acc
    }
}

impl Factorization<BiPoly> {
    pub fn product(&self) -> BiPoly {
        let field = self.unit.field();
        let mut acc = BiPoly::constant(field, self.unit.bits());
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        acc
    }
}

/// Outcome of the check for an absolutely irreducible factor over the
/// base field.
#[derive(Debug, Clone)]
pub struct AbsIrredReport {
    pub has_abs_irred_factor_over_base: bool,
    /// First witness in canonical factor order, re-homogenised.
    pub witness_factor: Option<TriPoly>,
    /// When no witness exists: an extension degree at which some
    /// base-irreducible factor decomposed.
    pub splitting_extension: Option<u32>,
}

fn primes_dividing(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splitting behaviour of a polynomial already known to be irreducible
/// over its coefficient field: `Ok(None)` means absolutely irreducible,
/// `Ok(Some(h))` names an extension `F_{2^h}` where it decomposes.
fn splitting_extension_of_irreducible(
    g: &BiPoly,
    seed: u64,
) -> Result<Option<u32>, FactorError> {
    let degree = g.total_degree().unwrap_or(0);
    if degree <= 1 {
        return Ok(None);
    }
    let base = g.field();
    for r in primes_dividing(degree) {
        let target_h = base.h() * r;
        if target_h > crate::gf2m::MAX_H {
            return Err(FactorError::ExtensionTooLarge { needed_h: target_h });
        }
        let big = BinaryField::new(target_h)?;
        let emb = Embedding::new(&base, &big)?;
        let lifted = g.lift(&emb);
        let fac = factor_bivariate(&lifted, seed)?;
        if fac.factors.len() > 1 || fac.factors.iter().any(|(_, m)| *m > 1) {
            return Ok(Some(target_h));
        }
    }
    Ok(None)
}

/// True when a polynomial irreducible over `F_{2^m}` stays irreducible
/// over the algebraic closure, decided by factoring over `F_{2^(m r)}`
/// for every prime `r` dividing the total degree.
///
/// Rejects reducible input (verified by a factorisation over the base).
pub fn is_absolutely_irreducible(g: &BiPoly, seed: u64) -> Result<bool, FactorError> {
    if g.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let base_fac = factor_bivariate(g, seed)?;
    let proper: Vec<_> = base_fac.factors.iter().filter(|(_, m)| *m >= 1).collect();
    if proper.len() != 1 || proper[0].1 != 1 || g.total_degree().unwrap_or(0) == 0 {
        return Err(FactorError::ReducibleInput);
    }
    Ok(splitting_extension_of_irreducible(g, seed)?.is_none())
}

/// Dehomogenise a homogeneous trivariate polynomial over `F_2` at
/// `z := 1`, factor over `F_2`, and report the first absolutely
/// irreducible factor (re-homogenised), if any.
pub fn has_abs_irred_factor_over_f2(
    p: &TriPoly,
    seed: u64,
) -> Result<AbsIrredReport, FactorError> {
    if p.field().h() != 1 {
        return Err(FactorError::BaseFieldNotF2 { h: p.field().h() });
    }
    if p.is_zero() {
        return Ok(AbsIrredReport {
            has_abs_irred_factor_over_base: false,
            witness_factor: None,
            splitting_extension: None,
        });
    }
    let degree = p.homogeneous_degree().ok_or(FactorError::NonHomogeneous)?;
    if degree > MAX_BIVARIATE_DEGREE {
        return Err(FactorError::DegreeTooLarge {
            degree,
            max: MAX_BIVARIATE_DEGREE,
        });
    }
    if p.z_valuation().unwrap_or(0) > 0 {
        return Err(FactorError::DivisibleByZ);
    }
    let bi = p.dehomogenize_z();
    let fac = factor_bivariate(&bi, seed)?;
    let mut first_split: Option<u32> = None;
    for (factor, _) in &fac.factors {
        match splitting_extension_of_irreducible(factor, seed)? {
            None => {
                return Ok(AbsIrredReport {
                    has_abs_irred_factor_over_base: true,
                    witness_factor: Some(factor.homogenize_z()),
                    splitting_extension: None,
                });
            }
            Some(h) => {
                if first_split.is_none() {
                    first_split = Some(h);
                }
            }
        }
    }
    Ok(AbsIrredReport {
        has_abs_irred_factor_over_base: false,
        witness_factor: None,
        splitting_extension: first_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::phi_j;

    fn f(h: u32) -> BinaryField {
        BinaryField::new(h).unwrap()
    }

    #[test]
    fn linear_polynomials_are_absolutely_irreducible() {
        let f2 = f(1);
        let xy = BiPoly::parse(f2, "x^1+y^1").unwrap();
        assert!(is_absolutely_irreducible(&xy, 0).unwrap());
    }

    #[test]
    fn phi4_slice_splits_over_f4() {
        let p = phi_j(4).dehomogenize_z();
        assert!(!is_absolutely_irreducible(&p, 0).unwrap());
    }

    #[test]
    fn reducible_input_is_rejected() {
        let f2 = f(1);
        let a = BiPoly::parse(f2, "x^1+y^1").unwrap();
        let b = BiPoly::parse(f2, "x^1+1").unwrap();
        assert!(matches!(
            is_absolutely_irreducible(&a.mul(&b), 0),
            Err(FactorError::ReducibleInput)
        ));
    }

    #[test]
    fn phi10_has_an_f2_rational_absolutely_irreducible_factor() {
        let report = has_abs_irred_factor_over_f2(&phi_j(10), 0).unwrap();
        assert!(report.has_abs_irred_factor_over_base);
        let witness = report.witness_factor.expect("witness present");
        // the witness is homogeneous and divides phi_10
        assert!(witness.homogeneous_degree().is_some());
        assert!(phi_j(10).exact_div(&witness).is_ok());
    }

    #[test]
    fn two_power_and_six_cases_are_negative() {
        for j in [4u32, 6, 8] {
            let report = has_abs_irred_factor_over_f2(&phi_j(j), 0).unwrap();
            assert!(
                !report.has_abs_irred_factor_over_base,
                "phi_{j} must have no F_2-rational absolutely irreducible factor"
            );
            if phi_j(j).homogeneous_degree().unwrap_or(0) > 0 {
                assert!(report.splitting_extension.is_some());
            }
        }
        // phi_2 = 1: vacuously no factor
        let r = has_abs_irred_factor_over_f2(&phi_j(2), 0).unwrap();
        assert!(!r.has_abs_irred_factor_over_base);
        assert!(r.splitting_extension.is_none());
    }

    #[test]
    fn rejects_bad_inputs() {
        let f2 = f(1);
        let f4 = f(2);
        assert!(matches!(
            has_abs_irred_factor_over_f2(&TriPoly::constant(f4, 1), 0),
            Err(FactorError::BaseFieldNotF2 { h: 2 })
        ));
        let nonhom = TriPoly::parse(f2, "x^2+y^1").unwrap();
        assert!(matches!(
            has_abs_irred_factor_over_f2(&nonhom, 0),
            Err(FactorError::NonHomogeneous)
        ));
        let zdiv = TriPoly::parse(f2, "x^1*z^1+y^1*z^1").unwrap();
        assert!(matches!(
            has_abs_irred_factor_over_f2(&zdiv, 0),
            Err(FactorError::DivisibleByZ)
        ));
    }
}
