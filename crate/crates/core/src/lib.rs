//! Exact computation with o-polynomials and hyperovals over binary fields.
//!
//! The crate is organised around five building blocks:
//!
//! * [`gf2m`] — arithmetic in `F_{2^h}` for `1 <= h <= 24`, with element
//!   enumeration, Frobenius and subfield embeddings;
//! * [`upoly`] — dense univariate polynomials over a binary field
//!   (evaluation, shift composition, reduction modulo `x^q - x`,
//!   permutation testing);
//! * [`opoly`] — the o-polynomial predicate (a cubic determinant oracle and
//!   a quadratic slope filter), the shift equivalence relation, hyperoval
//!   construction and verification, and checkpointed coefficient searches;
//! * [`surface`] — sparse multivariate polynomials housing the surfaces
//!   `Phi_f` and `phi_j`, their identities and factorisations into linear
//!   forms, off-diagonal point counts, binomial parity, and the exact
//!   point-count bound evaluator;
//! * [`factor`] — univariate and bivariate factorisation over `F_{2^m}`
//!   and the absolute-irreducibility decision built on top of it.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod factor;
pub mod gf2m;
pub mod opoly;
mod sparse;
pub mod surface;
mod text;
pub mod upoly;

pub use factor::{AbsIrredReport, FactorError, Factorization};
pub use gf2m::{BinaryField, Embedding, FieldElement, Gf2mError};
pub use opoly::{
    FailedCondition, HyperovalPointSet, OPolyVerdict, OpolyError, ProjPoint, SearchCheckpoint,
    SearchConstraint, SearchOutcome,
};
pub use surface::{BiPoly, QuadPoly, SurfaceError, TriPoly};
pub use upoly::{UPoly, UPolyError};
