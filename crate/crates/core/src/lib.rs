//! Exact computation of Galois-point data for quotients of the Hermitian
//! curve `X^q Z + X Z^q = Y^(q+1)` over `GF(q^2)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`ffield`]: the field tower `GF(p) ⊂ GF(q) ⊂ GF(q^2) ⊂ GF(q^(2k))`.
//! - [`projective`]: points and matrices of the projective plane, the curve
//!   and its rational points.
//! - [`groups`]: finite subgroups of `PGL_3`, stored as full element sets.
//! - [`funcfield`]: the function field `k(x, y)`, automorphism pullbacks,
//!   valuations and rationality certificates.
//! - [`criterion`]: divisors and the five-condition tuple checker.
//! - [`construct`]: the plane model `(f : g : 1)` and quotient models.
//! - [`instance`]: the Hermitian tuple `(N1, N2, C_m, G1, G2, P1, P2)`.

pub mod construct;
pub mod criterion;
pub mod ffield;
pub mod funcfield;
pub mod groups;
pub mod instance;
pub mod linalg;
pub mod projective;

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: &str = "gpk/1";
