//! Differential and c-differential spectra of power functions over
//! odd-characteristic finite fields.
//!
//! The brute-force engines work for any exponent; the closed forms cover
//! `x^{(q-3)/2}` with `q ≡ 3 (mod 4)` and are checked against the engines
//! by [`verify::verify_field`].

pub mod c_diff;
pub mod char_sums;
pub mod field;
pub mod power_diff;
pub mod verify;

pub use c_diff::{CDiffError, CDiffRow, CSpectrum};
pub use char_sums::{CharSumError, CharSumReport, CubicSpec, Method};
pub use field::{ChiValue, FieldCtx, FieldElem, FieldError, FieldOptions};
pub use power_diff::{ClassCounts, PowerDiffError, Provenance, SignTriple, Spectrum};
pub use verify::{CheckStatus, VerifyReport};
