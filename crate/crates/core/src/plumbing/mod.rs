//! Seifert matrices of plumbed fiber surfaces and their Alexander polynomials.

mod det;
mod seifert;
mod tree;

pub use det::{bareiss_det, poly_matrix_det, poly_matrix_det_with, PolyMatrix};
pub use seifert::{iterate_plumb_seifert, monodromy_char_poly, seifert_from_tree, SeifertMatrix};
pub use tree::PlumbingTree;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::sign::Sign;

/// Normalized Alexander polynomial together with the sign `s(S)` used to
/// produce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexanderResult {
    #[serde(serialize_with = "crate::io::serialize_coeffs", rename = "coeffs")]
    pub delta: IntPoly,
    pub sign_s: Sign,
    pub raw_degree: usize,
}

/// `s(S) * det(t S - S^T)`, normalized so that `delta(0) != 0` and the
/// leading coefficient is positive.
pub fn alexander(s: &SeifertMatrix) -> Result<AlexanderResult> {
    let raw = poly_matrix_det(&s.alexander_pencil())?;
    let raw_degree = raw.degree().ok_or(Error::Degenerate)?;
    let sign_s = if raw.leading().is_some_and(Signed::is_negative) {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let (delta, _) = raw.scale(&sign_s.to_big()).bar_reduce()?;
    Ok(AlexanderResult { delta, sign_s, raw_degree })
}
