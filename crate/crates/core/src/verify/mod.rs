//! Verification suites.
//!
//! Each suite recomputes both sides of a family of claims independently —
//! the predicted side from closed formulas or printed statements, the
//! authoritative side from exact group or ring arithmetic — and reports
//! one case per instance.  Suites never consult the structure under test
//! for its own ground truth.

mod bracket_table;
mod centrality;
mod d2;
mod det_lemma;
mod frobenius;
mod h1_group;
pub mod report;
mod sl2z;
mod thm24;
mod witnesses;

pub use bracket_table::{evaluate_table_word, verify_bracket_table};
pub use centrality::verify_centrality;
pub use d2::compute_d2;
pub use det_lemma::verify_det_lemma;
pub use frobenius::verify_frobenius;
pub use h1_group::verify_h1_group;
pub use report::{ReportBuilder, VerifyCase, VerifyReport, VerifySummary};
pub use sl2z::verify_sl2z_relations;
pub use thm24::verify_thm24;
pub use witnesses::{witness_zi, witness_zt};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::quotient::{phi_iso, QuotientCtx, QuotientElem};
use crate::ring::{Modulus, RingElem};

/// A uniformly random class of a depth-one quotient, drawn coordinatewise
/// through the degree-one parametrization.
pub(crate) fn random_class(ctx: &QuotientCtx, rng: &mut ChaCha8Rng) -> Result<QuotientElem> {
    let rank = ctx.spec().rank();
    let slots = ctx.n() * ctx.n() - 1;
    let mut coeffs = Vec::with_capacity(slots);
    for _ in 0..slots {
        let v: Vec<i64> = (0..rank).map(|_| rng.random_range(0..ctx.p())).collect();
        coeffs.push(RingElem::from_coeffs(ctx.spec(), Modulus::Mod(ctx.p()), v)?);
    }
    phi_iso(ctx, &coeffs)
}
