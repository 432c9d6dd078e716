//! The degree-two differential on the page E_2 of the filtration:
//! classes x, y in G(p^r)/G(p^(r+s)) pair to the class of their group
//! commutator in G(p^(r+s-1))/G(p^(r+s)).

use crate::error::{Error, Result};
use crate::quotient::QuotientElem;

/// d2(x, y): the commutator class one level below the top.
///
/// Requires r >= s - 1 so that the commutator, which lands in G(p^2r),
/// is guaranteed to be trivial past level r + s - 1 only when it should
/// be (Thm 7.2's hypothesis).
pub fn compute_d2(x: &QuotientElem, y: &QuotientElem) -> Result<QuotientElem> {
    let ctx = x.ctx();
    if ctx.r() + 1 < ctx.s() {
        return Err(Error::PreconditionViolated(format!(
            "the degree-two differential needs r >= s - 1 (Thm 7.2), got r = {}, s = {}",
            ctx.r(),
            ctx.s()
        )));
    }
    let comm = x.commutator(y)?;
    let flat = ctx.with_levels(ctx.r() + ctx.s() - 1, 1)?;
    comm.reinterpret(&flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::{generator, generator_class_lift, QuotientCtx};
    use crate::ring::RingSpec;

    #[test]
    fn worked_example_at_p3() {
        // x = 1 + 3 e12, y = 1 + 3 e21 in G(3)/G(27); their commutator is
        // diag(10, 19) = 1 + 9(e11 - e22) mod 27, i.e. the diagonal
        // generator one level up.
        let z = RingSpec::integers();
        let ctx = QuotientCtx::new(2, 3, 1, 2, &z).unwrap();
        let x = generator(&ctx, 1, 2, 1).unwrap();
        let y = generator(&ctx, 2, 1, 1).unwrap();
        let d = compute_d2(&x, &y).unwrap();
        let shifted = ctx.with_levels(2, 1).unwrap();
        assert_eq!(d, generator(&shifted, 1, 1, 1).unwrap());
    }

    #[test]
    fn commuting_pair_maps_to_identity() {
        // Over Z[i] the two basis coefficients at the same position give
        // commuting generators.
        let zi = RingSpec::gaussian_integers();
        let ctx = QuotientCtx::new(2, 3, 1, 2, &zi).unwrap();
        let x = generator(&ctx, 1, 2, 1).unwrap();
        let y = generator(&ctx, 1, 2, 2).unwrap();
        assert!(compute_d2(&x, &y).unwrap().is_identity());
    }

    #[test]
    fn diagonal_lift_pairs_work_too() {
        // [diag(u, u^{-1}), 1 + 3 e12] = 1 + 18 e12 mod 27 lands at level 2.
        let z = RingSpec::integers();
        let ctx = QuotientCtx::new(2, 3, 1, 2, &z).unwrap();
        let x = generator_class_lift(&ctx, 1, 1, 1, 1).unwrap();
        let y = generator(&ctx, 1, 2, 1).unwrap();
        let d = compute_d2(&x, &y).unwrap();
        let m = d.matrix();
        assert_eq!(m.entry(0, 1).coeffs(), &[18]);
    }

    #[test]
    fn rejects_shallow_r() {
        let z = RingSpec::integers();
        let ctx = QuotientCtx::new(2, 3, 1, 3, &z).unwrap();
        let x = generator(&ctx, 1, 2, 1).unwrap();
        let y = generator(&ctx, 2, 1, 1).unwrap();
        assert!(matches!(
            compute_d2(&x, &y),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
