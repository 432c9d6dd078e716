//! Group-level abelianization evidence for n >= 3: commutators of level-1
//! congruence elements land in level 2, and every generator class of
//! G(p^2)/G(p^3) is realized by a single commutator of level-1 generators.
//!
//! This is deliberately labeled partial: the suite verifies the inclusion
//! [G(p), G(p)] <= G(p^2) on random elements and the surjectivity of the
//! commutator map onto level-2 generator classes; the remaining group
//! theory behind the abelianization statement is outside desk scale.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::MatR;
use crate::quotient::{gamma_member, generator_at_level, is_prime, QuotientCtx};
use crate::ring::{Modulus, RingElem, RingSpec};
use crate::verify::report::{ReportBuilder, VerifyReport};

/// A random product of level-1 elementary matrices together with its
/// exact inverse (both integral, determinant one).
fn random_congruence_element(
    spec: &Arc<RingSpec>,
    n: usize,
    p: i64,
    factors: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(MatR, MatR)> {
    let id = MatR::identity(spec, Modulus::Integers, n)?;
    let mut fwd = id.clone();
    let mut inv = id.clone();
    for _ in 0..factors {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let coeffs: Vec<i64> = (0..spec.rank())
            .map(|_| p * rng.random_range(-2..=2))
            .collect();
        let c = RingElem::from_coeffs(spec, Modulus::Integers, coeffs)?;
        let elem = id.with_entry(i, j, c.clone())?;
        let elem_inv = id.with_entry(i, j, c.neg()?)?;
        fwd = fwd.mul(&elem)?;
        inv = elem_inv.mul(&inv)?;
    }
    Ok((fwd, inv))
}

/// Abelianization evidence at (n, p): inclusion plus realization.
pub fn verify_h1_group(
    spec: &Arc<RingSpec>,
    n: usize,
    p: i64,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if n < 3 {
        return Err(Error::PreconditionViolated(format!(
            "the abelianization statement needs n >= 3 (Cor 3.3), got n = {n}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::PreconditionViolated(format!("p = {p} is not prime")));
    }
    let mut builder = ReportBuilder::new("h1-group")
        .param("ring", spec.name())
        .param("n", n)
        .param("p", p)
        .param("samples", samples)
        .seed(seed);
    builder.note(
        "partial verification: the inclusion of the commutator subgroup in \
         G(p^2) and the realization of every level-2 generator class as a \
         single commutator are machine-checked; the reverse inclusion rests \
         on group theory beyond desk scale",
    );

    // (a) [X, Y] lands in G(p^2) for random level-1 elements, by exact
    // integer arithmetic.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..samples {
        let (x, x_inv) = random_congruence_element(spec, n, p, 3, &mut rng)?;
        let (y, y_inv) = random_congruence_element(spec, n, p, 3, &mut rng)?;
        let comm = x_inv.mul(&y_inv)?.mul(&x)?.mul(&y)?;
        let member = gamma_member(&comm, p, 2)?;
        builder.case(
            format!("a.incl.{t:03}"),
            "Lemma 4.3: commutators of level-1 congruence elements lie in G(p^2)",
            "commutator in G(p^2)",
            if member {
                "commutator in G(p^2)".to_string()
            } else {
                format!("commutator {comm} escapes G(p^2)")
            },
            member,
        );
    }

    // (b) every generator class of G(p^2)/G(p^3) is a commutator of
    // level-1 generators, computed exactly mod p^3.
    let work = QuotientCtx::new(n, p, 1, 2, spec)?;
    let shifted = work.with_levels(2, 1)?;
    let unit = spec.unit_index() + 1;
    for (i, j) in work.positions() {
        for k in 1..=spec.rank() {
            let (a, b) = if i == j {
                // [1 + p v_k e_in, 1 + p e_ni] = 1 + p^2 v_k (e_ii - e_nn) ...
                (
                    generator_at_level(&work, i, n, k, 1)?,
                    generator_at_level(&work, n, i, unit, 1)?,
                )
            } else {
                // ... and via an index m distinct from both i and j,
                // [1 + p v_k e_im, 1 + p e_mj] = 1 + p^2 v_k e_ij.
                let m = (1..=n).find(|&m| m != i && m != j).expect("n >= 3");
                (
                    generator_at_level(&work, i, m, k, 1)?,
                    generator_at_level(&work, m, j, unit, 1)?,
                )
            };
            let comm = a.commutator(&b)?.reinterpret(&shifted)?;
            let target = generator_at_level(&shifted, i, j, k, 2)?;
            builder.eq_case(
                format!("b.real.i{i}j{j}q{k:02}"),
                format!(
                    "Cor 3.3: the generator A[{i},{j};k={k};r=2] of G(p^2)/G(p^3) \
                     is a commutator of level-1 generators"
                ),
                format!("{}", target.matrix()),
                format!("{}", comm.matrix()),
            );
        }
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_suite_passes_over_z() {
        let z = RingSpec::integers();
        for p in [2, 3, 5] {
            let report = verify_h1_group(&z, 3, p, 10, 42).unwrap();
            assert!(report.all_pass(), "p={p}\n{}", report.to_text());
            // 10 inclusion cases + 8 positions.
            assert_eq!(report.summary.total, 18);
        }
    }

    #[test]
    fn n4_and_gaussian_cases_pass() {
        let z = RingSpec::integers();
        let report = verify_h1_group(&z, 4, 3, 5, 1).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        let zi = RingSpec::gaussian_integers();
        let report = verify_h1_group(&zi, 3, 3, 5, 1).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        assert_eq!(report.summary.total, 5 + 16);
    }

    #[test]
    fn rejects_n2() {
        let z = RingSpec::integers();
        assert!(matches!(
            verify_h1_group(&z, 2, 3, 5, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
