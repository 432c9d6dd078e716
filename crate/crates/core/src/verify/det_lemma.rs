//! Determinant congruence det(1 + p^r A) = 1 + p^r tr(A) mod p^(r+1),
//! sampled over a (n, p, r) grid, together with its contrapositive: a
//! class with determinant 1 mod p^(r+1) must have trace 0 mod p.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrix::{det_congruence_check, MatR};
use crate::ring::{checked_pow, Modulus, RingElem, RingSpec};
use crate::verify::report::{ReportBuilder, VerifyReport};

fn random_matrix(
    spec: &Arc<RingSpec>,
    n: usize,
    rng: &mut ChaCha8Rng,
    traceless: bool,
) -> Result<MatR> {
    let rank = spec.rank();
    let mut grid: Vec<Vec<RingElem>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            let coeffs: Vec<i64> = (0..rank).map(|_| rng.random_range(-50..=50)).collect();
            row.push(RingElem::from_coeffs(spec, Modulus::Integers, coeffs)?);
        }
        grid.push(row);
    }
    if traceless {
        let mut sum = RingElem::zero(spec, Modulus::Integers);
        for (i, row) in grid.iter().enumerate().take(n - 1) {
            sum = sum.add(&row[i])?;
        }
        grid[n - 1][n - 1] = sum.neg()?;
    }
    MatR::from_fn(n, |i, j| Ok(grid[i][j].clone()))
}

/// Sample the determinant congruence over the full (n, p, r) grid.
pub fn verify_det_lemma(
    spec: &Arc<RingSpec>,
    ns: &[usize],
    ps: &[i64],
    rs: &[u32],
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let mut builder = ReportBuilder::new("det-lemma")
        .param("ring", spec.name())
        .param("n", format!("{ns:?}"))
        .param("p", format!("{ps:?}"))
        .param("r", format!("{rs:?}"))
        .param("samples", samples)
        .seed(seed);
    builder.note(
        "half of each batch is drawn traceless so the determinant-one side of \
         the contrapositive is exercised",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &n in ns {
        for &p in ps {
            if !crate::quotient::is_prime(p) {
                return Err(crate::error::Error::PreconditionViolated(format!(
                    "p = {p} is not prime"
                )));
            }
            for &r in rs {
                let mut holds = 0usize;
                let mut contra_violations = 0usize;
                let mut unit_det = 0usize;
                for t in 0..samples {
                    let a = random_matrix(spec, n, &mut rng, t % 2 == 0)?;
                    let dc = det_congruence_check(&a, p, r)?;
                    if dc.holds {
                        holds += 1;
                    }
                    let det_is_one = dc.lhs.is_one();
                    let trace_vanishes = a.trace()?.reduce(p, 1)?.is_zero();
                    if det_is_one {
                        unit_det += 1;
                        if !trace_vanishes {
                            contra_violations += 1;
                        }
                    }
                }
                builder.case(
                    format!("n{n}.p{p}.r{r}.bulk"),
                    "Lemma 3.4: det(1 + p^r A) = 1 + p^r tr(A) mod p^(r+1), \
                     and det = 1 forces tr(A) = 0 mod p",
                    format!("{samples}/{samples} congruences, 0 contrapositive violations"),
                    format!(
                        "{holds}/{samples} congruences, {contra_violations} contrapositive \
                         violations ({unit_det} draws with determinant 1 mod p^(r+1))"
                    ),
                    holds == samples && contra_violations == 0,
                );
                // Deterministic instance of the contrapositive: A = e11 has
                // trace 1, so det(1 + p^r e11) = 1 + p^r is not 1 mod p^(r+1).
                let e11 = MatR::matrix_unit(spec, Modulus::Integers, n, 0, 0)?;
                let dc = det_congruence_check(&e11, p, r)?;
                let one = RingElem::one(spec, Modulus::Integers)?;
                let expected_det = one
                    .add(&RingElem::integer(spec, Modulus::Integers, checked_pow(p, r)?)?)?
                    .reduce(p, r + 1)?;
                builder.case(
                    format!("n{n}.p{p}.r{r}.contra"),
                    "Lemma 3.4 contrapositive instance: tr(e11) = 1 != 0 mod p, \
                     so det(1 + p^r e11) != 1 mod p^(r+1)",
                    format!("{expected_det}, not 1"),
                    format!("{}", dc.lhs),
                    dc.lhs == expected_det && !dc.lhs.is_one(),
                );
            }
        }
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_passes_over_integers() {
        let z = RingSpec::integers();
        let report = verify_det_lemma(&z, &[2, 3], &[2, 3], &[1, 2], 40, 42).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        // 8 grid points, 2 cases each.
        assert_eq!(report.summary.total, 16);
    }

    #[test]
    fn grid_passes_over_gaussian_and_truncated_rings() {
        let zi = RingSpec::gaussian_integers();
        let report = verify_det_lemma(&zi, &[2], &[3], &[1], 40, 42).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        let zt = RingSpec::truncated_polynomials(4).unwrap();
        let report = verify_det_lemma(&zt, &[3], &[2], &[2], 30, 7).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
    }

    #[test]
    fn rejects_composite_p() {
        let z = RingSpec::integers();
        assert!(verify_det_lemma(&z, &[2], &[4], &[1], 5, 0).is_err());
    }
}
