//! The degreewise correspondence between filtration quotients and the
//! graded Lie algebra: coordinates map to basis elements, group
//! commutators map to Lie brackets, and the degree-one homology
//! dimensions behave as the closed form predicts.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{lie_h1_degree, rank_mod_p, sl_basis, sl_bracket, varphi_r};
use crate::quotient::{phi_iso, QuotientCtx, QuotientElem};
use crate::ring::{Modulus, RingElem, RingSpec};
use crate::verify::random_class;
use crate::verify::report::{ReportBuilder, VerifyReport};

/// Verify the graded correspondence up to degree `maxdeg`.
pub fn verify_thm24(
    spec: &Arc<RingSpec>,
    n: usize,
    p: i64,
    maxdeg: u32,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    if maxdeg < 1 {
        return Err(Error::PreconditionViolated(
            "the degree bound must be at least 1".into(),
        ));
    }
    let mut builder = ReportBuilder::new("thm24")
        .param("ring", spec.name())
        .param("n", n)
        .param("p", p)
        .param("maxdeg", maxdeg)
        .param("samples", samples)
        .seed(seed);

    let rank = spec.rank();
    let dim = (n * n - 1) * rank;
    let basis = sl_basis(spec, p, n)?;

    // (a) in each degree the coordinate classes map to the standard basis
    // of the traceless matrices, and the images have full rank.
    for d in 1..=maxdeg {
        let ctx = QuotientCtx::new(n, p, d, 1, spec)?;
        let positions = ctx.positions();
        let mut image_rows = Vec::new();
        let mut idx = 0usize;
        for slot in 0..positions.len() {
            for k in 1..=rank {
                let mut coeffs = vec![RingElem::zero(spec, Modulus::Mod(p)); positions.len()];
                coeffs[slot] = RingElem::basis(spec, Modulus::Mod(p), k - 1)?;
                let class = phi_iso(&ctx, &coeffs)?;
                let image = varphi_r(&class)?;
                builder.eq_case(
                    format!("a.deg{d}.basis{idx:02}"),
                    format!(
                        "Thm 2.4: the degree-{d} coordinate class maps to the \
                         matching standard basis element of sl_n"
                    ),
                    format!("{}", basis[idx].matrix()),
                    format!("{}", image.matrix()),
                );
                image_rows.push(image.coords());
                idx += 1;
            }
        }
        let image_rank = rank_mod_p(&image_rows, p)?;
        builder.case(
            format!("a.deg{d}.rank"),
            format!("Thm 2.4: the degree-{d} correspondence has full rank over F_p"),
            format!("rank {dim}"),
            format!("rank {image_rank}"),
            image_rank == dim,
        );
    }

    // (b) group commutators map to Lie brackets on random homogeneous
    // pairs: the commutator of degree-a and degree-b classes, read in
    // degree a+b, equals the bracket of their degree images.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for a in 1..=maxdeg {
        for b in 1..=maxdeg {
            let ctx_a = QuotientCtx::new(n, p, a, 1, spec)?;
            let ctx_b = QuotientCtx::new(n, p, b, 1, spec)?;
            let ctx_ab = QuotientCtx::new(n, p, a + b, 1, spec)?;
            let deep = Modulus::prime_power(p, a + b + 1)?;
            for t in 0..samples {
                let x = random_class(&ctx_a, &mut rng)?;
                let y = random_class(&ctx_b, &mut rng)?;
                let comm = x
                    .matrix()
                    .lift(deep)?
                    .commutator(&y.matrix().lift(deep)?, p)?;
                let actual = varphi_r(&QuotientElem::from_matrix(&ctx_ab, comm)?)?;
                let expected = sl_bracket(&varphi_r(&x)?, &varphi_r(&y)?)?;
                builder.eq_case(
                    format!("b.a{a}b{b}.t{t:03}"),
                    format!(
                        "Thm 2.4: commutators of degree-({a}, {b}) classes map to \
                         the degree-{} Lie bracket",
                        a + b
                    ),
                    format!("{}", expected.matrix()),
                    format!("{}", actual.matrix()),
                );
            }
        }
    }

    // (c) homology dimensions: degree one is the full space; higher
    // degrees share a single dimension.
    let h1 = lie_h1_degree(spec, n, p, 1)?;
    builder.case(
        "c.h1.deg1",
        "Cor 2.5: in degree one the abelianization is all of sl_n(R/p)",
        format!("dimension {dim}"),
        format!("dimension {h1}"),
        h1 == dim,
    );
    let top = maxdeg.max(3);
    let higher: Vec<usize> = (2..=top)
        .map(|d| lie_h1_degree(spec, n, p, d))
        .collect::<Result<_>>()?;
    let stable = higher.iter().all(|&h| h == higher[0]);
    builder.case(
        "c.h1.higher",
        format!(
            "Cor 2.5: degrees 2..{top} contribute one fixed homology dimension \
             (that of sl_n(R/p) itself)"
        ),
        format!("all equal to {}", higher[0]),
        format!("{higher:?}"),
        stable,
    );
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_suite_passes() {
        let z = RingSpec::integers();
        let report = verify_thm24(&z, 2, 3, 2, 10, 42).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
        // (a) 3+1 cases in each of two degrees, (b) 4 combos x 10,
        // (c) two homology cases.
        assert_eq!(report.summary.total, 8 + 40 + 2);
    }

    #[test]
    fn gaussian_suite_passes() {
        let zi = RingSpec::gaussian_integers();
        let report = verify_thm24(&zi, 2, 5, 2, 5, 7).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
    }

    #[test]
    fn n3_suite_passes_at_p2() {
        let z = RingSpec::integers();
        let report = verify_thm24(&z, 3, 2, 2, 5, 1).unwrap();
        assert!(report.all_pass(), "{}", report.to_text());
    }

    #[test]
    fn determinism() {
        let z = RingSpec::integers();
        let a = verify_thm24(&z, 2, 3, 2, 6, 9).unwrap();
        let b = verify_thm24(&z, 2, 3, 2, 6, 9).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }
}
