//! Generator bracket table versus brute-force commutators.
//!
//! For every pair of generator classes (one at level r, one at level s)
//! the suite computes the commutator of determinant-one representatives
//! in G(p^min(r,s))/G(p^(r+s+1)) — pure group arithmetic — and compares
//! its class in G(p^(r+s))/G(p^(r+s+1)) against the word the sixteen-row
//! table predicts.  The commutator side is authoritative; the table is
//! never used to check itself.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Result;
use crate::lie::{bracket_table, TableWord};
use crate::matrix::MatR;
use crate::quotient::{
    generator_class_lift, generator_direction, GenLabel, QuotientCtx, QuotientElem,
};
use crate::ring::{checked_pow, RingElem, RingSpec};
use crate::verify::report::{ReportBuilder, VerifyReport};

/// Evaluate a table word in G(p^level)/G(p^(level+1)).
///
/// Each factor A[i,j] contributes (1 + p^level c D_ij)^exponent with
/// c = v_{q1} v_{q2}; the degenerate diagonal symbol at position (n, n)
/// contributes the identity.
pub fn evaluate_table_word(
    word: &TableWord,
    spec: &Arc<RingSpec>,
    n: usize,
    p: i64,
) -> Result<QuotientElem> {
    let ctx = QuotientCtx::new(n, p, word.level, 1, spec)?;
    let modulus = ctx.modulus()?;
    let v1 = RingElem::basis(spec, modulus, word.q1 - 1)?;
    let v2 = RingElem::basis(spec, modulus, word.q2 - 1)?;
    let scale = checked_pow(p, word.level)?;
    let coeff = v1.mul(&v2)?.scale(scale)?;
    let mut acc = QuotientElem::identity(&ctx)?;
    for factor in &word.factors {
        if factor.i == n && factor.j == n {
            continue;
        }
        let dir = generator_direction(spec, modulus, n, factor.i, factor.j, &coeff)?;
        let mat = MatR::identity(spec, modulus, n)?.add(&dir)?;
        let elem = QuotientElem::from_matrix(&ctx, mat)?;
        acc = acc.mul(&elem.pow(factor.exponent)?)?;
    }
    Ok(acc)
}

/// Check the sixteen-row bracket table over the whole generator grid.
pub fn verify_bracket_table(
    spec: &Arc<RingSpec>,
    n: usize,
    p: i64,
    r: u32,
    s: u32,
) -> Result<VerifyReport> {
    let r0 = r.min(s);
    let work = QuotientCtx::new(n, p, r0, r + s + 1 - r0, spec)?;
    let target = QuotientCtx::new(n, p, r + s, 1, spec)?;
    let mut builder = ReportBuilder::new("bracket-table")
        .param("ring", spec.name())
        .param("n", n)
        .param("p", p)
        .param("r", r)
        .param("s", s);
    builder.note(
        "diagonal table symbols denote the corresponding diagonal generators; \
         the degenerate symbol at position (n, n) evaluates to the identity",
    );
    let rank = spec.rank();
    let mut disagreeing_rows: BTreeSet<u8> = BTreeSet::new();
    for (i, j) in work.positions() {
        for (k, l) in work.positions() {
            for q1 in 1..=rank {
                for q2 in 1..=rank {
                    let lhs = GenLabel {
                        i,
                        j,
                        k: q1,
                        level: r,
                    };
                    let rhs = GenLabel {
                        i: k,
                        j: l,
                        k: q2,
                        level: s,
                    };
                    let word = bracket_table(n, &lhs, &rhs)?;
                    let a = generator_class_lift(&work, i, j, q1, r)?;
                    let b = generator_class_lift(&work, k, l, q2, s)?;
                    let comm = a.commutator(&b)?;
                    let actual = QuotientElem::from_matrix(&target, comm.matrix().clone())?;
                    let predicted = evaluate_table_word(&word, spec, n, p)?;
                    let pass = predicted.matrix() == actual.matrix();
                    if !pass {
                        disagreeing_rows.insert(word.row);
                    }
                    builder.case(
                        format!("[{i},{j};q{q1:02}]x[{k},{l};q{q2:02}]"),
                        format!("Thm 4.7(5) row {}: [{lhs}, {rhs}] = {word}", word.row),
                        format!("{}", predicted.matrix()),
                        format!("{}", actual.matrix()),
                        pass,
                    );
                }
            }
        }
    }
    if !disagreeing_rows.is_empty() {
        let rows: Vec<String> = disagreeing_rows.iter().map(|r| r.to_string()).collect();
        builder.note(format!(
            "instances of printed row(s) {} disagree with the brute-force commutator; \
             the commutator of determinant-one representatives is authoritative, so \
             these are machine-checked errata for the printed table",
            rows.join(", ")
        ));
    }
    Ok(builder.build())
}
