//! The Lie algebra side of the filtration.
//!
//! Degree pieces of the associated graded object are modeled by traceless
//! matrices over R/p; the whole graded object is a finitely supported sum
//! of such pieces indexed by degree.  This module provides the matrix
//! bracket, the degreewise coordinate maps between filtration quotients
//! and traceless matrices, the p-th-power (Frobenius) maps linking
//! consecutive degrees, the symbolic sixteen-row bracket table on the
//! standard generators, and the degreewise abelianization dimension
//! computed by exact rank over F_p.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatR;
use crate::quotient::{generator_direction, is_prime, GenLabel, QuotientElem};
use crate::ring::{Modulus, RingElem, RingSpec, RingSpecConfig};

/// Row-major matrix positions with (n, n) omitted: the index set of the
/// standard basis directions.
pub fn sl_positions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 1..=n {
        for j in 1..=n {
            if (i, j) != (n, n) {
                out.push((i, j));
            }
        }
    }
    out
}

/// A traceless n x n matrix over R/p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlElem {
    mat: MatR,
}

/// Serialized form of a traceless element.
#[derive(Debug, Serialize, Deserialize)]
pub struct SlElemRecord {
    pub n: usize,
    pub p: i64,
    pub ring: RingSpecConfig,
    pub entries: Vec<Vec<i64>>,
}

impl SlElem {
    /// Wrap a mod-p matrix, checking the modulus is a prime and the trace
    /// vanishes.
    pub fn from_matrix(mat: MatR) -> Result<SlElem> {
        let p = match mat.modulus() {
            Modulus::Mod(p) if is_prime(p) => p,
            other => {
                return Err(Error::ContextMismatch(format!(
                    "traceless elements live over a prime modulus, got {other}"
                )));
            }
        };
        if !mat.trace()?.is_zero() {
            return Err(Error::NotSpecialLinear(format!(
                "matrix with nonzero trace mod {p} is not a traceless element"
            )));
        }
        Ok(SlElem { mat })
    }

    pub fn zero(spec: &Arc<RingSpec>, p: i64, n: usize) -> Result<SlElem> {
        SlElem::from_matrix(MatR::zero(spec, Modulus::Mod(p), n)?)
    }

    /// The standard basis direction v_k e_ij (i != j) or
    /// v_k (e_ii - e_nn) (i = j < n); indices 1-based.
    pub fn basis_element(
        spec: &Arc<RingSpec>,
        p: i64,
        n: usize,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<SlElem> {
        if k < 1 || k > spec.rank() {
            return Err(Error::IndexOutOfRange(format!(
                "basis index k = {k} for ring {} of rank {} (1-based)",
                spec.name(),
                spec.rank()
            )));
        }
        let coeff = RingElem::basis(spec, Modulus::Mod(p), k - 1)?;
        SlElem::from_matrix(generator_direction(spec, Modulus::Mod(p), n, i, j, &coeff)?)
    }

    pub fn matrix(&self) -> &MatR {
        &self.mat
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn p(&self) -> i64 {
        match self.mat.modulus() {
            Modulus::Mod(p) => p,
            Modulus::Integers => unreachable!("checked at construction"),
        }
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        self.mat.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.entries().iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &SlElem) -> Result<SlElem> {
        SlElem::from_matrix(self.mat.add(&other.mat)?)
    }

    pub fn neg(&self) -> Result<SlElem> {
        SlElem::from_matrix(self.mat.neg()?)
    }

    pub fn scale_int(&self, c: i64) -> Result<SlElem> {
        SlElem::from_matrix(self.mat.scale_int(c)?)
    }

    /// Flattened coordinates over F_p: all n^2 entries, each expanded in
    /// the ring basis (row-major, basis index fastest).
    pub fn coords(&self) -> Vec<i64> {
        self.mat
            .entries()
            .iter()
            .flat_map(|e| e.coeffs().iter().copied())
            .collect()
    }

    pub fn to_record(&self) -> SlElemRecord {
        SlElemRecord {
            n: self.n(),
            p: self.p(),
            ring: self.spec().to_config(),
            entries: self
                .mat
                .entries()
                .iter()
                .map(|e| e.coeffs().to_vec())
                .collect(),
        }
    }

    pub fn from_record(rec: &SlElemRecord) -> Result<SlElem> {
        let spec = RingSpec::from_config(rec.ring.clone())?;
        if rec.entries.len() != rec.n * rec.n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for an {1}x{1} traceless element record",
                rec.entries.len(),
                rec.n
            )));
        }
        let elems = rec
            .entries
            .iter()
            .map(|c| RingElem::from_coeffs(&spec, Modulus::Mod(rec.p), c.clone()))
            .collect::<Result<Vec<_>>>()?;
        SlElem::from_matrix(MatR::new(rec.n, elems)?)
    }
}

impl fmt::Display for SlElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

/// The matrix bracket AB - BA over R/p.
pub fn sl_bracket(a: &SlElem, b: &SlElem) -> Result<SlElem> {
    let ab = a.mat.mul(&b.mat)?;
    let ba = b.mat.mul(&a.mat)?;
    SlElem::from_matrix(ab.sub(&ba)?)
}

/// The ordered standard basis: positions row-major ((n, n) omitted), ring
/// basis index ascending within each position.
pub fn sl_basis(spec: &Arc<RingSpec>, p: i64, n: usize) -> Result<Vec<SlElem>> {
    let mut out = Vec::new();
    for (i, j) in sl_positions(n) {
        for k in 1..=spec.rank() {
            out.push(SlElem::basis_element(spec, p, n, i, j, k)?);
        }
    }
    Ok(out)
}

/// A finitely supported sum of degree pieces: degree d >= 1 maps to a
/// traceless matrix over R/p.  Zero components are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrElem {
    n: usize,
    p: i64,
    spec: Arc<RingSpec>,
    components: BTreeMap<u32, SlElem>,
}

/// Serialized form of a graded element.
#[derive(Debug, Serialize, Deserialize)]
pub struct GrElemRecord {
    pub n: usize,
    pub p: i64,
    pub ring: RingSpecConfig,
    pub components: Vec<(u32, Vec<Vec<i64>>)>,
}

impl GrElem {
    pub fn zero(spec: &Arc<RingSpec>, p: i64, n: usize) -> GrElem {
        GrElem {
            n,
            p,
            spec: Arc::clone(spec),
            components: BTreeMap::new(),
        }
    }

    /// Add `piece` into the degree-d component (accumulating, then
    /// re-normalizing the support).
    pub fn with_component(&self, d: u32, piece: &SlElem) -> Result<GrElem> {
        if d == 0 {
            return Err(Error::IndexOutOfRange(
                "graded components are indexed by degrees >= 1".into(),
            ));
        }
        if piece.n() != self.n || piece.p() != self.p || piece.spec() != &self.spec {
            return Err(Error::ContextMismatch(
                "component context does not match the graded element".into(),
            ));
        }
        let mut components = self.components.clone();
        let acc = match components.remove(&d) {
            Some(existing) => existing.add(piece)?,
            None => piece.clone(),
        };
        if !acc.is_zero() {
            components.insert(d, acc);
        }
        Ok(GrElem {
            n: self.n,
            p: self.p,
            spec: Arc::clone(&self.spec),
            components,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn component(&self, d: u32) -> Option<&SlElem> {
        self.components.get(&d)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &GrElem) -> Result<GrElem> {
        if self.n != other.n || self.p != other.p || self.spec != other.spec {
            return Err(Error::ContextMismatch(
                "graded elements over different contexts".into(),
            ));
        }
        let mut acc = self.clone();
        for (d, piece) in &other.components {
            acc = acc.with_component(*d, piece)?;
        }
        Ok(acc)
    }

    pub fn to_record(&self) -> GrElemRecord {
        GrElemRecord {
            n: self.n,
            p: self.p,
            ring: self.spec.to_config(),
            components: self
                .components
                .iter()
                .map(|(d, piece)| {
                    (
                        *d,
                        piece
                            .matrix()
                            .entries()
                            .iter()
                            .map(|e| e.coeffs().to_vec())
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &GrElemRecord) -> Result<GrElem> {
        let spec = RingSpec::from_config(rec.ring.clone())?;
        let mut out = GrElem::zero(&spec, rec.p, rec.n);
        for (d, entries) in &rec.components {
            let elems = entries
                .iter()
                .map(|c| RingElem::from_coeffs(&spec, Modulus::Mod(rec.p), c.clone()))
                .collect::<Result<Vec<_>>>()?;
            let piece = SlElem::from_matrix(MatR::new(rec.n, elems)?)?;
            out = out.with_component(*d, &piece)?;
        }
        Ok(out)
    }
}

impl fmt::Display for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(d, piece)| format!("t^{d}: {piece}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Bilinear degree-adding bracket: degree-a and degree-b components pair
/// into degree a+b via the matrix bracket.
pub fn gr_bracket(x: &GrElem, y: &GrElem) -> Result<GrElem> {
    if x.n != y.n || x.p != y.p || x.spec != y.spec {
        return Err(Error::ContextMismatch(
            "graded elements over different contexts".into(),
        ));
    }
    let mut out = GrElem::zero(&x.spec, x.p, x.n);
    for (a, xa) in &x.components {
        for (b, yb) in &y.components {
            out = out.with_component(a + b, &sl_bracket(xa, yb)?)?;
        }
    }
    Ok(out)
}

/// The degree-r coordinate map: for a depth-one class X = 1 + p^r A, return
/// A mod p.  The trace vanishes automatically because det X = 1 mod p^(r+1).
pub fn varphi_r(x: &QuotientElem) -> Result<SlElem> {
    let ctx = x.ctx();
    if ctx.s() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "the degree map reads depth-one classes, got s = {}",
            ctx.s()
        )));
    }
    let pr = crate::ring::checked_pow(ctx.p(), ctx.r())?;
    let id = MatR::identity(ctx.spec(), ctx.modulus()?, ctx.n())?;
    let diff = x.matrix().sub(&id)?;
    let a = MatR::from_fn(ctx.n(), |i, j| {
        diff.entry(i, j).exact_div(pr, Modulus::Mod(ctx.p()))
    })?;
    SlElem::from_matrix(a)
}

/// Assemble a graded element from depth-one classes, one per degree: the
/// degree-r component is the coordinate image of the class at level r.
pub fn varphi_total(xs: &[QuotientElem]) -> Result<GrElem> {
    if xs.is_empty() {
        return Err(Error::PreconditionViolated(
            "assembling a graded element requires at least one component".into(),
        ));
    }
    let first = xs[0].ctx();
    let mut out = GrElem::zero(first.spec(), first.p(), first.n());
    let mut seen = BTreeMap::new();
    for x in xs {
        let ctx = x.ctx();
        if ctx.n() != first.n() || ctx.p() != first.p() || ctx.spec() != first.spec() {
            return Err(Error::ContextMismatch(
                "components must share dimension, prime, and ring".into(),
            ));
        }
        if seen.insert(ctx.r(), ()).is_some() {
            return Err(Error::PreconditionViolated(format!(
                "two components at degree {}; one class per degree",
                ctx.r()
            )));
        }
        let piece = varphi_r(x)?;
        if !piece.is_zero() {
            out = out.with_component(ctx.r(), &piece)?;
        }
    }
    Ok(out)
}

/// The p-th-power map from depth-one classes at level r to depth-one
/// classes at level r+1: lift the canonical representative mod p^(r+2),
/// raise to the p, wrap at level r+1.  The case p = 2, r = 1 is excluded.
pub fn frobenius(x: &QuotientElem) -> Result<QuotientElem> {
    let ctx = x.ctx();
    if ctx.s() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "the p-th-power map acts on depth-one classes, got s = {}",
            ctx.s()
        )));
    }
    if ctx.p() == 2 && ctx.r() == 1 {
        return Err(Error::ExcludedCase);
    }
    let target = ctx.with_levels(ctx.r() + 1, 1)?;
    let lifted = x.matrix().lift(target.modulus()?)?;
    QuotientElem::from_matrix(&target, lifted.pow(ctx.p() as u64)?)
}

/// One factor of a symbolic generator word: a matrix position and an
/// integer exponent.  Position (n, n) denotes the degenerate diagonal
/// generator, which evaluates to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordFactor {
    pub i: usize,
    pub j: usize,
    pub exponent: i64,
}

/// The symbolic value of a generator bracket: an ordered product of
/// generator powers at level `level`, all carrying the coefficient
/// v_q1 v_q2.  `row` records which of the sixteen table cases fired
/// (1-based, 16 = the identity fallback).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableWord {
    pub row: u8,
    pub q1: usize,
    pub q2: usize,
    pub level: u32,
    pub factors: Vec<WordFactor>,
}

impl fmt::Display for TableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1 (row {})", self.row);
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|w| {
                if w.exponent == 1 {
                    format!("A[{},{};{}.{};{}]", w.i, w.j, self.q1, self.q2, self.level)
                } else {
                    format!(
                        "A[{},{};{}.{};{}]^{}",
                        w.i, w.j, self.q1, self.q2, self.level, w.exponent
                    )
                }
            })
            .collect();
        write!(f, "{} (row {})", parts.join(" "), self.row)
    }
}

fn check_generator_indices(n: usize, label: &GenLabel) -> Result<()> {
    if label.i < 1 || label.i > n || label.j < 1 || label.j > n || label.i + label.j >= 2 * n {
        return Err(Error::IndexOutOfRange(format!(
            "generator position ({}, {}) must satisfy 1 <= i, j <= {n} and i + j < {}",
            label.i,
            label.j,
            2 * n
        )));
    }
    if label.k < 1 {
        return Err(Error::IndexOutOfRange(
            "basis indices are 1-based".into(),
        ));
    }
    Ok(())
}

/// The sixteen-row symbolic bracket of two standard generators, exactly as
/// printed: conditions are tested top to bottom and the first match wins.
/// The output is a formal word at level lhs.level + rhs.level with
/// coefficient v_q1 v_q2; no correction of any kind is applied.
pub fn bracket_table(n: usize, lhs: &GenLabel, rhs: &GenLabel) -> Result<TableWord> {
    check_generator_indices(n, lhs)?;
    check_generator_indices(n, rhs)?;
    let (i, j) = (lhs.i, lhs.j);
    let (k, l) = (rhs.i, rhs.j);
    let level = lhs.level + rhs.level;
    let f = |i: usize, j: usize, exponent: i64| WordFactor { i, j, exponent };

    let (row, factors): (u8, Vec<WordFactor>) = if i == l && j != k && i != j && k != l {
        (1, vec![f(k, j, -1)])
    } else if i == l && j == k && i != j && k != l {
        (2, vec![f(i, i, -1), f(j, j, -1)])
    } else if i != l && j == k && i != j && k != l {
        (3, vec![f(i, l, 1)])
    } else if i == k && k == l && i != j && j == n {
        (4, vec![f(i, n, -2)])
    } else if i == k && k == l && i != j && j != n && i != n {
        (5, vec![f(i, j, -1)])
    } else if j == k && k == l && i != j && i == n {
        (6, vec![f(n, j, 2)])
    } else if j == k && k == l && i != j && i != n && j != n {
        (7, vec![f(i, n, -1)])
    } else if k == l && i != k && j != k && i != j && j == n {
        (8, vec![f(i, n, -1)])
    } else if k == l && i != k && j != k && i != j && i == n {
        (9, vec![f(n, j, 1)])
    } else if i == j && j == l && k != l && k == n {
        (10, vec![f(i, n, -2)])
    } else if i == j && j == l && k != l && k != n && l != n {
        (11, vec![f(k, i, -1)])
    } else if i == j && j == k && k != l && l == n {
        (12, vec![f(i, n, 2)])
    } else if i == j && j == k && k != l && k != n && l != n {
        (13, vec![f(i, l, 1)])
    } else if i == j && k != l && i != l && i != k && k == n {
        (14, vec![f(n, l, -1)])
    } else if i == j && k != l && i != l && i != k && l == n {
        (15, vec![f(k, n, 1)])
    } else {
        (16, Vec::new())
    };

    Ok(TableWord {
        row,
        q1: lhs.k,
        q2: rhs.k,
        level,
        factors,
    })
}

/// Rank of a set of integer vectors over F_p, by exact Gaussian
/// elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::PreconditionViolated(format!(
            "rank is computed over a prime field, got p = {p}"
        )));
    }
    let width = rows.first().map_or(0, |r| r.len());
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        if row.len() != width {
            return Err(Error::DimensionMismatch(
                "rows of unequal length in rank computation".into(),
            ));
        }
        let mut v: Vec<i64> = row.iter().map(|&c| c.rem_euclid(p)).collect();
        for (b, &piv) in basis.iter().zip(&pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x - c * y).rem_euclid(p);
                }
            }
        }
        if let Some(piv) = v.iter().position(|&c| c != 0) {
            let inv = mod_inverse(v[piv], p)?;
            for x in v.iter_mut() {
                *x = (*x * inv).rem_euclid(p);
            }
            basis.push(v);
            pivots.push(piv);
        }
    }
    Ok(basis.len())
}

/// Inverse of a nonzero residue mod a prime, by the extended Euclidean
/// algorithm.
fn mod_inverse(a: i64, p: i64) -> Result<i64> {
    let a = a.rem_euclid(p);
    if a == 0 {
        return Err(Error::PreconditionViolated(
            "zero has no inverse mod p".into(),
        ));
    }
    let (mut old_r, mut r) = (a, p);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    Ok(old_s.rem_euclid(p))
}

/// Dimension of the degree-d piece of the abelianization of the graded
/// object: the full space at degree 1; for d >= 2, the basis-pair bracket
/// span is subtracted by exact rank over F_p.
pub fn lie_h1_degree(spec: &Arc<RingSpec>, n: usize, p: i64, d: u32) -> Result<usize> {
    if d == 0 {
        return Err(Error::IndexOutOfRange(
            "degrees are >= 1 in the graded object".into(),
        ));
    }
    let dim = (n * n - 1) * spec.rank();
    if d == 1 {
        return Ok(dim);
    }
    let basis = sl_basis(spec, p, n)?;
    let mut rows = Vec::with_capacity(basis.len() * basis.len());
    for a in &basis {
        for b in &basis {
            rows.push(sl_bracket(a, b)?.coords());
        }
    }
    Ok(dim - rank_mod_p(&rows, p)?)
}
