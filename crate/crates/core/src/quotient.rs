//! Filtration quotients of congruence subgroups of SL_n.
//!
//! For a ring R free of finite rank over Z and a prime p, the level-r
//! congruence subgroup is the kernel of SL_n(R) -> SL_n(R/p^r).  The
//! quotient of level r by level r+s is realized concretely as the set of
//! matrices over R/p^(r+s) that are congruent to 1 mod p^r and have
//! determinant 1; the group laws are ordinary matrix operations mod
//! p^(r+s).  This module provides those groups, their standard generators,
//! the coordinate correspondences onto direct sums of R/p^s, exhaustive
//! enumeration at desk scale, and the centrality test for the extensions
//! linking nested quotients.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatR;
use crate::ring::{checked_pow, Modulus, RingElem, RingSpec, RingSpecConfig};

/// Trial-division primality test, adequate for desk-scale moduli.
pub fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Shared parameters of a filtration quotient: the group of matrices
/// congruent to 1 mod p^r, taken modulo those congruent to 1 mod p^(r+s),
/// over the ring described by `spec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCtx {
    n: usize,
    p: i64,
    r: u32,
    s: u32,
    spec: Arc<RingSpec>,
}

impl QuotientCtx {
    /// Validate and build a quotient context.
    pub fn new(n: usize, p: i64, r: u32, s: u32, spec: &Arc<RingSpec>) -> Result<QuotientCtx> {
        if !is_prime(p) {
            return Err(Error::PreconditionViolated(format!(
                "p must be prime, got {p}"
            )));
        }
        if r == 0 || s == 0 {
            return Err(Error::PreconditionViolated(format!(
                "filtration levels must satisfy r >= 1 and s >= 1, got r = {r}, s = {s}"
            )));
        }
        // Representability of the working modulus.
        checked_pow(p, r + s)?;
        // Reuse the matrix-dimension guard.
        MatR::identity(spec, Modulus::Integers, n)?;
        Ok(QuotientCtx {
            n,
            p,
            r,
            s,
            spec: Arc::clone(spec),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    /// The working coefficient context Z/p^(r+s).
    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::prime_power(self.p, self.r + self.s)
    }

    /// Number of independent coordinates: n^2 - 1 matrix positions.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n * self.n - 1);
        for i in 1..=self.n {
            for j in 1..=self.n {
                if (i, j) != (self.n, self.n) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The context at the same (n, p, spec) with different levels.
    pub fn with_levels(&self, r: u32, s: u32) -> Result<QuotientCtx> {
        QuotientCtx::new(self.n, self.p, r, s, &self.spec)
    }
}

impl fmt::Display for QuotientCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G(n={}, p={}, r={}, s={}, R={})",
            self.n,
            self.p,
            self.r,
            self.s,
            self.spec.name()
        )
    }
}

/// A 1-based generator label: position (i, j), basis index k, and the
/// filtration level of the defining matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenLabel {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub level: u32,
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{},{};k={};r={}]", self.i, self.j, self.k, self.level)
    }
}

/// An element of a filtration quotient in canonical form: the unique
/// matrix representative with entries mod p^(r+s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElem {
    ctx: QuotientCtx,
    mat: MatR,
}

/// Serialized form of a quotient element.  `entries` is the row-major list
/// of canonical coefficient vectors.
#[derive(Debug, Serialize, Deserialize)]
pub struct QuotientElemRecord {
    pub n: usize,
    pub p: i64,
    pub r: u32,
    pub s: u32,
    pub ring: RingSpecConfig,
    pub entries: Vec<Vec<i64>>,
}

impl QuotientElem {
    /// Wrap a matrix already in the quotient's coefficient context,
    /// checking the congruence and determinant invariants.
    pub fn from_matrix(ctx: &QuotientCtx, mat: MatR) -> Result<QuotientElem> {
        if mat.n() != ctx.n {
            return Err(Error::DimensionMismatch(format!(
                "matrix of dimension {} in a context of dimension {}",
                mat.n(),
                ctx.n
            )));
        }
        if mat.spec() != &ctx.spec || mat.modulus() != ctx.modulus()? {
            return Err(Error::ContextMismatch(format!(
                "matrix context ({}, {}) does not match quotient context ({}, {})",
                mat.spec().name(),
                mat.modulus(),
                ctx.spec.name(),
                ctx.modulus()?,
            )));
        }
        if mat.unipotency_level(ctx.p, ctx.r)? < ctx.r {
            return Err(Error::NotUnipotent(format!(
                "representative must be congruent to 1 mod {}^{}",
                ctx.p, ctx.r
            )));
        }
        if !mat.det()?.is_one() {
            return Err(Error::NotSpecialLinear(format!(
                "representative must have determinant 1 mod {}^{}",
                ctx.p,
                ctx.r + ctx.s
            )));
        }
        Ok(QuotientElem {
            ctx: ctx.clone(),
            mat,
        })
    }

    /// The class of an integral matrix (reduced into the context).
    pub fn from_integral(ctx: &QuotientCtx, mat: &MatR) -> Result<QuotientElem> {
        if mat.modulus() != Modulus::Integers {
            return Err(Error::ContextMismatch(
                "from_integral expects an unreduced integral matrix".into(),
            ));
        }
        QuotientElem::from_matrix(ctx, mat.reduce(ctx.p, ctx.r + ctx.s)?)
    }

    /// The identity class.
    pub fn identity(ctx: &QuotientCtx) -> Result<QuotientElem> {
        let mat = MatR::identity(&ctx.spec, ctx.modulus()?, ctx.n)?;
        QuotientElem::from_matrix(ctx, mat)
    }

    pub fn ctx(&self) -> &QuotientCtx {
        &self.ctx
    }

    /// Canonical matrix representative.
    pub fn matrix(&self) -> &MatR {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// Group product.
    pub fn mul(&self, other: &QuotientElem) -> Result<QuotientElem> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!(
                "elements of different quotients {} and {}",
                self.ctx, other.ctx
            )));
        }
        QuotientElem::from_matrix(&self.ctx, self.mat.mul(&other.mat)?)
    }

    /// Group inverse via the terminating Neumann series.
    pub fn inv(&self) -> Result<QuotientElem> {
        let mat = self
            .mat
            .inverse_unipotent(self.ctx.p, self.ctx.r, self.ctx.r + self.ctx.s)?;
        QuotientElem::from_matrix(&self.ctx, mat)
    }

    /// Group commutator x^-1 y^-1 x y.
    pub fn commutator(&self, other: &QuotientElem) -> Result<QuotientElem> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!(
                "elements of different quotients {} and {}",
                self.ctx, other.ctx
            )));
        }
        QuotientElem::from_matrix(&self.ctx, self.mat.commutator(&other.mat, self.ctx.p)?)
    }

    /// Integer power (negative exponents through the inverse).
    pub fn pow(&self, e: i64) -> Result<QuotientElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mat = base.mat.pow(e.unsigned_abs())?;
        QuotientElem::from_matrix(&self.ctx, mat)
    }

    /// Reinterpret the same canonical matrix in a different level split
    /// (r', s') with r' + s' = r + s, checking the invariants again.
    pub fn reinterpret(&self, ctx: &QuotientCtx) -> Result<QuotientElem> {
        if ctx.r + ctx.s != self.ctx.r + self.ctx.s
            || ctx.n != self.ctx.n
            || ctx.p != self.ctx.p
            || ctx.spec != self.ctx.spec
        {
            return Err(Error::ContextMismatch(format!(
                "cannot reinterpret an element of {} in {}",
                self.ctx, ctx
            )));
        }
        QuotientElem::from_matrix(ctx, self.mat.clone())
    }

    /// Push the class down to a shallower quotient (same r, smaller s).
    pub fn truncate_depth(&self, s_new: u32) -> Result<QuotientElem> {
        if s_new == 0 || s_new > self.ctx.s {
            return Err(Error::PreconditionViolated(format!(
                "truncation depth must satisfy 1 <= s' <= s, got s' = {s_new}, s = {}",
                self.ctx.s
            )));
        }
        let ctx = self.ctx.with_levels(self.ctx.r, s_new)?;
        QuotientElem::from_matrix(&ctx, self.mat.reduce(self.ctx.p, self.ctx.r + s_new)?)
    }

    /// Serialized record form.
    pub fn to_record(&self) -> QuotientElemRecord {
        QuotientElemRecord {
            n: self.ctx.n,
            p: self.ctx.p,
            r: self.ctx.r,
            s: self.ctx.s,
            ring: self.ctx.spec.to_config(),
            entries: self
                .mat
                .entries()
                .iter()
                .map(|e| e.coeffs().to_vec())
                .collect(),
        }
    }

    /// Rebuild from a record, revalidating every invariant.
    pub fn from_record(rec: &QuotientElemRecord) -> Result<QuotientElem> {
        let spec = RingSpec::from_config(rec.ring.clone())?;
        let ctx = QuotientCtx::new(rec.n, rec.p, rec.r, rec.s, &spec)?;
        let modulus = ctx.modulus()?;
        if rec.entries.len() != rec.n * rec.n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for an {0}x{0} element record",
                rec.entries.len()
            )));
        }
        let elems = rec
            .entries
            .iter()
            .map(|c| RingElem::from_coeffs(&spec, modulus, c.clone()))
            .collect::<Result<Vec<_>>>()?;
        QuotientElem::from_matrix(&ctx, MatR::new(rec.n, elems)?)
    }

    /// JSON form of the record.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_record())?)
    }

    /// Parse the JSON record form.
    pub fn from_json(text: &str) -> Result<QuotientElem> {
        let rec: QuotientElemRecord = serde_json::from_str(text)?;
        QuotientElem::from_record(&rec)
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

/// The nilpotent direction of a generator label: e_ij for i != j, and
/// e_ii - e_nn for i = j < n, scaled by the ring element `coeff`.
pub fn generator_direction(
    spec: &Arc<RingSpec>,
    modulus: Modulus,
    n: usize,
    i: usize,
    j: usize,
    coeff: &RingElem,
) -> Result<MatR> {
    if i < 1 || i > n || j < 1 || j > n || i + j >= 2 * n {
        return Err(Error::IndexOutOfRange(format!(
            "generator position ({i}, {j}) must satisfy 1 <= i, j <= {n} and (i, j) != ({n}, {n})"
        )));
    }
    let base = if i == j {
        let eii = MatR::matrix_unit(spec, modulus, n, i - 1, i - 1)?;
        let enn = MatR::matrix_unit(spec, modulus, n, n - 1, n - 1)?;
        eii.sub(&enn)?
    } else {
        MatR::matrix_unit(spec, modulus, n, i - 1, j - 1)?
    };
    base.scale(coeff)
}

/// The class of the standard generator at an explicit level >= r:
/// 1 + p^level v_k e_ij for i != j, and 1 + p^level v_k (e_ii - e_nn) for
/// i = j < n.  Indices i, j, k are 1-based.
pub fn generator_at_level(
    ctx: &QuotientCtx,
    i: usize,
    j: usize,
    k: usize,
    level: u32,
) -> Result<QuotientElem> {
    if level < ctx.r() || level >= ctx.r() + ctx.s() {
        return Err(Error::IndexOutOfRange(format!(
            "generator level {level} outside the quotient's range {}..{}",
            ctx.r(),
            ctx.r() + ctx.s()
        )));
    }
    if k < 1 || k > ctx.spec().rank() {
        return Err(Error::IndexOutOfRange(format!(
            "basis index k = {k} for ring {} of rank {} (1-based)",
            ctx.spec().name(),
            ctx.spec().rank()
        )));
    }
    let modulus = ctx.modulus()?;
    let pl = checked_pow(ctx.p(), level)?;
    let coeff = RingElem::basis(ctx.spec(), modulus, k - 1)?.scale(pl)?;
    let dir = generator_direction(ctx.spec(), modulus, ctx.n(), i, j, &coeff)?;
    let mat = MatR::identity(ctx.spec(), modulus, ctx.n())?.add(&dir)?;
    QuotientElem::from_matrix(ctx, mat).map_err(|e| match e {
        Error::NotSpecialLinear(_) => Error::PreconditionViolated(format!(
            "the diagonal generator class A[{i},{i};k={k};r={level}] does not exist in {ctx}: \
             its determinant is not 1 mod {}^{} (Thm 3.5 needs r >= s for diagonal generators)",
            ctx.p(),
            ctx.r() + ctx.s()
        )),
        other => other,
    })
}

/// The class of the standard generator A[i,j;k] at the quotient's base
/// level r.
pub fn generator(ctx: &QuotientCtx, i: usize, j: usize, k: usize) -> Result<QuotientElem> {
    generator_at_level(ctx, i, j, k, ctx.r())
}

/// A determinant-one representative of the generator class at `level`,
/// available in every quotient (unlike the canonical diagonal matrix,
/// whose determinant condition can fail when level gaps are deep).
///
/// Off the diagonal this is the canonical matrix itself.  For i = j < n
/// it is diag(..., u, ..., u^{-1}) with u = 1 + p^level v_k placed at
/// positions (i, i) and (n, n); this has determinant exactly 1 and agrees
/// with the canonical matrix modulo p^{2 level}, hence represents the same
/// class wherever the canonical matrix exists.
pub fn generator_class_lift(
    ctx: &QuotientCtx,
    i: usize,
    j: usize,
    k: usize,
    level: u32,
) -> Result<QuotientElem> {
    if i != j {
        return generator_at_level(ctx, i, j, k, level);
    }
    if level < ctx.r() || level >= ctx.r() + ctx.s() {
        return Err(Error::IndexOutOfRange(format!(
            "generator level {level} outside the quotient's range {}..{}",
            ctx.r(),
            ctx.r() + ctx.s()
        )));
    }
    if k < 1 || k > ctx.spec().rank() {
        return Err(Error::IndexOutOfRange(format!(
            "basis index k = {k} for ring {} of rank {} (1-based)",
            ctx.spec().name(),
            ctx.spec().rank()
        )));
    }
    let n = ctx.n();
    if i + j >= 2 * n {
        return Err(Error::IndexOutOfRange(format!(
            "generator position ({i}, {j}) requires i + j < 2n = {}",
            2 * n
        )));
    }
    let modulus = ctx.modulus()?;
    let pl = checked_pow(ctx.p(), level)?;
    let one = RingElem::one(ctx.spec(), modulus)?;
    let u = one.add(&RingElem::basis(ctx.spec(), modulus, k - 1)?.scale(pl)?)?;
    let u_inv = u.inverse_unipotent(ctx.p(), level, ctx.r() + ctx.s())?;
    let mat = MatR::identity(ctx.spec(), modulus, n)?
        .with_entry(i - 1, i - 1, u)?
        .with_entry(n - 1, n - 1, u_inv)?;
    QuotientElem::from_matrix(ctx, mat)
}

/// All generator labels valid at `level` in this quotient: every position
/// with i + j < 2n and every basis index, skipping diagonal labels whose
/// determinant condition fails.
pub fn valid_generator_labels(ctx: &QuotientCtx, level: u32) -> Result<Vec<GenLabel>> {
    let mut out = Vec::new();
    for (i, j) in ctx.positions() {
        for k in 1..=ctx.spec().rank() {
            let label = GenLabel { i, j, k, level };
            match generator_at_level(ctx, i, j, k, level) {
                Ok(_) => out.push(label),
                Err(Error::PreconditionViolated(_)) if i == j => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Membership test for the level-r congruence subgroup: X must be an
/// integral matrix over R with determinant exactly 1; the result says
/// whether X = 1 mod p^r entry-wise.
pub fn gamma_member(x: &MatR, p: i64, r: u32) -> Result<bool> {
    if x.modulus() != Modulus::Integers {
        return Err(Error::ContextMismatch(
            "membership is tested on integral matrices".into(),
        ));
    }
    if !is_prime(p) {
        return Err(Error::PreconditionViolated(format!(
            "p must be prime, got {p}"
        )));
    }
    if r == 0 {
        return Err(Error::PreconditionViolated(
            "membership level must satisfy r >= 1".into(),
        ));
    }
    if !x.det()?.is_one() {
        return Err(Error::NotSpecialLinear(
            "membership is defined for matrices of determinant 1 over R".into(),
        ));
    }
    let pr = checked_pow(p, r)?;
    let id = MatR::identity(x.spec(), Modulus::Integers, x.n())?;
    let diff = x.sub(&id)?;
    Ok(diff
        .entries()
        .iter()
        .all(|e| e.coeffs().iter().all(|&c| c % pr == 0)))
}

/// The degree-one coordinate correspondence: a vector of n^2 - 1 residues
/// over R/p (positions row-major, (n, n) omitted) maps to the class of
/// 1 + p^r A, where A has the given entries and its (n, n) entry is forced
/// by tracelessness.  Requires s = 1.
pub fn phi_iso(ctx: &QuotientCtx, coeffs: &[RingElem]) -> Result<QuotientElem> {
    if ctx.s() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "the degree-one correspondence needs s = 1, got s = {}",
            ctx.s()
        )));
    }
    let positions = ctx.positions();
    if coeffs.len() != positions.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for {} positions",
            coeffs.len(),
            positions.len()
        )));
    }
    let spec = ctx.spec();
    let mod_p = Modulus::Mod(ctx.p());
    for c in coeffs {
        if c.spec() != spec || c.modulus() != mod_p {
            return Err(Error::ContextMismatch(format!(
                "coordinates must live over {} mod {}",
                spec.name(),
                ctx.p()
            )));
        }
    }
    let modulus = ctx.modulus()?;
    let pr = checked_pow(ctx.p(), ctx.r())?;
    // Assemble A entry-wise: diagonal entries as given, the (n, n) entry
    // the negated sum of the others, off-diagonal entries as given.
    let n = ctx.n();
    let mut a = MatR::zero(spec, modulus, n)?;
    let mut diag_sum = RingElem::zero(spec, modulus);
    for (idx, (i, j)) in positions.iter().enumerate() {
        let lifted = coeffs[idx].lift(modulus)?;
        if i == j {
            diag_sum = diag_sum.add(&lifted)?;
        }
        a = a.with_entry(i - 1, j - 1, lifted)?;
    }
    a = a.with_entry(n - 1, n - 1, diag_sum.neg()?)?;
    let mat = MatR::identity(spec, modulus, n)?.add(&a.scale_int(pr)?)?;
    QuotientElem::from_matrix(ctx, mat)
}

/// Inverse of [`phi_iso`]: read the coordinates of a depth-one class.
pub fn phi_iso_inv(x: &QuotientElem) -> Result<Vec<RingElem>> {
    let ctx = x.ctx();
    if ctx.s() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "the degree-one correspondence needs s = 1, got s = {}",
            ctx.s()
        )));
    }
    let pr = checked_pow(ctx.p(), ctx.r())?;
    let id = MatR::identity(ctx.spec(), ctx.modulus()?, ctx.n())?;
    let diff = x.matrix().sub(&id)?;
    let mut out = Vec::new();
    for (i, j) in ctx.positions() {
        let a = diff
            .entry(i - 1, j - 1)
            .exact_div(pr, Modulus::Mod(ctx.p()))?;
        out.push(a);
    }
    Ok(out)
}

/// The level-(r, s) coordinate map for r >= s: a vector of n^2 - 1 residues
/// over R/p^s maps to the ordered product of generator powers
/// prod A[i,j;k]^(c_ijk), positions row-major, basis indices ascending.
pub fn phi_rs(ctx: &QuotientCtx, coeffs: &[RingElem]) -> Result<QuotientElem> {
    if ctx.r() < ctx.s() {
        return Err(Error::PreconditionViolated(format!(
            "the level-(r, s) coordinate map is defined for r >= s (Thm 3.5), got r = {}, s = {}",
            ctx.r(),
            ctx.s()
        )));
    }
    let positions = ctx.positions();
    if coeffs.len() != positions.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for {} positions",
            coeffs.len(),
            positions.len()
        )));
    }
    let spec = ctx.spec();
    let mod_ps = Modulus::prime_power(ctx.p(), ctx.s())?;
    for c in coeffs {
        if c.spec() != spec || c.modulus() != mod_ps {
            return Err(Error::ContextMismatch(format!(
                "coordinates must live over {} mod {}^{}",
                spec.name(),
                ctx.p(),
                ctx.s()
            )));
        }
    }
    let mut acc = QuotientElem::identity(ctx)?;
    for (idx, (i, j)) in positions.iter().enumerate() {
        for k in 1..=spec.rank() {
            let e = coeffs[idx].coeffs()[k - 1];
            if e != 0 {
                let g = generator(ctx, *i, *j, k)?;
                acc = acc.mul(&g.pow(e)?)?;
            }
        }
    }
    Ok(acc)
}

/// Order of the quotient: p^(s (n^2 - 1) k), where k is the ring rank.
pub fn quotient_order(n: usize, p: i64, s: u32, k: usize) -> BigUint {
    let exponent = (s as usize) * (n * n - 1) * k;
    BigUint::from(p as u64).pow(exponent as u32)
}

/// Default cap on enumeration size.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// Exhaustively enumerate the quotient: all matrices 1 + p^r A with A over
/// R/p^s satisfying the determinant condition, in canonical (sorted) order.
/// Errors if the group order exceeds `cap`.
pub fn enumerate_quotient(ctx: &QuotientCtx, cap: u64) -> Result<Vec<QuotientElem>> {
    let order = quotient_order(ctx.n(), ctx.p(), ctx.s(), ctx.spec().rank());
    if order > BigUint::from(cap) {
        return Err(Error::TooLarge {
            order: order.to_string(),
            cap,
        });
    }
    let n = ctx.n();
    let k = ctx.spec().rank();
    let ps = checked_pow(ctx.p(), ctx.s())?;
    let pr = checked_pow(ctx.p(), ctx.r())?;
    let modulus = ctx.modulus()?;
    let spec = ctx.spec();
    let coords = n * n * k;
    let id = MatR::identity(spec, modulus, n)?;

    let mut out = Vec::new();
    // Odometer over all coefficient assignments of A, lexicographic.
    let mut digits = vec![0i64; coords];
    loop {
        // Build A from the digit vector and test the candidate.
        let a = MatR::from_fn(n, |i, j| {
            let base = (i * n + j) * k;
            RingElem::from_coeffs(spec, modulus, digits[base..base + k].to_vec())
        })?;
        let cand = id.add(&a.scale_int(pr)?)?;
        if cand.det()?.is_one() {
            out.push(QuotientElem::from_matrix(ctx, cand)?);
        }
        // Advance the odometer.
        let mut pos = coords;
        loop {
            if pos == 0 {
                // Wrapped around: enumeration complete.
                let key = |q: &QuotientElem| -> Vec<i64> {
                    q.matrix()
                        .entries()
                        .iter()
                        .flat_map(|e| e.coeffs().iter().copied())
                        .collect()
                };
                out.sort_by(|a, b| key(a).cmp(&key(b)));
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < ps {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Witness of non-centrality: a generator of the embedded subgroup and a
/// generator of the ambient group whose commutator is not the identity.
#[derive(Clone, Debug)]
pub struct CentralityWitness {
    pub sub_label: GenLabel,
    pub big_label: GenLabel,
    pub commutator: QuotientElem,
}

/// Outcome of the centrality test for the extension
/// 1 -> G(r+s-l)/G(r+s) -> G(r)/G(r+s) -> G(r)/G(r+s-l) -> 1.
#[derive(Clone, Debug)]
pub struct CentralityOutcome {
    /// The predicted flag: central iff r >= l.
    pub predicted_central: bool,
    /// What the generator-pair scan actually found.
    pub scan_central: bool,
    /// First non-commuting generator pair in scan order, if any.
    pub witness: Option<CentralityWitness>,
}

/// Test centrality of the kernel G(r+s-l)/G(r+s) inside G(r)/G(r+s) by
/// scanning all valid generator pairs; the predicted answer is r >= l.
pub fn is_central_extension(
    n: usize,
    p: i64,
    r: u32,
    s: u32,
    l: u32,
    spec: &Arc<RingSpec>,
) -> Result<CentralityOutcome> {
    if l == 0 || l > s {
        return Err(Error::PreconditionViolated(format!(
            "the extension parameter must satisfy 1 <= l <= s, got l = {l}, s = {s}"
        )));
    }
    let ctx = QuotientCtx::new(n, p, r, s, spec)?;
    let sub_level = r + s - l;
    let sub_labels = valid_generator_labels(&ctx, sub_level)?;
    let big_labels = valid_generator_labels(&ctx, r)?;
    let mut witness = None;
    'outer: for sl in &sub_labels {
        let g_sub = generator_at_level(&ctx, sl.i, sl.j, sl.k, sl.level)?;
        for bl in &big_labels {
            let g_big = generator_at_level(&ctx, bl.i, bl.j, bl.k, bl.level)?;
            let comm = g_sub.commutator(&g_big)?;
            if !comm.is_identity() {
                witness = Some(CentralityWitness {
                    sub_label: *sl,
                    big_label: *bl,
                    commutator: comm,
                });
                break 'outer;
            }
        }
    }
    Ok(CentralityOutcome {
        predicted_central: r >= l,
        scan_central: witness.is_none(),
        witness,
    })
}
