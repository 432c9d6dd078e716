//! Commutative rings that are free of finite rank as Z-modules.
//!
//! A ring R is described by an integer basis v_1, ..., v_k together with
//! structure constants: v_i * v_j = sum_m T[i][j][m] * v_m.  Elements are
//! integer coefficient vectors in that basis, either over the integers or
//! reduced modulo a positive integer m (canonical coefficients in [0, m)).
//!
//! Construction validates the whole table exhaustively: commutativity,
//! associativity, and the unit law.  Built-in descriptions cover Z, the
//! Gaussian integers Z[i], and the truncated polynomial rings Z[t]/(t^D).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient context: plain integers, or arithmetic modulo `m` with
/// canonical representatives in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    /// Unreduced integer coefficients.
    Integers,
    /// Coefficients modulo the contained positive integer.
    Mod(i64),
}

impl Modulus {
    /// The modulus `p^e`, checked against i64 overflow.
    pub fn prime_power(p: i64, e: u32) -> Result<Modulus> {
        Ok(Modulus::Mod(checked_pow(p, e)?))
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Integers => write!(f, "Z"),
            Modulus::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// `p^e` as an i64, or an overflow error.
pub fn checked_pow(p: i64, e: u32) -> Result<i64> {
    if p < 2 {
        return Err(Error::PreconditionViolated(format!(
            "prime power base must be at least 2, got {p}"
        )));
    }
    p.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e} does not fit in 64 bits")))
}

fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b)
        .ok_or_else(|| Error::Overflow(format!("{a} + {b}")))
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("{a} * {b}")))
}

/// Description of a commutative ring, free of finite rank over Z.
///
/// The basis is ordered; `unit_index` (0-based internally, 1-based in files
/// and error messages) names the basis element equal to 1.  The table entry
/// `table[i][j]` is the coefficient vector of `v_i * v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    name: String,
    basis_names: Vec<String>,
    unit_index: usize,
    table: Vec<Vec<Vec<i64>>>,
}

/// On-disk form of a ring description.  `unit_index` is 1-based here.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RingSpecConfig {
    pub k: usize,
    pub basis_names: Vec<String>,
    pub unit_index: usize,
    pub structure_constants: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub name: Option<String>,
}

impl RingSpec {
    /// Validate and build a ring description.  `unit_index` is 0-based.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        unit_index: usize,
        table: Vec<Vec<Vec<i64>>>,
    ) -> Result<Arc<RingSpec>> {
        let spec = RingSpec {
            name: name.into(),
            basis_names,
            unit_index,
            table,
        };
        spec.validate()?;
        Ok(Arc::new(spec))
    }

    /// Load a description from its JSON config form.
    pub fn from_config(cfg: RingSpecConfig) -> Result<Arc<RingSpec>> {
        if cfg.k != cfg.basis_names.len() {
            return Err(Error::RingSpecInvalid(format!(
                "declared rank k = {} but {} basis names given",
                cfg.k,
                cfg.basis_names.len()
            )));
        }
        if cfg.unit_index == 0 || cfg.unit_index > cfg.k {
            return Err(Error::RingSpecInvalid(format!(
                "unit_index {} out of range 1..={} (unit_index is 1-based)",
                cfg.unit_index, cfg.k
            )));
        }
        let name = cfg
            .name
            .unwrap_or_else(|| format!("custom(k={})", cfg.k));
        RingSpec::new(
            name,
            cfg.basis_names,
            cfg.unit_index - 1,
            cfg.structure_constants,
        )
    }

    /// Read a JSON ring description from a file.
    pub fn load(path: &std::path::Path) -> Result<Arc<RingSpec>> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RingSpecConfig = serde_json::from_str(&text)?;
        RingSpec::from_config(cfg)
    }

    /// The config form of this description (1-based unit index).
    pub fn to_config(&self) -> RingSpecConfig {
        RingSpecConfig {
            k: self.rank(),
            basis_names: self.basis_names.clone(),
            unit_index: self.unit_index + 1,
            structure_constants: self.table.clone(),
            name: Some(self.name.clone()),
        }
    }

    fn validate(&self) -> Result<()> {
        let k = self.basis_names.len();
        if k == 0 {
            return Err(Error::RingSpecInvalid("empty basis".into()));
        }
        if self.unit_index >= k {
            return Err(Error::RingSpecInvalid(format!(
                "unit index {} out of range for rank {k}",
                self.unit_index
            )));
        }
        if self.table.len() != k {
            return Err(Error::RingSpecInvalid(format!(
                "table has {} rows, expected {k}",
                self.table.len()
            )));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::RingSpecInvalid(format!(
                    "table row {} has {} entries, expected {k}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, cell) in row.iter().enumerate() {
                if cell.len() != k {
                    return Err(Error::RingSpecInvalid(format!(
                        "table entry ({}, {}) has length {}, expected {k}",
                        i + 1,
                        j + 1,
                        cell.len()
                    )));
                }
            }
        }
        // Unit law: v_u * v_j = v_j for every j.
        let u = self.unit_index;
        for j in 0..k {
            for m in 0..k {
                let want = if m == j { 1 } else { 0 };
                if self.table[u][j][m] != want {
                    return Err(Error::UnitViolation { j: j + 1 });
                }
            }
        }
        // Commutativity: T[i][j] = T[j][i].
        for i in 0..k {
            for j in (i + 1)..k {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::CommutativityViolation { i: i + 1, j: j + 1 });
                }
            }
        }
        // Associativity: (v_i v_j) v_l = v_i (v_j v_l), expanded through the
        // table with checked integer arithmetic.
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let mut left = vec![0i64; k];
                    let mut right = vec![0i64; k];
                    for m in 0..k {
                        let c = self.table[i][j][m];
                        if c != 0 {
                            for t in 0..k {
                                left[t] =
                                    checked_add(left[t], checked_mul(c, self.table[m][l][t])?)?;
                            }
                        }
                        let d = self.table[j][l][m];
                        if d != 0 {
                            for t in 0..k {
                                right[t] =
                                    checked_add(right[t], checked_mul(d, self.table[i][m][t])?)?;
                            }
                        }
                    }
                    if left != right {
                        return Err(Error::AssociativityViolation {
                            i: i + 1,
                            j: j + 1,
                            l: l + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Rank of the ring as a free Z-module.
    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    /// 0-based index of the basis element equal to 1.
    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    /// Display name ("Z", "Zi", "Zt:4", or a custom label).
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Name of the 0-based basis element `k0`.
    pub fn basis_name(&self, k0: usize) -> &str {
        &self.basis_names[k0]
    }

    /// Structure-constant vector of `v_i * v_j` (0-based).
    pub fn product_coeffs(&self, i: usize, j: usize) -> &[i64] {
        &self.table[i][j]
    }

    /// The integers Z with basis {1}.
    pub fn integers() -> Arc<RingSpec> {
        RingSpec::new("Z", vec!["1".into()], 0, vec![vec![vec![1]]])
            .expect("the integer ring description is valid")
    }

    /// The Gaussian integers Z[i] with basis {1, i} and i^2 = -1.
    pub fn gaussian_integers() -> Arc<RingSpec> {
        RingSpec::new(
            "Zi",
            vec!["1".into(), "i".into()],
            0,
            vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, 0]],
            ],
        )
        .expect("the Gaussian integer ring description is valid")
    }

    /// The truncated polynomial ring Z[t]/(t^bound) with basis
    /// {1, t, ..., t^(bound-1)}; products of total degree >= bound vanish.
    pub fn truncated_polynomials(bound: usize) -> Result<Arc<RingSpec>> {
        if bound == 0 {
            return Err(Error::RingSpecInvalid(
                "truncation bound must be at least 1".into(),
            ));
        }
        let names = (0..bound)
            .map(|d| match d {
                0 => "1".to_string(),
                1 => "t".to_string(),
                d => format!("t^{d}"),
            })
            .collect();
        let mut table = vec![vec![vec![0i64; bound]; bound]; bound];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                if a + b < bound {
                    cell[a + b] = 1;
                }
            }
        }
        RingSpec::new(format!("Zt:{bound}"), names, 0, table)
    }

    /// Resolve one of the built-in selectors: "Z", "Zi", or "Zt:D".
    pub fn from_selector(selector: &str) -> Result<Arc<RingSpec>> {
        match selector {
            "Z" => Ok(RingSpec::integers()),
            "Zi" => Ok(RingSpec::gaussian_integers()),
            s => {
                if let Some(d) = s.strip_prefix("Zt:") {
                    let bound: usize = d.parse().map_err(|_| {
                        Error::RingSpecInvalid(format!(
                            "bad truncation bound in ring selector {s:?}"
                        ))
                    })?;
                    RingSpec::truncated_polynomials(bound)
                } else {
                    Err(Error::RingSpecInvalid(format!(
                        "unknown ring selector {s:?} (expected Z, Zi, or Zt:D)"
                    )))
                }
            }
        }
    }
}

/// A ring element: a coefficient vector over a shared [`RingSpec`], in a
/// fixed [`Modulus`] context.  Modular coefficients are kept canonical in
/// `[0, m)`, so equality of values is equality of representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    spec: Arc<RingSpec>,
    modulus: Modulus,
    coeffs: Vec<i64>,
}

impl RingElem {
    /// Build an element from raw coefficients, canonicalizing modular ones.
    pub fn from_coeffs(
        spec: &Arc<RingSpec>,
        modulus: Modulus,
        coeffs: Vec<i64>,
    ) -> Result<RingElem> {
        if coeffs.len() != spec.rank() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector of length {} for ring {} of rank {}",
                coeffs.len(),
                spec.name(),
                spec.rank()
            )));
        }
        if let Modulus::Mod(m) = modulus {
            if m < 2 {
                return Err(Error::IncompatibleModulus(format!(
                    "modulus must be at least 2, got {m}"
                )));
            }
        }
        let mut elem = RingElem {
            spec: Arc::clone(spec),
            modulus,
            coeffs,
        };
        elem.canonicalize();
        Ok(elem)
    }

    /// The zero element.
    pub fn zero(spec: &Arc<RingSpec>, modulus: Modulus) -> RingElem {
        RingElem {
            spec: Arc::clone(spec),
            modulus,
            coeffs: vec![0; spec.rank()],
        }
    }

    /// The unit element.
    pub fn one(spec: &Arc<RingSpec>, modulus: Modulus) -> Result<RingElem> {
        RingElem::basis(spec, modulus, spec.unit_index())
    }

    /// The basis element `v_k0` (0-based index).
    pub fn basis(spec: &Arc<RingSpec>, modulus: Modulus, k0: usize) -> Result<RingElem> {
        if k0 >= spec.rank() {
            return Err(Error::IndexOutOfRange(format!(
                "basis index {} for ring {} of rank {} (0-based)",
                k0,
                spec.name(),
                spec.rank()
            )));
        }
        let mut coeffs = vec![0; spec.rank()];
        coeffs[k0] = 1;
        RingElem::from_coeffs(spec, modulus, coeffs)
    }

    /// The integer `c`, i.e. `c * 1`.
    pub fn integer(spec: &Arc<RingSpec>, modulus: Modulus, c: i64) -> Result<RingElem> {
        let mut coeffs = vec![0; spec.rank()];
        coeffs[spec.unit_index()] = c;
        RingElem::from_coeffs(spec, modulus, coeffs)
    }

    fn canonicalize(&mut self) {
        if let Modulus::Mod(m) = self.modulus {
            for c in &mut self.coeffs {
                *c = c.rem_euclid(m);
            }
        }
    }

    /// The ring description this element lives over.
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    /// The coefficient context.
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Coefficients in the ring basis (canonical when modular).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// True iff this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// True iff this is the unit element.
    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, &c)| c == if m == self.spec.unit_index() { 1 } else { 0 })
    }

    fn ensure_same_context(&self, other: &RingElem) -> Result<()> {
        if !Arc::ptr_eq(&self.spec, &other.spec) && self.spec != other.spec {
            return Err(Error::ContextMismatch(format!(
                "elements over different rings {} and {}",
                self.spec.name(),
                other.spec.name()
            )));
        }
        if self.modulus != other.modulus {
            return Err(Error::ContextMismatch(format!(
                "elements in different coefficient contexts {} and {}",
                self.modulus, other.modulus
            )));
        }
        Ok(())
    }

    /// Sum of two elements in the same context.
    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.ensure_same_context(other)?;
        let coeffs = match self.modulus {
            Modulus::Integers => self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| checked_add(a, b))
                .collect::<Result<Vec<_>>>()?,
            Modulus::Mod(m) => self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ((a as i128 + b as i128).rem_euclid(m as i128)) as i64)
                .collect(),
        };
        Ok(RingElem {
            spec: Arc::clone(&self.spec),
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Difference of two elements in the same context.
    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.neg()?)
    }

    /// Additive inverse.
    pub fn neg(&self) -> Result<RingElem> {
        let coeffs = match self.modulus {
            Modulus::Integers => self
                .coeffs
                .iter()
                .map(|&a| {
                    a.checked_neg()
                        .ok_or_else(|| Error::Overflow(format!("-({a})")))
                })
                .collect::<Result<Vec<_>>>()?,
            Modulus::Mod(m) => self
                .coeffs
                .iter()
                .map(|&a| (-(a as i128)).rem_euclid(m as i128) as i64)
                .collect(),
        };
        Ok(RingElem {
            spec: Arc::clone(&self.spec),
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Product through the structure-constant table.
    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.ensure_same_context(other)?;
        let k = self.spec.rank();
        let coeffs = match self.modulus {
            Modulus::Integers => {
                let mut out = vec![0i64; k];
                for i in 0..k {
                    if self.coeffs[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        if other.coeffs[j] == 0 {
                            continue;
                        }
                        let ab = checked_mul(self.coeffs[i], other.coeffs[j])?;
                        for (m, slot) in out.iter_mut().enumerate() {
                            let t = self.spec.table[i][j][m];
                            if t != 0 {
                                *slot = checked_add(*slot, checked_mul(ab, t)?)?;
                            }
                        }
                    }
                }
                out
            }
            Modulus::Mod(m) => {
                let mm = m as i128;
                let mut acc = vec![0i128; k];
                for i in 0..k {
                    if self.coeffs[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        if other.coeffs[j] == 0 {
                            continue;
                        }
                        let ab = (self.coeffs[i] as i128 * other.coeffs[j] as i128)
                            .rem_euclid(mm);
                        for (t, slot) in acc.iter_mut().enumerate() {
                            let c = self.spec.table[i][j][t];
                            if c != 0 {
                                *slot = (*slot + ab * c as i128).rem_euclid(mm);
                            }
                        }
                    }
                }
                acc.into_iter().map(|c| c as i64).collect()
            }
        };
        Ok(RingElem {
            spec: Arc::clone(&self.spec),
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Product with an integer scalar.
    pub fn scale(&self, c: i64) -> Result<RingElem> {
        let coeffs = match self.modulus {
            Modulus::Integers => self
                .coeffs
                .iter()
                .map(|&a| checked_mul(a, c))
                .collect::<Result<Vec<_>>>()?,
            Modulus::Mod(m) => self
                .coeffs
                .iter()
                .map(|&a| ((a as i128 * c as i128).rem_euclid(m as i128)) as i64)
                .collect(),
        };
        Ok(RingElem {
            spec: Arc::clone(&self.spec),
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Reduce into the context modulo `p^m_exp`.  The current context must
    /// be the integers or a modulus divisible by `p^m_exp`; reduction is
    /// then a well-defined ring homomorphism.
    pub fn reduce(&self, p: i64, m_exp: u32) -> Result<RingElem> {
        let target = checked_pow(p, m_exp)?;
        match self.modulus {
            Modulus::Integers => {}
            Modulus::Mod(m) => {
                if m % target != 0 {
                    return Err(Error::IncompatibleModulus(format!(
                        "cannot reduce from Z/{m} to Z/{target}: {target} does not divide {m}"
                    )));
                }
            }
        }
        RingElem::from_coeffs(&self.spec, Modulus::Mod(target), self.coeffs.clone())
    }

    /// Reinterpret canonical coefficients in a larger compatible modulus
    /// (the canonical section of the reduction map), or into the integers.
    pub fn lift(&self, target: Modulus) -> Result<RingElem> {
        match (self.modulus, target) {
            (Modulus::Mod(m), Modulus::Mod(t)) if t % m == 0 => {}
            (Modulus::Mod(_), Modulus::Integers) => {}
            (a, b) => {
                return Err(Error::IncompatibleModulus(format!(
                    "cannot lift canonically from {a} to {b}"
                )))
            }
        }
        RingElem::from_coeffs(&self.spec, target, self.coeffs.clone())
    }

    /// Inverse of an element congruent to one modulo `p^level`, in the
    /// context `Z/p^m_exp`, computed by the finite geometric series
    /// `(1 + w)^{-1} = 1 - w + w^2 - ...` (which terminates because `w`
    /// is divisible by `p^level` and the modulus kills `p^m_exp`).
    pub fn inverse_unipotent(&self, p: i64, level: u32, m_exp: u32) -> Result<RingElem> {
        if level == 0 {
            return Err(Error::NotUnipotent(
                "inverse requires congruence to one at level >= 1".into(),
            ));
        }
        let modulus = Modulus::prime_power(p, m_exp)?;
        if self.modulus != modulus {
            return Err(Error::IncompatibleModulus(format!(
                "element lives in {} but the inverse is requested in {modulus}",
                self.modulus
            )));
        }
        let one = RingElem::one(&self.spec, modulus)?;
        let w = self.sub(&one)?;
        let step = checked_pow(p, level)?;
        for &c in w.coeffs() {
            if c % step != 0 {
                return Err(Error::NotUnipotent(format!(
                    "element {self} is not congruent to one modulo {p}^{level}"
                )));
            }
        }
        let neg_w = w.neg()?;
        let mut inv = one.clone();
        let mut term = one.clone();
        let mut depth = 0;
        while depth < m_exp {
            term = term.mul(&neg_w)?;
            inv = inv.add(&term)?;
            depth += level;
        }
        if !self.mul(&inv)?.is_one() {
            return Err(Error::NotUnipotent(format!(
                "inverse verification failed for {self}"
            )));
        }
        Ok(inv)
    }

    /// Exact division of every coefficient by the integer `d`.
    /// Errors unless each coefficient is divisible.
    pub fn exact_div(&self, d: i64, target: Modulus) -> Result<RingElem> {
        if d == 0 {
            return Err(Error::PreconditionViolated("division by zero".into()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            if c % d != 0 {
                return Err(Error::NotUnipotent(format!(
                    "coefficient {c} is not divisible by {d}"
                )));
            }
            coeffs.push(c / d);
        }
        RingElem::from_coeffs(&self.spec, target, coeffs)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "(")?;
            for (m, c) in self.coeffs.iter().enumerate() {
                if m > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs_validate() {
        assert_eq!(RingSpec::integers().rank(), 1);
        assert_eq!(RingSpec::gaussian_integers().rank(), 2);
        assert_eq!(RingSpec::truncated_polynomials(6).unwrap().rank(), 6);
    }

    #[test]
    fn selector_parsing() {
        assert_eq!(RingSpec::from_selector("Z").unwrap().name(), "Z");
        assert_eq!(RingSpec::from_selector("Zi").unwrap().name(), "Zi");
        assert_eq!(RingSpec::from_selector("Zt:4").unwrap().name(), "Zt:4");
        assert!(RingSpec::from_selector("Qp").is_err());
        assert!(RingSpec::from_selector("Zt:x").is_err());
    }

    #[test]
    fn integer_reduction_canonicalizes() {
        // 28 reduced mod 3^2 is 1.
        let z = RingSpec::integers();
        let e = RingElem::integer(&z, Modulus::Integers, 28).unwrap();
        let r = e.reduce(3, 2).unwrap();
        assert_eq!(r.coeffs(), &[1]);
        assert_eq!(r.modulus(), Modulus::Mod(9));
        // Negative representatives land in [0, m).
        let neg = RingElem::integer(&z, Modulus::Integers, -8).unwrap();
        assert_eq!(neg.reduce(3, 3).unwrap().coeffs(), &[19]);
    }

    #[test]
    fn gaussian_square_of_one_plus_i() {
        // (1 + i)^2 = 2i, by expanding (a+bi)(c+di) = (ac-bd) + (ad+bc)i.
        let zi = RingSpec::gaussian_integers();
        let e = RingElem::from_coeffs(&zi, Modulus::Integers, vec![1, 1]).unwrap();
        let sq = e.mul(&e).unwrap();
        let (a, b, c, d) = (1i64, 1, 1, 1);
        assert_eq!(sq.coeffs(), &[a * c - b * d, a * d + b * c]);
        assert_eq!(sq.coeffs(), &[0, 2]);
    }

    #[test]
    fn gaussian_reduction_example() {
        let zi = RingSpec::gaussian_integers();
        let e = RingElem::from_coeffs(&zi, Modulus::Integers, vec![10, -8]).unwrap();
        assert_eq!(e.reduce(3, 3).unwrap().coeffs(), &[10, 19]);
    }

    #[test]
    fn truncated_product_matches_convolution() {
        // Compare Zt:3 multiplication against a directly convolved product
        // with monomials of degree >= 3 discarded.
        let zt = RingSpec::truncated_polynomials(3).unwrap();
        let a = RingElem::from_coeffs(&zt, Modulus::Integers, vec![1, 1, 0]).unwrap();
        let b = RingElem::from_coeffs(&zt, Modulus::Integers, vec![1, 1, 1]).unwrap();
        let mut conv = [0i64; 3];
        for (i, &x) in a.coeffs().iter().enumerate() {
            for (j, &y) in b.coeffs().iter().enumerate() {
                if i + j < 3 {
                    conv[i + j] += x * y;
                }
            }
        }
        assert_eq!(a.mul(&b).unwrap().coeffs(), &conv);
        assert_eq!(conv, [1, 2, 2]);
    }

    #[test]
    fn unit_and_zero() {
        let zi = RingSpec::gaussian_integers();
        let one = RingElem::one(&zi, Modulus::Mod(9)).unwrap();
        let z = RingElem::zero(&zi, Modulus::Mod(9));
        assert!(one.is_one());
        assert!(z.is_zero());
        let x = RingElem::from_coeffs(&zi, Modulus::Mod(9), vec![4, 7]).unwrap();
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(z.add(&x).unwrap(), x);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let z = RingSpec::integers();
        let a = RingElem::integer(&z, Modulus::Mod(9), 2).unwrap();
        let b = RingElem::integer(&z, Modulus::Mod(27), 2).unwrap();
        assert!(matches!(a.add(&b), Err(Error::ContextMismatch(_))));
        let zi = RingSpec::gaussian_integers();
        let c = RingElem::integer(&zi, Modulus::Mod(9), 2).unwrap();
        assert!(matches!(a.mul(&c), Err(Error::ContextMismatch(_))));
    }

    #[test]
    fn incompatible_modulus_is_reported() {
        let z = RingSpec::integers();
        let a = RingElem::integer(&z, Modulus::Mod(9), 2).unwrap();
        assert!(matches!(a.reduce(2, 1), Err(Error::IncompatibleModulus(_))));
        // 9 -> 3 is fine.
        assert_eq!(a.reduce(3, 1).unwrap().coeffs(), &[2]);
    }

    #[test]
    fn noncommutative_table_rejected() {
        // v2 * v2 differs from itself is impossible; break (1,2) vs (2,1).
        let bad = RingSpec::new(
            "bad",
            vec!["1".into(), "x".into()],
            0,
            vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![1, 0], vec![0, 0]],
            ],
        );
        match bad {
            Err(Error::CommutativityViolation { i: 1, j: 2 }) => {}
            other => panic!("expected commutativity violation, got {other:?}"),
        }
    }

    #[test]
    fn nonassociative_table_rejected() {
        // Basis {1, a, b} with a*a = 1, b*b = 1, a*b = b*a = 0:
        // (a*a)*b = b but a*(a*b) = 0.
        let bad = RingSpec::new(
            "bad",
            vec!["1".into(), "a".into(), "b".into()],
            0,
            vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
                vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]],
            ],
        );
        match bad {
            Err(Error::AssociativityViolation { i: 2, j: 2, l: 3 }) => {}
            other => panic!("expected associativity violation, got {other:?}"),
        }
    }

    #[test]
    fn broken_unit_rejected() {
        let bad = RingSpec::new(
            "bad",
            vec!["1".into(), "x".into()],
            0,
            vec![
                vec![vec![1, 0], vec![0, 2]],
                vec![vec![0, 2], vec![0, 1]],
            ],
        );
        match bad {
            Err(Error::UnitViolation { j: 2 }) => {}
            other => panic!("expected unit violation, got {other:?}"),
        }
    }

    #[test]
    fn config_round_trip() {
        let zi = RingSpec::gaussian_integers();
        let cfg = zi.to_config();
        assert_eq!(cfg.unit_index, 1);
        let back = RingSpec::from_config(cfg).unwrap();
        assert_eq!(*back, *zi);
    }

    #[test]
    fn exact_div_requires_divisibility() {
        let z = RingSpec::integers();
        let a = RingElem::integer(&z, Modulus::Mod(27), 9).unwrap();
        assert_eq!(a.exact_div(9, Modulus::Mod(3)).unwrap().coeffs(), &[1]);
        let b = RingElem::integer(&z, Modulus::Mod(27), 10).unwrap();
        assert!(b.exact_div(9, Modulus::Mod(3)).is_err());
    }

    #[test]
    fn lift_embeds_canonically() {
        let z = RingSpec::integers();
        let a = RingElem::integer(&z, Modulus::Mod(9), 7).unwrap();
        let lifted = a.lift(Modulus::Mod(27)).unwrap();
        assert_eq!(lifted.coeffs(), &[7]);
        assert!(a.lift(Modulus::Mod(8)).is_err());
    }

    #[test]
    fn inverse_unipotent_scalar_cases() {
        let z = RingSpec::integers();
        // 4^{-1} = 7 in Z/9 (4 * 7 = 28 = 27 + 1).
        let u = RingElem::integer(&z, Modulus::Mod(9), 4).unwrap();
        assert_eq!(u.inverse_unipotent(3, 1, 2).unwrap().coeffs(), &[7]);
        // (1 + 3i)^{-1} = 1 - 3i + (3i)^2 = -8 - 3i = (19, 24) in Z[i]/27.
        let zi = RingSpec::gaussian_integers();
        let v = RingElem::from_coeffs(&zi, Modulus::Mod(27), vec![1, 3]).unwrap();
        let inv = v.inverse_unipotent(3, 1, 3).unwrap();
        assert_eq!(inv.coeffs(), &[19, 24]);
        assert!(v.mul(&inv).unwrap().is_one());
        // 2 is not congruent to one modulo 3.
        let w = RingElem::integer(&z, Modulus::Mod(9), 2).unwrap();
        assert!(w.inverse_unipotent(3, 1, 2).is_err());
    }
}
