//! Square matrices over a finite-rank ring, in a shared coefficient context.
//!
//! Supports the exact linear algebra the filtration quotients need:
//! products, division-free determinants (cofactor expansion, n <= 6),
//! traces, Neumann-series inverses of unipotent matrices modulo prime
//! powers, and group commutators X^-1 Y^-1 X Y.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{checked_pow, Modulus, RingElem, RingSpec};

/// Smallest supported matrix dimension.
pub const MIN_DIM: usize = 2;
/// Largest supported matrix dimension (cofactor determinants stay exact and
/// cheap in this range).
pub const MAX_DIM: usize = 6;

/// An n-by-n matrix over a [`RingSpec`], all entries in one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatR {
    n: usize,
    entries: Vec<RingElem>,
}

impl MatR {
    /// Build a matrix from row-major entries, checking the shared context.
    pub fn new(n: usize, entries: Vec<RingElem>) -> Result<MatR> {
        check_dim(n)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for an {n}x{n} matrix",
                entries.len()
            )));
        }
        let first = &entries[0];
        for e in &entries[1..] {
            if e.spec() != first.spec() || e.modulus() != first.modulus() {
                return Err(Error::ContextMismatch(
                    "matrix entries live in different coefficient contexts".into(),
                ));
            }
        }
        Ok(MatR { n, entries })
    }

    /// Build a matrix entry-wise from a function of (row, column), 0-based.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> Result<RingElem>,
    ) -> Result<MatR> {
        check_dim(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j)?);
            }
        }
        MatR::new(n, entries)
    }

    /// The identity matrix.
    pub fn identity(spec: &Arc<RingSpec>, modulus: Modulus, n: usize) -> Result<MatR> {
        MatR::from_fn(n, |i, j| {
            if i == j {
                RingElem::one(spec, modulus)
            } else {
                Ok(RingElem::zero(spec, modulus))
            }
        })
    }

    /// The zero matrix.
    pub fn zero(spec: &Arc<RingSpec>, modulus: Modulus, n: usize) -> Result<MatR> {
        MatR::from_fn(n, |_, _| Ok(RingElem::zero(spec, modulus)))
    }

    /// A matrix of integer multiples of 1, convenient over Z.
    pub fn from_integer_rows(
        spec: &Arc<RingSpec>,
        modulus: Modulus,
        rows: &[Vec<i64>],
    ) -> Result<MatR> {
        let n = rows.len();
        check_dim(n)?;
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in an {n}x{n} matrix",
                    row.len()
                )));
            }
        }
        MatR::from_fn(n, |i, j| RingElem::integer(spec, modulus, rows[i][j]))
    }

    /// The matrix unit e_(i0+1, j0+1): a single 1 at 0-based (i0, j0).
    pub fn matrix_unit(
        spec: &Arc<RingSpec>,
        modulus: Modulus,
        n: usize,
        i0: usize,
        j0: usize,
    ) -> Result<MatR> {
        if i0 >= n || j0 >= n {
            return Err(Error::IndexOutOfRange(format!(
                "matrix unit position ({}, {}) in dimension {n} (1-based)",
                i0 + 1,
                j0 + 1
            )));
        }
        MatR::from_fn(n, |i, j| {
            if (i, j) == (i0, j0) {
                RingElem::one(spec, modulus)
            } else {
                Ok(RingElem::zero(spec, modulus))
            }
        })
    }

    /// Dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The ring the entries live over.
    pub fn spec(&self) -> &Arc<RingSpec> {
        self.entries[0].spec()
    }

    /// The coefficient context of the entries.
    pub fn modulus(&self) -> Modulus {
        self.entries[0].modulus()
    }

    /// Entry at 0-based (i, j).
    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * self.n + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    /// Copy of the matrix with one entry replaced (0-based position).
    pub fn with_entry(&self, i: usize, j: usize, e: RingElem) -> Result<MatR> {
        if i >= self.n || j >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "entry position ({}, {}) in dimension {} (1-based)",
                i + 1,
                j + 1,
                self.n
            )));
        }
        let mut entries = self.entries.clone();
        entries[i * self.n + j] = e;
        MatR::new(self.n, entries)
    }

    fn ensure_compatible(&self, other: &MatR) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "matrices of dimensions {} and {}",
                self.n, other.n
            )));
        }
        if self.spec() != other.spec() || self.modulus() != other.modulus() {
            return Err(Error::ContextMismatch(
                "matrices live in different coefficient contexts".into(),
            ));
        }
        Ok(())
    }

    /// Entry-wise sum.
    pub fn add(&self, other: &MatR) -> Result<MatR> {
        self.ensure_compatible(other)?;
        MatR::from_fn(self.n, |i, j| self.entry(i, j).add(other.entry(i, j)))
    }

    /// Entry-wise difference.
    pub fn sub(&self, other: &MatR) -> Result<MatR> {
        self.ensure_compatible(other)?;
        MatR::from_fn(self.n, |i, j| self.entry(i, j).sub(other.entry(i, j)))
    }

    /// Entry-wise negation.
    pub fn neg(&self) -> Result<MatR> {
        MatR::from_fn(self.n, |i, j| self.entry(i, j).neg())
    }

    /// Matrix product.
    pub fn mul(&self, other: &MatR) -> Result<MatR> {
        self.ensure_compatible(other)?;
        MatR::from_fn(self.n, |i, j| {
            let mut acc = RingElem::zero(self.spec(), self.modulus());
            for l in 0..self.n {
                acc = acc.add(&self.entry(i, l).mul(other.entry(l, j))?)?;
            }
            Ok(acc)
        })
    }

    /// Product with a ring scalar.
    pub fn scale(&self, c: &RingElem) -> Result<MatR> {
        MatR::from_fn(self.n, |i, j| self.entry(i, j).mul(c))
    }

    /// Product with an integer scalar.
    pub fn scale_int(&self, c: i64) -> Result<MatR> {
        MatR::from_fn(self.n, |i, j| self.entry(i, j).scale(c))
    }

    /// Power by repeated squaring (exponent >= 0).
    pub fn pow(&self, e: u64) -> Result<MatR> {
        let mut result = MatR::identity(self.spec(), self.modulus(), self.n)?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> Result<RingElem> {
        let mut acc = RingElem::zero(self.spec(), self.modulus());
        for i in 0..self.n {
            acc = acc.add(self.entry(i, i))?;
        }
        Ok(acc)
    }

    /// Determinant by cofactor expansion along the first row.  Exact and
    /// division-free in any coefficient context; the dimension guard keeps
    /// the n! term count small.
    pub fn det(&self) -> Result<RingElem> {
        let cols: Vec<usize> = (0..self.n).collect();
        self.det_minor(0, &cols)
    }

    fn det_minor(&self, row: usize, cols: &[usize]) -> Result<RingElem> {
        if cols.len() == 1 {
            return Ok(self.entry(row, cols[0]).clone());
        }
        let mut acc = RingElem::zero(self.spec(), self.modulus());
        for (pos, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.det_minor(row + 1, &rest)?;
            let term = self.entry(row, c).mul(&minor)?;
            acc = if pos % 2 == 0 {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        Ok(acc)
    }

    /// True iff this is the identity matrix.
    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                if i == j {
                    self.entry(i, j).is_one()
                } else {
                    self.entry(i, j).is_zero()
                }
            })
        })
    }

    /// Reduce every entry modulo p^m_exp.
    pub fn reduce(&self, p: i64, m_exp: u32) -> Result<MatR> {
        MatR::from_fn(self.n, |i, j| self.entry(i, j).reduce(p, m_exp))
    }

    /// Reinterpret canonical entries in a larger compatible modulus.
    pub fn lift(&self, target: Modulus) -> Result<MatR> {
        MatR::from_fn(self.n, |i, j| self.entry(i, j).lift(target))
    }

    /// The largest level l <= cap such that X = 1 mod p^l, coefficient-wise.
    pub fn unipotency_level(&self, p: i64, cap: u32) -> Result<u32> {
        let id = MatR::identity(self.spec(), self.modulus(), self.n)?;
        let diff = self.sub(&id)?;
        let mut level = 0;
        while level < cap {
            let power = checked_pow(p, level + 1)?;
            let divisible = diff
                .entries
                .iter()
                .all(|e| e.coeffs().iter().all(|&c| c % power == 0));
            if !divisible {
                break;
            }
            level += 1;
        }
        Ok(level)
    }

    /// Inverse of a matrix X = 1 mod p^level in the context mod p^m_exp,
    /// via the terminating Neumann series sum_i (1 - X)^i: only terms with
    /// i * level < m_exp survive.
    pub fn inverse_unipotent(&self, p: i64, level: u32, m_exp: u32) -> Result<MatR> {
        if level == 0 {
            return Err(Error::NotUnipotent(
                "inverse requires congruence to the identity at level >= 1".into(),
            ));
        }
        let modulus = checked_pow(p, m_exp)?;
        if self.modulus() != Modulus::Mod(modulus) {
            return Err(Error::IncompatibleModulus(format!(
                "matrix context {} does not match {p}^{m_exp}",
                self.modulus()
            )));
        }
        if self.unipotency_level(p, level)? < level {
            return Err(Error::NotUnipotent(format!(
                "matrix is not congruent to the identity mod {p}^{level}"
            )));
        }
        let id = MatR::identity(self.spec(), self.modulus(), self.n)?;
        // X = 1 + N with N = 0 mod p^level; X^-1 = sum_i (-N)^i.
        let minus_n = id.sub(self)?;
        let mut sum = id.clone();
        let mut term = id;
        let mut i = 1u32;
        while u64::from(i) * u64::from(level) < u64::from(m_exp) {
            term = term.mul(&minus_n)?;
            sum = sum.add(&term)?;
            i += 1;
        }
        Ok(sum)
    }

    /// Group commutator X^-1 Y^-1 X Y in a shared mod-p^m context.  Both
    /// operands must be unipotent (congruent to 1 mod p); their levels and
    /// the exponent m are read off the operands.
    pub fn commutator(&self, other: &MatR, p: i64) -> Result<MatR> {
        self.ensure_compatible(other)?;
        let m_exp = prime_power_exponent(self.modulus(), p)?;
        let r = self.unipotency_level(p, m_exp)?;
        let s = other.unipotency_level(p, m_exp)?;
        if r == 0 || s == 0 {
            return Err(Error::NotUnipotent(
                "commutator operands must be congruent to 1 mod p".into(),
            ));
        }
        let xi = self.inverse_unipotent(p, r, m_exp)?;
        let yi = other.inverse_unipotent(p, s, m_exp)?;
        xi.mul(&yi)?.mul(self)?.mul(other)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(Error::DimensionTooLarge { n });
    }
    Ok(())
}

/// The exponent m with `modulus = Mod(p^m)`, or an error if the modulus is
/// not a power of p.
pub fn prime_power_exponent(modulus: Modulus, p: i64) -> Result<u32> {
    let Modulus::Mod(m) = modulus else {
        return Err(Error::IncompatibleModulus(
            "expected a prime-power modulus, found integer context".into(),
        ));
    };
    if p < 2 {
        return Err(Error::PreconditionViolated(format!(
            "prime must be at least 2, got {p}"
        )));
    }
    let mut value = m;
    let mut exp = 0u32;
    while value % p == 0 {
        value /= p;
        exp += 1;
    }
    if value != 1 || exp == 0 {
        return Err(Error::IncompatibleModulus(format!(
            "modulus {m} is not a positive power of {p}"
        )));
    }
    Ok(exp)
}

/// Outcome of the determinant congruence check for X = 1 + p^r A:
/// whether det(X) = 1 + p^r tr(A) holds mod p^(r+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetCongruence {
    /// det(1 + p^r A) reduced mod p^(r+1).
    pub lhs: RingElem,
    /// 1 + p^r tr(A) reduced mod p^(r+1).
    pub rhs: RingElem,
    /// lhs == rhs.
    pub holds: bool,
}

/// Check det(1 + p^r A) = 1 + p^r tr(A) mod p^(r+1) for an integral matrix
/// A over the ring.
pub fn det_congruence_check(a: &MatR, p: i64, r: u32) -> Result<DetCongruence> {
    if a.modulus() != Modulus::Integers {
        return Err(Error::ContextMismatch(
            "determinant congruence check expects an integral matrix".into(),
        ));
    }
    if r == 0 {
        return Err(Error::PreconditionViolated(
            "determinant congruence check needs level r >= 1".into(),
        ));
    }
    let spec = a.spec();
    let pr = checked_pow(p, r)?;
    let id = MatR::identity(spec, Modulus::Integers, a.n())?;
    let x = id.add(&a.scale_int(pr)?)?;
    let lhs = x.det()?.reduce(p, r + 1)?;
    let one = RingElem::one(spec, Modulus::Integers)?;
    let rhs = one.add(&a.trace()?.scale(pr)?)?.reduce(p, r + 1)?;
    let holds = lhs == rhs;
    Ok(DetCongruence { lhs, rhs, holds })
}

impl fmt::Display for MatR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    /// Independent 2x2 integer product for use as an oracle.
    fn mul2(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ]
    }

    fn mod2x2(a: [[i64; 2]; 2], m: i64) -> [[i64; 2]; 2] {
        [
            [a[0][0].rem_euclid(m), a[0][1].rem_euclid(m)],
            [a[1][0].rem_euclid(m), a[1][1].rem_euclid(m)],
        ]
    }

    fn as_rows(m: &MatR) -> Vec<Vec<i64>> {
        (0..m.n())
            .map(|i| (0..m.n()).map(|j| m.entry(i, j).coeffs()[0]).collect())
            .collect()
    }

    #[test]
    fn product_matches_hand_oracle() {
        // (1 + 3 e12)(1 + 3 e21) computed independently.
        let z = RingSpec::integers();
        let x = MatR::from_integer_rows(&z, Modulus::Integers, &[vec![1, 3], vec![0, 1]]).unwrap();
        let y = MatR::from_integer_rows(&z, Modulus::Integers, &[vec![1, 0], vec![3, 1]]).unwrap();
        let got = x.mul(&y).unwrap();
        let want = mul2([[1, 3], [0, 1]], [[1, 0], [3, 1]]);
        assert_eq!(as_rows(&got), vec![want[0].to_vec(), want[1].to_vec()]);
        assert_eq!(as_rows(&got), vec![vec![10, 3], vec![3, 1]]);
    }

    #[test]
    fn det_2x2_matches_leibniz() {
        let z = RingSpec::integers();
        let m = MatR::from_integer_rows(&z, Modulus::Integers, &[vec![4, 6], vec![0, 7]]).unwrap();
        let ad_minus_bc = 4 * 7 - 6 * 0;
        assert_eq!(m.det().unwrap().coeffs(), &[ad_minus_bc]);
        assert_eq!(ad_minus_bc, 28);
    }

    #[test]
    fn det_3x3_matches_leibniz() {
        let z = RingSpec::integers();
        let a = [[2, -1, 3], [0, 4, 1], [5, 2, -2]];
        let rows: Vec<Vec<i64>> = a.iter().map(|r| r.to_vec()).collect();
        let m = MatR::from_integer_rows(&z, Modulus::Integers, &rows).unwrap();
        // Full 6-term expansion.
        let want = a[0][0] * a[1][1] * a[2][2] + a[0][1] * a[1][2] * a[2][0]
            + a[0][2] * a[1][0] * a[2][1]
            - a[0][2] * a[1][1] * a[2][0]
            - a[0][1] * a[1][0] * a[2][2]
            - a[0][0] * a[1][2] * a[2][1];
        assert_eq!(m.det().unwrap().coeffs(), &[want]);
    }

    #[test]
    fn det_multiplicative_spot_check() {
        let z = RingSpec::integers();
        let a = MatR::from_integer_rows(&z, Modulus::Integers, &[vec![2, 1], vec![7, 4]]).unwrap();
        let b = MatR::from_integer_rows(&z, Modulus::Integers, &[vec![1, -3], vec![2, 5]]).unwrap();
        let lhs = a.mul(&b).unwrap().det().unwrap();
        let rhs = a.det().unwrap().mul(&b.det().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_sums_diagonal() {
        let z = RingSpec::integers();
        let m =
            MatR::from_integer_rows(&z, Modulus::Integers, &[vec![4, 6], vec![0, 7]]).unwrap();
        assert_eq!(m.trace().unwrap().coeffs(), &[11]);
    }

    #[test]
    fn unipotent_inverse_matches_exhaustive_search() {
        // diag(1+3, 1-3) mod 9: inverses found by brute-force search.
        let z = RingSpec::integers();
        let m = MatR::from_integer_rows(&z, Modulus::Mod(9), &[vec![4, 0], vec![0, -2]]).unwrap();
        let inv = m.inverse_unipotent(3, 1, 2).unwrap();
        let inv4 = (0..9).find(|x| (4 * x) % 9 == 1).unwrap();
        let inv7 = (0..9).find(|x| (7 * x) % 9 == 1).unwrap();
        assert_eq!(as_rows(&inv), vec![vec![inv4, 0], vec![0, inv7]]);
        assert_eq!((inv4, inv7), (7, 4));
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn inverse_contract_holds_off_diagonal() {
        let z = RingSpec::integers();
        let m = MatR::from_integer_rows(&z, Modulus::Mod(27), &[vec![1, 6], vec![3, 10]]).unwrap();
        let inv = m.inverse_unipotent(3, 1, 3).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn commutator_matches_hand_oracle() {
        // [1+3e12, 1+3e21] mod 27, all four factors multiplied by hand.
        let z = RingSpec::integers();
        let x = MatR::from_integer_rows(&z, Modulus::Mod(27), &[vec![1, 3], vec![0, 1]]).unwrap();
        let y = MatR::from_integer_rows(&z, Modulus::Mod(27), &[vec![1, 0], vec![3, 1]]).unwrap();
        let got = x.commutator(&y, 3).unwrap();
        let xi = [[1, -3], [0, 1]];
        let yi = [[1, 0], [-3, 1]];
        let want = mod2x2(
            mul2(mul2(xi, yi), mul2([[1, 3], [0, 1]], [[1, 0], [3, 1]])),
            27,
        );
        assert_eq!(as_rows(&got), vec![want[0].to_vec(), want[1].to_vec()]);
        assert_eq!(as_rows(&got), vec![vec![10, 0], vec![0, 19]]);
    }

    #[test]
    fn commutator_rejects_non_unipotent() {
        let z = RingSpec::integers();
        let x = MatR::from_integer_rows(&z, Modulus::Mod(27), &[vec![2, 0], vec![0, 14]]).unwrap();
        let y = MatR::from_integer_rows(&z, Modulus::Mod(27), &[vec![1, 3], vec![0, 1]]).unwrap();
        assert!(matches!(
            x.commutator(&y, 3),
            Err(Error::NotUnipotent(_))
        ));
    }

    #[test]
    fn det_congruence_worked_example() {
        // A = [[1,2],[0,2]], p = 3, r = 1: det(1+3A) = 28 = 1 mod 9 and
        // 1 + 3 tr(A) = 10 = 1 mod 9.
        let z = RingSpec::integers();
        let a = MatR::from_integer_rows(&z, Modulus::Integers, &[vec![1, 2], vec![0, 2]]).unwrap();
        let out = det_congruence_check(&a, 3, 1).unwrap();
        assert!(out.holds);
        assert_eq!(out.lhs.coeffs(), &[1]);
        assert_eq!(out.rhs.coeffs(), &[1]);
    }

    #[test]
    fn dimension_guard() {
        let z = RingSpec::integers();
        assert!(matches!(
            MatR::identity(&z, Modulus::Integers, 7),
            Err(Error::DimensionTooLarge { n: 7 })
        ));
        assert!(matches!(
            MatR::identity(&z, Modulus::Integers, 1),
            Err(Error::DimensionTooLarge { n: 1 })
        ));
    }

    #[test]
    fn unipotency_level_detection() {
        let z = RingSpec::integers();
        let m = MatR::from_integer_rows(&z, Modulus::Mod(81), &[vec![10, 0], vec![0, 73]]).unwrap();
        assert_eq!(m.unipotency_level(3, 4).unwrap(), 2);
        let id = MatR::identity(&z, Modulus::Mod(81), 2).unwrap();
        assert_eq!(id.unipotency_level(3, 4).unwrap(), 4);
    }

    #[test]
    fn prime_power_exponent_validation() {
        assert_eq!(prime_power_exponent(Modulus::Mod(27), 3).unwrap(), 3);
        assert!(prime_power_exponent(Modulus::Mod(12), 2).is_err());
        assert!(prime_power_exponent(Modulus::Integers, 3).is_err());
    }

    #[test]
    fn gaussian_matrix_product() {
        // (1 + 3i e12)(1 + 3i e21) over Z[i] mod 27: the (1,1) entry is
        // 1 + (3i)(3i) = 1 - 9 = -8.
        let zi = RingSpec::gaussian_integers();
        let m = Modulus::Mod(27);
        let one = RingElem::one(&zi, m).unwrap();
        let zero = RingElem::zero(&zi, m);
        let ti = RingElem::from_coeffs(&zi, m, vec![0, 3]).unwrap();
        let x = MatR::new(2, vec![one.clone(), ti.clone(), zero.clone(), one.clone()]).unwrap();
        let y = MatR::new(2, vec![one.clone(), zero, ti, one]).unwrap();
        let p = x.mul(&y).unwrap();
        assert_eq!(p.entry(0, 0).coeffs(), &[19, 0]);
        assert_eq!(p.entry(0, 1).coeffs(), &[0, 3]);
        assert_eq!(p.entry(1, 0).coeffs(), &[0, 3]);
        assert_eq!(p.entry(1, 1).coeffs(), &[1, 0]);
    }
}
