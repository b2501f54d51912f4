//! Exact rational scalars, tolerance policy, and small dense rational linear algebra.
//!
//! The polytope engine works exclusively with [`Rational`] values. Float data
//! coming from the Lie/sampling path is brought over with [`rationalize`],
//! which prefers a nearby small-denominator rational and otherwise falls back
//! to the exact binary value of the `f64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type QVector = Vec<Rational>;

pub const DEFAULT_ABS_TOL: f64 = 1e-9;
pub const DEFAULT_DEDUPE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarMode {
    ExactRational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarPolicy {
    pub mode: ScalarMode,
    pub abs_tol: f64,
    pub dedupe_tol: f64,
}

impl ScalarPolicy {
    pub const fn exact() -> Self {
        Self { mode: ScalarMode::ExactRational, abs_tol: DEFAULT_ABS_TOL, dedupe_tol: DEFAULT_DEDUPE_TOL }
    }

    pub const fn float() -> Self {
        Self { mode: ScalarMode::Float, abs_tol: DEFAULT_ABS_TOL, dedupe_tol: DEFAULT_DEDUPE_TOL }
    }

    /// Float-mode equality. Exact mode never consults a tolerance, so callers
    /// in exact mode compare [`Rational`] values directly instead.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        match self.mode {
            ScalarMode::Float => (a - b).abs() <= self.abs_tol,
            ScalarMode::ExactRational => a == b,
        }
    }
}

impl Default for ScalarPolicy {
    fn default() -> Self {
        Self::float()
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(values: &[i64]) -> QVector {
    values.iter().map(|&v| int(v)).collect()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Ratios of huge integers can overflow the direct conversion.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn to_f64_vec(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Exact binary value of a finite `f64`.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite scalar {x}")))
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents). Returns `None` when no convergent lies
/// within `tol` of `x`.
pub fn snap_rational(x: f64, tol: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let ax = x.abs();
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    let mut r = ax;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let a_i = a as i128;
        let p2 = a_i * p1 + p0;
        let q2 = a_i * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let approx = p1 as f64 / q1 as f64;
        if (approx - ax).abs() <= tol {
            return Some(Rational::new(BigInt::from(sign as i128 * p1), BigInt::from(q1)));
        }
        let rem = r - a;
        if rem <= 0.0 {
            break;
        }
        r = 1.0 / rem;
    }
    None
}

/// Snap to a small-denominator rational within `tol`, otherwise take the exact
/// binary value.
pub fn rationalize(x: f64, tol: f64) -> Result<Rational> {
    match snap_rational(x, tol * x.abs().max(1.0), 1_000_000) {
        Some(q) => Ok(q),
        None => from_f64_exact(x),
    }
}

pub fn rationalize_vec(v: &[f64], tol: f64) -> Result<QVector> {
    v.iter().map(|&x| rationalize(x, tol)).collect()
}

/// Parse `"p/q"`, `"n"`, or a decimal literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    // Decimal literal: exact base-10 value.
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad scalar `{s}`")))?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub struct ExactDisplay<'a>(pub &'a [Rational]);

impl fmt::Display for ExactDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(q))?;
        }
        write!(f, ")")
    }
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod exact_serde {
    use super::{format_rational, Rational};
    use serde::Serializer;

    pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn vector<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn vectors<S: Serializer>(vs: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(vs.iter().map(|v| v.iter().map(format_rational).collect::<Vec<_>>()))
    }

    pub fn opt_vector<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => vector(v, s),
            None => s.serialize_none(),
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> QVector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn centroid(points: &[&QVector]) -> Result<QVector> {
    let first = points.first().ok_or(Error::Empty("centroid of no points"))?;
    let mut acc = vec![Rational::zero(); first.len()];
    for p in points {
        acc = add(&acc, p);
    }
    Ok(scale(&acc, &Rational::new(BigInt::one(), BigInt::from(points.len()))))
}

/// Scale a nonzero vector to the primitive integer vector on the same ray.
pub fn primitive(v: &[Rational]) -> QVector {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, actual: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[QVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: v.len() });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn is_orthogonal(&self) -> bool {
        self.rows == self.cols && self.transpose().mul(self).map(|p| p == QMatrix::identity(self.rows)).unwrap_or(false)
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_iterator(self.rows, self.cols, self.data.iter().map(to_f64))
    }
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref(rows: &mut [QVector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r] = scale(&rows[r], &inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(vectors: &[QVector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut rows = vectors.to_vec();
    rref(&mut rows).len()
}

/// Basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[QVector], ncols: usize) -> Vec<QVector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Solve the square system `a x = b`; `None` if singular.
pub fn solve(a: &[QVector], b: &[Rational]) -> Option<QVector> {
    let n = a.len();
    let mut aug: Vec<QVector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Greedy maximal linearly independent subset, in input order.
pub fn independent_subset(vectors: &[QVector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<QVector> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        basis.push(v.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

pub fn affine_dim(points: &[&QVector]) -> isize {
    match points.split_first() {
        None => -1,
        Some((base, rest)) => {
            let diffs: Vec<QVector> = rest.iter().map(|p| sub(p, base)).collect();
            rank(&diffs) as isize
        }
    }
}

pub fn lex_cmp(a: &[Rational], b: &[Rational]) -> Ordering {
    a.cmp(b)
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snaps_near_integers_and_simple_fractions() {
        assert_eq!(rationalize(2.9999999999999, 1e-9).unwrap(), int(3));
        assert_eq!(rationalize(-0.5, 1e-9).unwrap(), frac(-1, 2));
        assert_eq!(rationalize(1.0 / 3.0, 1e-9).unwrap(), frac(1, 3));
    }

    #[test]
    fn irrational_values_fall_back_to_exact_binary() {
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let q = rationalize(x, 1e-15).unwrap();
        assert_eq!(to_f64(&q), x);
    }

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&frac(-2, 4)), "-1/2");
    }

    #[test]
    fn nullspace_and_rank_agree() {
        let rows = vec![qvec(&[1, 1, 1]), qvec(&[1, -1, 0])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(dot(r, &ns[0]).is_zero());
        }
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![frac(1, 2), frac(-3, 4), int(0)];
        assert_eq!(primitive(&v), qvec(&[2, -3, 0]));
    }

    #[test]
    fn solve_square_system() {
        let a = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        let x = solve(&a, &qvec(&[3, 5])).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        assert!(solve(&[qvec(&[1, 1]), qvec(&[2, 2])], &qvec(&[1, 2])).is_none());
    }

    #[test]
    fn exact_orthogonality() {
        let rot = QMatrix::from_rows(&[qvec(&[0, -1]), qvec(&[1, 0])]).unwrap();
        assert!(rot.is_orthogonal());
        let shear = QMatrix::from_rows(&[qvec(&[1, 1]), qvec(&[0, 1])]).unwrap();
        assert!(!shear.is_orthogonal());
    }
}
