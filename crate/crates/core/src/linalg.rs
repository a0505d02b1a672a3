//! Exact dense linear algebra over the integers and the rationals.
//!
//! Everything is arbitrary precision. Determinants and ranks go through
//! fraction-free (Bareiss) elimination; kernels through reduced row echelon
//! form over the rationals.

use std::fmt;
use std::ops::Neg;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ring element usable as a matrix entry. Division must be exact whenever
/// the quotient exists in the ring (true for `BigInt` and `BigRational`).
pub trait Scalar: Num + Clone + Neg<Output = Self> + fmt::Debug + fmt::Display {}

impl<T> Scalar for T where T: Num + Clone + Neg<Output = T> + fmt::Debug + fmt::Display {}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type RationalMatrix = Matrix<BigRational>;
pub type IntMatrix = Matrix<BigInt>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {}",
                i,
                r.len(),
                ncols
            )));
        }
        Ok(Matrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    pub fn diagonal(diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, entries: out }
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Result<T> {
        let n = self.require_square()?;
        Ok((0..n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Exact determinant by Bareiss fraction-free elimination. The empty
    /// matrix has determinant 1.
    pub fn determinant(&self) -> Result<T> {
        let n = self.require_square()?;
        Ok(bareiss_det(self.entries.clone(), n))
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Result<Self> {
        let n = self.require_square()?;
        self.sub(&Self::identity(n))
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Result<Self> {
        let n = self.require_square()?;
        Self::identity(n).sub(self)
    }

    pub fn pow_nonneg(&self, k: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
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

    /// Classical adjugate from cofactors. Fine for the small sizes used here.
    pub fn adjugate(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).determinant()?;
                let cof = if (i + j) % 2 == 0 { minor } else { -minor };
                adj.set(i, j, cof);
            }
        }
        Ok(adj)
    }

    /// Rank by fraction-free elimination.
    pub fn fraction_free_rank(&self) -> usize {
        fraction_free_rank(self.entries.clone(), self.rows, self.cols)
    }

    /// Action on the i-th exterior power, in the lexicographic basis of
    /// i-subsets. Entry (I, J) is the minor `det self[I, J]`.
    pub fn exterior_power(&self, degree: usize) -> Result<Self> {
        let n = self.require_square()?;
        if degree > n {
            return Err(Error::DegreeOutOfRange { degree, max: n });
        }
        let subsets = subsets(n, degree);
        let size = subsets.len();
        let mut out = Self::zeros(size, size);
        for (a, rows) in subsets.iter().enumerate() {
            for (b, cols) in subsets.iter().enumerate() {
                out.set(a, b, self.submatrix(rows, cols).determinant()?);
            }
        }
        Ok(out)
    }
}

/// i-subsets of {0..n} in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(size).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn bareiss_det<T: Scalar>(mut a: Vec<T>, n: usize) -> T {
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return T::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign_flip = !sign_flip;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = pivot.clone() * a[i * n + j].clone() - a[i * n + k].clone() * a[k * n + j].clone();
                a[i * n + j] = v / prev.clone();
            }
            a[i * n + k] = T::zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

fn fraction_free_rank<T: Scalar>(mut a: Vec<T>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = T::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, p * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let factor = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = pivot.clone() * a[i * cols + j].clone() - factor.clone() * a[rank * cols + j].clone();
                a[i * cols + j] = v / prev.clone();
            }
            a[i * cols + c] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

impl RationalMatrix {
    /// Rank and a kernel basis read off the reduced row echelon form.
    ///
    /// Each kernel vector has a 1 in one free column and zeros in the other
    /// free columns.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<BigRational>>) {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref.get(r, f).clone();
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }

    pub fn rank(&self) -> usize {
        self.to_integer_rows().fraction_free_rank()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(r * m.cols + j, p * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Scales every row by the lcm of its denominators, giving an integer
    /// matrix with the same rank.
    pub fn to_integer_rows(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            entries.extend(row.iter().map(|x| x.numer() * (&lcm / x.denom())));
        }
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.require_square()?;
        let mut aug = RationalMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return Err(Error::NotInvertible("determinant is zero".into()));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(rref.submatrix(&rows, &cols))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<RationalMatrix> {
        if k < 0 {
            self.inverse()?.pow_nonneg(k.unsigned_abs())
        } else {
            self.pow_nonneg(k as u64)
        }
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.entries.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Inverse over the integers; exists iff the determinant is a unit.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let det = self.determinant()?;
        if !det.abs().is_one() {
            return Err(Error::NotInvertible(format!(
                "det = {det}, not a unit in Z"
            )));
        }
        Ok(self.adjugate()?.scale(&det))
    }

    /// Integer power; negative exponents need a unimodular matrix.
    pub fn pow(&self, k: i64) -> Result<IntMatrix> {
        if k < 0 {
            self.inverse()?.pow_nonneg(k.unsigned_abs())
        } else {
            self.pow_nonneg(k as u64)
        }
    }

    /// Nonzero Smith invariants d1 | d2 | ... | dr, each positive.
    ///
    /// Only the invariants are tracked, not the unimodular transforms.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.entries.clone();
        let at = |i: usize, j: usize| i * cols + j;
        let mut invariants = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            // smallest nonzero entry in the trailing block becomes the pivot
            let pivot_pos = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[at(i, j)].is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| a[at(i1, j1)].abs().cmp(&a[at(i2, j2)].abs()));
            let Some((pi, pj)) = pivot_pos else { break };
            for j in 0..cols {
                a.swap(at(t, j), at(pi, j));
            }
            for i in 0..rows {
                a.swap(at(i, t), at(i, pj));
            }
            loop {
                let pivot = a[at(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = a[at(i, t)].div_floor(&pivot);
                    if !q.is_zero() {
                        for j in t..cols {
                            let v = &a[at(i, j)] - &q * &a[at(t, j)];
                            a[at(i, j)] = v;
                        }
                    }
                    dirty |= !a[at(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    let q = a[at(t, j)].div_floor(&pivot);
                    if !q.is_zero() {
                        for i in t..rows {
                            let v = &a[at(i, j)] - &q * &a[at(i, t)];
                            a[at(i, j)] = v;
                        }
                    }
                    dirty |= !a[at(t, j)].is_zero();
                }
                if !dirty {
                    // row and column are clear; enforce divisibility of the rest
                    let bad = (t + 1..rows)
                        .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                        .find(|&(i, j)| !a[at(i, j)].is_multiple_of(&pivot));
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            for j in t..cols {
                                let v = &a[at(t, j)] + &a[at(i, j)];
                                a[at(t, j)] = v;
                            }
                        }
                    }
                }
                // move the smallest nonzero remainder of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let v = &a[at(i, t)];
                    if !v.is_zero() && v.abs() < a[at(best.0, best.1)].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let v = &a[at(t, j)];
                    if !v.is_zero() && v.abs() < a[at(best.0, best.1)].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    for j in 0..cols {
                        a.swap(at(t, j), at(best.0, j));
                    }
                } else if best.1 != t {
                    for i in 0..rows {
                        a.swap(at(i, t), at(i, best.1));
                    }
                }
            }
            invariants.push(a[at(t, t)].abs());
            t += 1;
        }
        invariants
    }
}

// ---------------------------------------------------------------------------
// text formats

/// Parses "p/q", "p", or a decimal like "0.25" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = int_part.abs() * &scale + frac_num;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Always "p/q", including integers ("3/1").
pub fn rational_pq(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Sign of a nonzero value as ±1, or 0.
pub fn signum_i8<T: Signed>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Str(String),
    Int(i64),
    Float(f64),
}

impl Entry {
    fn into_rational(self) -> Result<BigRational> {
        match self {
            Entry::Str(s) => parse_rational(&s),
            Entry::Int(i) => Ok(BigRational::from_integer(i.into())),
            Entry::Float(f) => BigRational::from_float(f)
                .ok_or_else(|| Error::Parse(format!("non-finite matrix entry {f}"))),
        }
    }

    fn into_integer(self) -> Result<BigInt> {
        let q = self.into_rational()?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::Parse(format!("integer matrix entry expected, got {q}")))
        }
    }
}

/// Serde adapter writing a `BigInt` as a decimal string; reads strings or
/// JSON integers.
pub mod bigint_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        Entry::deserialize(d)?.into_integer().map_err(de::Error::custom)
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(rational_pq).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Entry>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(Entry::into_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<Entry>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(Entry::into_integer).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shorthand used throughout tests and builtins.
pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .expect("rectangular literal")
}

pub fn rat_matrix(rows: &[&[(i64, i64)]]) -> RationalMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect())
            .collect(),
    )
    .expect("rectangular literal")
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}
