//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision. Vectors carry their rank implicitly
//! as the length of the coordinate tuple.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of a lattice `Z^n`, or of its dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<BigInt>);

/// A rational point of `Q^n`. Coordinates are always in lowest terms with
/// positive denominators (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigInt::zero(); rank])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        dot(&self.0, &other.0)
    }

    pub fn dot_rational(&self, other: &RationalVector) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigRational::zero(), |acc, (a, b)| {
                acc + b * BigRational::from_integer(a.clone())
            })
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    /// Greatest common divisor of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        gcd_all(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides by the gcd of the coordinates.
    pub fn primitive(&self) -> Result<Self> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Self(self.0.iter().map(|c| c / &g).collect()))
    }

    /// Appends coordinates, e.g. to move from `N` to `N + Z^k`.
    pub fn extended(&self, tail: &[BigInt]) -> Self {
        let mut coords = self.0.clone();
        coords.extend_from_slice(tail);
        Self(coords)
    }

    pub fn truncated(&self, len: usize) -> Self {
        Self(self.0[..len].to_vec())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    /// Builds a vector from `(numerator, denominator)` pairs.
    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        Self(
            coords
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector::from_i64s(coords).to_rational()
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigRational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        if self.is_integral() {
            Some(LatticeVector(
                self.0.iter().map(BigRational::to_integer).collect(),
            ))
        } else {
            None
        }
    }

    /// Least common multiple of the denominators.
    pub fn denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `(d * self, d)` with `d` the common denominator.
    pub fn clear_denominators(&self) -> (LatticeVector, BigInt) {
        let d = self.denominator();
        let coords = self
            .0
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (LatticeVector(coords), d)
    }

    /// The primitive lattice vector on the ray through this point.
    pub fn primitive_direction(&self) -> Result<LatticeVector> {
        self.clear_denominators().0.primitive()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn extended(&self, tail: &[BigRational]) -> Self {
        let mut coords = self.0.clone();
        coords.extend_from_slice(tail);
        Self(coords)
    }

    pub fn dot(&self, other: &RationalVector) -> BigRational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<&LatticeVector> for RationalVector {
    fn from(v: &LatticeVector) -> Self {
        v.to_rational()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn gcd_all(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides a non-zero integer row by its content; the zero row is returned
/// unchanged.
pub(crate) fn make_primitive(row: &mut [BigInt]) {
    let g = gcd_all(row);
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Dense integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::RankMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(cols, &rows).expect("rectangular input")
    }

    pub fn from_vectors(cols: usize, vectors: &[LatticeVector]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.0.clone()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::RankMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.row_vectors();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.row_vectors())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rank of a list of integer rows.
pub fn rank_of_rows(rows: &[Vec<BigInt>]) -> usize {
    echelon_rows(rows).len()
}

/// Fraction-free row echelon form; zero rows dropped.
fn echelon_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let a = m[rank][col].clone();
            let b = m[i][col].clone();
            let pivot = m[rank].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x = &*x * &a - p * &b;
            }
            make_primitive(&mut m[i]);
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Reduced row echelon form over `Q`, zero rows removed. Canonical for the
/// row space.
pub fn rref(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for c in m[rank].iter_mut() {
            *c = &*c / &pivot;
        }
        for i in 0..m.len() {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            let pivot = m[rank].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot) {
                *x = &*x - &factor * p;
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

/// Canonical primitive integer basis of the row space of `rows`: the RREF rows
/// scaled to primitive integer vectors.
pub fn canonical_subspace_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rational: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    rref(&rational)
        .into_iter()
        .map(|r| {
            RationalVector(r)
                .primitive_direction()
                .expect("rref rows are non-zero")
                .0
        })
        .collect()
}

/// Orthogonal projection of `v` onto the complement of the span of `basis`,
/// scaled to a primitive integer vector. Returns `None` if the projection is
/// zero.
pub fn project_off(v: &[BigInt], basis: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        let mut out = v.to_vec();
        if out.iter().all(Zero::is_zero) {
            return None;
        }
        make_primitive(&mut out);
        return Some(out);
    }
    let to_rat =
        |r: &[BigInt]| RationalVector(r.iter().cloned().map(BigRational::from_integer).collect());
    // Gram-Schmidt over Q.
    let mut ortho: Vec<RationalVector> = Vec::new();
    for b in basis {
        let mut u = to_rat(b);
        for o in &ortho {
            let c = u.dot(o) / o.dot(o);
            u = &u - &o.scale(&c);
        }
        if !u.is_zero() {
            ortho.push(u);
        }
    }
    let mut x = to_rat(v);
    for o in &ortho {
        let c = x.dot(o) / o.dot(o);
        x = &x - &o.scale(&c);
    }
    if x.is_zero() {
        None
    } else {
        Some(x.primitive_direction().expect("non-zero").0)
    }
}

/// Smith normal form `U * A * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Non-zero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with the smallest-absolute-value pivot rule.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.row_vectors();
    let mut u = IntMatrix::identity(m).row_vectors();
    // V is tracked through its transpose so column operations become row operations.
    let mut vt = IntMatrix::identity(n).row_vectors();

    fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
        let (t, s) = if target < src {
            let (lo, hi) = rows.split_at_mut(src);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = rows.split_at_mut(target);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in t.iter_mut().zip(s.iter()) {
            *x -= q * y;
        }
    }
    fn col_axpy(rows: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt) {
        for r in rows.iter_mut() {
            let y = r[src].clone();
            r[target] -= q * y;
        }
    }
    fn swap_cols(rows: &mut [Vec<BigInt>], a: usize, b: usize) {
        for r in rows.iter_mut() {
            r.swap(a, b);
        }
    }

    let mut t = 0;
    while t < m.min(n) {
        // Smallest non-zero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        vt.swap(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = &d[i][t] / &d[t][t];
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = &d[t][j] / &d[t][t];
                col_axpy(&mut d, j, t, &q);
                row_axpy(&mut vt, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Move the smallest remainder in the pivot row/column into place.
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[i][t].is_zero() && d[i][t].abs() < d[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[t][j].is_zero() && d[t][j].abs() < d[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut d, t, best.1);
                    vt.swap(t, best.1);
                }
                continue;
            }
            // Divisibility: the pivot must divide the whole trailing block.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }

    SmithNormalForm {
        u: IntMatrix::from_rows(m, &u).expect("square"),
        d: IntMatrix::from_rows(n, &d).expect("rectangular"),
        v: IntMatrix::from_rows(n, &vt).expect("square").transpose(),
    }
}

/// A finitely generated abelian group `Z^free_rank + sum Z/d_j` with
/// `d_j | d_{j+1}` and every `d_j >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// An element of a group presented by [`AbelianGroupPresentation`]: free
/// coordinates and torsion residues in `[0, d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassDegree {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl ClassDegree {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

impl fmt::Display for ClassDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        write!(f, "({})", free.join(","))?;
        if !self.torsion.is_empty() {
            let tors: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
            write!(f, "+[{}]", tors.join(","))?;
        }
        Ok(())
    }
}

/// The cokernel `Z^rows / im(A)` together with the images of the standard
/// basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: AbelianGroupPresentation,
    /// Class of `e_j` for each row index `j`.
    pub degrees: Vec<ClassDegree>,
    /// Rank of `A`; when smaller than the number of columns the map `A` is not
    /// injective.
    pub map_rank: usize,
    pub source_rank: usize,
}

impl Cokernel {
    pub fn is_injective(&self) -> bool {
        self.map_rank == self.source_rank
    }

    /// Degree of `sum_j exps[j] e_j`.
    pub fn degree_of(&self, exps: &[BigInt]) -> ClassDegree {
        let free_rank = self.group.free_rank;
        let mut free = vec![BigInt::zero(); free_rank];
        let mut torsion = vec![BigInt::zero(); self.group.torsion.len()];
        for (e, deg) in exps.iter().zip(&self.degrees) {
            for (acc, x) in free.iter_mut().zip(&deg.free) {
                *acc += e * x;
            }
            for (acc, x) in torsion.iter_mut().zip(&deg.torsion) {
                *acc += e * x;
            }
        }
        for (acc, d) in torsion.iter_mut().zip(&self.group.torsion) {
            *acc = acc.mod_floor(d);
        }
        ClassDegree { free, torsion }
    }
}

/// Cokernel of `A` read off the Smith normal form. Free coordinates are put in
/// Hermite normal form so that each free row starts with a positive entry.
pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let snf = smith_normal_form(a);
    let m = a.rows();
    let factors = snf.invariant_factors();
    let r = factors.len();

    let torsion_rows: Vec<usize> = (0..r).filter(|&i| !factors[i].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_rows.iter().map(|&i| factors[i].clone()).collect();
    let free_rows: Vec<Vec<BigInt>> = (r..m).map(|i| snf.u.row(i).to_vec()).collect();
    let free_rows = hermite_rows(free_rows);

    let degrees = (0..m)
        .map(|j| ClassDegree {
            free: free_rows.iter().map(|row| row[j].clone()).collect(),
            torsion: torsion_rows
                .iter()
                .map(|&i| snf.u.get(i, j).mod_floor(&factors[i]))
                .collect(),
        })
        .collect();

    Cokernel {
        group: AbelianGroupPresentation {
            free_rank: m - r,
            torsion,
        },
        degrees,
        map_rank: r,
        source_rank: a.cols(),
    }
}

/// Row-style Hermite normal form of a full-row-rank integer matrix: positive
/// pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        // Euclid on the column entries below r.
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let src = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if q.is_zero() {
                continue;
            }
            let src = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    rows
}

/// Floor of a rational number.
pub fn floor(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
