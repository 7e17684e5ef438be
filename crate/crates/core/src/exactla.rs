//! Exact rational linear algebra: matrices, kernels, the subspace lattice,
//! quotients and annihilators.
//!
//! Subspaces are stored in a canonical form (the reduced row echelon form of a
//! spanning set, read column-wise as a reduced column echelon basis), so two
//! [`Subspace`] values are equal exactly when they span the same space.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{ensure_dim, Error, Result};

/// Exact rational scalar (always normalized, positive denominator).
pub type Scalar = BigRational;

/// A coordinate vector over [`Scalar`].
pub type Vector = Vec<Scalar>;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"n"`, `"-n"` or `"p/q"`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let trimmed = text.trim();
    let parsed = Scalar::from_str(trimmed)
        .map_err(|_| Error::Malformed(format!("not a rational literal: {trimmed:?}")))?;
    Ok(parsed)
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(s: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| s * x).collect()
}

/// Linear combination `Σ coeffs[i] * vectors[i]` in dimension `n`.
pub fn combine(n: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut out = zero_vector(n);
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must share `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            ensure_dim(cols, row.len())?;
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Builds an `n × columns.len()` matrix from column vectors of length `n`.
    pub fn from_columns(n: usize, columns: &[Vector]) -> Result<Self> {
        for c in columns {
            ensure_dim(n, c.len())?;
        }
        Ok(Self::from_fn(n, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(cols, data).expect("ragged integer literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i).clone())
            })
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        ensure_dim(self.cols, rhs.rows)?;
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        ensure_dim(self.cols, v.len())?;
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `vᵀ · self`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Result<Vector> {
        ensure_dim(self.rows, v.len())?;
        Ok((0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * self.get(i, j)).sum())
            .collect())
    }

    /// Bilinear evaluation `uᵀ · self · v`.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar> {
        let mv = self.mul_vec(v)?;
        ensure_dim(self.rows, u.len())?;
        Ok(dot(u, &mv))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        ensure_dim(self.rows, rhs.rows)?;
        ensure_dim(self.cols, rhs.cols)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| s * x).collect() }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, blocks: &[Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            ensure_dim(cols, b.cols)?;
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(rows: usize, blocks: &[Matrix]) -> Result<Matrix> {
        for b in blocks {
            ensure_dim(rows, b.rows)?;
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns. Pivots are normalized
    /// to 1; the pivot row for each column is the lowest-index candidate.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
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
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product with incompatible shapes")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| DisplayRow(self.row(i)))).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", DisplayRow(self.row(i)))?;
        }
        Ok(())
    }
}

/// Formats a vector as `[a, b, c]` with rationals in `p/q` form.
pub struct DisplayRow<'a>(pub &'a [Scalar]);

impl fmt::Display for DisplayRow<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for DisplayRow<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{x : m·x = 0}` in canonical form.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref();
    let n = m.cols();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = zero_vector(n);
        v[free] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, free).clone();
        }
        basis.push(v);
    }
    Subspace::span_unchecked(n, basis)
}

/// Linear subspace of `Qⁿ` in canonical echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    // RREF rows of a spanning set; nonzero, pivot entries equal to 1.
    echelon: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient_dim: n, echelon: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            echelon: (0..n).map(|i| unit_vector(n, i)).collect(),
            pivots: (0..n).collect(),
        }
    }

    /// Span of the given vectors (any spanning set, dependent vectors allowed).
    pub fn span(n: usize, vectors: Vec<Vector>) -> Result<Self> {
        for v in &vectors {
            ensure_dim(n, v.len())?;
        }
        Ok(Self::span_unchecked(n, vectors))
    }

    pub fn from_i64(n: usize, vectors: &[&[i64]]) -> Self {
        let vs = vectors.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        Self::span(n, vs).expect("vector length must match ambient dimension")
    }

    pub fn coordinate_span(n: usize, indices: &[usize]) -> Self {
        Self::span_unchecked(n, indices.iter().map(|&i| unit_vector(n, i)).collect())
    }

    fn span_unchecked(n: usize, vectors: Vec<Vector>) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        let m = Matrix::from_rows(n, vectors).expect("lengths checked");
        let (r, pivots) = m.rref();
        let echelon = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient_dim: n, echelon, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.echelon.len()
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis vectors (the columns of [`Subspace::basis`]).
    pub fn vectors(&self) -> &[Vector] {
        &self.echelon
    }

    /// `ambient_dim × dim` matrix whose columns form the reduced column
    /// echelon basis.
    pub fn basis(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.echelon).expect("consistent lengths")
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v ∉ self`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = combine(self.ambient_dim, &coeffs, &self.echelon);
        (recon.as_slice() == v).then_some(coeffs)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `b ⊆ self`.
    pub fn contains(&self, b: &Subspace) -> Result<bool> {
        ensure_dim(self.ambient_dim, b.ambient_dim)?;
        Ok(b.echelon.iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, b: &Subspace) -> Result<Subspace> {
        ensure_dim(self.ambient_dim, b.ambient_dim)?;
        let mut all = self.echelon.clone();
        all.extend(b.echelon.iter().cloned());
        Ok(Self::span_unchecked(self.ambient_dim, all))
    }

    /// Intersection computed from the kernel of `[A | -B]`.
    pub fn intersect(&self, b: &Subspace) -> Result<Subspace> {
        ensure_dim(self.ambient_dim, b.ambient_dim)?;
        let n = self.ambient_dim;
        if self.is_zero() || b.is_zero() {
            return Ok(Self::zero(n));
        }
        let stacked = Matrix::hstack(n, &[self.basis(), -&b.basis()])?;
        let ker = kernel(&stacked);
        let da = self.dim();
        let vectors = ker
            .vectors()
            .iter()
            .map(|xy| combine(n, &xy[..da], &self.echelon))
            .collect();
        Ok(Self::span_unchecked(n, vectors))
    }

    /// Image of this subspace under `m` (an `r × ambient_dim` matrix).
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        ensure_dim(self.ambient_dim, m.cols())?;
        let vs = self.echelon.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self::span_unchecked(m.rows(), vs))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(Q^{}, dim {})", self.ambient_dim, self.dim())?;
        f.debug_list().entries(self.echelon.iter().map(|v| DisplayRow(v))).finish()
    }
}

/// Column span `{m·x}` of a matrix.
pub fn column_space(m: &Matrix) -> Subspace {
    Subspace::span_unchecked(m.rows(), m.column_vectors())
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// `b ⊆ a`.
pub fn contains(a: &Subspace, b: &Subspace) -> Result<bool> {
    a.contains(b)
}

/// `{φ : φ(s) = 0}` with the dual of `Qⁿ` identified with `Qⁿ` by the
/// standard pairing.
pub fn annihilator(s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    let m = Matrix::from_rows(n, s.vectors().to_vec()).expect("consistent lengths");
    kernel(&m)
}

/// A quotient `ambient / sub` together with a deterministic section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient: Subspace,
    sub: Subspace,
    section: Matrix,
    // Left inverse of [section | sub basis]; row i gives coordinate i.
    left_inverse: Matrix,
}

/// Builds `ambient / sub`. The section extends `sub`'s canonical basis greedily
/// by `ambient`'s canonical basis vectors in index order.
pub fn quotient(ambient: &Subspace, sub: &Subspace) -> Result<QuotientSpace> {
    if !ambient.contains(sub)? {
        return Err(Error::NotContained);
    }
    let n = ambient.ambient_dim();
    let mut span = sub.clone();
    let mut section = Vec::new();
    for v in ambient.vectors() {
        if !span.contains_vector(v) {
            section.push(v.clone());
            let mut next = span.vectors().to_vec();
            next.push(v.clone());
            span = Subspace::span_unchecked(n, next);
        }
    }
    let mut columns = section.clone();
    columns.extend(sub.vectors().iter().cloned());
    let left_inverse = left_inverse(n, &columns);
    Ok(QuotientSpace {
        ambient: ambient.clone(),
        sub: sub.clone(),
        section: Matrix::from_columns(n, &section)?,
        left_inverse,
    })
}

/// Left inverse `L` (with `L·M = I`) of the full-column-rank matrix whose
/// columns are `columns`.
fn left_inverse(n: usize, columns: &[Vector]) -> Matrix {
    let r = columns.len();
    let m = Matrix::from_columns(n, columns).expect("consistent lengths");
    let augmented = Matrix::hstack(n, &[m, Matrix::identity(n)]).expect("same row count");
    let (red, pivots) = augmented.rref();
    debug_assert!(pivots.iter().take(r).copied().eq(0..r));
    Matrix::from_fn(r, n, |i, j| red.get(i, r + j).clone())
}

impl QuotientSpace {
    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// `n × dim` matrix of coset representatives.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn section_vectors(&self) -> Vec<Vector> {
        self.section.column_vectors()
    }

    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    /// Splits `v ∈ ambient` as `section·c + s` with `s ∈ sub`; returns `c`.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vector> {
        ensure_dim(self.ambient.ambient_dim(), v.len())?;
        if !self.ambient.contains_vector(v) {
            return Err(Error::NotContained);
        }
        let all = self.left_inverse.mul_vec(v)?;
        Ok(all[..self.dim()].to_vec())
    }

    /// The canonical representative `section·c` of the coset `v + sub`.
    pub fn representative(&self, v: &[Scalar]) -> Result<Vector> {
        let c = self.coordinates(v)?;
        self.section.mul_vec(&c)
    }

    pub fn lift(&self, coords: &[Scalar]) -> Result<Vector> {
        self.section.mul_vec(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_i64(n, vs)
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(3)).is_zero());
        assert_eq!(kernel(&Matrix::zeros(2, 2)), Subspace::full(2));
        let k = kernel(&Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert_eq!(k, sp(2, &[&[1, -1]]));
    }

    #[test]
    fn kernel_of_empty_row_matrix_is_everything() {
        assert_eq!(kernel(&Matrix::zeros(0, 4)), Subspace::full(4));
    }

    #[test]
    fn lattice_examples() {
        let e1 = sp(3, &[&[1, 0, 0]]);
        let e2 = sp(3, &[&[0, 1, 0]]);
        assert_eq!(e1.sum(&e2).unwrap(), sp(3, &[&[1, 0, 0], &[0, 1, 0]]));
        let a = sp(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), e2);
        assert!(Subspace::full(3).contains(&e1).unwrap());
        assert!(!e1.contains(&Subspace::full(3)).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.intersect(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient(&Subspace::full(2), &sp(2, &[&[1, 0]])).unwrap();
        assert_eq!(q.section_vectors(), vec![vec![int(0), int(1)]]);

        let q = quotient(&Subspace::full(3), &sp(3, &[&[1, 1, 0]])).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.section_vectors(), vec![vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]]);

        let s = sp(4, &[&[1, 2, 0, 1], &[0, 1, 1, 1]]);
        assert_eq!(quotient(&s, &s).unwrap().dim(), 0);
    }

    #[test]
    fn quotient_requires_containment() {
        let err = quotient(&sp(2, &[&[1, 0]]), &sp(2, &[&[0, 1]])).unwrap_err();
        assert_eq!(err, Error::NotContained);
    }

    #[test]
    fn quotient_coordinates_split_off_the_sub() {
        let q = quotient(&Subspace::full(3), &sp(3, &[&[1, 1, 0]])).unwrap();
        let v = vec![int(3), int(1), int(5)];
        let c = q.coordinates(&v).unwrap();
        let rest = sub_vectors(&v, &q.lift(&c).unwrap());
        assert!(q.sub().contains_vector(&rest));
        assert_eq!(q.representative(&vec![int(1), int(1), int(0)]).unwrap(), zero_vector(3));
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(annihilator(&sp(3, &[&[1, 0, 0]])), sp(3, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(annihilator(&Subspace::zero(3)), Subspace::full(3));
        assert_eq!(annihilator(&sp(2, &[&[1, 1]])), sp(2, &[&[1, -1]]));
    }

    #[test]
    fn scalar_literals() {
        assert_eq!(parse_scalar("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert!(parse_scalar("1.5").is_err());
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let big = int(i64::MAX);
        let m = Matrix::from_rows(2, vec![vec![big.clone(), big.clone() + int(1)], vec![big.clone(), big]]).unwrap();
        assert_eq!(m.rank(), 2);
        let p = &m * &m;
        assert!(p.get(0, 0) > &int(i64::MAX));
    }

    fn small_vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=count)
    }

    fn to_subspace(n: usize, vs: &[Vec<i64>]) -> Subspace {
        Subspace::span(n, vs.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_basis_choice(vs in small_vectors(5, 4), mix in prop::collection::vec(-2i64..=2, 16)) {
            let a = to_subspace(5, &vs);
            // An invertible upper-triangular change of basis.
            let d = a.dim();
            let mut changed = Vec::new();
            for i in 0..d {
                let mut coeffs = zero_vector(d);
                coeffs[i] = int(1 + mix[i % mix.len()].abs());
                for j in (i + 1)..d {
                    coeffs[j] = int(mix[(i * 4 + j) % mix.len()]);
                }
                changed.push(combine(5, &coeffs, a.vectors()));
            }
            prop_assert_eq!(Subspace::span(5, changed).unwrap(), a);
        }

        #[test]
        fn annihilator_is_an_involution(vs in small_vectors(5, 4)) {
            let a = to_subspace(5, &vs);
            prop_assert_eq!(annihilator(&annihilator(&a)), a.clone());
            prop_assert_eq!(annihilator(&a).dim() + a.dim(), 5);
        }

        #[test]
        fn lattice_dimension_formula(va in small_vectors(5, 4), vb in small_vectors(5, 4)) {
            let a = to_subspace(5, &va);
            let b = to_subspace(5, &vb);
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
            prop_assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
            prop_assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        }

        #[test]
        fn quotient_section_complements_sub(va in small_vectors(5, 4), vb in small_vectors(5, 2)) {
            let amb = to_subspace(5, &va);
            let sub = amb.intersect(&to_subspace(5, &vb)).unwrap();
            let q = quotient(&amb, &sub).unwrap();
            let img = column_space(q.section());
            prop_assert_eq!(img.dim(), amb.dim() - sub.dim());
            prop_assert!(img.intersect(&sub).unwrap().is_zero());
            prop_assert_eq!(img.sum(&sub).unwrap(), amb);
        }
    }
}
