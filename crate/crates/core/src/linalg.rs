//! Exact dense linear algebra over a prime field `F_p` or the rationals.
//!
//! Every other module funnels its hom-space, kernel and null-homotopy
//! computations through [`Matrix::rref`], so the two elimination paths here
//! (plain Gaussian elimination mod `p`, fraction-free elimination over `Z`
//! for `Q`) are the only places where arithmetic on whole systems happens.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Prime(u32),
    Rationals,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p > u32::MAX as u64 / 2 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
            Field::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, LinalgError> {
        match *self {
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let num = q.numer().mod_floor(&m).to_i64().unwrap_or(0);
                let den = q.denom().mod_floor(&m).to_i64().unwrap_or(0);
                let den = self.from_i64(den);
                let inv = den.inv().ok_or(LinalgError::DivisionByZero)?;
                Ok(self.from_i64(num).mul(&inv))
            }
            Field::Rationals => Ok(Scalar::Q(Box::new(q.clone()))),
        }
    }

    /// Parses `"3"`, `"-2"` or `"5/7"`; over `F_p` the value is reduced.
    pub fn parse(&self, s: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::BadScalar(s.to_string());
        let t = s.trim();
        let q = match t.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(LinalgError::DivisionByZero);
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Prime(p) => Some(p as u64),
            Field::Rationals => None,
        }
    }

    /// All field elements, for small prime fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|p| (0..p as i64).map(|v| self.from_i64(v)).collect())
    }
}

/// A field element. `F_p` elements carry their modulus; rationals are boxed
/// and always normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { v: u32, p: u32 },
    Q(Box<BigRational>),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Prime(*p),
            Scalar::Q(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Fp {
                    v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a + &**b)),
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
            Scalar::Q(a) => Scalar::Q(Box::new(-&**a)),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a * &**b)),
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Fp { v, p } => {
                // Fermat: v^(p-2)
                let (mut base, mut e, mut acc) = (*v as u64, *p as u64 - 2, 1u64);
                let m = *p as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Some(Scalar::Fp { v: acc as u32, p: *p })
            }
            Scalar::Q(a) => Some(Scalar::Q(Box::new(a.recip()))),
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Fp { v, .. } => BigRational::from_integer(BigInt::from(*v)),
            Scalar::Q(q) => (**q).clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

/// Dense row-major matrix over one [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            field,
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, rows, cols)
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(o)?;
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or field mismatch.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product")
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix {
            data,
            ..*self.shape_only()
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix {
            data,
            ..*self.shape_only()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix {
            data,
            ..*self.shape_only()
        }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix {
            data,
            ..*self.shape_only()
        }
    }

    fn shape_only(&self) -> Box<Matrix> {
        Box::new(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Contiguous block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Matrix {
        let rows: Vec<usize> = (r0..r0 + nr).collect();
        let cols: Vec<usize> = (c0..c0 + nc).collect();
        self.select(&rows, &cols)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Prime(_) => self.rref_gauss(),
            Field::Rationals => self.rref_fraction_free(),
        }
    }

    fn rref_gauss(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j).mul(&inv);
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Gauss-Jordan over `Z` after clearing denominators row by row; rows are
    /// kept primitive (content divided out) and only normalized to rationals
    /// at the very end.
    fn rref_fraction_free(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let qs: Vec<BigRational> = self.row(i).iter().map(Scalar::to_rational).collect();
                let l = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                qs.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, pr);
            let piv = rows[r][c].clone();
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].clone();
                for j in 0..self.cols {
                    let v = &piv * &rows[i][j] - &f * &rows[r][j];
                    rows[i][j] = v;
                }
                make_primitive(&mut rows[i]);
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Matrix::zeros(Field::Rationals, self.rows, self.cols);
        for (i, &c) in pivots.iter().enumerate() {
            let piv = rows[i][c].clone();
            for j in 0..self.cols {
                if !rows[i][j].is_zero() {
                    let q = BigRational::new(rows[i][j].clone(), piv.clone());
                    out.set(i, j, Scalar::Q(Box::new(q)));
                }
            }
        }
        (out, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the kernel.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut n = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            n.set(f, k, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                n.set(p, k, r.get(i, f).neg());
            }
        }
        n
    }

    /// Some `X` with `self * X = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "solve: A has {} rows, b has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis (as columns) of the column space, picked among the original
    /// columns in order.
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &pivots)
    }

    /// Standard basis vectors completing the column space of `self` to the
    /// whole space, chosen greedily in index order. Returned as indices.
    pub fn complement_indices(&self) -> Vec<usize> {
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let (_, pivots) = aug.rref();
        pivots.into_iter().filter(|&p| p >= self.cols).map(|p| p - self.cols).collect()
    }

    /// `self^k` for square matrices.
    pub fn pow(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows.max(1)).is_zero()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Flattened row-major entries as one column vector.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(field: Field, rows: usize, cols: usize, v: Vec<Scalar>) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: v,
        }
    }

    /// Entries rendered as strings, row-major; used by the JSON formats.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
    // keep sign stable so that the first nonzero entry of the row is positive
    if let Some(first) = row.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Free-function form of [`Matrix::solve`].
pub fn solve_linear(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
    a.solve(b)
}

/// Free-function form of [`Matrix::nullspace`].
pub fn nullspace(a: &Matrix) -> Matrix {
    a.nullspace()
}

/// Dot product of two coordinate vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let f = a.first().or(b.first()).map(Scalar::field);
    let mut acc = match f {
        Some(f) => f.zero(),
        None => return Field::Prime(2).zero(),
    };
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

/// `sum_i c_i * v_i` for coordinate vectors of a common length.
pub fn combine(field: Field, len: usize, terms: &[(Scalar, &[Scalar])]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o = o.add(&c.mul(x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn solve_identity() {
        let f = q();
        let a = Matrix::identity(f, 2);
        let b = Matrix::from_i64(f, &[&[1], &[0]]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_zero_system_is_inconsistent() {
        let f = q();
        let a = Matrix::zeros(f, 2, 2);
        let b = Matrix::from_i64(f, &[&[1], &[0]]);
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_over_f2() {
        let f = Field::prime(2).unwrap();
        let a = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let b = Matrix::from_i64(f, &[&[0], &[1]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(f, &[&[1], &[1]]));
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn solve_rejects_field_mismatch() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::zeros(Field::prime(3).unwrap(), 2, 1);
        assert!(matches!(a.solve(&b), Err(LinalgError::FieldMismatch(..))));
    }

    #[test]
    fn nullspace_examples() {
        let f = q();
        assert_eq!(Matrix::identity(f, 3).nullspace().cols(), 0);
        assert_eq!(Matrix::zeros(f, 2, 3).nullspace().cols(), 3);
        let a = Matrix::from_i64(f, &[&[1, 2, 3]]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(a.mul(&n).is_zero());
        assert_eq!(n.rank(), 2);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(101).is_ok());
    }

    #[test]
    fn parse_fractions() {
        let f = q();
        assert_eq!(f.parse("6/4").unwrap().to_string(), "3/2");
        let f5 = Field::prime(5).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.parse("-1").unwrap(), f5.from_i64(4));
        assert!(f5.parse("1/5").is_err());
    }

    #[test]
    fn empty_matrices_behave_as_zero_maps() {
        let f = q();
        let a = Matrix::zeros(f, 0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.nullspace().cols(), 3);
        let b = Matrix::zeros(f, 3, 0);
        assert_eq!(b.mul(&Matrix::zeros(f, 0, 2)), Matrix::zeros(f, 3, 2));
    }

    #[test]
    fn inverse_round_trip() {
        let f = q();
        let a = Matrix::from_i64(f, &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 2));
        assert!(Matrix::from_i64(f, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
