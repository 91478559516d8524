//! Dense linear algebra over prime fields GF(p).
//!
//! Everything above this module (path algebra bases, hom spaces, syzygies,
//! extension classes) reduces to row reduction of small dense matrices, so
//! the representation is deliberately plain: a row-major `Vec<u32>` of
//! residues together with the characteristic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Returns true when `p` is a prime small enough for `u32` residues.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) && p < (1 << 16) {
        Ok(())
    } else {
        Err(Error::InvalidField(p))
    }
}

/// Reduces an arbitrary integer into `[0, p)`.
#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse of a nonzero residue.
#[inline]
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p as u64 - 2, p)
}

/// An element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn new(x: i64, p: u32) -> Self {
        FieldElement { value: reduce(x, p), p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FieldElement {
            value: inv_mod(self.value, self.p),
            p: self.p,
        })
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FieldElement {
            value: add_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FieldElement {
            value: sub_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement {
            value: sub_mod(0, self.value, self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A dense `rows x cols` matrix over GF(p), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Matrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&x| reduce(x, p)));
        }
        Matrix {
            rows: r,
            cols: c,
            p,
            data,
        }
    }

    /// Like [`Matrix::from_rows`] but with an explicit shape, so that `0 x n`
    /// and `n x 0` matrices survive.
    pub fn from_rows_shaped(p: u32, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Option<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return None;
        }
        let mut m = Matrix::zeros(rows, cols, p);
        for (i, row) in entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, reduce(x, p));
            }
        }
        Some(m)
    }

    pub fn from_vec(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < p));
        Matrix { rows, cols, p, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, p: u32, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len(), p);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        debug_assert!(x < self.p);
        self.data[i * self.cols + j] = x;
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        FieldElement::new(self.get(i, j) as i64, self.p)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch in product");
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.p);
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (acc_j, &b) in acc.iter_mut().zip(rrow) {
                    *acc_j += a * b as u64;
                }
                // keep the accumulator well below overflow for large p
                if p > 1 << 15 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| (a as u64 * b as u64) % p)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| add_mod(a, b, p))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self.data.iter().map(|&a| mul_mod(a, c, p)).collect(),
        }
    }

    /// `self + c * rhs`, in place.
    pub fn add_scaled(&mut self, rhs: &Matrix, c: u32) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = add_mod(*a, mul_mod(b, c, p), p);
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(sub_mod(0, 1 % self.p, self.p))
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + rhs.cols, self.p);
        for i in 0..self.rows {
            m.data[i * m.cols..i * m.cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * m.cols + self.cols..(i + 1) * m.cols].copy_from_slice(rhs.row(i));
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols, self.p);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, rhs);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols, self.p);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len(), self.p);
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    /// Gauss-Jordan elimination with the first nonzero entry of each column
    /// (scanning columns left to right) chosen as pivot.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let p = m.p;
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(m.data[r * cols + c], p);
            if inv != 1 {
                for j in c..cols {
                    m.data[r * cols + j] = mul_mod(m.data[r * cols + j], inv, p);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for j in c..cols {
                    let v = m.data[r * cols + j];
                    if v != 0 {
                        let x = &mut m.data[i * cols + j];
                        *x = ((*x as u64 + neg as u64 * v as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    /// Reduced row echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let e = self.echelon();
        let rank = e.rank();
        (e.matrix, rank)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the null space `{v : self * v = 0}`, one vector per free
    /// column, with the free variable set to 1 and the other free variables 0.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let e = self.echelon();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - e.rank());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (row, &pc) in e.pivots.iter().enumerate() {
                v[pc] = sub_mod(0, e.matrix.get(row, free), p);
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel basis packed as the columns of a `cols x k` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.cols, self.p, &self.kernel_basis())
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the
    /// column space. Free variables are set to zero.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let bcol = Matrix::from_columns(self.rows, self.p, &[b.to_vec()]);
        let aug = self.hstack(&bcol).echelon();
        if aug.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in aug.pivots.iter().enumerate() {
            x[pc] = aug.matrix.get(row, self.cols);
        }
        Some(x)
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(rhs.rows, self.rows);
        let aug = self.hstack(rhs).echelon();
        if aug.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols, self.p);
        for (row, &pc) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.matrix.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(n, self.p)).echelon();
        if aug.rank() < n || aug.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Row-reduced basis of the column space, as column vectors.
    pub fn column_space(&self) -> Vec<Vec<u32>> {
        let e = self.transpose().echelon();
        (0..e.rank()).map(|i| e.matrix.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}x{} mod {}>", self.rows, self.cols, self.p)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// A subspace of GF(p)^n kept as a reduced row-echelon basis. Used for
/// quotients and complements, where pivot positions give a canonical
/// choice of complementary coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    p: u32,
    /// RREF basis rows.
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, p: u32) -> Self {
        Subspace {
            ambient,
            p,
            basis: Matrix::zeros(0, ambient, p),
            pivots: Vec::new(),
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        let e = m.transpose().echelon();
        let r = e.rank();
        Subspace {
            ambient: m.rows(),
            p: m.characteristic(),
            basis: e.matrix.block(0, 0, r, m.rows()),
            pivots: e.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_columns(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Coordinates not hit by a pivot; the matching unit vectors span a
    /// complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// The projection `ambient -> ambient / self` in the complement
    /// coordinates, as a `(ambient - dim) x ambient` matrix.
    pub fn quotient_map(&self) -> Matrix {
        let comp = self.complement_coordinates();
        let p = self.p;
        let mut q = Matrix::zeros(comp.len(), self.ambient, p);
        let mut comp_index = vec![usize::MAX; self.ambient];
        for (k, &c) in comp.iter().enumerate() {
            comp_index[c] = k;
            q.set(k, c, 1 % p);
        }
        // e_pivot reduces to -(rest of the pivot row)
        for (row, &pc) in self.pivots.iter().enumerate() {
            for &c in &comp {
                let v = self.basis.get(row, c);
                if v != 0 {
                    q.set(comp_index[c], pc, sub_mod(0, v, p));
                }
            }
        }
        q
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        let p = self.p;
        for (row, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc];
            if f != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    *x = sub_mod(*x, mul_mod(f, self.basis.get(row, j), p), p);
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}
