//! Dense exact linear algebra over `Z` and `Q`.
//!
//! Everything here works on small matrices (a few dozen rows) with
//! arbitrary precision entries. Integer routines are built on a row echelon
//! reduction that keeps track of the unimodular transform, which gives
//! integer kernels and integer solvability in one place.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Exact coefficient ring used throughout the crate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
{
    fn from_int(n: &Int) -> Self;
}

impl Scalar for Int {
    fn from_int(n: &Int) -> Self {
        n.clone()
    }
}

impl Scalar for Rat {
    fn from_int(n: &Int) -> Self {
        Rat::from_integer(n.clone())
    }
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn to_rat(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Horizontal concatenation.
    pub fn hstack(blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows));
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(blocks: &[Matrix<T>]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols));
        Matrix {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + &(self[(i, k)].clone() * &rhs[(k, j)])
            })
        })
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + &rhs[(i, j)]
        })
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - &rhs[(i, j)]
        })
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// Reduced row echelon form over `Q`. Returns the reduced matrix and the
/// pivot column of each nonzero row.
pub fn rref(m: &Matrix<Rat>) -> (Matrix<Rat>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, row, p);
        let inv = a[(row, col)].recip();
        for j in col..a.cols {
            a[(row, j)] = a[(row, j)].clone() * &inv;
        }
        for i in 0..a.rows {
            if i == row || a[(i, col)].is_zero() {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in col..a.cols {
                let t = f.clone() * &a[(row, j)];
                a[(i, j)] = a[(i, j)].clone() - &t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}` over `Q`.
pub fn nullspace(m: &Matrix<Rat>) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); m.cols];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b` over `Q`, or `None` if the system is
/// inconsistent.
pub fn solve_rational(m: &Matrix<Rat>, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(b.len(), m.rows);
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols)].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Integers

/// Row echelon form `transform * input = form` over `Z`, with `transform`
/// unimodular. Pivots are positive; `pivots[k]` is the pivot column of row
/// `k`, and rows past `pivots.len()` are zero.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub form: Matrix<Int>,
    pub transform: Matrix<Int>,
    pub pivots: Vec<usize>,
}

pub fn echelon(m: &Matrix<Int>) -> Echelon {
    let mut a = m.clone();
    let mut u = Matrix::<Int>::identity(m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        for i in row + 1..a.rows {
            if a[(i, col)].is_zero() {
                continue;
            }
            if a[(row, col)].is_zero() {
                swap_rows(&mut a, row, i);
                swap_rows(&mut u, row, i);
                continue;
            }
            let p = a[(row, col)].clone();
            let q = a[(i, col)].clone();
            let e = p.extended_gcd(&q);
            let (pg, qg) = (&p / &e.gcd, &q / &e.gcd);
            // [[x, y], [-q/g, p/g]] has determinant one
            combine_rows(&mut a, row, i, &e.x, &e.y, &(-qg.clone()), &pg);
            combine_rows(&mut u, row, i, &e.x, &e.y, &(-qg), &pg);
        }
        if a[(row, col)].is_zero() {
            continue;
        }
        if a[(row, col)].is_negative() {
            negate_row(&mut a, row);
            negate_row(&mut u, row);
        }
        pivots.push(col);
        row += 1;
    }
    Echelon {
        form: a,
        transform: u,
        pivots,
    }
}

/// Integral basis of `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &Matrix<Int>) -> Vec<Vec<Int>> {
    let e = echelon(&m.transpose());
    (e.pivots.len()..m.cols)
        .map(|i| e.transform.row(i).to_vec())
        .collect()
}

/// Some solution of `m x = b` over `Z`, or `None`.
pub fn solve_integer(m: &Matrix<Int>, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(b.len(), m.rows);
    // U m^T = E, so m U^T = E^T and x = U^T y reduces to E^T y = b.
    let e = echelon(&m.transpose());
    let mut y = vec![Int::zero(); m.cols];
    for (k, &p) in e.pivots.iter().enumerate() {
        let partial = (0..k).fold(Int::zero(), |acc, j| acc + &e.form[(j, p)] * &y[j]);
        let rem = &b[p] - partial;
        let (q, r) = rem.div_rem(&e.form[(k, p)]);
        if !r.is_zero() {
            return None;
        }
        y[k] = q;
    }
    let x = e.transform.transpose().mul_vec(&y);
    (m.mul_vec(&x) == b).then_some(x)
}

/// Hermite normal form of the lattice spanned by `vectors`: nonzero rows in
/// echelon form, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Two generating sets span the same lattice iff their Hermite
/// forms agree.
pub fn hermite_basis(vectors: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut e = echelon(&Matrix::from_rows(vectors.to_vec()).expect("ragged vectors")).form;
    debug_assert_eq!(e.cols, dim);
    let pivots: Vec<(usize, usize)> = (0..e.rows)
        .filter_map(|i| (0..e.cols).find(|&j| !e[(i, j)].is_zero()).map(|j| (i, j)))
        .collect();
    for &(k, p) in &pivots {
        let piv = e[(k, p)].clone();
        for i in 0..k {
            let q = e[(i, p)].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for j in 0..e.cols {
                let t = &q * &e[(k, j)];
                e[(i, j)] = &e[(i, j)] - t;
            }
        }
    }
    pivots.iter().map(|&(k, _)| e.row(k).to_vec()).collect()
}

/// LLL reduction (`δ = 3/4`) of a basis of linearly independent integer
/// vectors. The result spans the same lattice with short, nearly
/// orthogonal vectors. Integral variant: Gram-Schmidt data is kept as the
/// integers `d_k` (Gram determinants) and `λ_{kj} = d_j μ_{kj}`.
pub fn lll_reduce(mut b: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let dot = |x: &[Int], y: &[Int]| -> Int { x.iter().zip(y).fold(Int::zero(), |s, (a, c)| s + a * c) };
    // one-based indices below; d[0] = 1
    let mut d = vec![Int::zero(); n + 1];
    let mut lam = vec![vec![Int::zero(); n + 1]; n + 1];
    d[0] = Int::one();
    d[1] = dot(&b[0], &b[0]);
    let (mut k, mut kmax) = (2usize, 1usize);

    fn red(b: &mut [Vec<Int>], d: &[Int], lam: &mut [Vec<Int>], k: usize, l: usize) {
        let two_lam: Int = &lam[k][l] * 2;
        if two_lam.abs() <= d[l] {
            return;
        }
        // nearest integer to λ/d
        let q = (&two_lam + &d[l]).div_floor(&(&d[l] * 2));
        let bl = b[l - 1].clone();
        for (x, y) in b[k - 1].iter_mut().zip(&bl) {
            *x = &*x - &q * y;
        }
        lam[k][l] = &lam[k][l] - &q * &d[l];
        for i in 1..l {
            let t = &q * &lam[l][i];
            lam[k][i] = &lam[k][i] - t;
        }
    }

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll_reduce needs independent vectors");
                    d[k] = u;
                }
            }
        }
        red(&mut b, &d, &mut lam, k, k - 1);
        let lovasz_fails = Int::from(4) * &d[k] * &d[k - 2]
            < Int::from(3) * &d[k - 1] * &d[k - 1] - Int::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if lovasz_fails {
            b.swap(k - 1, k - 2);
            for j in 1..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let big = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                lam[i][k - 1] = (&big * &t + &l * &lam[i][k]) / &d[k];
            }
            d[k - 1] = big;
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(&mut b, &d, &mut lam, k, l);
            }
            k += 1;
        }
    }
    b
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn determinant(m: &Matrix<Int>) -> Int {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Int::zero();
            };
            for j in 0..n {
                let t = a[(k, j)].clone();
                a[(k, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Canonical representative of `x` modulo the lattice with Hermite basis
/// `basis`: each pivot coordinate is brought into `[0, pivot)`.
pub fn reduce_modulo(x: &[Rat], basis: &[Vec<Int>]) -> Vec<Rat> {
    let mut x = x.to_vec();
    for row in basis {
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let piv = to_rat(&row[p]);
        let q = (x[p].clone() / &piv).floor();
        if q.is_zero() {
            continue;
        }
        for (xj, rj) in x.iter_mut().zip(row) {
            *xj = xj.clone() - &(q.clone() * &to_rat(rj));
        }
    }
    x
}

pub fn is_integral(x: &Rat) -> bool {
    x.is_integer()
}

fn swap_rows<T>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn negate_row(m: &mut Matrix<Int>, r: usize) {
    for j in 0..m.cols {
        m[(r, j)] = -m[(r, j)].clone();
    }
}

/// `(row_a, row_b) <- (x row_a + y row_b, z row_a + w row_b)`
fn combine_rows(m: &mut Matrix<Int>, a: usize, b: usize, x: &Int, y: &Int, z: &Int, w: &Int) {
    for j in 0..m.cols {
        let (ra, rb) = (m[(a, j)].clone(), m[(b, j)].clone());
        m[(a, j)] = x * &ra + y * &rb;
        m[(b, j)] = z * ra + w * rb;
    }
}
