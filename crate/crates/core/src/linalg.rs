//! Exact linear algebra over the rationals.
//!
//! Matrices are dense and row-major. Vectors are plain `Vec<Rational>`; a
//! vector multiplied on the left of a matrix is a row vector, on the right a
//! column vector. Subspaces are stored in reduced row-echelon form, which is
//! canonical, so two subspaces are equal exactly when their representations
//! are equal.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        None => text.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// The matrix unit with a single one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Rational::one();
        m
    }

    /// Builds a matrix from rows of rationals. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols: m,
            data,
        })
    }

    /// Convenience constructor for small integer matrices. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn row_vector(v: Vec<Rational>) -> Self {
        Self {
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    pub fn column_vector(v: Vec<Rational>) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v,
        }
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows, "row vector length");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "column vector length");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Block-diagonal matrix with `self` in the upper left and `other` in the lower right.
    pub fn block_diag(&self, other: &Matrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Reduced row-echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    fn rref_in_place(&mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = self[(pivot_row, col)].recip();
            for j in col..cols {
                let scaled = &self[(pivot_row, j)] * &inv;
                self[(pivot_row, j)] = scaled;
            }
            for r in 0..rows {
                if r == pivot_row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in col..cols {
                    if self[(pivot_row, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &self[(pivot_row, j)];
                    self[(r, j)] -= delta;
                }
            }
            pivot_row += 1;
        }
        pivot_row
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
        self.rref().1
    }

    /// Exact inverse by Gauss-Jordan elimination on `[m | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n));
        let rank = aug.rref_in_place();
        if rank < n || (0..n).any(|i| !aug[(i, i)].is_one()) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Basis of the right null space `{v : m v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (echelon, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        for r in 0..rank {
            let p = (0..self.cols)
                .find(|&c| !echelon[(r, c)].is_zero())
                .expect("nonzero echelon row");
            pivots.push(p);
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -echelon[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// `P m P^{-1}`.
    pub fn conjugate_by(&self, p: &Matrix) -> Result<Matrix> {
        let p_inv = p.inverse()?;
        Ok(&(p * self) * &p_inv)
    }
}

/// Reduced row-echelon form of `m` and its rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    m.rref()
}

/// Exact inverse of a square matrix.
pub fn mat_inverse(m: &Matrix) -> Result<Matrix> {
    m.inverse()
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `Q^n`, held as a basis in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span<I, V>(ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Rational]>,
    {
        let mut s = Self::zero(ambient_dim);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.basis.len(),
            cols: self.ambient_dim,
            data: self.basis.concat(),
        }
    }

    /// Component of `v` left over after eliminating every pivot of the basis.
    pub fn residual(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient_dim, "vector outside ambient space");
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.residual(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.residual(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let c = b[p].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// Dimension `d` of a square matrix space of ambient dimension `d * d`.
fn matrix_side(ambient: usize) -> usize {
    let d = (ambient as f64).sqrt().round() as usize;
    assert_eq!(d * d, ambient, "ambient dimension is not a perfect square");
    d
}

fn as_square(v: &[Rational], d: usize) -> Matrix {
    Matrix::new(d, d, v.to_vec()).expect("square reshape")
}

/// Unital associative algebra generated by `generators`, as a subspace of the
/// `d * d`-dimensional space of row-major flattened matrices.
///
/// Grows the span breadth-first by right-multiplying newly found elements by
/// every generator; stops when a round adds nothing.
pub fn algebra_closure(d: usize, generators: &[Matrix]) -> Result<Subspace> {
    for g in generators {
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if g.rows() != d { g.rows() } else { g.cols() },
            });
        }
    }
    let mut algebra = Subspace::zero(d * d);
    if d == 0 {
        return Ok(algebra);
    }
    let identity = Matrix::identity(d);
    algebra.insert(identity.as_slice());
    let mut frontier = vec![identity];
    // Each productive round raises the dimension, so d^2 rounds always suffice.
    for _ in 0..d * d {
        let mut next = Vec::new();
        for elem in &frontier {
            for g in generators {
                let prod = elem * g;
                if algebra.insert(prod.as_slice()) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(algebra)
}

/// Kernel of the trace form `(a, b) -> Tr(ab)` restricted to `algebra`.
///
/// In characteristic zero this is the Jacobson radical of the algebra, so the
/// algebra is semisimple exactly when the result is zero.
pub fn trace_form_radical(algebra: &Subspace) -> Subspace {
    let d = matrix_side(algebra.ambient_dim());
    let elems: Vec<Matrix> = algebra.basis().iter().map(|b| as_square(b, d)).collect();
    let k = elems.len();
    let mut gram = Matrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let t = (&elems[a] * &elems[b]).trace();
            gram[(a, b)] = t.clone();
            gram[(b, a)] = t;
        }
    }
    let radical = gram.kernel().into_iter().map(|coeffs| {
        let mut v = vec![Rational::zero(); d * d];
        for (c, b) in coeffs.iter().zip(algebra.basis()) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        v
    });
    Subspace::span(d * d, radical)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_ranks() {
        assert_eq!(rref(&Matrix::identity(3)).1, 3);
        assert_eq!(rref(&Matrix::from_ints(&[[1, 2], [2, 4]])).1, 1);
        assert_eq!(rref(&Matrix::from_ints(&[[1, 1], [-1, 0]])).1, 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mat_inverse(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        let m = Matrix::from_ints(&[[1, 1], [-1, 0]]);
        let inv = mat_inverse(&m).unwrap();
        assert_eq!(inv, Matrix::from_ints(&[[0, -1], [1, 1]]));
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert_eq!(
            mat_inverse(&Matrix::from_ints(&[[1, 2], [2, 4]])),
            Err(Error::SingularMatrix)
        );
        assert!(matches!(
            mat_inverse(&Matrix::zeros(2, 3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-3/7").unwrap(), ratio(-3, 7));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert_eq!(format_rational(&ratio(-6, 14)), "-3/7");
        assert_eq!(format_rational(&rat(4)), "4");
        assert_eq!(format_rational(&rat(0)), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn closure_dimensions() {
        assert_eq!(algebra_closure(2, &[Matrix::identity(2)]).unwrap().dim(), 1);
        let diag = Matrix::diagonal(&[rat(2), rat(3)]);
        assert_eq!(algebra_closure(2, &[diag]).unwrap().dim(), 2);
        let units = [Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)];
        assert_eq!(algebra_closure(2, &units).unwrap().dim(), 4);
        assert!(algebra_closure(3, &units).is_err());
    }

    #[test]
    fn closure_is_idempotent() {
        let gens = [Matrix::from_ints(&[[1, 1, 0], [0, 1, 0], [0, 0, 2]])];
        let a = algebra_closure(3, &gens).unwrap();
        let elems: Vec<Matrix> = a.basis().iter().map(|b| as_square(b, 3)).collect();
        assert_eq!(algebra_closure(3, &elems).unwrap(), a);
    }

    #[test]
    fn radicals() {
        let full = algebra_closure(2, &[Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)]).unwrap();
        assert!(trace_form_radical(&full).is_zero());

        let upper = algebra_closure(2, &[Matrix::unit(2, 0, 1)]).unwrap();
        assert_eq!(upper.dim(), 2);
        let rad = trace_form_radical(&upper);
        assert_eq!(rad, Subspace::span(4, [Matrix::unit(2, 0, 1).as_slice()]));

        let scalars = algebra_closure(3, &[]).unwrap();
        assert!(trace_form_radical(&scalars).is_zero());
    }

    #[test]
    fn subspace_stays_echelon() {
        let vs = [
            vec![rat(0), rat(2), rat(4)],
            vec![rat(1), rat(1), rat(1)],
            vec![rat(1), rat(3), rat(5)],
        ];
        let s = Subspace::span(3, &vs);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        for (row, &p) in s.basis().iter().zip(s.pivots()) {
            assert!(row[p].is_one());
        }
        assert_eq!(s.coordinates(&vs[2]).unwrap(), vec![rat(1), rat(3)]);
        assert!(s.coordinates(&[rat(0), rat(0), rat(1)]).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_ints(&[[1, 2], [2, 4]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vector(&m.apply(&k[0])));
    }
}
