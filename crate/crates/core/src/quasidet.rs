//! Quasideterminants over the ring of truncated noncommutative series.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::free_module::FreeModule;
use crate::linalg::Matrix;
use crate::series::{series_add, series_mul, series_sub, TruncSeries, Word};

/// Square matrix whose entries are series over a common alphabet and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    size: usize,
    mu: usize,
    order: usize,
    entries: Vec<TruncSeries>,
}

impl SeriesMatrix {
    /// Row-major entries; every entry must have alphabet `mu`. Entries are
    /// truncated to `order`.
    pub fn new(size: usize, mu: usize, order: usize, entries: Vec<TruncSeries>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.mu() != mu) {
            return Err(Error::AlphabetMismatch {
                left: mu,
                right: bad.mu(),
            });
        }
        if let Some(short) = entries.iter().find(|e| e.order() < order) {
            return Err(Error::OrderExceeded {
                length: order,
                order: short.order(),
            });
        }
        Ok(Self {
            size,
            mu,
            order,
            entries: entries.iter().map(|e| e.truncate(order)).collect(),
        })
    }

    pub fn identity(size: usize, mu: usize, order: usize) -> Self {
        Self::constant(&Matrix::identity(size), mu, order)
    }

    /// A rational matrix viewed as constant series.
    pub fn constant(m: &Matrix, mu: usize, order: usize) -> Self {
        assert!(m.is_square(), "series matrices are square");
        Self {
            size: m.rows(),
            mu,
            order,
            entries: m
                .as_slice()
                .iter()
                .map(|c| TruncSeries::constant(mu, order, c.clone()))
                .collect(),
        }
    }

    /// The linear pencil `x_1 A_1 + ... + x_mu A_mu`: entry `(u, v)` is
    /// `sum_j (A_j)_{uv} x_j`.
    pub fn pencil(size: usize, mats: &[Matrix], order: usize) -> Result<Self> {
        let mu = mats.len();
        let mut entries = Vec::with_capacity(size * size);
        for u in 0..size {
            for v in 0..size {
                let terms = mats
                    .iter()
                    .enumerate()
                    .map(|(j, a)| (Word::letter(j), a[(u, v)].clone()));
                entries.push(TruncSeries::from_terms(mu, order, terms)?);
            }
        }
        Ok(Self {
            size,
            mu,
            order,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[TruncSeries] {
        &self.entries
    }

    /// Matrix of constant terms.
    pub fn constant_term(&self) -> Matrix {
        Matrix::new(
            self.size,
            self.size,
            self.entries.iter().map(TruncSeries::epsilon).collect(),
        )
        .expect("square")
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.entries.iter().all(|e| e.epsilon().is_zero())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&TruncSeries, &TruncSeries) -> Result<TruncSeries>) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            size: self.size,
            mu: self.mu,
            order: self.order.min(other.order),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.mu != other.mu {
            return Err(Error::AlphabetMismatch {
                left: self.mu,
                right: other.mu,
            });
        }
        if self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, series_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, series_sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.size;
        let order = self.order.min(other.order);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = TruncSeries::zero(self.mu, order);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = series_add(&acc, &series_mul(a, b)?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            size: n,
            mu: self.mu,
            order,
            entries,
        })
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let n = self.size;
        let entries = (0..n)
            .filter(|&r| r != i)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        Self {
            size: n - 1,
            mu: self.mu,
            order: self.order,
            entries,
        }
    }
}

/// Inverse over the series ring; requires an invertible constant-term matrix.
///
/// With `A0 = eps(A)` and `H = I - A0^{-1} A` (zero constant terms), the
/// inverse is `(I + H + H^2 + ...) A0^{-1}`, exact up to the order.
pub fn smat_inverse(a: &SeriesMatrix) -> Result<SeriesMatrix> {
    let a0_inv = a
        .constant_term()
        .inverse()
        .map_err(|_| Error::SingularConstantTerm)?;
    let (n, mu, order) = (a.size, a.mu, a.order);
    let a0_inv = SeriesMatrix::constant(&a0_inv, mu, order);
    let identity = SeriesMatrix::identity(n, mu, order);
    let h = identity.sub(&a0_inv.mul(a)?)?;
    let mut acc = identity.clone();
    let mut power = identity;
    for _ in 0..order {
        power = power.mul(&h)?;
        if power.entries.iter().all(TruncSeries::is_zero) {
            break;
        }
        acc = acc.add(&power)?;
    }
    acc.mul(&a0_inv)
}

/// The `(i, j)` quasideterminant `a_ij - r_i^{(j)} (A^{ij})^{-1} c_j^{(i)}`.
pub fn qdet(a: &SeriesMatrix, i: usize, j: usize) -> Result<TruncSeries> {
    let n = a.size;
    assert!(i < n && j < n, "quasideterminant index out of range");
    let aij = a.get(i, j).clone();
    if n == 1 {
        return Ok(aij);
    }
    let inv = smat_inverse(&a.minor(i, j))?;
    let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let mut correction = TruncSeries::zero(a.mu, a.order);
    for (p, &c) in cols.iter().enumerate() {
        let left = a.get(i, c);
        if left.is_zero() {
            continue;
        }
        for (q, &r) in rows.iter().enumerate() {
            let right = a.get(r, j);
            if right.is_zero() {
                continue;
            }
            let term = series_mul(&series_mul(left, inv.get(p, q))?, right)?;
            correction = series_add(&correction, &term)?;
        }
    }
    series_sub(&aij, &correction)
}

/// Sum over closed walks `i -> k_1 -> ... -> k_p -> i` of the products
/// `b_{i k_1} b_{k_1 k_2} ... b_{k_p i}`, including the empty walk, up to
/// `order`. Entries must have zero constant term so each step adds length.
pub fn walk_series(b: &SeriesMatrix, i: usize, order: usize) -> Result<TruncSeries> {
    for r in 0..b.size {
        for c in 0..b.size {
            if !b.get(r, c).epsilon().is_zero() {
                return Err(Error::NonProperEntries { row: r, col: c });
            }
        }
    }
    let order = order.min(b.order);
    let mut total = TruncSeries::one(b.mu, order);
    let mut stack = vec![(i, TruncSeries::one(b.mu, order), 0usize)];
    while let Some((at, prod, depth)) = stack.pop() {
        if depth == order {
            continue;
        }
        for next in 0..b.size {
            let step = b.get(at, next);
            if step.is_zero() {
                continue;
            }
            let extended = series_mul(&prod, step)?;
            if extended.is_zero() {
                continue;
            }
            if next == i {
                total = series_add(&total, &extended)?;
            }
            stack.push((next, extended, depth + 1));
        }
    }
    Ok(total)
}

/// `sum_i |E - x_1 A_1 - ... - x_mu A_mu|_{ii}^{-1}` up to `order`.
pub fn inverse_qdet_trace(dim: usize, mats: &[Matrix], order: usize) -> Result<TruncSeries> {
    let mu = mats.len();
    let pencil = SeriesMatrix::pencil(dim, mats, order)?;
    let a = SeriesMatrix::identity(dim, mu, order).sub(&pencil)?;
    let mut total = TruncSeries::zero(mu, order);
    for i in 0..dim {
        let inv = qdet(&a, i, i)?.invert()?;
        total = series_add(&total, &inv)?;
    }
    Ok(total)
}

/// The characteristic series of `m` evaluated through quasideterminants of
/// `E - sum_j x_j A_j`.
pub fn chi_via_qdet(m: &FreeModule, order: usize) -> Result<TruncSeries> {
    inverse_qdet_trace(m.dim(), m.actions(), order)
}
