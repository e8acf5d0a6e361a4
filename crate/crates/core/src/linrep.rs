//! Linear representations (weighted automata over the rationals).
//!
//! A [`LinRep`] with initial covector `init`, transition matrices `M_1..M_mu`
//! and final vector `fin` realizes the series whose coefficient at
//! `x_{i1} ... x_{ip}` is `init * M_{i1} * ... * M_{ip} * fin`. Products are
//! always taken left to right in reading order.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vector, Matrix, Rational, Subspace};
use crate::series::{TruncSeries, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRep {
    mu: usize,
    init: Vec<Rational>,
    trans: Vec<Matrix>,
    fin: Vec<Rational>,
}

impl LinRep {
    /// Checks that `init`, every transition matrix and `fin` agree on the
    /// state count, and that there is one matrix per letter.
    pub fn new(mu: usize, init: Vec<Rational>, trans: Vec<Matrix>, fin: Vec<Rational>) -> Result<Self> {
        let n = init.len();
        if trans.len() != mu {
            return Err(Error::AlphabetMismatch {
                left: mu,
                right: trans.len(),
            });
        }
        if fin.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: fin.len(),
            });
        }
        for m in &trans {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(Self { mu, init, trans, fin })
    }

    /// The dimension-zero representation of the zero series.
    pub fn zero(mu: usize) -> Self {
        Self {
            mu,
            init: Vec::new(),
            trans: vec![Matrix::zeros(0, 0); mu],
            fin: Vec::new(),
        }
    }

    /// Realizes a polynomial (every stored coefficient of `p`) on the prefix
    /// tree of its support.
    pub fn polynomial(p: &TruncSeries) -> Self {
        let mut prefixes: Vec<Word> = Vec::new();
        for (w, _) in p.terms() {
            for k in 0..=w.len() {
                prefixes.push(Word::new(w.letters()[..k].to_vec()));
            }
        }
        prefixes.sort();
        prefixes.dedup();
        let n = prefixes.len();
        let index = |w: &Word| prefixes.binary_search(w).ok();
        let mut trans = vec![Matrix::zeros(n, n); p.mu()];
        for (s, u) in prefixes.iter().enumerate() {
            for (a, m) in trans.iter_mut().enumerate() {
                let mut ua = u.clone();
                ua.push(a);
                if let Some(t) = index(&ua) {
                    m[(s, t)] = Rational::one();
                }
            }
        }
        let mut init = vec![Rational::zero(); n];
        if n > 0 {
            init[0] = Rational::one();
        }
        let fin = prefixes.iter().map(|u| p.coeff(u)).collect();
        Self {
            mu: p.mu(),
            init,
            trans,
            fin,
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn dim(&self) -> usize {
        self.init.len()
    }

    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    pub fn trans(&self) -> &[Matrix] {
        &self.trans
    }

    pub fn fin(&self) -> &[Rational] {
        &self.fin
    }

    /// `init * M_w`.
    pub fn state_after(&self, w: &Word) -> Result<Vec<Rational>> {
        w.check_alphabet(self.mu)?;
        Ok(w.letters()
            .iter()
            .fold(self.init.clone(), |v, &a| self.trans[a].left_apply(&v)))
    }

    pub fn coeff(&self, w: &Word) -> Result<Rational> {
        Ok(dot(&self.state_after(w)?, &self.fin))
    }

    /// Coefficients of every word of length at most `order`.
    pub fn expand(&self, order: usize) -> TruncSeries {
        let mut terms = Vec::new();
        let mut level = vec![(Word::empty(), self.init.clone())];
        for len in 0..=order {
            for (w, v) in &level {
                terms.push((w.clone(), dot(v, &self.fin)));
            }
            if len == order {
                break;
            }
            level = level
                .iter()
                .filter(|(_, v)| !is_zero_vector(v))
                .flat_map(|(w, v)| {
                    (0..self.mu).map(move |a| {
                        let mut wa = w.clone();
                        wa.push(a);
                        (wa, self.trans[a].left_apply(v))
                    })
                })
                .collect();
        }
        TruncSeries::from_terms(self.mu, order, terms).expect("letters are in range")
    }

    /// Span of the reachable states `{init * M_w}`.
    pub fn forward_span(&self) -> Subspace {
        reachable_span(&self.init, &self.trans)
    }

    /// Span of the co-reachable states `{M_w * fin}`.
    pub fn backward_span(&self) -> Subspace {
        let transposed: Vec<Matrix> = self.trans.iter().map(Matrix::transpose).collect();
        reachable_span(&self.fin, &transposed)
    }

    /// The representation of the reversed series with `init` and `fin` swapped.
    fn transpose(&self) -> Self {
        Self {
            mu: self.mu,
            init: self.fin.clone(),
            trans: self.trans.iter().map(Matrix::transpose).collect(),
            fin: self.init.clone(),
        }
    }

    /// Restricts to the reachable subspace, expressed in its echelon basis.
    fn restrict_to_reachable(&self) -> Self {
        let span = self.forward_span();
        let coords = |v: &[Rational]| span.coordinates(v).expect("reachable subspace is invariant");
        let basis = span.basis();
        let trans = self
            .trans
            .iter()
            .map(|m| {
                let rows = basis.iter().map(|b| coords(&m.left_apply(b))).collect();
                Matrix::from_rows(rows).expect("square coordinate matrix")
            })
            .collect();
        Self {
            mu: self.mu,
            init: coords(&self.init),
            trans,
            fin: basis.iter().map(|b| dot(b, &self.fin)).collect(),
        }
    }

    /// `P^{-1}`-conjugated representation: `(init P^{-1}, P M_i P^{-1}, P fin)`.
    /// Realizes the same series.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        if p.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.rows(),
            });
        }
        let p_inv = p.inverse()?;
        Ok(Self {
            mu: self.mu,
            init: p_inv.left_apply(&self.init),
            trans: self
                .trans
                .iter()
                .map(|m| &(p * m) * &p_inv)
                .collect(),
            fin: p.apply(&self.fin),
        })
    }
}

fn reachable_span(start: &[Rational], trans: &[Matrix]) -> Subspace {
    let mut span = Subspace::zero(start.len());
    if !span.insert(start) {
        return span;
    }
    let mut frontier = vec![start.to_vec()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for m in trans {
                let w = m.left_apply(v);
                if span.insert(&w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    span
}

fn check_same_mu(r: &LinRep, s: &LinRep) -> Result<()> {
    if r.mu != s.mu {
        return Err(Error::AlphabetMismatch {
            left: r.mu,
            right: s.mu,
        });
    }
    Ok(())
}

/// Direct-sum realization of `r + s`.
pub fn rep_add(r: &LinRep, s: &LinRep) -> Result<LinRep> {
    check_same_mu(r, s)?;
    Ok(LinRep {
        mu: r.mu,
        init: [r.init.as_slice(), s.init.as_slice()].concat(),
        trans: r.trans.iter().zip(&s.trans).map(|(a, b)| a.block_diag(b)).collect(),
        fin: [r.fin.as_slice(), s.fin.as_slice()].concat(),
    })
}

pub fn rep_scalar(c: &Rational, r: &LinRep) -> LinRep {
    LinRep {
        mu: r.mu,
        init: r.init.iter().map(|x| x * c).collect(),
        trans: r.trans.clone(),
        fin: r.fin.clone(),
    }
}

/// Cauchy product `r * s`, of dimension `dim r + dim s`.
///
/// The first block runs `r`; on each letter it may also finish the `r` factor
/// and hand over to the start of `s`. Only the `s` block is read out.
pub fn rep_mul(r: &LinRep, s: &LinRep) -> Result<LinRep> {
    check_same_mu(r, s)?;
    let (n, m) = (r.dim(), s.dim());
    let r_const = dot(&r.init, &r.fin);
    let mut init: Vec<Rational> = r.init.clone();
    init.extend(s.init.iter().map(|x| x * &r_const));
    let trans = r
        .trans
        .iter()
        .zip(&s.trans)
        .map(|(ma, na)| {
            let mut t = ma.block_diag(na);
            let handoff = ma.apply(&r.fin);
            for i in 0..n {
                if handoff[i].is_zero() {
                    continue;
                }
                for j in 0..m {
                    t[(i, n + j)] = &handoff[i] * &s.init[j];
                }
            }
            t
        })
        .collect();
    let mut fin = vec![Rational::zero(); n];
    fin.extend(s.fin.iter().cloned());
    Ok(LinRep {
        mu: r.mu,
        init,
        trans,
        fin,
    })
}

/// Inverse of the realized series `f`, of dimension `dim r + 1`.
///
/// With `c = f(1)` and `P = I - fin * init / c`, the extra coordinate carries
/// the inverse's coefficient of the word just read; the other coordinates
/// carry `sum_{w = uv} g(u) * init * M_v` and are projected by `P` after each
/// letter so that they never re-enter a completed factorization.
pub fn rep_inverse(r: &LinRep) -> Result<LinRep> {
    let n = r.dim();
    let c = dot(&r.init, &r.fin);
    if c.is_zero() {
        return Err(Error::NotInvertible);
    }
    let c_inv = c.recip();
    let mut proj = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            proj[(i, j)] -= &r.fin[i] * &r.init[j] * &c_inv;
        }
    }
    let trans = r
        .trans
        .iter()
        .map(|m| {
            let mut t = Matrix::zeros(n + 1, n + 1);
            t.set_block(0, 0, &(m * &proj));
            let out = m.apply(&r.fin);
            for i in 0..n {
                t[(i, n)] = -(&out[i] * &c_inv);
            }
            t
        })
        .collect();
    let mut init: Vec<Rational> = r.init.iter().map(|x| x * &c_inv).collect();
    init.push(c_inv);
    let mut fin = vec![Rational::zero(); n + 1];
    fin[n] = Rational::one();
    Ok(LinRep {
        mu: r.mu,
        init,
        trans,
        fin,
    })
}

fn check_letter(r: &LinRep, i: usize) -> Result<()> {
    if i >= r.mu {
        return Err(Error::BadLetter { letter: i, mu: r.mu });
    }
    Ok(())
}

fn check_augmentation(r: &LinRep) -> Result<()> {
    if !dot(&r.init, &r.fin).is_zero() {
        return Err(Error::NotAugmentation);
    }
    Ok(())
}

/// Fox derivative `d_i`: replaces `init` by `init * M_i`.
pub fn rep_fox(i: usize, r: &LinRep) -> Result<LinRep> {
    check_letter(r, i)?;
    Ok(LinRep {
        init: r.trans[i].left_apply(&r.init),
        ..r.clone()
    })
}

/// The `z` operator, `-sum_i d_i`, on a series with zero constant term.
pub fn rep_z(r: &LinRep) -> Result<LinRep> {
    check_augmentation(r)?;
    let mut init = vec![Rational::zero(); r.dim()];
    for m in &r.trans {
        for (acc, x) in init.iter_mut().zip(m.left_apply(&r.init)) {
            *acc -= x;
        }
    }
    Ok(LinRep { init, ..r.clone() })
}

/// The idempotent `pi_i`, keeping only words that start with `x_i`. Adds one
/// state meaning "no letter read yet".
pub fn rep_pi(i: usize, r: &LinRep) -> Result<LinRep> {
    check_letter(r, i)?;
    check_augmentation(r)?;
    let n = r.dim();
    let trans = r
        .trans
        .iter()
        .enumerate()
        .map(|(a, m)| {
            let mut t = Matrix::zeros(n + 1, n + 1);
            t.set_block(1, 1, m);
            if a == i {
                for (j, x) in m.left_apply(&r.init).into_iter().enumerate() {
                    t[(0, j + 1)] = x;
                }
            }
            t
        })
        .collect();
    let mut init = vec![Rational::zero(); n + 1];
    init[0] = Rational::one();
    let mut fin = vec![Rational::zero()];
    fin.extend(r.fin.iter().cloned());
    Ok(LinRep {
        mu: r.mu,
        init,
        trans,
        fin,
    })
}

/// Minimal realization of the same series.
///
/// Restricts to the reachable subspace `{init * M_w}`, then (on the
/// transposed representation) to the co-reachable subspace `{M_w * fin}`.
/// The result has dimension equal to the rank of the series' Hankel matrix,
/// which is the dimension of the span of all its Fox derivatives.
pub fn minimize(r: &LinRep) -> LinRep {
    r.restrict_to_reachable()
        .transpose()
        .restrict_to_reachable()
        .transpose()
}

/// First word (in graded-lex order) on which `r` and `s` differ, or `None`
/// when they realize the same series.
///
/// Works on the difference representation of dimension `n`; a series of that
/// dimension vanishes iff it vanishes on all words of length `< n`. Levels of
/// reachable states are explored until either some level is not annihilated
/// by `fin` or the cumulative reachable span stops growing.
pub fn first_difference(r: &LinRep, s: &LinRep) -> Result<Option<Word>> {
    check_same_mu(r, s)?;
    let diff = rep_add(r, &rep_scalar(&-Rational::one(), s))?;
    let n = diff.dim();
    let mut cumulative = Subspace::zero(n);
    let mut level = Subspace::span(n, [&diff.init]);
    let mut bad_len = None;
    for len in 0..n.max(1) {
        if level.basis().iter().any(|v| !dot(v, &diff.fin).is_zero()) {
            bad_len = Some(len);
            break;
        }
        let before = cumulative.dim();
        for v in level.basis() {
            cumulative.insert(v);
        }
        if len > 0 && cumulative.dim() == before {
            break;
        }
        level = Subspace::span(
            n,
            level
                .basis()
                .iter()
                .flat_map(|v| diff.trans.iter().map(move |m| m.left_apply(v))),
        );
        if level.is_zero() {
            break;
        }
    }
    let Some(len) = bad_len else {
        return Ok(None);
    };
    // co_levels[k] spans {M_w * fin : |w| = k}
    let mut co_levels = vec![Subspace::span(n, [&diff.fin])];
    for _ in 1..len {
        let prev = co_levels.last().expect("nonempty");
        let next = Subspace::span(
            n,
            prev.basis()
                .iter()
                .flat_map(|v| diff.trans.iter().map(move |m| m.apply(v))),
        );
        co_levels.push(next);
    }
    let mut state = diff.init.clone();
    let mut word = Word::empty();
    for pos in 0..len {
        let remaining = &co_levels[len - pos - 1];
        let (a, next) = (0..diff.mu)
            .map(|a| (a, diff.trans[a].left_apply(&state)))
            .find(|(_, v)| remaining.basis().iter().any(|g| !dot(v, g).is_zero()))
            .expect("a differing word of this length exists");
        word.push(a);
        state = next;
    }
    Ok(Some(word))
}

/// Exact equality of the realized series.
pub fn rep_equal(r: &LinRep, s: &LinRep) -> Result<bool> {
    Ok(first_difference(r, s)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::series::{series_add, series_mul};

    fn scalar_rep(c: i64) -> LinRep {
        LinRep::new(1, vec![rat(1)], vec![Matrix::from_ints(&[[c]])], vec![rat(1)]).unwrap()
    }

    fn poly(mu: usize, terms: &[(&[usize], i64)]) -> LinRep {
        let p = TruncSeries::from_terms(
            mu,
            8,
            terms.iter().map(|(w, c)| (Word::new(w.to_vec()), rat(*c))),
        )
        .unwrap();
        LinRep::polynomial(&p)
    }

    #[test]
    fn coefficients() {
        let r = scalar_rep(2);
        assert_eq!(r.coeff(&Word::new(vec![0; 5])).unwrap(), rat(32));
        assert_eq!(r.coeff(&Word::empty()).unwrap(), rat(1));
        let two = LinRep::new(
            2,
            vec![rat(1)],
            vec![Matrix::from_ints(&[[3]]), Matrix::from_ints(&[[0]])],
            vec![rat(1)],
        )
        .unwrap();
        assert_eq!(two.coeff(&Word::new(vec![0, 1, 0])).unwrap(), rat(0));
        assert!(matches!(two.coeff(&Word::new(vec![2])), Err(Error::BadLetter { .. })));
    }

    #[test]
    fn expansions() {
        let zero = LinRep::new(1, vec![rat(1)], vec![Matrix::from_ints(&[[5]])], vec![rat(0)]).unwrap();
        assert!(zero.expand(4).is_zero());
        let e = scalar_rep(2).expand(3);
        let want = TruncSeries::from_terms(1, 3, (0..=3).map(|p| (Word::new(vec![0; p]), rat(1 << p)))).unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(LinRep::new(1, vec![rat(1)], vec![], vec![rat(1)]).is_err());
        assert!(LinRep::new(1, vec![rat(1)], vec![Matrix::identity(2)], vec![rat(1)]).is_err());
    }

    #[test]
    fn polynomial_realization() {
        let r = poly(2, &[(&[0], 1), (&[1, 0], 3), (&[], -2)]);
        assert_eq!(r.coeff(&Word::new(vec![1, 0])).unwrap(), rat(3));
        assert_eq!(r.coeff(&Word::empty()).unwrap(), rat(-2));
        assert_eq!(r.coeff(&Word::new(vec![1])).unwrap(), rat(0));
    }

    #[test]
    fn rational_operations() {
        let one_minus_x = poly(1, &[(&[], 1), (&[0], -1)]);
        let inv = rep_inverse(&one_minus_x).unwrap();
        assert!(rep_equal(&inv, &scalar_rep(1)).unwrap());

        let x1 = poly(2, &[(&[0], 1)]);
        let x2 = poly(2, &[(&[1], 1)]);
        let prod = rep_mul(&x1, &x2).unwrap();
        assert_eq!(prod.dim(), x1.dim() + x2.dim());
        assert!(rep_equal(&prod, &poly(2, &[(&[0, 1], 1)])).unwrap());

        let r = poly(1, &[(&[], 2), (&[0], -1)]);
        let round = rep_inverse(&rep_mul(&r, &rep_inverse(&r).unwrap()).unwrap()).unwrap();
        assert_eq!(round.expand(6), TruncSeries::one(1, 6));

        assert_eq!(rep_inverse(&x1), Err(Error::NotInvertible));

        // inverse of a dimension-1 series can need more states
        let back = rep_inverse(&scalar_rep(1)).unwrap();
        assert!(rep_equal(&back, &one_minus_x).unwrap());
    }

    #[test]
    fn operations_commute_with_expansion() {
        let r = LinRep::new(
            2,
            vec![rat(1), rat(-1)],
            vec![Matrix::from_ints(&[[1, 2], [0, -1]]), Matrix::from_ints(&[[0, 1], [3, 1]])],
            vec![rat(2), rat(1)],
        )
        .unwrap();
        let s = poly(2, &[(&[], 3), (&[1], 1), (&[0, 1], -2)]);
        assert_eq!(
            rep_add(&r, &s).unwrap().expand(5),
            series_add(&r.expand(5), &s.expand(5)).unwrap()
        );
        assert_eq!(
            rep_mul(&r, &s).unwrap().expand(5),
            series_mul(&r.expand(5), &s.expand(5)).unwrap()
        );
        assert_eq!(rep_inverse(&s).unwrap().expand(5), s.expand(5).invert().unwrap());
        assert_eq!(rep_fox(1, &r).unwrap().expand(4), r.expand(5).fox_derive(1).unwrap());
    }

    #[test]
    fn pmu_operators_on_reps() {
        let f = poly(2, &[(&[0], 1), (&[1, 0], 3)]);
        let z = rep_z(&f).unwrap();
        assert_eq!(z.expand(3), f.expand(4).pmu_z().unwrap());
        assert_eq!(z.expand(1), TruncSeries::from_terms(2, 1, [(Word::empty(), rat(-1)), (Word::letter(0), rat(-3))]).unwrap());

        let sum = poly(2, &[(&[0], 1), (&[1], 1)]);
        assert!(rep_equal(&rep_pi(0, &sum).unwrap(), &poly(2, &[(&[0], 1)])).unwrap());
        assert_eq!(rep_pi(0, &poly(2, &[(&[], 1)])), Err(Error::NotAugmentation));
        assert_eq!(rep_z(&poly(2, &[(&[], 1)])), Err(Error::NotAugmentation));
    }

    #[test]
    fn minimization() {
        let r = LinRep::new(
            1,
            vec![rat(1), rat(1)],
            vec![Matrix::from_ints(&[[2, 0], [0, 0]])],
            vec![rat(1), rat(0)],
        )
        .unwrap();
        let m = minimize(&r);
        assert_eq!(m.dim(), 1);
        assert!(rep_equal(&m, &r).unwrap());
        assert_eq!(minimize(&m).dim(), 1);

        let zero = LinRep::new(
            2,
            vec![rat(1), rat(2), rat(0)],
            vec![Matrix::from_ints(&[[1, 0, 0], [0, 1, 1], [1, 1, 1]]); 2],
            vec![rat(0); 3],
        )
        .unwrap();
        assert_eq!(minimize(&zero).dim(), 0);
        assert_eq!(minimize(&LinRep::zero(3)).dim(), 0);
    }

    #[test]
    fn equality() {
        let r = scalar_rep(2);
        assert!(rep_equal(&r, &rep_add(&r, &LinRep::zero(1)).unwrap()).unwrap());
        assert_eq!(first_difference(&r, &scalar_rep(3)).unwrap(), Some(Word::letter(0)));

        let s = LinRep::new(
            2,
            vec![rat(1), rat(0)],
            vec![Matrix::from_ints(&[[1, 1], [0, 2]]), Matrix::from_ints(&[[0, 1], [1, 0]])],
            vec![rat(0), rat(1)],
        )
        .unwrap();
        let p = Matrix::from_ints(&[[2, 1], [1, 1]]);
        assert!(rep_equal(&s, &s.conjugate(&p).unwrap()).unwrap());

        assert!(matches!(
            rep_equal(&r, &LinRep::zero(2)),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn first_difference_is_graded_lex_minimal() {
        let a = poly(2, &[(&[1, 1], 1), (&[1, 0], 2), (&[0, 1, 1], 5)]);
        let b = poly(2, &[(&[1, 1], 1), (&[1, 0], 3), (&[0, 1, 1], 4)]);
        assert_eq!(first_difference(&a, &b).unwrap(), Some(Word::new(vec![1, 0])));
    }
}
