//! Modules over the algebra `P_mu` generated by `z` and orthogonal
//! idempotents `pi_1, ..., pi_mu` summing to the identity.
//!
//! Matrices act on column vectors here. The free algebra maps into `P_mu` by
//! `x_i -> d_i = -z pi_i`, which turns every `P_mu`-module into a free-algebra
//! module ([`PmuModule::induced`]).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::free_module::FreeModule;
use crate::linalg::{format_rational, Matrix, Rational};
use crate::linrep::LinRep;
use crate::quasidet::inverse_qdet_trace;
use crate::series::{series_sub, words_up_to, TruncSeries, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmuModule {
    dim: usize,
    z: Matrix,
    pi: Vec<Matrix>,
}

/// A generator of `P_mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmuGenerator {
    /// `pi_k`, 0-based.
    Pi(usize),
    Z,
}

impl fmt::Display for PmuGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PmuGenerator::Pi(k) => write!(f, "pi_{}", k + 1),
            PmuGenerator::Z => write!(f, "z"),
        }
    }
}

impl PmuModule {
    /// Checks shapes only; see [`PmuModule::check_relations`] for the algebra relations.
    pub fn new(z: Matrix, pi: Vec<Matrix>) -> Result<Self> {
        let dim = z.rows();
        for m in std::iter::once(&z).chain(&pi) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if m.rows() != dim { m.rows() } else { m.cols() },
                });
            }
        }
        if pi.is_empty() {
            return Err(Error::InvalidRelations("at least one idempotent is required".into()));
        }
        Ok(Self { dim, z, pi })
    }

    pub fn mu(&self) -> usize {
        self.pi.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn z(&self) -> &Matrix {
        &self.z
    }

    pub fn pi(&self) -> &[Matrix] {
        &self.pi
    }

    /// Verifies `pi_i pi_j = delta_ij pi_i` and `sum_i pi_i = 1`, naming the
    /// first relation that fails.
    pub fn check_relations(&self) -> Result<()> {
        for (i, a) in self.pi.iter().enumerate() {
            for (j, b) in self.pi.iter().enumerate() {
                let prod = a * b;
                let ok = if i == j { prod == *a } else { prod.is_zero() };
                if !ok {
                    let rhs = if i == j { format!("pi_{}", i + 1) } else { "0".into() };
                    return Err(Error::InvalidRelations(format!(
                        "pi_{} * pi_{} != {}",
                        i + 1,
                        j + 1,
                        rhs
                    )));
                }
            }
        }
        let sum = self
            .pi
            .iter()
            .fold(Matrix::zeros(self.dim, self.dim), |acc, p| &acc + p);
        if sum != Matrix::identity(self.dim) {
            return Err(Error::InvalidRelations("pi_1 + ... + pi_mu != 1".into()));
        }
        Ok(())
    }

    pub fn validate(&self) -> bool {
        self.check_relations().is_ok()
    }

    /// The operators `d_i = -z pi_i`.
    pub fn partials(&self) -> Vec<Matrix> {
        self.pi.iter().map(|p| -&(&self.z * p)).collect()
    }

    /// The free-algebra module obtained through `x_i -> -z pi_i`.
    pub fn induced(&self) -> Result<FreeModule> {
        self.check_relations()?;
        FreeModule::new(self.dim, self.partials())
    }

    /// Exact realization of `phi_A = sum_{k, alpha} Tr(pi_k d_alpha) x^alpha x_k`,
    /// where `d_alpha = d_{ip} ... d_{i1}` for `alpha = (i1, ..., ip)`.
    ///
    /// The state is a pair `(X, t)` with `X` a `d * d` matrix (row-major) and
    /// `t` a scalar, `d * d + 1` coordinates in all. It starts at `(I, 0)`;
    /// letter `j` sends `(X, t)` to `(d_j X, Tr(pi_j X))`; the output is `t`.
    pub fn phi_rep(&self) -> Result<LinRep> {
        self.check_relations()?;
        let d = self.dim;
        let n = d * d + 1;
        let t_idx = d * d;
        let idx = |a: usize, b: usize| a * d + b;
        let trans = self
            .partials()
            .iter()
            .zip(&self.pi)
            .map(|(dj, pj)| {
                let mut t = Matrix::zeros(n, n);
                for c in 0..d {
                    for b in 0..d {
                        for a in 0..d {
                            if !dj[(a, c)].is_zero() {
                                t[(idx(c, b), idx(a, b))] = dj[(a, c)].clone();
                            }
                        }
                        t[(idx(c, b), t_idx)] = pj[(b, c)].clone();
                    }
                }
                t
            })
            .collect();
        let mut init = Matrix::identity(d).into_vec();
        init.push(Rational::zero());
        let mut fin = vec![Rational::zero(); n];
        fin[t_idx] = Rational::one();
        LinRep::new(self.mu(), init, trans, fin)
    }

    /// `phi_A` up to `order`, computing `Tr(pi_k d_alpha)` word by word.
    pub fn phi_trace_oracle(&self, order: usize) -> Result<TruncSeries> {
        self.check_relations()?;
        let partials = self.partials();
        let mut terms = Vec::new();
        for w in words_up_to(self.mu(), order) {
            let Some((&k, alpha)) = w.letters().split_last() else {
                continue;
            };
            let d_alpha = alpha
                .iter()
                .fold(Matrix::identity(self.dim), |acc, &i| &partials[i] * &acc);
            terms.push((w.clone(), (&self.pi[k] * &d_alpha).trace()));
        }
        TruncSeries::from_terms(self.mu(), order, terms)
    }

    /// The generator acting as the identity while all others act as zero, if any.
    pub fn is_primitive(&self) -> Option<PmuGenerator> {
        if self.dim == 0 {
            return None;
        }
        let identity = Matrix::identity(self.dim);
        let gens: Vec<(PmuGenerator, &Matrix)> = self
            .pi
            .iter()
            .enumerate()
            .map(|(k, p)| (PmuGenerator::Pi(k), p))
            .chain(std::iter::once((PmuGenerator::Z, &self.z)))
            .collect();
        gens.iter().find_map(|&(g, m)| {
            let others_zero = gens
                .iter()
                .filter(|(h, _)| *h != g)
                .all(|(_, o)| o.is_zero());
            (*m == identity && others_zero).then_some(g)
        })
    }

    pub fn direct_sum(&self, other: &PmuModule) -> Result<PmuModule> {
        if self.mu() != other.mu() {
            return Err(Error::AlphabetMismatch {
                left: self.mu(),
                right: other.mu(),
            });
        }
        Ok(PmuModule {
            dim: self.dim + other.dim,
            z: self.z.block_diag(&other.z),
            pi: self.pi.iter().zip(&other.pi).map(|(a, b)| a.block_diag(b)).collect(),
        })
    }

    /// The isomorphic module with every generator replaced by `P g P^{-1}`.
    pub fn conjugate(&self, p: &Matrix) -> Result<PmuModule> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows(),
            });
        }
        let p_inv = p.inverse()?;
        let conj = |m: &Matrix| &(p * m) * &p_inv;
        Ok(PmuModule {
            dim: self.dim,
            z: conj(&self.z),
            pi: self.pi.iter().map(conj).collect(),
        })
    }
}

/// An Alexander polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPoly {
    coeffs: Vec<Rational>,
}

impl AlexanderPoly {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::Parse("empty polynomial".into())),
            Some(lead) if lead.is_zero() => {
                Err(Error::Parse("leading coefficient must be nonzero".into()))
            }
            Some(_) => Ok(Self { coeffs }),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Companion matrix of the monic normalization; its eigenvalues are the
    /// roots of the polynomial.
    pub fn companion(&self) -> Matrix {
        let n = self.degree();
        let lead = &self.coeffs[n];
        let mut c = Matrix::zeros(n, n);
        for i in 0..n {
            if i + 1 < n {
                c[(i + 1, i)] = Rational::one();
            }
            c[(i, n - 1)] = -(&self.coeffs[i] / lead);
        }
        c
    }

    /// The one-letter `P_1`-module with `z = (I - C)^{-1}`, whose eigenvalues
    /// are `1 / (1 - nu)` for the roots `nu`.
    pub fn module(&self) -> Result<PmuModule> {
        if self.eval(&Rational::one()).is_zero() {
            return Err(Error::EvalAtOneZero);
        }
        let n = self.degree();
        let z = (&Matrix::identity(n) - &self.companion())
            .inverse()
            .map_err(|_| Error::EvalAtOneZero)?;
        PmuModule::new(z, vec![Matrix::identity(n)])
    }
}

/// `(chi, phi)` for a one-variable Alexander polynomial: `chi` of the module
/// with action `z` and `phi` of the `P_1`-module `(z, pi = 1)`.
pub fn alexander_invariants(delta: &AlexanderPoly) -> Result<(LinRep, LinRep)> {
    let module = delta.module()?;
    let chi = FreeModule::new(module.dim(), vec![module.z().clone()])?.chi_rep();
    let phi = module.phi_rep()?;
    Ok((chi, phi))
}

/// Word-by-word comparison of `Q = sum_i |E - sum_j x_j B_j|_{ii}^{-1}`,
/// with `B_j` the matrix of `(1 - z) pi_j`, against `phi_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QdetPhiReport {
    pub qdet_sum: TruncSeries,
    pub phi: TruncSeries,
    /// `qdet_sum - phi`.
    pub difference: TruncSeries,
}

impl QdetPhiReport {
    pub fn matches(&self) -> bool {
        self.difference.is_zero()
    }

    /// Words where either side is nonzero, with `(Q, phi, Q - phi)`.
    pub fn rows(&self) -> Vec<(Word, Rational, Rational, Rational)> {
        let mut words: Vec<Word> = self
            .qdet_sum
            .terms()
            .chain(self.phi.terms())
            .map(|(w, _)| w.clone())
            .collect();
        words.sort();
        words.dedup();
        words
            .into_iter()
            .map(|w| {
                let q = self.qdet_sum.coeff(&w);
                let p = self.phi.coeff(&w);
                let d = &q - &p;
                (w, q, p, d)
            })
            .collect()
    }
}

impl fmt::Display for QdetPhiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word\tqdet_sum\tphi\tdifference")?;
        for (w, q, p, d) in self.rows() {
            writeln!(
                f,
                "{}\t{}\t{}\t{}",
                w,
                format_rational(&q),
                format_rational(&p),
                format_rational(&d)
            )?;
        }
        if self.matches() {
            write!(f, "MATCH")
        } else {
            let first = self.difference.terms().next().map(|(w, _)| w.to_string());
            write!(f, "MISMATCH (first difference at {})", first.unwrap_or_default())
        }
    }
}

/// Evaluates the quasideterminant sum built from `(1 - z) pi_j` next to
/// `phi_A`, without asserting any relation between them.
pub fn qdet_phi_report(a: &PmuModule, order: usize) -> Result<QdetPhiReport> {
    a.check_relations()?;
    let one_minus_z = &Matrix::identity(a.dim()) - a.z();
    let b: Vec<Matrix> = a.pi().iter().map(|p| &one_minus_z * p).collect();
    let qdet_sum = inverse_qdet_trace(a.dim(), &b, order)?;
    let phi = a.phi_rep()?.expand(order);
    let difference = series_sub(&qdet_sum, &phi)?;
    Ok(QdetPhiReport {
        qdet_sum,
        phi,
        difference,
    })
}

/// The three-dimensional `P_3`-module with `pi_i = E_ii` and the `z` below;
/// simple as a `P_3`-module but not as a free-algebra module.
pub fn p3_example() -> PmuModule {
    let z = Matrix::from_ints(&[[1, 0, 1], [1, 1, 2], [0, 1, 1]]);
    let pi = (0..3).map(|i| Matrix::unit(3, i, i)).collect();
    PmuModule::new(z, pi).expect("square")
}
