//! Finite-dimensional modules over the free algebra `Q<x_1, ..., x_mu>`.
//!
//! A module is given by one action matrix per letter. The action of a word is
//! the left-to-right product of its letters' matrices, and vectors are rows:
//! `m . w = m * u_{i1} * ... * u_{ip}`.
//!
//! The characteristic series `chi_M` has coefficient `Tr(u_w)` at `w`. For an
//! absolutely simple module the span of the Fox derivatives of `chi_M` is
//! `dim M` copies of `M`; [`reconstruct`] computes that span together with the
//! derivative action, so the statement can be checked exactly.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{algebra_closure, trace_form_radical, Matrix, Rational, Subspace};
use crate::linrep::{minimize, rep_equal, LinRep};
use crate::series::{words_up_to, TruncSeries, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    mu: usize,
    dim: usize,
    actions: Vec<Matrix>,
}

impl FreeModule {
    pub fn new(dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        for m in &actions {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if m.rows() != dim { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(Self {
            mu: actions.len(),
            dim,
            actions,
        })
    }

    /// Zero-dimensional module over `mu` letters.
    pub fn zero(mu: usize) -> Self {
        Self {
            mu,
            dim: 0,
            actions: vec![Matrix::zeros(0, 0); mu],
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// `u_w`, the left-to-right product along `w`.
    pub fn word_action(&self, w: &Word) -> Result<Matrix> {
        w.check_alphabet(self.mu)?;
        Ok(w.letters()
            .iter()
            .fold(Matrix::identity(self.dim), |acc, &a| &acc * &self.actions[a]))
    }

    /// Exact realization of `chi_M` on the `d * d` matrix space: the state is
    /// a matrix `X` (row-major), letter `j` sends `X` to `X u_j`, the start
    /// state is the identity and the output is the trace.
    pub fn chi_rep(&self) -> LinRep {
        let d = self.dim;
        let n = d * d;
        let idx = |a: usize, b: usize| a * d + b;
        let trans = self
            .actions
            .iter()
            .map(|u| {
                let mut t = Matrix::zeros(n, n);
                for a in 0..d {
                    for c in 0..d {
                        for b in 0..d {
                            if !u[(c, b)].is_zero() {
                                t[(idx(a, c), idx(a, b))] = u[(c, b)].clone();
                            }
                        }
                    }
                }
                t
            })
            .collect();
        let identity = Matrix::identity(d).into_vec();
        LinRep::new(self.mu, identity.clone(), trans, identity).expect("consistent shapes")
    }

    /// `chi_M` up to `order`, one matrix product per word.
    pub fn chi_trace_oracle(&self, order: usize) -> TruncSeries {
        let terms = words_up_to(self.mu, order).into_iter().map(|w| {
            let t = self.word_action(&w).expect("in range").trace();
            (w, t)
        });
        TruncSeries::from_terms(self.mu, order, terms).expect("in range")
    }

    /// Realization of `S = sum_w (m u_w phi) w` for a row vector `m` and a
    /// column vector `phi`.
    pub fn fliess_rep(&self, m: &[Rational], phi: &[Rational]) -> Result<LinRep> {
        LinRep::new(self.mu, m.to_vec(), self.actions.clone(), phi.to_vec())
    }

    /// The algebra generated by the action matrices.
    pub fn generated_algebra(&self) -> Subspace {
        algebra_closure(self.dim, &self.actions).expect("square actions")
    }

    /// True when the action matrices generate all of `End(M)`.
    pub fn is_absolutely_simple(&self) -> bool {
        self.dim > 0 && self.generated_algebra().dim() == self.dim * self.dim
    }

    /// True when the generated algebra has zero trace-form radical.
    pub fn is_semisimple(&self) -> bool {
        trace_form_radical(&self.generated_algebra()).is_zero()
    }

    /// Is `m` a generator of the module (its orbit spans everything)?
    pub fn is_cyclic_vector(&self, m: &[Rational]) -> bool {
        self.fliess_rep(m, &vec![Rational::zero(); self.dim])
            .map(|r| r.forward_span().dim() == self.dim)
            .unwrap_or(false)
    }

    /// Does the covector `phi` generate the dual module?
    pub fn is_cyclic_covector(&self, phi: &[Rational]) -> bool {
        self.fliess_rep(&vec![Rational::zero(); self.dim], phi)
            .map(|r| r.backward_span().dim() == self.dim)
            .unwrap_or(false)
    }

    pub fn direct_sum(&self, other: &FreeModule) -> Result<FreeModule> {
        if self.mu != other.mu {
            return Err(Error::AlphabetMismatch {
                left: self.mu,
                right: other.mu,
            });
        }
        Ok(FreeModule {
            mu: self.mu,
            dim: self.dim + other.dim,
            actions: self
                .actions
                .iter()
                .zip(&other.actions)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        })
    }

    /// The isomorphic module with actions `P u_i P^{-1}`.
    pub fn conjugate(&self, p: &Matrix) -> Result<FreeModule> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows(),
            });
        }
        let p_inv = p.inverse()?;
        Ok(FreeModule {
            mu: self.mu,
            dim: self.dim,
            actions: self.actions.iter().map(|u| &(p * u) * &p_inv).collect(),
        })
    }
}

/// The module `M_S` spanned by all Fox derivatives of a rational series,
/// with the generator `S` and the constant-term functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub module: FreeModule,
    /// Coordinates of the series itself.
    pub generator: Vec<Rational>,
    /// The constant-term map, as a column vector.
    pub counit: Vec<Rational>,
}

/// Builds `M_S` from a realization of `S`.
///
/// After minimization every state is a reachable combination of Fox
/// derivatives of `S`, the states are linearly independent as series, and
/// reading letter `i` is exactly the derivative `d_i`. So the minimal
/// transition matrices are the action of `x_i` on the derivative span.
pub fn reconstruct(r: &LinRep) -> Reconstruction {
    let min = minimize(r);
    Reconstruction {
        module: FreeModule::new(min.dim(), min.trans().to_vec()).expect("square transitions"),
        generator: min.init().to_vec(),
        counit: min.fin().to_vec(),
    }
}

impl Reconstruction {
    /// The Fliess series of `(module, generator, counit)`; equal to the
    /// series the reconstruction came from.
    pub fn regenerate(&self) -> LinRep {
        self.module
            .fliess_rep(&self.generator, &self.counit)
            .expect("consistent shapes")
    }
}

/// Compares characteristic series of two semisimple modules.
///
/// Equality of `chi` means isomorphism only when both modules split over the
/// rationals (their simple summands stay simple over an algebraic closure).
pub fn semisimple_iso_test(a: &FreeModule, b: &FreeModule) -> Result<bool> {
    if !a.is_semisimple() || !b.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    rep_equal(&a.chi_rep(), &b.chi_rep())
}

/// `k * chi_M`, on the same states as [`FreeModule::chi_rep`].
pub fn scaled_chi(m: &FreeModule, k: usize) -> LinRep {
    crate::linrep::rep_scalar(&Rational::from_integer(k.into()), &m.chi_rep())
}
