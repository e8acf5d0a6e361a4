//! Seeded generators for random test instances.
//!
//! Everything is driven by a [`ChaCha8Rng`], so a seed fully determines the
//! instances on every platform.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::free_module::FreeModule;
use crate::linalg::{rat, ratio, Matrix, Rational};
use crate::linrep::LinRep;
use crate::pmu::PmuModule;
use crate::quasidet::SeriesMatrix;
use crate::series::{GroupLetter, GroupWord, TruncSeries, Word};

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-bound, bound]`.
pub fn small_int(rng: &mut TestRng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// Mostly small integers, sometimes a fraction with denominator 2 or 3.
pub fn small_rational(rng: &mut TestRng, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    if rng.gen_bool(0.2) {
        ratio(n, rng.gen_range(2..=3))
    } else {
        rat(n)
    }
}

pub fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols).map(|_| small_int(rng, bound)).collect();
    Matrix::new(rows, cols, data).expect("shape")
}

pub fn random_vector(rng: &mut TestRng, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| small_int(rng, bound)).collect()
}

/// A random invertible matrix, found by rejection.
pub fn random_invertible(rng: &mut TestRng, n: usize, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_free_module(rng: &mut TestRng, mu: usize, dim: usize, bound: i64) -> FreeModule {
    let actions = (0..mu).map(|_| random_matrix(rng, dim, dim, bound)).collect();
    FreeModule::new(dim, actions).expect("square")
}

/// A module whose action matrices generate the full matrix algebra, by
/// rejection sampling. Needs `mu >= 2` unless `dim <= 1`.
pub fn random_absolutely_simple(rng: &mut TestRng, mu: usize, dim: usize, bound: i64) -> FreeModule {
    assert!(dim <= 1 || mu >= 2, "one commuting generator cannot be Burnside-full");
    loop {
        let m = random_free_module(rng, mu, dim, bound);
        if m.is_absolutely_simple() {
            return m;
        }
    }
}

/// A diagonalizable one-letter module with the given eigenvalues, hidden by
/// a random change of basis.
pub fn hidden_diagonal(rng: &mut TestRng, eigenvalues: &[Rational], bound: i64) -> FreeModule {
    let p = random_invertible(rng, eigenvalues.len(), bound);
    FreeModule::new(eigenvalues.len(), vec![Matrix::diagonal(eigenvalues)])
        .and_then(|m| m.conjugate(&p))
        .expect("invertible change of basis")
}

pub fn random_linrep(rng: &mut TestRng, mu: usize, dim: usize, bound: i64) -> LinRep {
    let init = random_vector(rng, dim, bound);
    let trans = (0..mu).map(|_| random_matrix(rng, dim, dim, bound)).collect();
    let fin = random_vector(rng, dim, bound);
    LinRep::new(mu, init, trans, fin).expect("shapes")
}

/// Random series with about `density` of the words up to `order` present.
pub fn random_series(rng: &mut TestRng, mu: usize, order: usize, density: f64, bound: i64) -> TruncSeries {
    let terms: Vec<(Word, Rational)> = crate::series::words_up_to(mu, order)
        .into_iter()
        .filter_map(|w| rng.gen_bool(density).then(|| (w, small_rational(rng, bound))))
        .collect();
    TruncSeries::from_terms(mu, order, terms).expect("letters in range")
}

/// Same as [`random_series`] but with the constant term removed.
pub fn random_augmentation_series(rng: &mut TestRng, mu: usize, order: usize, density: f64, bound: i64) -> TruncSeries {
    let s = random_series(rng, mu, order, density, bound);
    let terms = s
        .terms()
        .filter(|(w, _)| !w.is_empty())
        .map(|(w, c)| (w.clone(), c.clone()));
    TruncSeries::from_terms(mu, order, terms).expect("letters in range")
}

/// A polynomial with at most `terms` monomials of length at most `max_len`.
pub fn random_polynomial(rng: &mut TestRng, mu: usize, max_len: usize, terms: usize, bound: i64) -> TruncSeries {
    let monomials: Vec<(Word, Rational)> = (0..terms)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            let w = Word::new((0..len).map(|_| rng.gen_range(0..mu)).collect());
            (w, small_int(rng, bound))
        })
        .collect();
    TruncSeries::from_terms(mu, max_len, monomials).expect("letters in range")
}

pub fn random_group_word(rng: &mut TestRng, mu: usize, len: usize) -> GroupWord {
    GroupWord::new(
        (0..len)
            .map(|_| GroupLetter {
                generator: rng.gen_range(0..mu),
                inverse: rng.gen_bool(0.5),
            })
            .collect(),
    )
}

/// A valid `P_mu`-module: the idempotents project onto coordinate blocks of
/// random sizes (some possibly empty), then everything is conjugated by a
/// random invertible matrix.
pub fn random_pmu_module(rng: &mut TestRng, mu: usize, dim: usize, bound: i64) -> PmuModule {
    let mut owner: Vec<usize> = (0..dim).map(|_| rng.gen_range(0..mu)).collect();
    owner.shuffle(rng);
    let pi = (0..mu)
        .map(|k| {
            let diag: Vec<Rational> = owner
                .iter()
                .map(|&o| if o == k { rat(1) } else { Rational::zero() })
                .collect();
            Matrix::diagonal(&diag)
        })
        .collect();
    let z = random_matrix(rng, dim, dim, bound);
    let m = PmuModule::new(z, pi).expect("square");
    let p = random_invertible(rng, dim, 2);
    m.conjugate(&p).expect("invertible")
}

/// A square series matrix whose entries have zero constant term: sparse
/// combinations of letters and two-letter words.
pub fn random_strictly_proper(rng: &mut TestRng, mu: usize, size: usize, order: usize, bound: i64) -> SeriesMatrix {
    let entries = (0..size * size)
        .map(|_| {
            if rng.gen_bool(0.3) {
                return TruncSeries::zero(mu, order);
            }
            let mut terms = Vec::new();
            for a in 0..mu {
                if rng.gen_bool(0.5) {
                    terms.push((Word::letter(a), small_int(rng, bound)));
                }
            }
            if rng.gen_bool(0.3) {
                let w = Word::new(vec![rng.gen_range(0..mu), rng.gen_range(0..mu)]);
                terms.push((w, small_int(rng, bound)));
            }
            TruncSeries::from_terms(mu, order, terms).expect("letters in range")
        })
        .collect();
    SeriesMatrix::new(size, mu, order, entries).expect("consistent entries")
}
