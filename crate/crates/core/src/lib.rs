//! Exact characteristic series of modules over free algebras.
//!
//! Noncommutative rational series over the rationals are represented either
//! as truncated coefficient maps ([`TruncSeries`]) or as finite realizations
//! ([`LinRep`]). Modules over the free algebra ([`FreeModule`]) and over the
//! algebra `P_mu` ([`PmuModule`]) produce such series; realizations can be
//! minimized, compared, and turned back into modules.

pub mod error;
pub mod free_module;
pub mod io;
pub mod linalg;
pub mod linrep;
pub mod pmu;
pub mod quasidet;
pub mod random;
pub mod series;

pub use error::{Error, Result};
pub use free_module::{reconstruct, semisimple_iso_test, FreeModule, Reconstruction};
pub use linalg::{algebra_closure, rat, ratio, trace_form_radical, Matrix, Rational, Subspace};
pub use linrep::{first_difference, minimize, rep_equal, LinRep};
pub use pmu::{alexander_invariants, qdet_phi_report, AlexanderPoly, PmuGenerator, PmuModule, QdetPhiReport};
pub use quasidet::{chi_via_qdet, qdet, SeriesMatrix};
pub use series::{magnus, GroupLetter, GroupWord, TruncSeries, Word};
