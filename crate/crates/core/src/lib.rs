//! Exact algebra for t-interpolated q-analogues of multiple zeta values.
//!
//! The crate provides the word algebra `Q[h, t]<x, y>` with its harmonic
//! products and interpolation maps, the cyclic operators used to build
//! kernel elements, exact truncated q-series evaluation, and verifiers
//! for the resulting families of relations.

pub mod cache;
pub mod coef;
pub mod cyclic;
pub mod error;
pub mod lemmas;
pub mod maps;
pub mod ncpoly;
pub mod numeric;
pub mod products;
pub mod qseries;
pub mod relations;
pub mod word;
pub mod zeta;

pub use coef::{CoefPoly, Rational};
pub use error::{Error, Result};
pub use ncpoly::NcPoly;
pub use word::{Index, Letter, Word};
pub use qseries::{QSeries, TPoly};
pub use zeta::Evaluator;
