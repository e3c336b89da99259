//! Coefficient machinery for m-fold symmetric bi-univalent function classes
//! defined by subordination.
//!
//! The crate is `no_std` (it needs `alloc`). Modules, bottom up:
//!
//! - [`series`]: truncated power series over exact or float complex scalars,
//!   including reversion and the m-fold lift.
//! - [`phi`]: Ma-Minda majorants `phi(z) = 1 + B1 z + B2 z^2 + ...`.
//! - [`bounds`]: closed-form coefficient and Fekete-Szego bounds.
//! - [`membership`]: order-by-order Schwarz coefficient extraction and
//!   truncated membership certificates.
//! - [`search`]: grid search over the Schwarz-parameter set behind the
//!   bounds.
#![no_std]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod membership;
pub mod phi;
pub mod scalar;
pub mod search;
pub mod series;

pub use error::{ParamError, SeriesError};
pub use scalar::{Backend, ExactComplex, Scalar};
pub use series::{inverse_mfold_closed_form, AnySeries, ExactSeries, FloatSeries, TruncatedSeries};
pub use scalar::Complex64;
