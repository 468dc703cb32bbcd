//! Derivative oversampling for band-limited signals.
//!
//! The crate covers three layers:
//!
//! * [`kernels`]: the sinc kernel, the closed-form dual generators of the
//!   two-channel derivative frame and their derivatives, and the one-channel
//!   kernel.
//! * [`system`] and [`recovery`]: assembly of the linear systems that recover a
//!   finite set of lost samples of a function and/or its derivative, and their
//!   solution (plain or Tikhonov-regularized with the discrepancy principle).
//! * [`linalg`]: the small dense solvers and spectral diagnostics used to study
//!   the stability of those systems.
//!
//! [`signals`] holds the ground-truth signals and the reconstruction formulas,
//! and [`experiments`] turns everything into tables (CSV or JSON) for the
//! `oversampling` command-line tool.

pub mod error;
pub mod experiments;
pub mod kernels;
pub mod linalg;
pub mod recovery;
pub mod report;
pub mod signals;
pub mod system;

pub use error::{Error, Result};
pub use kernels::{OneChannelParams, TwoChannelParams};
pub use linalg::{DenseMatrix, SpectrumReport};
pub use recovery::{NoiseSpec, RecoveryOptions, RecoveryResult, Warning};
pub use signals::{BandLimitedSignal, IndexedSamples};
pub use system::{BlockSystem, EigBounds, MissingSet};
