//! Geometric entanglement witnesses for two qutrits.
//!
//! The layers build on each other:
//!
//! * [`operator`]: bipartite operators, density matrices, partial transpose, spectra.
//! * [`weyl`]: Weyl operator basis, Bell projectors and Weyl expansions.
//! * [`family`]: the three-parameter Bell-diagonal family and the Horodecki line.
//! * [`witness`]: geometric witnesses, Weyl-coefficient certificates, the γ = 0
//!   measure and the λ-line detection thresholds.
//! * [`ppt`]: PPT verdicts, the nearest PPT state, and a separable-state sampler.
//! * [`atlas`] and [`reproduce`]: classification, sweeps and the threshold battery
//!   behind the `qudit-witness` binary.
//!
//! ```
//! use qudit_witness::witness::detection_profile;
//!
//! let p = detection_profile(5f64.sqrt() / 7.0)?;
//! assert!((p.lambda_min - 0.875).abs() < 1e-12);
//! # Ok::<(), qudit_witness::Error>(())
//! ```

pub mod atlas;
pub mod error;
pub mod family;
pub mod operator;
pub mod ppt;
pub mod reproduce;
pub mod weyl;
pub mod witness;

pub use error::{Error, Result};
