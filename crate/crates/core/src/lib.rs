//! Deterministic pilot design for compressive multi-transmitter channel estimation.
//!
//! Every transmitter emits a cyclically shifted copy of one of `q` base
//! sequences, arranged so the receiver's measurement matrix is a row-wise
//! concatenation of `q` full `M x M` circulants. The crate covers the whole
//! chain:
//!
//! - [`seqgen`]: FZC, m-sequence, Gold and small-set Kasami families.
//! - [`correlation`]: periodic correlation, family profiles, Welch and Sarwate bounds.
//! - [`pilot`]: cyclic-shift assignment of pilots to transmitters.
//! - [`operator`]: the concatenated-circulant measurement operator and its
//!   coherence / spectral-norm certificate.
//! - [`channel`]: generic K-sparse channels and AWGN.
//! - [`recovery`]: LASSO and basis pursuit by shrinkage with continuation and
//!   active-set debiasing.
//! - [`harness`]: configuration, seeded Monte Carlo sweeps and CSV output.
//!
//! ```
//! use pilotcs::{operator::MeasurementOperator, seqgen};
//!
//! let family = seqgen::fzc_family(255).unwrap();
//! let op = MeasurementOperator::new(family.sequences().to_vec()).unwrap();
//! assert!((op.coherence() - 1.0 / 255f64.sqrt()).abs() < 1e-10);
//! assert!((op.spectral_norm_sq() - 2.0).abs() < 1e-10);
//! ```

pub mod channel;
pub mod correlation;
pub mod error;
pub mod harness;
pub mod operator;
pub mod pilot;
pub mod recovery;
pub mod seqgen;
mod spectral;
pub mod textio;

pub use num_complex::Complex64;

pub use error::{Error, Result};
