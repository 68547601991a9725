//! Delta-parameter machinery for binary-input discrete memoryless channels.
//!
//! A B-DMC `W` is summarised by the random variable
//! `Δ_W(Y) = (W(Y|0) - W(Y|1)) / (W(Y|0) + W(Y|1))` with `Y` drawn from the
//! uniform-input output law `q_W`. Every channel parameter used here
//! (variational distance, Bhattacharyya parameter, symmetric capacity) is an
//! expectation `E[φ(|Δ|)]`, so the crate works on finite Δ-distributions:
//!
//! * [`channel`] builds channels, extracts Δ-distributions, symmetrizes and
//!   degrades them.
//! * [`delta`] holds the discrete distributions, the functionals `φ`, and
//!   support control (merging and quantization).
//! * [`polar`] applies the minus/plus polarization transforms, either on
//!   channels or directly on Δ-distributions.
//! * [`ordering`] decides increasing convex, convex and symmetric convex
//!   orders, the cut criterion, degradation and mean-preserving kernels.
//! * [`infoset`] builds information sets and checks containment between them.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature only adds
//! `std::error::Error` plumbing through `core::error::Error`; `parallel`
//! evaluates synthesis-tree levels with rayon.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod channel;
pub mod delta;
mod error;
pub mod infoset;
mod lp;
pub mod ordering;
pub mod polar;

pub use channel::{Channel, Kernel};
pub use delta::{Atom, DeltaDistribution, Functional};
pub use error::{Error, Result};
pub use infoset::{build_info_set, containment, Containment, InfoSet, SynthesisTree};
pub use ordering::{Method, OrderingVerdict, Witness};
pub use polar::{Budget, Sign, SignSequence};

/// Absolute tolerance for stochasticity checks on probability rows.
pub const PROB_TOL: f64 = 1e-12;
