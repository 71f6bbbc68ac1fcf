//! Bivariate causal direction inference with latent instrumental variables.
//!
//! Given two paired observation vectors `x` and `y`, the pipeline approximates
//! a hidden instrument for each variable by k-means clustering (once on each
//! marginal, once on the joint sample), picks the instrument pair whose
//! marginal and joint constructions disagree least on one side, and then runs
//! two conditional independence tests:
//!
//! * `y ⫫ I_x | x` holds: `x` causes `y`;
//! * otherwise `x ⫫ I_y | y` holds: `y` causes `x`;
//! * otherwise both are dependent: a hidden common cause.
//!
//! The crate is `no_std` (with `alloc`). File formats, the benchmark corpus
//! loader and the command-line tool live in the `latentiv` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod benchmark;
pub mod citest;
pub mod clustering;
pub mod config;
pub mod data;
pub mod error;
pub mod inference;
pub mod instruments;
pub mod rng;
pub mod special;
pub mod synthetic;

pub use config::{Config, DecisionMode, DistanceKind, TestKind};
pub use data::{standardize, DataPair};
pub use error::{Error, Result};
pub use inference::{Direction, EnsembleVerdict, Verdict};
pub use rng::RngStream;
