//! Frequency-domain model of a hybrid readout cavity (HRC) speedmeter.
//!
//! A HRC is a ring cavity with a semi-transparent movable mirror inside.
//! One output port carries the carrier and a position signal, the other
//! (dark) port carries a speed signal. This crate computes the classical
//! resonance structure, the quantum input-output transfer functions, the
//! shot-noise and radiation-pressure noise budgets, reference free-space
//! meter sensitivities, a multi-mode membrane response, and least-squares
//! parameter fits for sweep and ringdown data.
//!
//! The crate is `no_std` compatible (requires `alloc`); all file and CLI
//! handling lives in the companion `hrc-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classical;
pub mod config;
pub mod constants;
pub mod error;
pub mod fit;
pub mod mat2;
pub mod membrane;
pub mod meters;
pub mod noise;
pub mod transfer;

pub use error::HrcError;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, HrcError>;
