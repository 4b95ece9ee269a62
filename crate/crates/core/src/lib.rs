//! Exact BKP tau-functions from affine coordinates.
//!
//! The crate realizes a tau-function of the BKP hierarchy from its affine
//! coordinates `a_{n,m}` and checks, on truncated data, the identities that tie
//! the different descriptions together:
//!
//! * the Schur Q-function expansion with Pfaffian coefficients ([`tau`]),
//!   validated against a neutral-fermion Wick oracle;
//! * connected n-point functions and connected spin Hurwitz numbers with
//!   completed cycles ([`npoint`]);
//! * the Hirota bilinear equation, Sato's principal specialization and the
//!   wave-function span statement ([`hirota`]);
//! * the Kac-Schwarz pair `P = E_1 ∂_z - p E_2 z^{-2}`, `Q = E_{-1} z` with
//!   `[P, Q] = 1` ([`kacschwarz`]).
//!
//! All arithmetic is exact. Coefficients live in [`ring::Scalar`]: rational
//! polynomials in `p` and `β`, with `β` truncated at a chosen order.
//!
//! Schur Q-functions are always stored in the `Q_μ(t/2)` normalization, i.e.
//! `Σ_n Q_(n)(t/2) z^n = exp(Σ_{k odd} t_k z^k)`.

pub mod affine;
pub mod cli;
mod error;
pub mod hirota;
pub mod kacschwarz;
pub mod npoint;
pub mod partitions;
pub mod report;
pub mod ring;
pub mod schurq;
pub mod tau;

pub use error::{Error, Result};
