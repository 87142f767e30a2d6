//! Exact analysis of zero-determinant strategies in repeated games with
//! public monitoring.
//!
//! Everything is computed over arbitrary-precision rationals. The crate is
//! `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructors;
pub mod error;
pub mod game;
pub mod linalg;
pub mod lp;
pub mod markov;
pub mod rational;
pub mod search;
pub mod sim;
pub mod strategy;
pub mod zd;

pub use error::{Error, Result};
pub use game::{Game, Permutation, StateSpace};
pub use linalg::Matrix;
pub use markov::{solve_profile, stationary_distribution, Method, StationaryResult, Weights};
pub use rational::{format_rational, parse_rational, Rational};
pub use strategy::{strategy_vectors, MemoryOneStrategy, MonitoringStructure, PressDysonMatrix};
pub use zd::{detect_zd, LinearRelation, ZdCertificate};
