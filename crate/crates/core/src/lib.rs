//! Exact arithmetic for the inversion-refined multinomial distribution.
//!
//! A multinomial experiment of `n` trials over `k` categories yields an
//! outcome sequence. Besides the count vector `Y`, the sequence carries an
//! inversion number `I`: the number of pairs of positions whose symbols are
//! out of order. The q-multinomial coefficient of `Y` is the generating
//! function of `I` over all rearrangements, which gives the joint pmf
//!
//! ```text
//! P(Y = y, I = i) = inv(y; i) * p_1^y_1 * ... * p_k^y_k
//! ```
//!
//! The crate is split into:
//!
//! * [`qcomb`]: multinomial coefficients, compositions, q-integers, the
//!   q-multinomial polynomial, inversion counting and an enumeration oracle.
//! * [`dist`]: joint, marginal and conditional pmfs plus closed-form moments,
//!   generic over exact rationals and `f64`.
//! * [`stats`]: seeded simulation, the homogeneity statistic `H` and a Monte
//!   Carlo harness.
//! * [`asymp`]: normal-limit parameters for equal probabilities and fit
//!   diagnostics.
//! * [`io`]: JSON and CSV encodings.
//! * [`cli`]: the `invmult` command-line front end.

pub mod asymp;
pub mod cli;
pub mod dist;
pub mod error;
pub mod io;
pub mod qcomb;
pub mod stats;

pub use error::{Error, Result};
