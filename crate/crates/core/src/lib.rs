//! Exact divisor calculus on blown-up rational surfaces, double-cover
//! invariants, inequality-driven case enumeration, interpolation-based
//! nefness certificates and moduli dimension counts.

pub mod classifier;
pub mod cli;
pub mod covers;
pub mod error;
pub mod nefcert;
pub mod moduli;
pub mod picard;
pub mod rational;

pub use error::{Error, Result};
pub use rational::{parse_q, q, qr, Q};
