//! Exact computational Lie theory in positive characteristic.
//!
//! The crate computes orders of unipotent elements and `p`-nilpotence
//! degrees of nilpotent elements attached to distinguished parabolic
//! subgroups, and checks the combinatorial predictions against explicit
//! matrix models. Supporting machinery covers exact rationals and power
//! series, root systems, Witt vectors, the Artin-Hasse exponential and
//! commuting tuples of `p`-nilpotent matrices.

pub mod artinhasse;
pub mod chevalley;
pub mod commvar;
pub mod error;
pub mod exact;
pub mod matlie;
pub mod parabolic;
pub mod rng;
pub mod rootsys;
pub mod witt;

pub use error::{Error, Result};
pub use exact::{ExactPoly, ExactSeries, Fp, Rational, Scalar, Valuation};
