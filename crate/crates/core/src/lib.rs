//! Stochastic (`≤st`) and likelihood-ratio (`≤lr`) ordering for binomial,
//! negative binomial, hypergeometric, Poisson and Poisson-binomial laws.
//!
//! Verdicts come from closed-form tail criteria where they exist, from the
//! half-monotone likelihood-ratio sufficiency test otherwise, and always
//! agree with an exact survival-function oracle. The [`couplings`] module
//! builds explicit monotone couplings `X <= Y` by simulation.

pub mod calculus;
pub mod couplings;
pub mod distributions;
pub mod error;
pub mod likelihood;
pub mod oracle;
pub mod ordering;
pub mod scalar;
pub mod verify;

pub use distributions::{DistributionSpec, Family, SupportBounds};
pub use error::{Error, Result};
pub use oracle::{DominanceReport, Relation, Witnesses};
pub use ordering::{decide, OrderingVerdict, Policy};
pub use scalar::{ExactScalar, RatioValue};
