//! Explicit couplings `(X, Y)` with `X <= Y` in every sample.
//!
//! Every sampler is a deterministic function of its parameters, the seed and
//! the sample index (see [`rng`]); domination is checked per sample, never
//! assumed.

pub mod explicit;
pub mod levy;
pub mod occupancy;
pub mod poissonize;
pub mod qjoint;
pub mod quantile;
pub mod rng;
pub mod stats;

use std::cmp::Ordering;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::scalar::{cmp_powers, ExactScalar};

pub use explicit::binomial_explicit_coupling;
pub use levy::{levy_characteristics, levy_coupling_negbinom, levy_coupling_poisson_negbinom, levy_tail_ratio, LevyCharacteristics};
pub use occupancy::{occupancy_coupling, occupancy_mixture, occupancy_pushforward, OccupancyChain};
pub use poissonize::binom_poisson_coupling;
pub use qjoint::{q_joint, QJoint};
pub use quantile::quantile_coupling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Explicit,
    Levy,
    Occupancy,
    Poissonize,
    Quantile,
}

/// How a sample was built, when asked for.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Trace {
    /// Number of balls, the boxes hit on each side, the occupied counts
    /// after each throw, and how many boxes the final thinning step added
    /// on the second side.
    Explicit { t: u64, draws: Vec<(u64, u64)>, occupied: Vec<(u64, u64)>, lifted: u64 },
    /// Occupied counts of both chains after each throw.
    Occupancy { t: u64, occupied: Vec<(u64, u64)>, lifted: u64 },
    /// Points of the Poisson process on `(0, G2(1))`.
    Levy { points: Vec<f64> },
    /// `X0` and `X1..Xn`.
    Poissonize { x0: u64, x: Vec<u64> },
    Quantile { u: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingSample {
    pub x1: u64,
    pub x2: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

impl CouplingSample {
    pub fn plain(x1: u64, x2: u64) -> Self {
        Self { x1, x2, trace: None }
    }

    pub fn dominated(&self) -> bool {
        self.x1 <= self.x2
    }
}

pub fn violations(samples: &[CouplingSample]) -> usize {
    samples.iter().filter(|s| !s.dominated()).count()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingSummary {
    pub violations: usize,
    pub chi2_p_x1: f64,
    pub chi2_p_x2: f64,
}

/// Violations plus chi-square goodness of fit of both marginals.
pub fn summarize(samples: &[CouplingSample], p: &DistributionSpec, q: &DistributionSpec) -> CouplingSummary {
    let x1: Vec<u64> = samples.iter().map(|s| s.x1).collect();
    let x2: Vec<u64> = samples.iter().map(|s| s.x2).collect();
    CouplingSummary {
        violations: violations(samples),
        chi2_p_x1: stats::chi_square_gof(&x1, p).p_value,
        chi2_p_x2: stats::chi_square_gof(&x2, q).p_value,
    }
}

fn in_unit(p: &ExactScalar) -> bool {
    !p.is_negative() && p <= &ExactScalar::one()
}

/// `n1 <= n2` and `(1−p1)^n1 >= (1−p2)^n2`, exact where possible. Float
/// parameters get a relative slack of `1e-12` in log space so boundary
/// cases computed in floating point are accepted.
pub(crate) fn check_binomial_pair(n1: u64, p1: &ExactScalar, n2: u64, p2: &ExactScalar) -> Result<()> {
    if n1 == 0 || !in_unit(p1) || !in_unit(p2) {
        return Err(Error::InvalidSpec(format!("need n1 >= 1 and p in [0,1], got n1={n1}, p1={p1}, p2={p2}")));
    }
    if n1 > n2 {
        return Err(Error::ConditionsViolated(format!("n1 <= n2 fails: {n1} > {n2}")));
    }
    let (f1, f2) = (p1.complement(), p2.complement());
    let holds = match (f1.is_zero(), f2.is_zero()) {
        (true, _) => f2.is_zero(),
        (false, true) => true,
        _ if p1.is_exact() && p2.is_exact() => {
            cmp_powers(&f1, &ExactScalar::from(n1), &f2, &ExactScalar::from(n2)) != Ordering::Less
        }
        _ => {
            let (l1, l2) = (n1 as f64 * f1.ln(), n2 as f64 * f2.ln());
            l1 >= l2 - 1e-12 * l2.abs().max(1.0)
        }
    };
    if !holds {
        return Err(Error::ConditionsViolated(format!("(1-p1)^n1 >= (1-p2)^n2 fails for n1={n1}, p1={p1}, n2={n2}, p2={p2}")));
    }
    Ok(())
}

/// Smallest second-side success probability still dominating
/// `b_{n1,p1}`: `1 − (1−p1)^{n1/n2}`, never above `p2`.
pub(crate) fn boundary_p2(n1: u64, p1: f64, n2: u64, p2: f64) -> f64 {
    (1.0 - (1.0 - p1).powf(n1 as f64 / n2 as f64)).clamp(0.0, p2)
}

/// Independently turns each of `empty` boxes on with the probability that
/// raises the per-box rate from `from` to `to`; returns how many.
pub(crate) fn thin_up<R: Rng + ?Sized>(rng: &mut R, empty: u64, from: f64, to: f64) -> u64 {
    if to <= from || from >= 1.0 {
        return 0;
    }
    let theta = (to - from) / (1.0 - from);
    (0..empty).filter(|_| rng.random::<f64>() < theta).count() as u64
}
