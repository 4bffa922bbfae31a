//! `X = F_P^{-1}(U)`, `Y = F_Q^{-1}(U)` with one uniform `U` per sample.
//!
//! `U` is a multiple of `2^-53`, so for exact laws the inverse cdf is
//! evaluated exactly and `P ≤st Q` gives `X <= Y` without rounding caveats.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use super::{rng, CouplingSample, Trace};
use crate::distributions::{self, DistributionSpec, MassTable};
use crate::likelihood;
use crate::ordering::{self, Policy};
use crate::oracle::Relation;
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuantileRun {
    pub samples: Vec<CouplingSample>,
    /// `decide(P, Q)` said `P ≤st Q` (or equal); otherwise the samples carry
    /// no domination guarantee.
    pub guaranteed: bool,
}

/// Left-continuous inverse cdf over a table of cumulative masses.
struct Quantiles {
    cdf: Vec<ExactScalar>,
    approx: Vec<f64>,
    offset: u64,
}

const SCALE: f64 = 9007199254740992.0; // 2^53

impl Quantiles {
    fn new(spec: &DistributionSpec) -> Self {
        let s = distributions::support(spec);
        let end = s.k_max.unwrap_or_else(|| likelihood::tail_cap(spec, spec, 1e-18, 10_000_000));
        let table = MassTable::new(spec, end);
        let cdf: Vec<ExactScalar> = (s.k_min..=end).map(|k| table.cdf(k)).collect();
        let approx = cdf.iter().map(ExactScalar::to_f64).collect();
        Self { cdf, approx, offset: s.k_min }
    }

    /// `min{k : F(k) >= m / 2^53}`.
    fn quantile(&self, m: u64) -> u64 {
        let u = m as f64 / SCALE;
        let exact_u = || ExactScalar::Rational(BigRational::new(BigInt::from(m), BigInt::from(1u64 << 53)));
        let below = |i: usize| {
            let d = self.approx[i] - u;
            if d.abs() > 1e-12 {
                d < 0.0
            } else {
                self.cdf[i].cmp_value(&exact_u()) == Ordering::Less
            }
        };
        let (mut lo, mut hi) = (0usize, self.cdf.len() - 1);
        if below(hi) {
            return self.offset + hi as u64;
        }
        while lo < hi {
            let mid = (lo + hi) / 2;
            if below(mid) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        self.offset + lo as u64
    }
}

pub fn quantile_coupling(p: &DistributionSpec, q: &DistributionSpec, seed: u64, count: u64, trace: bool) -> QuantileRun {
    let relation = ordering::decide(p, q, &Policy::default()).relation;
    let guaranteed = matches!(relation, Relation::LeSt | Relation::Equal);
    let (fp, fq) = (Quantiles::new(p), Quantiles::new(q));
    let samples = rng::generate(seed, count, |r| {
        let m = r.random_range(1..=(1u64 << 53));
        sample_at(&fp, &fq, m, trace)
    });
    QuantileRun { samples, guaranteed }
}

fn sample_at(fp: &Quantiles, fq: &Quantiles, m: u64, trace: bool) -> CouplingSample {
    CouplingSample { x1: fp.quantile(m), x2: fq.quantile(m), trace: trace.then(|| Trace::Quantile { u: m as f64 / SCALE }) }
}

/// Deterministic probe at `u = 1/2`.
pub fn quantile_at_half(p: &DistributionSpec, q: &DistributionSpec) -> (u64, u64) {
    let s = sample_at(&Quantiles::new(p), &Quantiles::new(q), 1u64 << 52, false);
    (s.x1, s.x2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::couplings::violations;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    #[test]
    fn counterexample_pair_is_dominated() {
        let b = DistributionSpec::binomial(18, q("1/2")).unwrap();
        let h = DistributionSpec::hypergeometric(21, 23, 22).unwrap();
        let run = quantile_coupling(&b, &h, 1, 20_000, false);
        assert!(run.guaranteed);
        assert_eq!(violations(&run.samples), 0);
        assert_eq!(quantile_at_half(&b, &b), (9, 9));
    }

    #[test]
    fn identical_laws_give_identical_draws() {
        let p = DistributionSpec::poisson(q("2.5")).unwrap();
        let run = quantile_coupling(&p, &p, 3, 2000, false);
        assert!(run.samples.iter().all(|s| s.x1 == s.x2));
    }

    #[test]
    fn binomial_median() {
        // F(4) = 0.5 exactly for b_{9,1/2}; the left-continuous inverse stops there.
        let b = DistributionSpec::binomial(9, q("1/2")).unwrap();
        assert_eq!(quantile_at_half(&b, &b).0, 4);
    }
}
