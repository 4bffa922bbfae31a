//! Goodness of fit for sampled marginals: pooled chi-square and a
//! Dvoretzky–Kiefer–Wolfowitz band on the empirical cdf.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::distributions::{self, DistributionSpec, MassTable};
use crate::likelihood;

/// Bins are merged until each expects at least this many samples.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
    pub bins: usize,
}

fn model(spec: &DistributionSpec) -> (MassTable, u64, u64) {
    let s = distributions::support(spec);
    let end = s.k_max.unwrap_or_else(|| likelihood::tail_cap(spec, spec, 1e-12, 10_000_000));
    (MassTable::new(spec, end), s.k_min, end)
}

pub fn chi_square_gof(samples: &[u64], spec: &DistributionSpec) -> ChiSquare {
    let n = samples.len() as f64;
    let (table, lo, end) = model(spec);
    let support = distributions::support(spec);
    if samples.iter().any(|&x| !support.contains(x)) {
        return ChiSquare { statistic: f64::INFINITY, dof: 0, p_value: 0.0, bins: 0 };
    }
    let mut counts = vec![0u64; (end - lo + 1) as usize];
    let mut beyond = 0u64;
    for &x in samples {
        match counts.get_mut((x - lo) as usize) {
            Some(c) => *c += 1,
            None => beyond += 1,
        }
    }

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut e, mut o) = (0.0, 0.0);
    for k in lo..=end {
        e += n * table.pmf(k).to_f64();
        o += counts[(k - lo) as usize] as f64;
        let rest = n * table.upper(k).to_f64();
        if e >= MIN_EXPECTED && rest >= MIN_EXPECTED {
            bins.push((e, o));
            e = 0.0;
            o = 0.0;
        }
    }
    e += n * table.upper(end).to_f64();
    o += beyond as f64;
    match bins.last_mut() {
        Some(last) if e < MIN_EXPECTED => {
            last.0 += e;
            last.1 += o;
        }
        _ => bins.push((e, o)),
    }

    let statistic: f64 = bins.iter().filter(|(e, _)| *e > 0.0).map(|(e, o)| (o - e) * (o - e) / e).sum();
    if bins.len() < 2 {
        return ChiSquare { statistic, dof: 0, p_value: 1.0, bins: bins.len() };
    }
    let dof = bins.len() as u64 - 1;
    let p_value = ChiSquared::new(dof as f64).map(|d| d.sf(statistic)).unwrap_or(0.0);
    ChiSquare { statistic, dof, p_value, bins: bins.len() }
}

/// `sup_k |F_n(k) − F(k)|` over the integers.
pub fn ks_statistic(samples: &[u64], spec: &DistributionSpec) -> f64 {
    let n = samples.len() as f64;
    let (table, lo, end) = model(spec);
    let top = samples.iter().copied().max().unwrap_or(0).max(end);
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let mut idx = 0usize;
    let mut worst: f64 = 0.0;
    let mut cdf = 0.0;
    for k in 0..=top {
        while idx < sorted.len() && sorted[idx] <= k {
            idx += 1;
        }
        if k >= lo && k <= end {
            cdf = 1.0 - table.upper(k).to_f64();
        } else if k > end {
            cdf = 1.0;
        }
        worst = worst.max((idx as f64 / n - cdf).abs());
    }
    worst
}

/// Band half-width exceeded with probability at most `alpha`.
pub fn dkw_bound(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::couplings::rng;
    use crate::scalar::ExactScalar;
    use rand::Rng;

    #[test]
    fn fair_and_unfair_samples() {
        let b = DistributionSpec::binomial(4, ExactScalar::ratio(1, 2)).unwrap();
        let fair = rng::generate(1, 10_000, |r| (0..4).filter(|_| r.random::<bool>()).count() as u64);
        let c = chi_square_gof(&fair, &b);
        assert!(c.p_value > 1e-3 && c.dof == 4);
        assert!(ks_statistic(&fair, &b) < dkw_bound(fair.len(), 1e-3));
        let skewed = rng::generate(1, 10_000, |r| (0..4).filter(|_| r.random::<f64>() < 0.55).count() as u64);
        assert!(chi_square_gof(&skewed, &b).p_value < 1e-3);
        assert_eq!(chi_square_gof(&[5], &b).p_value, 0.0);
    }
}
