//! Compound-Poisson representation of negative binomial and Poisson laws.
//!
//! Both are infinitely divisible with no drift and a Lévy measure `ν` on
//! `{1, 2, …}`: `ν({k}) = r(1−p)^k/k` resp. `λ·δ_1`. One unit-rate Poisson
//! process on `(0, G2(1))`, pushed through the inverse tails `G_i^{-1}`,
//! gives both laws at once, ordered whenever `G1 <= G2`.

use std::cmp::Ordering;

use rand::Rng;
use serde::Serialize;

use super::{rng, CouplingSample, Trace};
use crate::distributions::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::scalar::{cmp_powers, ExactScalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LevyMeasure {
    NegBinomial { r: ExactScalar, p: ExactScalar },
    Poisson { lambda: ExactScalar },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevyCharacteristics {
    pub alpha: ExactScalar,
    pub nu: LevyMeasure,
}

pub fn levy_characteristics(spec: &DistributionSpec) -> Result<LevyCharacteristics> {
    let nu = match spec.family() {
        Family::NegBinomial { r, p } => LevyMeasure::NegBinomial { r: r.clone(), p: p.clone() },
        Family::Poisson { lambda } => LevyMeasure::Poisson { lambda: lambda.clone() },
        _ => return Err(Error::UnsupportedFamily(spec.family_name())),
    };
    Ok(LevyCharacteristics { alpha: ExactScalar::zero(), nu })
}

/// Terms below this fraction of the running sum end a tail summation.
const SUM_TOL: f64 = 1e-17;

impl LevyCharacteristics {
    /// `ν({k})`, exact when the parameters are.
    pub fn weight(&self, k: u64) -> ExactScalar {
        match &self.nu {
            _ if k == 0 => ExactScalar::zero(),
            LevyMeasure::NegBinomial { r, p } => {
                r * &p.complement().pow(k) / ExactScalar::from(k)
            }
            LevyMeasure::Poisson { lambda } if k == 1 => lambda.clone(),
            LevyMeasure::Poisson { .. } => ExactScalar::zero(),
        }
    }

    /// `G(k) = ν([k, ∞))` for integer `k >= 1`, summed until the terms
    /// stop mattering.
    pub fn tail(&self, k: u64) -> f64 {
        let k = k.max(1);
        match &self.nu {
            LevyMeasure::Poisson { lambda } => {
                if k == 1 {
                    lambda.to_f64()
                } else {
                    0.0
                }
            }
            LevyMeasure::NegBinomial { r, p } => {
                let q = p.complement().to_f64();
                if q == 0.0 {
                    return 0.0;
                }
                let mut term = (k as f64 * q.ln()).exp();
                let mut sum = 0.0f64;
                let mut l = k;
                while term / l as f64 > SUM_TOL * sum.max(f64::MIN_POSITIVE) {
                    sum += term / l as f64;
                    term *= q;
                    l += 1;
                }
                r.to_f64() * sum
            }
        }
    }

    /// `ν(ℕ)` in closed form: `−r log p` or `λ`.
    pub fn total_mass(&self) -> f64 {
        match &self.nu {
            LevyMeasure::NegBinomial { r, p } => -r.to_f64() * p.ln(),
            LevyMeasure::Poisson { lambda } => lambda.to_f64(),
        }
    }

    /// `G(1), G(2), …` down to the first zero (or `1e-300`), always ending
    /// with a `0.0` entry.
    fn tail_table(&self) -> Vec<f64> {
        let mut out = Vec::new();
        match &self.nu {
            LevyMeasure::Poisson { lambda } => out.push(lambda.to_f64()),
            LevyMeasure::NegBinomial { r, p } => {
                let q = p.complement().to_f64();
                let r = r.to_f64();
                // Weights first, then suffix sums from the far end.
                let mut weights = Vec::new();
                let mut qk = q;
                let mut k = 1u64;
                while qk > 1e-300 {
                    weights.push(r * qk / k as f64);
                    k += 1;
                    qk *= q;
                }
                let mut acc = 0.0;
                out = weights
                    .iter()
                    .rev()
                    .map(|w| {
                        acc += w;
                        acc
                    })
                    .collect();
                out.reverse();
            }
        }
        out.push(0.0);
        out
    }
}

/// `φ(k) = G1(k) / G2(k)` for two negative binomials.
pub fn levy_tail_ratio(r1: &ExactScalar, p1: &ExactScalar, r2: &ExactScalar, p2: &ExactScalar, k: u64) -> Result<f64> {
    let a = nb_characteristics(r1, p1)?;
    let b = nb_characteristics(r2, p2)?;
    Ok(a.tail(k) / b.tail(k))
}

/// `φ(1) = r1 log p1 / (r2 log p2)`.
pub fn phi_one_closed_form(r1: &ExactScalar, p1: &ExactScalar, r2: &ExactScalar, p2: &ExactScalar) -> f64 {
    (r1.to_f64() * p1.ln()) / (r2.to_f64() * p2.ln())
}

pub fn nb_characteristics(r: &ExactScalar, p: &ExactScalar) -> Result<LevyCharacteristics> {
    let spec = DistributionSpec::negbinomial(r.clone(), p.clone())?;
    if p.is_one() {
        return Err(Error::OutOfDomain(format!("p={p} must lie in (0,1)")));
    }
    levy_characteristics(&spec)
}

/// `ν1 ≤st ν2` for two negative binomial measures: `φ(1) <= 1` (that is
/// `p1^r1 >= p2^r2`) and `φ` nonincreasing (`p1 >= p2`).
pub fn negbinom_levy_ordered(r1: &ExactScalar, p1: &ExactScalar, r2: &ExactScalar, p2: &ExactScalar) -> Result<()> {
    if cmp_powers(p1, r1, p2, r2) == Ordering::Less {
        return Err(Error::ConditionsViolated(format!("p1^r1 >= p2^r2 fails: {p1}^{r1} < {p2}^{r2}")));
    }
    if p1 < p2 {
        return Err(Error::ConditionsViolated(format!("p1 >= p2 fails: {p1} < {p2}")));
    }
    Ok(())
}

pub fn levy_coupling_negbinom(
    r1: &ExactScalar,
    p1: &ExactScalar,
    r2: &ExactScalar,
    p2: &ExactScalar,
    seed: u64,
    count: u64,
    trace: bool,
) -> Result<Vec<CouplingSample>> {
    let c1 = nb_characteristics(r1, p1)?;
    let c2 = nb_characteristics(r2, p2)?;
    negbinom_levy_ordered(r1, p1, r2, p2)?;
    levy_coupling(&c1, &c2, seed, count, trace)
}

/// Poisson versus negative binomial: `ν_λ ≤st ν_{r,p}` iff `λ <= −r log p`.
pub fn levy_coupling_poisson_negbinom(
    lambda: &ExactScalar,
    r: &ExactScalar,
    p: &ExactScalar,
    seed: u64,
    count: u64,
    trace: bool,
) -> Result<Vec<CouplingSample>> {
    let c1 = levy_characteristics(&DistributionSpec::poisson(lambda.clone())?)?;
    let c2 = nb_characteristics(r, p)?;
    if c1.total_mass() > c2.total_mass() {
        return Err(Error::ConditionsViolated(format!("e^-lambda >= p^r fails for lambda={lambda}, r={r}, p={p}")));
    }
    levy_coupling(&c1, &c2, seed, count, trace)
}

/// Tail tables of both measures padded to a common length, with rounding-level
/// excesses of `G1` over `G2` clamped; `None` when `G1 <= G2` fails beyond
/// rounding somewhere.
fn ordered_tables(c1: &LevyCharacteristics, c2: &LevyCharacteristics) -> std::result::Result<(Vec<f64>, Vec<f64>), u64> {
    let mut g2 = c2.tail_table();
    let mut g1 = c1.tail_table();
    let len = g1.len().max(g2.len());
    g1.resize(len, 0.0);
    g2.resize(len, 0.0);
    for (k, (a, b)) in g1.iter_mut().zip(&g2).enumerate() {
        if *a > *b * (1.0 + 1e-12) + 1e-300 {
            return Err(k as u64 + 1);
        }
        *a = a.min(*b);
    }
    Ok((g1, g2))
}

/// `ν1 ≤st ν2` as measures: `G1(k) <= G2(k)` for every `k >= 1`, up to
/// rounding.
pub fn tails_ordered(c1: &LevyCharacteristics, c2: &LevyCharacteristics) -> bool {
    ordered_tables(c1, c2).is_ok()
}

/// The shared-process construction for any two characteristics with
/// `G1 <= G2`. Violations beyond rounding are rejected; rounding-level ones
/// are clamped so the pathwise order is exact.
pub fn levy_coupling(
    c1: &LevyCharacteristics,
    c2: &LevyCharacteristics,
    seed: u64,
    count: u64,
    trace: bool,
) -> Result<Vec<CouplingSample>> {
    let (g1, g2) = ordered_tables(c1, c2)
        .map_err(|k| Error::ConditionsViolated(format!("Levy tails not ordered at k={k}")))?;
    let window = g2[0];
    Ok(rng::generate(seed, count, |r| {
        let m = rng::poisson(r, window);
        let points: Vec<f64> = (0..m).map(|_| r.random::<f64>() * window).collect();
        let x1 = points.iter().map(|&y| inverse(&g1, y)).sum();
        let x2 = points.iter().map(|&y| inverse(&g2, y)).sum();
        CouplingSample { x1, x2, trace: trace.then_some(Trace::Levy { points }) }
    }))
}

/// `G^{-1}(y) = min{k >= 0 : G(k+1) <= y}` with `table[j] = G(j+1)`.
fn inverse(table: &[f64], y: f64) -> u64 {
    table.partition_point(|&g| g > y) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::couplings::{stats, violations};

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    #[test]
    fn weights() {
        let c = levy_characteristics(&DistributionSpec::negbinomial(q("2"), q("1/2")).unwrap()).unwrap();
        assert_eq!(c.weight(1), q("1"));
        assert_eq!(c.weight(2), q("1/4"));
        let c = levy_characteristics(&DistributionSpec::poisson(q("3")).unwrap()).unwrap();
        assert_eq!((c.weight(1), c.weight(2)), (q("3"), q("0")));
        assert!(levy_characteristics(&DistributionSpec::binomial(2, q("1/2")).unwrap()).is_err());
    }

    #[test]
    fn total_mass_and_phi() {
        for (r, p) in [("1", "0.5"), ("2.5", "0.1"), ("4", "0.9")] {
            let c = nb_characteristics(&q(r), &q(p)).unwrap();
            assert!((c.tail(1) - c.total_mass()).abs() < 1e-12, "{r} {p}");
            assert!((c.tail_table()[0] - c.total_mass()).abs() < 1e-12);
        }
        let summed = levy_tail_ratio(&q("1"), &q("0.5"), &q("2"), &q("0.4"), 1).unwrap();
        assert!((summed - phi_one_closed_form(&q("1"), &q("0.5"), &q("2"), &q("0.4"))).abs() < 1e-10);
        let same = levy_tail_ratio(&q("3"), &q("0.3"), &q("3"), &q("0.3"), 7).unwrap();
        assert!((same - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_tail() {
        let table = [3.0, 1.0, 0.5, 0.0];
        assert_eq!(inverse(&table, 3.5), 0);
        assert_eq!(inverse(&table, 2.0), 1);
        assert_eq!(inverse(&table, 0.7), 2);
        assert_eq!(inverse(&table, 0.1), 3);
    }

    #[test]
    fn geometric_pair() {
        let s = levy_coupling_negbinom(&q("1"), &q("0.6"), &q("1"), &q("0.5"), 4, 20_000, false).unwrap();
        assert_eq!(violations(&s), 0);
        let x1: Vec<u64> = s.iter().map(|s| s.x1).collect();
        let d = DistributionSpec::negbinomial(q("1"), q("0.6")).unwrap();
        assert!(stats::chi_square_gof(&x1, &d).p_value > 1e-3);
        assert!(levy_coupling_negbinom(&q("1"), &q("0.5"), &q("1"), &q("0.6"), 4, 1, false).is_err());
    }
}
