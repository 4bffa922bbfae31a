//! `b_{n,p}` against `Poi_λ`: give each of `n` boxes a `Poi(λ̂)` count with
//! `λ̂ = −log(1−p)`, so "box nonempty" is Bernoulli(p), and top the total up
//! with an independent `Poi(λ − nλ̂)`.

use super::{rng, CouplingSample, Trace};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

pub fn binom_poisson_coupling(
    n: u64,
    p: &ExactScalar,
    lambda: &ExactScalar,
    seed: u64,
    count: u64,
    trace: bool,
) -> Result<Vec<CouplingSample>> {
    if n == 0 || p.is_negative() || p > &ExactScalar::one() || lambda.is_negative() || lambda.is_zero() {
        return Err(Error::InvalidSpec(format!("need n >= 1, p in [0,1], lambda > 0; got n={n}, p={p}, lambda={lambda}")));
    }
    let hat = -p.complement().ln();
    let lambda = lambda.to_f64();
    let rest = lambda - n as f64 * hat;
    // (1−p)^n >= e^{−λ}  <=>  n λ̂ <= λ; tolerate rounding at the boundary.
    if rest.is_nan() || rest < -1e-12 * lambda.max(1.0) {
        return Err(Error::ConditionsViolated(format!("(1-p)^n >= e^-lambda fails for n={n}, p={p}, lambda={lambda}")));
    }
    let rest = rest.max(0.0);
    Ok(rng::generate(seed, count, |r| {
        let x0 = rng::poisson(r, rest);
        let x: Vec<u64> = (0..n).map(|_| rng::poisson(r, hat)).collect();
        let x1 = x.iter().filter(|&&v| v > 0).count() as u64;
        let x2 = x0 + x.iter().sum::<u64>();
        CouplingSample { x1, x2, trace: trace.then_some(Trace::Poissonize { x0, x }) }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::couplings::{stats, violations};
    use crate::distributions::DistributionSpec;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    #[test]
    fn marginals_and_domination() {
        let s = binom_poisson_coupling(3, &q("0.2"), &q("1"), 2, 20_000, true).unwrap();
        assert_eq!(violations(&s), 0);
        for sample in &s {
            let Some(Trace::Poissonize { x, .. }) = &sample.trace else { panic!() };
            if x.iter().all(|&v| v == 0) {
                assert_eq!(sample.x1, 0);
            }
        }
        let x2: Vec<u64> = s.iter().map(|s| s.x2).collect();
        assert!(stats::chi_square_gof(&x2, &DistributionSpec::poisson(q("1")).unwrap()).p_value > 1e-3);
        assert!(binom_poisson_coupling(3, &q("0.5"), &q("1"), 2, 1, false).is_err());
    }
}
