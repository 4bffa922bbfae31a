//! Balls thrown one at a time into `n` boxes: the number of nonempty boxes is
//! a Markov chain that moves up by one with probability `1 − k/n`.

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use super::{boundary_p2, check_binomial_pair, rng, thin_up, CouplingSample, Trace};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OccupancyChain {
    pub n: u64,
}

impl OccupancyChain {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("occupancy chain needs n >= 1".into()));
        }
        Ok(Self { n })
    }

    /// `p_n(k, l)`.
    pub fn kernel(&self, k: u64, l: u64) -> ExactScalar {
        if k > self.n {
            return ExactScalar::zero();
        }
        if l == k {
            ExactScalar::ratio(k, self.n)
        } else if l == k + 1 {
            ExactScalar::ratio(self.n - k, self.n)
        } else {
            ExactScalar::zero()
        }
    }

    pub fn matrix(&self) -> Vec<Vec<ExactScalar>> {
        (0..=self.n).map(|k| (0..=self.n).map(|l| self.kernel(k, l)).collect()).collect()
    }

    /// `h_{n,l}(k) = Σ_{j>=l} p_n(k, j)`.
    pub fn h(&self, l: u64, k: u64) -> ExactScalar {
        (l..=self.n).fold(ExactScalar::zero(), |acc, j| acc + self.kernel(k, j))
    }

    /// One step of the chain applied to a distribution over `{0..n}`.
    pub fn step(&self, dist: &[BigRational]) -> Vec<BigRational> {
        let n = BigRational::from_integer(self.n.into());
        let mut next = vec![BigRational::from_integer(0.into()); dist.len()];
        for (k, mass) in dist.iter().enumerate() {
            if num_traits::Zero::is_zero(mass) {
                continue;
            }
            let stay = BigRational::from_integer((k as u64).into()) / &n;
            next[k] += mass * &stay;
            if k + 1 < dist.len() {
                next[k + 1] += mass * (BigRational::from_integer(1.into()) - stay);
            }
        }
        next
    }
}

fn point_mass_at_zero(n: u64) -> Vec<BigRational> {
    let mut d = vec![BigRational::from_integer(0.into()); n as usize + 1];
    d[0] = BigRational::from_integer(1.into());
    d
}

/// Exact law of the number of nonempty boxes after `t` balls.
pub fn occupancy_pushforward(n: u64, t: u64) -> Result<Vec<ExactScalar>> {
    let chain = OccupancyChain::new(n)?;
    let mut d = point_mass_at_zero(n);
    for _ in 0..t {
        d = chain.step(&d);
    }
    Ok(d.into_iter().map(ExactScalar::Rational).collect())
}

/// `Σ_t Poi_λ({t}) · law(N_{n,t})` with `λ = −n log(1−p)`, summed up to
/// `t_cap` (default: until the Poisson tail is below `1e-13`).
pub fn occupancy_mixture(n: u64, p: f64, t_cap: Option<u64>) -> Result<Vec<f64>> {
    let chain = OccupancyChain::new(n)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfDomain(format!("p={p} must lie in (0,1)")));
    }
    let lambda = -(n as f64) * (1.0 - p).ln();
    let mut out = vec![0.0; n as usize + 1];
    let mut d = point_mass_at_zero(n);
    let mut weight = (-lambda).exp();
    let mut remaining = 1.0 - weight;
    let mut t = 0u64;
    loop {
        for (o, m) in out.iter_mut().zip(&d) {
            *o += weight * crate::scalar::rational_to_f64(m);
        }
        let done = match t_cap {
            Some(cap) => t >= cap,
            None => remaining < 1e-13 && t as f64 > lambda,
        };
        if done {
            return Ok(out);
        }
        t += 1;
        weight *= lambda / t as f64;
        remaining -= weight;
        d = chain.step(&d);
    }
}

/// Both chains driven by the same Poisson number of throws and the same
/// uniform per throw: chain `i` grows when `u < 1 − k_i/n_i`, which keeps
/// `k1 <= k2` because `h_{n,l}(k)` increases in `k` and `n`.
pub fn occupancy_coupling(
    n1: u64,
    p1: &ExactScalar,
    n2: u64,
    p2: &ExactScalar,
    seed: u64,
    count: u64,
    trace: bool,
) -> Result<Vec<CouplingSample>> {
    check_binomial_pair(n1, p1, n2, p2)?;
    let (p1, p2) = (p1.to_f64(), p2.to_f64());
    let reduced = boundary_p2(n1, p1, n2, p2);
    let lambda = -(n1 as f64) * (1.0 - p1).ln();
    Ok(rng::generate(seed, count, |r| {
        if p1 >= 1.0 {
            return CouplingSample::plain(n1, n2);
        }
        let t = rng::poisson(r, lambda);
        let (mut k1, mut k2) = (0u64, 0u64);
        let mut occupied = Vec::new();
        for _ in 0..t {
            if k1 == n1 && k2 == n2 {
                break;
            }
            let u: f64 = r.random();
            k1 += (u < 1.0 - k1 as f64 / n1 as f64) as u64;
            k2 += (u < 1.0 - k2 as f64 / n2 as f64) as u64;
            if trace {
                occupied.push((k1, k2));
            }
        }
        let lifted = thin_up(r, n2 - k2, reduced, p2);
        let trace = trace.then_some(Trace::Occupancy { t, occupied, lifted });
        CouplingSample { x1: k1, x2: k2 + lifted, trace }
    }))
}
