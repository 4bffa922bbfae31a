//! The five discrete families and their masses.
//!
//! `pmf`, `cdf` and `survival` are exact whenever the closed form is rational
//! in rational inputs (binomial, hypergeometric, negative binomial with
//! integer `r`, Poisson-binomial); Poisson masses and non-integer `r` fall
//! back to `f64` evaluated in log space.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};
use statrs::function::factorial::{ln_binomial, ln_factorial};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::scalar::{binomial_coefficient, exact_param, ExactScalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Binomial { n: u64, p: ExactScalar },
    NegBinomial { r: ExactScalar, p: ExactScalar },
    Hypergeometric { black: u64, white: u64, draws: u64 },
    Poisson { lambda: ExactScalar },
    PoissonBinomial { p: Vec<ExactScalar> },
}

/// A validated distribution. Construct through the named constructors,
/// [`DistributionSpec::new`] or JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct DistributionSpec(Family);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportBounds {
    pub k_min: u64,
    /// `None` is `+∞`.
    pub k_max: Option<u64>,
}

impl SupportBounds {
    pub fn is_finite(&self) -> bool {
        self.k_max.is_some()
    }

    pub fn contains(&self, k: u64) -> bool {
        k >= self.k_min && self.k_max.is_none_or(|m| k <= m)
    }

    /// Support of `P + Q`'s hull.
    pub fn join(&self, other: &Self) -> Self {
        let k_max = match (self.k_max, other.k_max) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Self { k_min: self.k_min.min(other.k_min), k_max }
    }
}

impl fmt::Display for SupportBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k_max {
            Some(m) => write!(f, "[{}, {}]", self.k_min, m),
            None => write!(f, "[{}, inf)", self.k_min),
        }
    }
}

fn in_unit(p: &ExactScalar, open_left: bool, open_right: bool) -> bool {
    let zero = ExactScalar::zero();
    let one = ExactScalar::one();
    let lo = if open_left { p > &zero } else { p >= &zero };
    let hi = if open_right { p < &one } else { p <= &one };
    lo && hi && p.to_f64().is_finite()
}

impl DistributionSpec {
    pub fn new(family: Family) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        match &family {
            Family::Binomial { n, p } => {
                if *n == 0 {
                    return bad("binomial needs n >= 1".into());
                }
                if !in_unit(p, false, false) {
                    return bad(format!("binomial p={p} outside [0,1]"));
                }
            }
            Family::NegBinomial { r, p } => {
                if r <= &ExactScalar::zero() || !r.to_f64().is_finite() {
                    return bad(format!("negative binomial needs r > 0, got {r}"));
                }
                if !in_unit(p, true, false) {
                    return bad(format!("negative binomial p={p} outside (0,1]"));
                }
            }
            Family::Hypergeometric { black, white, draws } => {
                if *draws == 0 || *draws > black + white {
                    return bad(format!("hypergeometric needs 1 <= n <= B+W, got n={draws}, B+W={}", black + white));
                }
            }
            Family::Poisson { lambda } => {
                if lambda <= &ExactScalar::zero() || !lambda.to_f64().is_finite() {
                    return bad(format!("poisson needs lambda > 0, got {lambda}"));
                }
            }
            Family::PoissonBinomial { p } => {
                if p.is_empty() {
                    return bad("poisson-binomial needs at least one entry".into());
                }
                if let Some(x) = p.iter().find(|x| !in_unit(x, false, false)) {
                    return bad(format!("poisson-binomial entry {x} outside [0,1]"));
                }
                if p.windows(2).any(|w| w[0] < w[1]) {
                    return bad("poisson-binomial vector must be sorted nonincreasing".into());
                }
            }
        }
        Ok(Self(family))
    }

    pub fn binomial(n: u64, p: ExactScalar) -> Result<Self> {
        Self::new(Family::Binomial { n, p })
    }

    pub fn negbinomial(r: ExactScalar, p: ExactScalar) -> Result<Self> {
        Self::new(Family::NegBinomial { r, p })
    }

    pub fn hypergeometric(black: u64, white: u64, draws: u64) -> Result<Self> {
        Self::new(Family::Hypergeometric { black, white, draws })
    }

    pub fn poisson(lambda: ExactScalar) -> Result<Self> {
        Self::new(Family::Poisson { lambda })
    }

    pub fn poisson_binomial(p: Vec<ExactScalar>) -> Result<Self> {
        Self::new(Family::PoissonBinomial { p })
    }

    pub fn family(&self) -> &Family {
        &self.0
    }

    pub fn family_name(&self) -> &'static str {
        match self.0 {
            Family::Binomial { .. } => "binomial",
            Family::NegBinomial { .. } => "negbinomial",
            Family::Hypergeometric { .. } => "hypergeometric",
            Family::Poisson { .. } => "poisson",
            Family::PoissonBinomial { .. } => "poisson_binomial",
        }
    }

    /// True when every mass is an exact rational.
    pub fn is_exact(&self) -> bool {
        match &self.0 {
            Family::Binomial { p, .. } => p.is_exact(),
            Family::NegBinomial { r, p } => p.is_exact() && (p.is_one() || r.as_u64().is_some()),
            Family::Hypergeometric { .. } => true,
            Family::Poisson { .. } => false,
            Family::PoissonBinomial { p } => p.iter().all(ExactScalar::is_exact),
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Family::Binomial { n, p } => write!(f, "Binomial(n={n}, p={p})"),
            Family::NegBinomial { r, p } => write!(f, "NegBinomial(r={r}, p={p})"),
            Family::Hypergeometric { black, white, draws } => {
                write!(f, "Hypergeometric(B={black}, W={white}, n={draws})")
            }
            Family::Poisson { lambda } => write!(f, "Poisson(lambda={lambda})"),
            Family::PoissonBinomial { p } => {
                let items: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "PoissonBinomial({})", items.join(", "))
            }
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
enum Wire {
    #[serde(rename = "binomial")]
    Binomial {
        n: u64,
        #[serde(deserialize_with = "exact_param")]
        p: ExactScalar,
    },
    #[serde(rename = "negbinomial")]
    NegBinomial {
        #[serde(deserialize_with = "exact_param")]
        r: ExactScalar,
        #[serde(deserialize_with = "exact_param")]
        p: ExactScalar,
    },
    #[serde(rename = "hypergeometric")]
    Hypergeometric {
        #[serde(rename = "B")]
        black: u64,
        #[serde(rename = "W")]
        white: u64,
        n: u64,
    },
    #[serde(rename = "poisson")]
    Poisson {
        #[serde(deserialize_with = "exact_param")]
        lambda: ExactScalar,
    },
    #[serde(rename = "poisson_binomial")]
    PoissonBinomial {
        #[serde(deserialize_with = "exact_params")]
        p: Vec<ExactScalar>,
    },
}

fn exact_params<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<ExactScalar>, D::Error> {
    #[derive(Deserialize)]
    struct Item(#[serde(deserialize_with = "exact_param")] ExactScalar);
    Ok(Vec::<Item>::deserialize(d)?.into_iter().map(|i| i.0).collect())
}

impl TryFrom<Wire> for DistributionSpec {
    type Error = Error;
    fn try_from(w: Wire) -> Result<Self> {
        Self::new(match w {
            Wire::Binomial { n, p } => Family::Binomial { n, p },
            Wire::NegBinomial { r, p } => Family::NegBinomial { r, p },
            Wire::Hypergeometric { black, white, n } => Family::Hypergeometric { black, white, draws: n },
            Wire::Poisson { lambda } => Family::Poisson { lambda },
            Wire::PoissonBinomial { p } => Family::PoissonBinomial { p },
        })
    }
}

impl From<DistributionSpec> for Wire {
    fn from(s: DistributionSpec) -> Self {
        match s.0 {
            Family::Binomial { n, p } => Wire::Binomial { n, p },
            Family::NegBinomial { r, p } => Wire::NegBinomial { r, p },
            Family::Hypergeometric { black, white, draws } => Wire::Hypergeometric { black, white, n: draws },
            Family::Poisson { lambda } => Wire::Poisson { lambda },
            Family::PoissonBinomial { p } => Wire::PoissonBinomial { p },
        }
    }
}

pub fn support(spec: &DistributionSpec) -> SupportBounds {
    let b = |k_min, k_max| SupportBounds { k_min, k_max };
    match spec.family() {
        Family::Binomial { p, .. } if p.is_zero() => b(0, Some(0)),
        Family::Binomial { n, p } if p.is_one() => b(*n, Some(*n)),
        Family::Binomial { n, .. } => b(0, Some(*n)),
        Family::NegBinomial { p, .. } if p.is_one() => b(0, Some(0)),
        Family::NegBinomial { .. } | Family::Poisson { .. } => b(0, None),
        Family::Hypergeometric { black, white, draws } => b(draws.saturating_sub(*white), Some(*black.min(draws))),
        Family::PoissonBinomial { p } => {
            let ones = p.iter().filter(|x| x.is_one()).count() as u64;
            let positive = p.iter().filter(|x| !x.is_zero()).count() as u64;
            b(ones, Some(positive))
        }
    }
}

pub fn mean(spec: &DistributionSpec) -> ExactScalar {
    match spec.family() {
        Family::Binomial { n, p } => &ExactScalar::from(*n) * p,
        Family::NegBinomial { r, p } => &(r * &p.complement()) / p,
        Family::Hypergeometric { black, white, draws } => ExactScalar::ratio(draws * black, black + white),
        Family::Poisson { lambda } => lambda.clone(),
        Family::PoissonBinomial { p } => p.iter().fold(ExactScalar::zero(), |acc, x| acc + x),
    }
}

/// `P({k})`.
pub fn pmf(spec: &DistributionSpec, k: u64) -> ExactScalar {
    if !support(spec).contains(k) {
        return ExactScalar::zero();
    }
    match spec.family() {
        Family::Binomial { n, p } if p.is_exact() => {
            let c = ExactScalar::integer(binomial_coefficient(*n, k));
            c * p.pow(k) * p.complement().pow(n - k)
        }
        Family::NegBinomial { r, p } if spec.is_exact() => {
            if p.is_one() {
                return ExactScalar::one();
            }
            let r = r.as_u64().unwrap();
            let c = ExactScalar::integer(binomial_coefficient(r + k - 1, k));
            c * p.pow(r) * p.complement().pow(k)
        }
        Family::Hypergeometric { black, white, draws } => {
            let num = binomial_coefficient(*black, k) * binomial_coefficient(*white, draws - k);
            ExactScalar::Rational(BigRational::new(num, binomial_coefficient(black + white, *draws)))
        }
        Family::PoissonBinomial { p } if spec.is_exact() => {
            poisson_binomial_pmf(p).swap_remove(k as usize)
        }
        _ => ExactScalar::Float(ln_pmf(spec, k).exp()),
    }
}

/// `ln P({k})` in `f64`; `-∞` off the support.
pub fn ln_pmf(spec: &DistributionSpec, k: u64) -> f64 {
    if !support(spec).contains(k) {
        return f64::NEG_INFINITY;
    }
    match spec.family() {
        Family::Binomial { n, p } => {
            if p.is_zero() || p.is_one() {
                return 0.0;
            }
            ln_binomial(*n, k) + k as f64 * p.ln() + (n - k) as f64 * p.complement().ln()
        }
        Family::NegBinomial { r, p } => {
            if p.is_one() {
                return 0.0;
            }
            let r = r.to_f64();
            ln_gamma(r + k as f64) - ln_gamma(r) - ln_factorial(k) + r * p.ln() + k as f64 * p.complement().ln()
        }
        Family::Hypergeometric { black, white, draws } => {
            ln_binomial(*black, k) + ln_binomial(*white, draws - k) - ln_binomial(black + white, *draws)
        }
        Family::Poisson { lambda } => {
            let l = lambda.to_f64();
            -l + k as f64 * l.ln() - ln_factorial(k)
        }
        Family::PoissonBinomial { p } => poisson_binomial_pmf(p)[k as usize].ln(),
    }
}

/// `P(X <= k)`.
pub fn cdf(spec: &DistributionSpec, k: u64) -> ExactScalar {
    let s = support(spec);
    if k < s.k_min {
        return ExactScalar::zero();
    }
    if s.k_max.is_some_and(|m| k >= m) {
        return ExactScalar::one();
    }
    MassTable::new(spec, k).cdf(k)
}

/// `P(X >= k)`. Exact families use the complement of the cdf; float
/// families sum the upper tail directly so that deep tails keep their
/// relative precision.
pub fn survival(spec: &DistributionSpec, k: u64) -> ExactScalar {
    if k == 0 || k <= support(spec).k_min {
        return ExactScalar::one();
    }
    upper_tail(spec, k - 1)
}

/// `P(X > k)`, the quantity the dominance scan compares.
pub fn upper_tail(spec: &DistributionSpec, k: u64) -> ExactScalar {
    let s = support(spec);
    if k < s.k_min {
        return ExactScalar::one();
    }
    if s.k_max.is_some_and(|m| k >= m) {
        return ExactScalar::zero();
    }
    if spec.is_exact() {
        cdf(spec, k).complement()
    } else {
        ExactScalar::Float(float_tail_beyond(spec, k))
    }
}

/// `Σ_{j>k} P({j})` in `f64`, summed from the tail side.
pub(crate) fn float_tail_beyond(spec: &DistributionSpec, k: u64) -> f64 {
    let s = support(spec);
    let stop = s.k_max.unwrap_or(u64::MAX);
    let centre = mean(spec).to_f64();
    let mut acc = 0.0;
    let mut j = k.saturating_add(1).max(s.k_min);
    while j <= stop {
        let term = ln_pmf(spec, j).exp();
        acc += term;
        if (j as f64) > centre + 1.0 && (term == 0.0 || term < acc * 1e-18) {
            break;
        }
        j += 1;
    }
    acc
}

/// Exact distribution of a sum of independent Bernoulli variables.
pub fn poisson_binomial_pmf(p: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut dist = vec![ExactScalar::one()];
    for pj in p {
        let qj = pj.complement();
        let mut next = vec![ExactScalar::zero(); dist.len() + 1];
        for (i, mass) in dist.iter().enumerate() {
            next[i] = &next[i] + &(mass * &qj);
            next[i + 1] = mass * pj;
        }
        dist = next;
    }
    dist
}

/// Masses and strict upper tails `P(X > k)` for `k = 0..=end`, computed once
/// for scans that touch every point.
#[derive(Clone, Debug)]
pub struct MassTable {
    spec: DistributionSpec,
    support: SupportBounds,
    pmf: Vec<ExactScalar>,
    upper: Vec<ExactScalar>,
    zero: ExactScalar,
}

impl MassTable {
    pub fn new(spec: &DistributionSpec, end: u64) -> Self {
        let support = support(spec);
        let pmf = mass_vector(spec, &support, end);
        let upper = upper_tails(spec, &support, &pmf);
        Self { spec: spec.clone(), support, pmf, upper, zero: ExactScalar::zero() }
    }

    pub fn spec(&self) -> &DistributionSpec {
        &self.spec
    }

    pub fn support(&self) -> SupportBounds {
        self.support
    }

    pub fn end(&self) -> u64 {
        self.pmf.len() as u64 - 1
    }

    /// Grows the table in place; cheap when the family is exact.
    pub fn extend_to(&mut self, end: u64) {
        if end > self.end() {
            *self = Self::new(&self.spec, end);
        }
    }

    fn past_support(&self, k: u64) -> bool {
        self.support.k_max.is_some_and(|m| k > m)
    }

    pub fn pmf(&self, k: u64) -> &ExactScalar {
        match self.pmf.get(k as usize) {
            Some(x) => x,
            None if self.past_support(k) => &self.zero,
            None => panic!("mass table for {} ends at {}, asked for {k}", self.spec, self.end()),
        }
    }

    /// `P(X > k)`.
    pub fn upper(&self, k: u64) -> &ExactScalar {
        match self.upper.get(k as usize) {
            Some(x) => x,
            None if self.past_support(k) || self.support.k_max == Some(k) => &self.zero,
            None => panic!("mass table for {} ends at {}, asked for {k}", self.spec, self.end()),
        }
    }

    pub fn cdf(&self, k: u64) -> ExactScalar {
        self.upper(k).complement()
    }
}

fn mass_vector(spec: &DistributionSpec, support: &SupportBounds, end: u64) -> Vec<ExactScalar> {
    let len = end as usize + 1;
    let mut out = vec![ExactScalar::zero(); len];
    let hi = support.k_max.map_or(end, |m| m.min(end));
    if support.k_min > hi {
        return out;
    }
    let lo = support.k_min;
    match spec.family() {
        Family::Binomial { n, p } if p.is_exact() && !p.is_zero() && !p.is_one() => {
            let step = p / &p.complement();
            let mut cur = p.complement().pow(*n);
            for k in 0..=hi {
                if k > 0 {
                    cur = cur * &step * ExactScalar::ratio(n - k + 1, k);
                }
                out[k as usize] = cur.clone();
            }
        }
        Family::NegBinomial { r, p } if spec.is_exact() && !p.is_one() => {
            let q = p.complement();
            let mut cur = p.powf(r);
            for k in 0..=hi {
                if k > 0 {
                    cur = cur * &q * (r + &ExactScalar::from(k - 1)) / ExactScalar::from(k);
                }
                out[k as usize] = cur.clone();
            }
        }
        Family::Hypergeometric { black, white, draws } => {
            let total = binomial_coefficient(black + white, *draws);
            let mut cb = binomial_coefficient(*black, lo);
            let mut cw = binomial_coefficient(*white, draws - lo);
            for k in lo..=hi {
                if k > lo {
                    cb = cb * (black - k + 1) / k;
                    cw = cw * (draws - k + 1) / (white + k - draws);
                }
                out[k as usize] = ExactScalar::Rational(BigRational::new(&cb * &cw, total.clone()));
            }
        }
        Family::PoissonBinomial { p } => {
            for (k, m) in poisson_binomial_pmf(p).into_iter().enumerate().take(len) {
                out[k] = m;
            }
        }
        Family::NegBinomial { r, p } if !p.is_one() => {
            // ln pmf(k+1) = ln pmf(k) + ln((r+k)(1-p)/(k+1)); stays finite where
            // the masses themselves would underflow.
            let r = r.to_f64();
            let lq = p.complement().ln();
            let mut lp = r * p.ln();
            for k in 0..=hi {
                if k > 0 {
                    lp += ((r + (k - 1) as f64) / k as f64).ln() + lq;
                }
                out[k as usize] = ExactScalar::Float(lp.exp());
            }
        }
        _ => {
            let exact = spec.is_exact();
            for k in lo..=hi {
                out[k as usize] = if exact { pmf(spec, k) } else { ExactScalar::Float(ln_pmf(spec, k).exp()) };
            }
        }
    }
    out
}

fn upper_tails(spec: &DistributionSpec, support: &SupportBounds, pmf: &[ExactScalar]) -> Vec<ExactScalar> {
    if spec.is_exact() {
        let mut cdf = ExactScalar::zero();
        return pmf
            .iter()
            .map(|m| {
                cdf = &cdf + m;
                cdf.complement()
            })
            .collect();
    }
    let end = pmf.len() as u64 - 1;
    let beyond = if support.k_max.is_some_and(|m| m <= end) { 0.0 } else { float_tail_beyond(spec, end) };
    let mut out = vec![ExactScalar::zero(); pmf.len()];
    let mut acc = beyond;
    for k in (0..pmf.len()).rev() {
        out[k] = ExactScalar::Float(acc);
        acc += pmf[k].to_f64();
    }
    out
}

/// Integer numerators over a common denominator, for scans that only need
/// cross-multiplied comparisons.
pub(crate) fn common_denominator(values: &[ExactScalar]) -> Option<(Vec<BigInt>, BigInt)> {
    let mut den = BigInt::one();
    for v in values {
        let r = v.as_rational()?;
        if !(&den % r.denom()).is_zero() {
            den = num_integer::Integer::lcm(&den, r.denom());
        }
    }
    let nums = values
        .iter()
        .map(|v| {
            let r = v.as_rational().unwrap();
            r.numer() * (&den / r.denom())
        })
        .collect();
    Some((nums, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    fn from_json(s: &str) -> serde_json::Result<DistributionSpec> {
        serde_json::from_str(s)
    }

    fn bin(n: u64, p: &str) -> DistributionSpec {
        DistributionSpec::binomial(n, q(p)).unwrap()
    }

    #[test]
    fn spot_masses() {
        assert_eq!(pmf(&bin(18, "1/2"), 18), ExactScalar::ratio(1, 262144));
        let h = DistributionSpec::hypergeometric(21, 23, 22).unwrap();
        assert!(pmf(&h, 22).is_zero());
        let nb = DistributionSpec::negbinomial(q("2"), q("1/2")).unwrap();
        assert_eq!(pmf(&nb, 1), q("1/4"));
        assert_eq!(cdf(&bin(2, "1/2"), 1), q("3/4"));
    }

    #[test]
    fn supports() {
        let h = DistributionSpec::hypergeometric(21, 23, 22).unwrap();
        assert_eq!(support(&h), SupportBounds { k_min: 0, k_max: Some(21) });
        let p = DistributionSpec::poisson(q("1")).unwrap();
        assert_eq!(support(&p), SupportBounds { k_min: 0, k_max: None });
        let pb = DistributionSpec::poisson_binomial(vec![q("1"), q("1/2")]).unwrap();
        assert_eq!(support(&pb), SupportBounds { k_min: 1, k_max: Some(2) });
        assert_eq!(support(&bin(5, "0")), SupportBounds { k_min: 0, k_max: Some(0) });
        assert_eq!(support(&bin(5, "1")), SupportBounds { k_min: 5, k_max: Some(5) });
    }

    #[test]
    fn validation() {
        assert!(DistributionSpec::binomial(0, q("1/2")).is_err());
        assert!(DistributionSpec::binomial(3, q("3/2")).is_err());
        assert!(DistributionSpec::negbinomial(q("0"), q("1/2")).is_err());
        assert!(DistributionSpec::negbinomial(q("1"), q("0")).is_err());
        assert!(DistributionSpec::hypergeometric(2, 2, 5).is_err());
        assert!(DistributionSpec::poisson(q("0")).is_err());
        assert!(DistributionSpec::poisson_binomial(vec![q("1/3"), q("1/2")]).is_err());
        assert!(DistributionSpec::poisson_binomial(vec![]).is_err());
    }

    #[test]
    fn json_encoding() {
        let cases = [
            (r#"{"family":"binomial","n":18,"p":"1/2"}"#, bin(18, "1/2")),
            (r#"{"family":"hypergeometric","B":400,"W":509,"n":500}"#, DistributionSpec::hypergeometric(400, 509, 500).unwrap()),
            (r#"{"family":"negbinomial","r":"2","p":"0.3"}"#, DistributionSpec::negbinomial(q("2"), q("3/10")).unwrap()),
            (r#"{"family":"poisson","lambda":"1.5"}"#, DistributionSpec::poisson(q("3/2")).unwrap()),
            (r#"{"family":"poisson_binomial","p":["1/2","1/3"]}"#, DistributionSpec::poisson_binomial(vec![q("1/2"), q("1/3")]).unwrap()),
        ];
        for (text, want) in cases {
            let got = from_json(text).unwrap();
            assert_eq!(got, want);
            let again = from_json(&serde_json::to_string(&got).unwrap()).unwrap();
            assert_eq!(again, got);
        }
        // Bare numbers are read as decimals, not binary floats.
        let s = from_json(r#"{"family":"binomial","n":3,"p":0.3}"#).unwrap();
        assert!(matches!(s.family(), Family::Binomial { p, .. } if p.is_exact() && *p == q("3/10")));
        assert!(from_json(r#"{"family":"binomial","n":3,"p":"2"}"#).is_err());
        assert!(from_json(r#"{"family":"cauchy"}"#).is_err());
    }

    #[test]
    fn hypergeometric_counterexample_cdfs() {
        let p = DistributionSpec::hypergeometric(400, 509, 500).unwrap();
        let q = DistributionSpec::hypergeometric(310, 710, 700).unwrap();
        // The first exceeds the second at 44 (see the decisions ledger on the
        // orientation of this inequality).
        assert!(cdf(&p, 44) > cdf(&q, 44));
        assert!(cdf(&p, 45) < cdf(&q, 45));
    }

    #[test]
    fn table_matches_pointwise() {
        let specs = [
            bin(7, "3/10"),
            DistributionSpec::hypergeometric(6, 4, 5).unwrap(),
            DistributionSpec::negbinomial(q("3"), q("2/5")).unwrap(),
            DistributionSpec::poisson_binomial(vec![q("1"), q("1/2"), q("1/3")]).unwrap(),
        ];
        for s in &specs {
            let t = MassTable::new(s, 12);
            for k in 0..=12 {
                assert_eq!(t.pmf(k), &pmf(s, k), "{s} at {k}");
                assert_eq!(t.upper(k), &upper_tail(s, k), "{s} at {k}");
            }
        }
    }

    #[test]
    fn float_families_track_log_space() {
        let p = DistributionSpec::poisson(q("3")).unwrap();
        let t = MassTable::new(&p, 40);
        let direct = 1.0 - (0..=5).map(|k| pmf(&p, k).to_f64()).sum::<f64>();
        assert!((t.upper(5).to_f64() - direct).abs() < 1e-14);
        let nb = DistributionSpec::negbinomial(q("2.5"), q("0.4")).unwrap();
        let t = MassTable::new(&nb, 30);
        for k in 0..=30 {
            let rel = (t.pmf(k).to_f64() / pmf(&nb, k).to_f64() - 1.0).abs();
            assert!(rel < 1e-12, "k={k} rel={rel}");
        }
        // Deep tails keep relative precision.
        let s = survival(&p, 40).to_f64();
        let lead = ln_pmf(&p, 40).exp();
        assert!(s > lead && s < lead * 1.1);
    }

    #[test]
    fn means() {
        assert_eq!(mean(&bin(18, "1/2")), q("9"));
        assert_eq!(mean(&DistributionSpec::hypergeometric(21, 23, 22).unwrap()), q("21/2"));
        assert_eq!(mean(&DistributionSpec::negbinomial(q("2"), q("1/4")).unwrap()), q("6"));
    }
}
