//! Derivatives of binomial and negative binomial cdfs in `p`, and the
//! functions comparing two laws along the curve where their zero masses
//! agree. All in `f64`; these are numerical checks, not proofs.

use serde::Serialize;
use statrs::function::factorial::binomial;
use statrs::function::gamma::ln_gamma;

use crate::distributions;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::DistributionSpec;

/// Default number of interior grid points for sign-change scans.
pub const DEFAULT_GRID: usize = 999;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub analytic: f64,
    pub finite_difference: f64,
    pub h: f64,
    pub abs_error: f64,
}

impl DerivativeCheck {
    fn new(analytic: f64, finite_difference: f64, h: f64) -> Self {
        Self { analytic, finite_difference, h, abs_error: (analytic - finite_difference).abs() }
    }
}

/// `{1/(m+1), …, m/(m+1)}`.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    (1..=m).map(|i| i as f64 / (m + 1) as f64).collect()
}

fn choose(n: u64, k: u64) -> f64 {
    binomial(n, k)
}

/// `C(r+k−1, k)` for real `r > 0`.
fn rising_choose(r: f64, k: u64) -> f64 {
    (ln_gamma(r + k as f64) - ln_gamma(k as f64 + 1.0) - ln_gamma(r)).exp()
}

/// `x^e` with `0^0 = 1`.
fn pow0(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

/// `b_{n,p}({k})`, exact at `p ∈ {0, 1}` and for `n = 0`.
pub fn binom_pmf(n: u64, p: f64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let c = choose(n, k);
    c * pow0(p, k as f64) * pow0(1.0 - p, (n - k) as f64)
}

/// `b_{n,p}({0..k})`.
pub fn binom_cdf(n: u64, p: f64, k: u64) -> f64 {
    if k >= n {
        return 1.0;
    }
    (0..=k).map(|j| binom_pmf(n, p, j)).sum()
}

/// `b⁻_{r,p}({j})`.
pub fn negbinom_pmf(r: f64, p: f64, j: u64) -> f64 {
    rising_choose(r, j) * p.powf(r) * pow0(1.0 - p, j as f64)
}

/// `b⁻_{r,p}({0..k−1})`.
pub fn negbinom_cdf(r: f64, p: f64, k: u64) -> f64 {
    (0..k).map(|j| negbinom_pmf(r, p, j)).sum()
}

/// `d/dp b_{n,p}({0..k}) = −n b_{n−1,p}({k})`.
pub fn binom_cdf_derivative(n: u64, p: f64, k: u64) -> f64 {
    -(n as f64) * binom_pmf(n - 1, p, k)
}

/// `d/dp b_{n,p}({k}) = −n [b_{n−1,p}({k}) − b_{n−1,p}({k−1})]`.
pub fn binom_pmf_derivative(n: u64, p: f64, k: u64) -> f64 {
    let prev = if k == 0 { 0.0 } else { binom_pmf(n - 1, p, k - 1) };
    -(n as f64) * (binom_pmf(n - 1, p, k) - prev)
}

/// `d/dp b⁻_{r,p}({0..k−1}) = k C(−r,k) (−1)^k (1−p)^{k−1} p^{r−1}`, where
/// `C(−r,k)(−1)^k = C(r+k−1,k)`.
pub fn negbinom_cdf_derivative(r: f64, p: f64, k: u64) -> f64 {
    k as f64 * rising_choose(r, k) * pow0(1.0 - p, (k - 1) as f64) * p.powf(r - 1.0)
}

/// For integer `r`: `(r+k−1) b_{r+k−2,1−p}({k−1})`, the same derivative via
/// the waiting-time identity.
pub fn negbinom_cdf_derivative_via_binomial(r: u64, p: f64, k: u64) -> f64 {
    (r + k - 1) as f64 * binom_pmf(r + k - 2, 1.0 - p, k - 1)
}

pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn check_binom_cdf_derivative(n: u64, p: f64, k: u64, h: f64) -> DerivativeCheck {
    DerivativeCheck::new(binom_cdf_derivative(n, p, k), central_difference(|x| binom_cdf(n, x, k), p, h), h)
}

pub fn check_binom_pmf_derivative(n: u64, p: f64, k: u64, h: f64) -> DerivativeCheck {
    DerivativeCheck::new(binom_pmf_derivative(n, p, k), central_difference(|x| binom_pmf(n, x, k), p, h), h)
}

pub fn check_negbinom_cdf_derivative(r: f64, p: f64, k: u64, h: f64) -> DerivativeCheck {
    DerivativeCheck::new(negbinom_cdf_derivative(r, p, k), central_difference(|x| negbinom_cdf(r, x, k), p, h), h)
}

/// The telescoping sum of pmf derivatives equals `−n b_{n−1,p}({k})`, in
/// exact arithmetic.
pub fn telescoping_holds(n: u64, p: &ExactScalar, k: u64) -> Result<bool> {
    let b = DistributionSpec::binomial(n - 1, p.clone()).or_else(|_| {
        // b_{0,p} is the point mass at 0; mimic it with b_{1,0}.
        DistributionSpec::binomial(1, ExactScalar::zero())
    })?;
    let mass = |j: u64| if n == 1 { ExactScalar::from((j == 0) as u64) } else { distributions::pmf(&b, j) };
    let nn = ExactScalar::from(n);
    let mut sum = ExactScalar::zero();
    for j in 0..=k {
        let prev = if j == 0 { ExactScalar::zero() } else { mass(j - 1) };
        sum = sum - &nn * &(mass(j) - prev);
    }
    Ok(sum == -(&nn * &mass(k)))
}

// ---------------------------------------------------------------------------
// Comparison functions along the boundary curve.

fn binomial_preconditions(n1: u64, n2: u64, k: u64) -> Result<()> {
    if !(n1 < n2) {
        return Err(Error::ParameterOrder(format!("need n1 < n2, got n1={n1}, n2={n2}")));
    }
    if !(1 <= k && k < n1) {
        return Err(Error::ParameterOrder(format!("need 1 <= k <= n1-1, got k={k}, n1={n1}")));
    }
    Ok(())
}

/// `π(p) = 1 − (1−p)^R`, `R = n2/n1`.
pub fn pi(n1: u64, n2: u64, p: f64) -> f64 {
    1.0 - (1.0 - p).powf(n2 as f64 / n1 as f64)
}

/// `f_k(p) = b_{n1,π(p)}({0..k}) − b_{n2,p}({0..k})`.
pub fn eval_fk_binomial(n1: u64, n2: u64, k: u64, p: f64) -> Result<f64> {
    binomial_preconditions(n1, n2, k)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain(format!("p={p}")));
    }
    Ok(binom_cdf(n1, pi(n1, n2, p), k) - binom_cdf(n2, p, k))
}

/// Closed form of `f_k'(p)` on `(0,1)`.
pub fn fk_derivative_binomial(n1: u64, n2: u64, k: u64, p: f64) -> f64 {
    let (first, second) = fk_bracket_binomial(n1, n2, k, p);
    n2 as f64 * (1.0 - p).powf((n2 - 1) as f64) * (first - second)
}

/// The two terms of the bracket in `f_k'`.
fn fk_bracket_binomial(n1: u64, n2: u64, k: u64, p: f64) -> (f64, f64) {
    let r = n2 as f64 / n1 as f64;
    let kf = k as f64;
    let first = choose(n2 - 1, k) * (p / (1.0 - p)).powf(kf);
    let q = (1.0 - p).powf(r);
    let second = choose(n1 - 1, k) * ((1.0 - q) / q).powf(kf);
    (first, second)
}

/// `lim_{p↓0} f_k'(p) / (n2 p^k) = C(n2−1,k) − C(n1−1,k) R^k`.
pub fn fk_derivative_limit_at_zero(n1: u64, n2: u64, k: u64) -> f64 {
    let kf = k as f64;
    let r = n2 as f64 / n1 as f64;
    choose(n2 - 1, k) - choose(n1 - 1, k) * r.powf(kf)
}

fn negbinom_preconditions(r1: f64, r2: f64, k: u64) -> Result<()> {
    if !(r2 > 0.0 && r2 < r1) {
        return Err(Error::ParameterOrder(format!("need 0 < r2 < r1 (R = r2/r1 < 1), got r1={r1}, r2={r2}")));
    }
    if k == 0 {
        return Err(Error::ParameterOrder("need k >= 1".into()));
    }
    Ok(())
}

/// `f(p) = b⁻_{r1,p^R}({0..k−1}) − b⁻_{r2,p}({0..k−1})`, `R = r2/r1`.
pub fn eval_fk_negbinom(r1: f64, r2: f64, k: u64, p: f64) -> Result<f64> {
    negbinom_preconditions(r1, r2, k)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfDomain(format!("p={p}")));
    }
    // Both laws put mass p^{r2} at zero; factoring it out keeps f(p) = 0
    // exact for k = 1 instead of a rounding-level difference of two powers.
    // Near p = 1 both cdfs are close to 1, so the upper tails (small, and
    // accurate relative to themselves) are differenced instead.
    let (q1, q2) = (1.0 - p.powf(r2 / r1), 1.0 - p);
    let scaled = if k == 1 || p < 0.5 {
        let partial = |r: f64, q: f64| (0..k).map(|j| rising_choose(r, j) * pow0(q, j as f64)).sum::<f64>();
        partial(r1, q1) - partial(r2, q2)
    } else {
        scaled_tail(r2, q2, k) - scaled_tail(r1, q1, k)
    };
    Ok(p.powf(r2) * scaled)
}

/// `Σ_{j>=k} C(r+j−1,j) q^j`, i.e. `b⁻_{r,p}({k,…}) / p^r` with `q = 1−p`.
fn scaled_tail(r: f64, q: f64, k: u64) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    let mut term = rising_choose(r, k) * q.powf(k as f64);
    let mut sum = 0.0f64;
    let mut j = k as f64;
    while term > 1e-18 * sum || sum == 0.0 {
        sum += term;
        term *= q * (r + j) / (j + 1.0);
        j += 1.0;
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// `f'(p) = k p^{r2−1} [C(r1+k−1,k) R (1−p^R)^{k−1} − C(r2+k−1,k) (1−p)^{k−1}]`.
pub fn fk_derivative_negbinom(r1: f64, r2: f64, k: u64, p: f64) -> f64 {
    let (first, second) = fk_bracket_negbinom(r1, r2, k, p);
    k as f64 * p.powf(r2 - 1.0) * (first - second)
}

fn fk_bracket_negbinom(r1: f64, r2: f64, k: u64, p: f64) -> (f64, f64) {
    let big_r = r2 / r1;
    let e = (k - 1) as f64;
    let first = rising_choose(r1, k) * big_r * pow0(1.0 - p.powf(big_r), e);
    let second = rising_choose(r2, k) * pow0(1.0 - p, e);
    (first, second)
}

/// Sign changes of `first − second` over the grid; differences within
/// `1e-12` of the terms' size count as zero and are skipped.
fn count_sign_changes(grid: &[f64], bracket: impl Fn(f64) -> (f64, f64)) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for &p in grid {
        let (a, b) = bracket(p);
        let d = a - b;
        let sign = if d.abs() <= 1e-12 * (a.abs() + b.abs()) { 0 } else if d > 0.0 { 1 } else { -1 };
        if sign != 0 {
            if last != 0 && sign != last {
                changes += 1;
            }
            last = sign;
        }
    }
    changes
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|&p| !(p > 0.0 && p < 1.0)) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfDomain("grid must be increasing inside (0,1)".into()));
    }
    Ok(())
}

/// Sign changes of the closed-form `f_k'` across `grid`; at most one.
pub fn sign_changes_fk_derivative(n1: u64, n2: u64, k: u64, grid: &[f64]) -> Result<usize> {
    binomial_preconditions(n1, n2, k)?;
    check_grid(grid)?;
    Ok(count_sign_changes(grid, |p| fk_bracket_binomial(n1, n2, k, p)))
}

/// Negative binomial analogue of [`sign_changes_fk_derivative`].
pub fn sign_changes_fk_derivative_negbinom(r1: f64, r2: f64, k: u64, grid: &[f64]) -> Result<usize> {
    negbinom_preconditions(r1, r2, k)?;
    check_grid(grid)?;
    Ok(count_sign_changes(grid, |p| fk_bracket_negbinom(r1, r2, k, p)))
}

/// Zeros of `g'(p) = (1−p)^{R−2} [1 − aR − (1−a)Rp]` inside `(0,1)`, with
/// `a = (C(n1−1,k)/C(n2−1,k))^{1/k}`: at most one.
pub fn g_derivative_roots(n1: u64, n2: u64, k: u64) -> Result<Vec<f64>> {
    binomial_preconditions(n1, n2, k)?;
    let kf = k as f64;
    let a = (choose(n1 - 1, k) / choose(n2 - 1, k)).powf(1.0 / kf);
    let r = n2 as f64 / n1 as f64;
    let root = (1.0 - a * r) / ((1.0 - a) * r);
    Ok([root].into_iter().filter(|x| *x > 0.0 && *x < 1.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_derivatives() {
        assert_eq!(binom_cdf_derivative(1, 0.37, 0), -1.0);
        assert_eq!(binom_cdf_derivative(5, 0.3, 5), 0.0);
        let c = check_binom_cdf_derivative(5, 0.3, 2, 1e-5);
        assert!(c.abs_error < 1e-6, "{c:?}");
        assert!(check_binom_pmf_derivative(7, 0.6, 3, 1e-5).abs_error < 1e-6);
    }

    #[test]
    fn negbinomial_derivatives() {
        assert!((negbinom_cdf_derivative(1.0, 0.4, 1) - 1.0).abs() < 1e-14);
        assert!(check_negbinom_cdf_derivative(2.5, 0.4, 3, 1e-5).abs_error < 1e-6);
        for (r, k) in [(1, 1), (3, 4), (5, 2)] {
            let a = negbinom_cdf_derivative(r as f64, 0.35, k);
            let b = negbinom_cdf_derivative_via_binomial(r, 0.35, k);
            assert!((a - b).abs() < 1e-12, "{r} {k}");
        }
    }

    #[test]
    fn telescoping() {
        for n in 1..=6 {
            for k in 0..=n {
                assert!(telescoping_holds(n, &ExactScalar::ratio(2, 7), k).unwrap());
            }
        }
    }

    #[test]
    fn fk_binomial() {
        assert_eq!(eval_fk_binomial(2, 4, 1, 0.0).unwrap(), 0.0);
        assert_eq!(eval_fk_binomial(2, 4, 1, 1.0).unwrap(), 0.0);
        assert!(uniform_grid(99).iter().all(|&p| eval_fk_binomial(2, 4, 1, p).unwrap() >= 0.0));
        assert!(eval_fk_binomial(4, 2, 1, 0.5).is_err());
        assert!(eval_fk_binomial(3, 5, 3, 0.5).is_err());
        assert!(fk_derivative_limit_at_zero(2, 4, 1) > 0.0);
        assert!(fk_derivative_binomial(2, 4, 1, 1e-3) > 0.0);
        assert!(sign_changes_fk_derivative(2, 4, 1, &uniform_grid(DEFAULT_GRID)).unwrap() <= 1);
        assert!(g_derivative_roots(3, 5, 2).unwrap().len() <= 1);
    }

    #[test]
    fn fk_negbinomial() {
        assert!(uniform_grid(99).iter().all(|&p| eval_fk_negbinom(2.0, 1.0, 2, p).unwrap() > 0.0));
        assert!(eval_fk_negbinom(2.0, 1.0, 2, 1.0).unwrap().abs() < 1e-15);
        assert!(eval_fk_negbinom(1.0, 2.0, 2, 0.5).is_err());
        // k = 1 compares the zero masses, which agree by construction.
        assert_eq!(sign_changes_fk_derivative_negbinom(3.0, 1.5, 1, &uniform_grid(DEFAULT_GRID)).unwrap(), 0);
        assert!(sign_changes_fk_derivative_negbinom(3.0, 1.5, 4, &uniform_grid(DEFAULT_GRID)).unwrap() <= 1);
    }
}
