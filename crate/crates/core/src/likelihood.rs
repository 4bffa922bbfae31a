//! Likelihood-ratio profiles `λ(k) = P({k}) / Q({k})`.
//!
//! A profile is *half-monotone* when the signs of `λ(k+1) − λ(k)` change at
//! most once after dropping ties; `∞` sits above every finite value. Together
//! with the tail conditions `λ(k_*) ≥ 1` and `λ(k^*) ≤ 1` that is sufficient
//! for `P ≤st Q`.
//!
//! Finite supports are scanned exhaustively. When one support is infinite
//! the profile is constant (`0` or `∞`) past the finite one's maximum, and
//! when both are infinite (negative binomial / Poisson) the step ratio
//! `λ(k+1)/λ(k)` is monotone in `k`, so the shape follows from where it
//! crosses 1.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::distributions::{self, DistributionSpec, Family, MassTable, SupportBounds};
use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, RatioValue};

/// Largest `k` the analytic searches will look at.
const ANALYTIC_LIMIT: u64 = 1 << 40;
/// `ln λ` margin used when locating where an infinite tail settles.
const LOG_MARGIN: f64 = 1e-6;
const PROFILE_TAIL: f64 = 2e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Increasing,
    Decreasing,
    IncreasingThenDecreasing,
    DecreasingThenIncreasing,
    NotHalfMonotone,
}

impl Shape {
    pub fn is_half_monotone(self) -> bool {
        self != Shape::NotHalfMonotone
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Every point of the joint support that can affect the shape was scanned.
    Exhaustive,
    /// Derived from monotonicity of the step ratio on an infinite tail.
    Analytic,
    /// Scanned up to `k_cap` only; says nothing beyond it.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LikelihoodProfile {
    pub k_range: SupportBounds,
    pub values: Vec<(u64, RatioValue)>,
    pub shape: Shape,
    pub turning_index: Option<u64>,
    /// `λ` is constant on the joint support, i.e. `P = Q`.
    pub constant: bool,
    pub certification: Certification,
    pub k_cap: Option<u64>,
}

impl LikelihoodProfile {
    pub fn value(&self, k: u64) -> Option<&RatioValue> {
        self.values.iter().find(|(j, _)| *j == k).map(|(_, v)| v)
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.constant || self.shape == Shape::Decreasing
    }
}

/// Right-hand tail value: a point value on finite supports, otherwise the
/// limit of `λ(k)` or, for two negative binomials, the geometric rate
/// `(1−p1)/(1−p2)` of `λ(k)^{1/k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailValue {
    Point(RatioValue),
    Limit(RatioValue),
    GeometricRate(ExactScalar),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailConditions {
    pub left_value: RatioValue,
    pub right_value: TailValue,
    /// `λ(k^*)` when the joint support is finite.
    pub rho: Option<RatioValue>,
    pub left_holds: bool,
    pub right_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HmlrMembership {
    pub member: bool,
    pub shape: Shape,
    pub turning_index: Option<u64>,
    pub certification: Certification,
    pub tails: TailConditions,
}

// ---------------------------------------------------------------------------
// Step ratios.

/// `pmf(k+1) / pmf(k)` for the families with a closed form, where both masses
/// are positive.
fn step_ratio(spec: &DistributionSpec, k: u64) -> Result<ExactScalar> {
    let s = distributions::support(spec);
    if !(s.contains(k) && s.contains(k + 1)) {
        return Err(Error::OutOfDomain(format!("k={k} for {spec}")));
    }
    let kk = ExactScalar::from(k);
    let k1 = ExactScalar::from(k + 1);
    Ok(match spec.family() {
        Family::Binomial { n, p } => ExactScalar::ratio(n - k, k + 1) * p / p.complement(),
        Family::NegBinomial { r, p } => (r + &kk) * p.complement() / k1,
        Family::Hypergeometric { black, white, draws } => {
            ExactScalar::ratio((black - k) * (draws - k), (k + 1) * (white + k + 1 - draws))
        }
        Family::Poisson { lambda } => lambda / &k1,
        Family::PoissonBinomial { .. } => return Err(Error::UnsupportedPair("poisson_binomial", "any")),
    })
}

/// `λ(k+1)/λ(k)` from the per-family closed-form step ratios.
pub fn consecutive_ratio(p: &DistributionSpec, q: &DistributionSpec, k: u64) -> Result<ExactScalar> {
    for s in [p, q] {
        if matches!(s.family(), Family::PoissonBinomial { .. }) {
            return Err(Error::UnsupportedPair(p.family_name(), q.family_name()));
        }
    }
    Ok(step_ratio(p, k)? / step_ratio(q, k)?)
}

// ---------------------------------------------------------------------------
// Shape scanning.

/// Classifies a sequence by the signs of its consecutive differences.
/// Returns the shape, the turning point and whether the sequence is constant.
pub(crate) fn classify(values: &[(u64, RatioValue)]) -> (Shape, Option<u64>, bool) {
    let mut first: Option<Ordering> = None;
    let mut changes = 0;
    let mut last = Ordering::Equal;
    let mut turning = None;
    let mut last_step = 0;
    for (i, w) in values.windows(2).enumerate() {
        let s = w[1].1.cmp_value(&w[0].1);
        if s == Ordering::Equal {
            continue;
        }
        match first {
            None => first = Some(s),
            Some(_) if s != last => {
                changes += 1;
                if changes == 1 {
                    // Plateau start: where the extremum is first attained.
                    turning = Some(values[last_step + 1].0);
                }
            }
            _ => {}
        }
        last = s;
        last_step = i;
    }
    let Some(first) = first else {
        return (Shape::Increasing, None, true);
    };
    let shape = match (changes, first) {
        (0, Ordering::Greater) => Shape::Increasing,
        (0, _) => Shape::Decreasing,
        (1, Ordering::Greater) => Shape::IncreasingThenDecreasing,
        (1, _) => Shape::DecreasingThenIncreasing,
        _ => Shape::NotHalfMonotone,
    };
    (shape, if changes == 1 { turning } else { None }, false)
}

/// Profile values over `[lo, hi]` from two tables, skipping points outside
/// the joint support.
pub(crate) fn ratio_values(tp: &MassTable, tq: &MassTable, lo: u64, hi: u64) -> Vec<(u64, RatioValue)> {
    (lo..=hi)
        .filter_map(|k| {
            let (a, b) = (tp.pmf(k), tq.pmf(k));
            if a.is_zero() && b.is_zero() {
                None
            } else {
                Some((k, RatioValue::quotient(a, b)))
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Two infinite tails.

#[derive(Clone, Debug)]
enum InfiniteLaw {
    NegBinomial { r: ExactScalar, q: ExactScalar },
    Poisson { lambda: ExactScalar },
}

fn infinite_law(spec: &DistributionSpec) -> Option<InfiniteLaw> {
    match spec.family() {
        Family::NegBinomial { r, p } if !p.is_one() => Some(InfiniteLaw::NegBinomial { r: r.clone(), q: p.complement() }),
        Family::Poisson { lambda } => Some(InfiniteLaw::Poisson { lambda: lambda.clone() }),
        _ => None,
    }
}

/// Both laws have infinite support; the step ratio `ρ(k) = λ(k+1)/λ(k)` is
/// monotone in `k` and its crossings of 1 determine everything.
#[derive(Clone, Debug)]
pub(crate) struct InfinitePair {
    p: InfiniteLaw,
    q: InfiniteLaw,
    pspec: DistributionSpec,
    qspec: DistributionSpec,
}

impl InfinitePair {
    pub(crate) fn new(p: &DistributionSpec, q: &DistributionSpec) -> Option<Self> {
        Some(Self { p: infinite_law(p)?, q: infinite_law(q)?, pspec: p.clone(), qspec: q.clone() })
    }

    /// `ρ(k)` with the common `1/(k+1)` cancelled.
    fn rho(&self, k: u64) -> ExactScalar {
        let kk = ExactScalar::from(k);
        let num = |l: &InfiniteLaw| match l {
            InfiniteLaw::NegBinomial { r, q } => (r + &kk) * q,
            InfiniteLaw::Poisson { lambda } => lambda.clone(),
        };
        num(&self.p) / num(&self.q)
    }

    fn rho_sign(&self, k: u64) -> Ordering {
        self.rho(k).cmp_value(&ExactScalar::one())
    }

    /// Direction in which `ρ` moves with `k`.
    fn trend(&self) -> Ordering {
        use InfiniteLaw::*;
        match (&self.p, &self.q) {
            (NegBinomial { r: r1, .. }, NegBinomial { r: r2, .. }) => r2.cmp_value(r1),
            (NegBinomial { .. }, Poisson { .. }) => Ordering::Greater,
            (Poisson { .. }, NegBinomial { .. }) => Ordering::Less,
            (Poisson { .. }, Poisson { .. }) => Ordering::Equal,
        }
    }

    /// Sign of `ρ(k) − 1` for all large `k`.
    fn eventual_sign(&self) -> Ordering {
        use InfiniteLaw::*;
        match (&self.p, &self.q) {
            (NegBinomial { r: r1, q: q1 }, NegBinomial { r: r2, q: q2 }) => q1.cmp_value(q2).then(r1.cmp_value(r2)),
            (NegBinomial { .. }, Poisson { .. }) => Ordering::Greater,
            (Poisson { .. }, NegBinomial { .. }) => Ordering::Less,
            (Poisson { lambda: a }, Poisson { lambda: b }) => a.cmp_value(b),
        }
    }

    /// Smallest `k >= from` where `pred` holds, assuming `pred` is monotone.
    fn first_where(from: u64, limit: u64, pred: impl Fn(u64) -> bool) -> Option<u64> {
        if pred(from) {
            return Some(from);
        }
        let mut step = 1u64;
        let mut lo = from;
        loop {
            let hi = from.checked_add(step)?;
            if hi > limit {
                return None;
            }
            if pred(hi) {
                let (mut a, mut b) = (lo, hi);
                while b - a > 1 {
                    let m = a + (b - a) / 2;
                    if pred(m) {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                return Some(b);
            }
            lo = hi;
            step *= 2;
        }
    }

    /// Shape, turning point and constancy of the full profile.
    fn shape(&self) -> Result<(Shape, Option<u64>, bool)> {
        let s0 = self.rho_sign(0);
        let end = self.eventual_sign();
        if self.trend() == Ordering::Equal || s0 == end || s0 == Ordering::Equal {
            let s = if s0 == Ordering::Equal { end } else { s0 };
            return Ok(match s {
                Ordering::Greater => (Shape::Increasing, None, false),
                Ordering::Less => (Shape::Decreasing, None, false),
                Ordering::Equal => (Shape::Increasing, None, true),
            });
        }
        let t = self.turn()?;
        let shape = if s0 == Ordering::Greater { Shape::IncreasingThenDecreasing } else { Shape::DecreasingThenIncreasing };
        Ok((shape, Some(t), false))
    }

    /// First `k` at which `ρ(k)` has left the side of 1 it started on; the
    /// extremum of `λ` sits there.
    fn turn(&self) -> Result<u64> {
        let s0 = self.rho_sign(0);
        Self::first_where(0, ANALYTIC_LIMIT, |k| self.rho_sign(k) != s0).ok_or(Error::UnboundedProfile)
    }

    fn ln_lambda(&self, k: u64) -> f64 {
        distributions::ln_pmf(&self.pspec, k) - distributions::ln_pmf(&self.qspec, k)
    }

    /// `(K, sign)`: `sign(P({j}) − Q({j}))` is constant and equal to `sign`
    /// for every `j >= K`.
    fn tail_sign(&self, limit: u64) -> Option<(u64, Ordering)> {
        let end = self.eventual_sign();
        if end == Ordering::Equal {
            // ρ ≡ 1: λ constant, hence P = Q.
            return Some((0, Ordering::Equal));
        }
        let start = if self.rho_sign(0) == end { 0 } else { self.turn().ok()? };
        let k = match end {
            Ordering::Less => Self::first_where(start, limit, |k| self.ln_lambda(k) < -LOG_MARGIN)?,
            _ => Self::first_where(start, limit, |k| self.ln_lambda(k) > LOG_MARGIN)?,
        };
        Some((k, end))
    }

    fn limit(&self) -> RatioValue {
        match self.eventual_sign() {
            Ordering::Less => RatioValue::Finite(ExactScalar::zero()),
            Ordering::Equal => RatioValue::Finite(ExactScalar::one()),
            Ordering::Greater => RatioValue::Infinite,
        }
    }
}

/// A `K` beyond which `sign(P({j}) − Q({j}))` is fixed, for pairs with at
/// least one infinite support. Used by the oracle to certify truncated scans.
pub(crate) fn tail_sign(p: &DistributionSpec, q: &DistributionSpec, limit: u64) -> Option<(u64, Ordering)> {
    let (sp, sq) = (distributions::support(p), distributions::support(q));
    match (sp.k_max, sq.k_max) {
        (Some(a), Some(b)) => Some((a.max(b) + 1, Ordering::Equal)),
        (Some(a), None) => Some((a + 1, Ordering::Less)),
        (None, Some(b)) => Some((b + 1, Ordering::Greater)),
        (None, None) => InfinitePair::new(p, q)?.tail_sign(limit),
    }
}

// ---------------------------------------------------------------------------
// Profiles.

/// Smallest `k` with `P(X > k) + Q(Y > k) <= eps`, by doubling then
/// bisection, capped at `max`.
pub fn tail_cap(p: &DistributionSpec, q: &DistributionSpec, eps: f64, max: u64) -> u64 {
    let joint = distributions::support(p).join(&distributions::support(q));
    if let Some(m) = joint.k_max {
        return m;
    }
    let tail = |k| distributions::float_tail_beyond(p, k) + distributions::float_tail_beyond(q, k);
    let mut hi = 1u64;
    while tail(hi) > eps {
        if hi >= max {
            return max;
        }
        hi = (hi * 2).min(max);
    }
    let mut lo = hi / 2;
    if tail(lo) <= eps {
        return lo;
    }
    while hi - lo > 1 {
        let m = lo + (hi - lo) / 2;
        if tail(m) <= eps {
            hi = m;
        } else {
            lo = m;
        }
    }
    hi
}

pub fn likelihood_profile(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>) -> Result<LikelihoodProfile> {
    let (sp, sq) = (distributions::support(p), distributions::support(q));
    let joint = sp.join(&sq);
    let lo = joint.k_min;
    let shown_end = |scan_end: u64| k_cap.unwrap_or(scan_end);

    if let Some(hi) = joint.k_max {
        let tp = MassTable::new(p, hi);
        let tq = MassTable::new(q, hi);
        let mut profile = profile_from_tables(&tp, &tq);
        profile.values.retain(|(k, _)| *k <= shown_end(hi));
        profile.k_cap = k_cap;
        return Ok(profile);
    }

    let default_cap = || tail_cap(p, q, PROFILE_TAIL, 1_000_000);
    let finite_max = sp.k_max.or(sq.k_max);
    if let Some(m) = finite_max {
        // Past m one side vanishes and λ is constant (0 or ∞).
        let cap = k_cap.unwrap_or_else(default_cap);
        let hi = cap.max(m + 1);
        let values = ratio_values(&MassTable::new(p, hi), &MassTable::new(q, hi), lo, hi);
        let (shape, turning_index, constant) = classify(&values);
        let values = values.into_iter().filter(|(k, _)| *k <= cap).collect();
        return Ok(LikelihoodProfile {
            k_range: joint,
            values,
            shape,
            turning_index,
            constant,
            certification: Certification::Exhaustive,
            k_cap,
        });
    }

    let pair = InfinitePair::new(p, q).expect("both supports infinite");
    let analytic = pair.shape();
    if analytic.is_err() && k_cap.is_none() {
        return Err(Error::UnboundedProfile);
    }
    let cap = k_cap.unwrap_or_else(default_cap);
    let values = ratio_values(&MassTable::new(p, cap), &MassTable::new(q, cap), lo, cap);
    let ((shape, turning_index, constant), certification) = match analytic {
        Ok(s) => (s, Certification::Analytic),
        Err(_) => (classify(&values), Certification::Truncated),
    };
    Ok(LikelihoodProfile { k_range: joint, values, shape, turning_index, constant, certification, k_cap })
}

/// Profile for a pair with finite joint support, from tables that cover it.
pub fn profile_from_tables(tp: &MassTable, tq: &MassTable) -> LikelihoodProfile {
    let joint = tp.support().join(&tq.support());
    let hi = joint.k_max.expect("finite joint support");
    let values = ratio_values(tp, tq, joint.k_min, hi);
    let (shape, turning_index, constant) = classify(&values);
    LikelihoodProfile {
        k_range: joint,
        values,
        shape,
        turning_index,
        constant,
        certification: Certification::Exhaustive,
        k_cap: None,
    }
}

// ---------------------------------------------------------------------------
// Tail conditions and the class of half-monotone pairs.

fn point_ratio(p: &DistributionSpec, q: &DistributionSpec, k: u64) -> RatioValue {
    RatioValue::quotient(&distributions::pmf(p, k), &distributions::pmf(q, k))
}

pub fn tail_conditions(p: &DistributionSpec, q: &DistributionSpec) -> Result<TailConditions> {
    let joint = distributions::support(p).join(&distributions::support(q));
    let left_value = point_ratio(p, q, joint.k_min);
    let (right_value, rho) = match joint.k_max {
        Some(hi) => {
            let v = point_ratio(p, q, hi);
            (TailValue::Point(v.clone()), Some(v))
        }
        None => (infinite_right_tail(p, q)?, None),
    };
    Ok(assemble_tails(left_value, right_value, rho))
}

fn infinite_right_tail(p: &DistributionSpec, q: &DistributionSpec) -> Result<TailValue> {
    let (sp, sq) = (distributions::support(p), distributions::support(q));
    if sp.is_finite() {
        return Ok(TailValue::Limit(RatioValue::Finite(ExactScalar::zero())));
    }
    if sq.is_finite() {
        return Ok(TailValue::Limit(RatioValue::Infinite));
    }
    if let (Family::NegBinomial { p: p1, .. }, Family::NegBinomial { p: p2, .. }) = (p.family(), q.family()) {
        return Ok(TailValue::GeometricRate(p1.complement() / p2.complement()));
    }
    let pair = InfinitePair::new(p, q).ok_or(Error::UnsupportedPair(p.family_name(), q.family_name()))?;
    Ok(TailValue::Limit(pair.limit()))
}

fn assemble_tails(left_value: RatioValue, right_value: TailValue, rho: Option<RatioValue>) -> TailConditions {
    let left_holds = left_value.cmp_one() != Ordering::Less;
    let right_holds = match &right_value {
        TailValue::Point(v) | TailValue::Limit(v) => v.cmp_one() != Ordering::Greater,
        TailValue::GeometricRate(r) => r <= &ExactScalar::one(),
    };
    TailConditions { left_value, right_value, rho, left_holds, right_holds }
}

/// Membership of `(P, Q)` in the class of pairs with a half-monotone
/// likelihood ratio and both tail conditions; membership implies `P ≤st Q`.
pub fn hmlr_membership(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>) -> Result<HmlrMembership> {
    let profile = likelihood_profile(p, q, k_cap)?;
    let tails = tail_conditions(p, q)?;
    Ok(membership(&profile, tails))
}

/// Same as [`hmlr_membership`] for a finite joint support covered by tables.
pub fn hmlr_membership_tables(tp: &MassTable, tq: &MassTable) -> HmlrMembership {
    let profile = profile_from_tables(tp, tq);
    let first = profile.values.first().map(|(_, v)| v.clone()).expect("nonempty support");
    let last = profile.values.last().map(|(_, v)| v.clone()).unwrap();
    let tails = assemble_tails(first, TailValue::Point(last.clone()), Some(last));
    membership(&profile, tails)
}

fn membership(profile: &LikelihoodProfile, tails: TailConditions) -> HmlrMembership {
    HmlrMembership {
        member: profile.shape.is_half_monotone() && tails.left_holds && tails.right_holds,
        shape: profile.shape,
        turning_index: profile.turning_index,
        certification: profile.certification,
        tails,
    }
}

// ---------------------------------------------------------------------------
// Likelihood-ratio order.

/// `P ≤lr Q`: `λ` nonincreasing on the joint support.
pub fn is_lr_ordered(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>) -> Result<bool> {
    let verdict = likelihood_profile(p, q, k_cap)?.is_nonincreasing();
    if let Some(closed) = binomial_lr_closed_form(p, q) {
        assert_eq!(verdict, closed, "profile scan disagrees with the binomial criterion for {p} vs {q}");
    }
    Ok(verdict)
}

/// `b_{n1,p1} ≤lr b_{n2,p2}` iff `p1 = 0` or `n1 <= n2` and
/// `n1 p1/(1−p1) <= n2 p2/(1−p2)`; only for `p_i < 1`.
pub fn binomial_lr_closed_form(p: &DistributionSpec, q: &DistributionSpec) -> Option<bool> {
    let (Family::Binomial { n: n1, p: p1 }, Family::Binomial { n: n2, p: p2 }) = (p.family(), q.family()) else {
        return None;
    };
    if !(p1.is_exact() && p2.is_exact()) || p1.is_one() || p2.is_one() {
        return None;
    }
    if p1.is_zero() {
        return Some(true);
    }
    let odds = |n: u64, x: &ExactScalar| ExactScalar::from(n) * x / x.complement();
    Some(n1 <= n2 && odds(*n1, p1) <= odds(*n2, p2))
}

/// Exhaustive two-point test: for every `B = {i, j}` with positive mass under
/// both laws, `P(· | B) ≤st Q(· | B)`.
pub fn lr_two_point_check(p: &DistributionSpec, q: &DistributionSpec) -> Result<bool> {
    let joint = distributions::support(p).join(&distributions::support(q));
    let hi = joint.k_max.ok_or(Error::InfiniteSupport)?;
    Ok(two_point_tables(&MassTable::new(p, hi), &MassTable::new(q, hi)))
}

pub fn two_point_tables(tp: &MassTable, tq: &MassTable) -> bool {
    let joint = tp.support().join(&tq.support());
    let hi = joint.k_max.expect("finite joint support");
    let ks: Vec<u64> = (joint.k_min..=hi).collect();
    let pm: Vec<ExactScalar> = ks.iter().map(|&k| tp.pmf(k).clone()).collect();
    let qm: Vec<ExactScalar> = ks.iter().map(|&k| tq.pmf(k).clone()).collect();
    // P(j|B) <= Q(j|B)  <=>  P(j)(Q(i)+Q(j)) <= Q(j)(P(i)+P(j)); the common
    // denominators of each table cancel from both sides.
    if let (Some((a, _)), Some((b, _))) = (distributions::common_denominator(&pm), distributions::common_denominator(&qm)) {
        let small = |v: &[num_bigint::BigInt]| v.iter().map(num_traits::ToPrimitive::to_i64).collect::<Option<Vec<i64>>>();
        if let (Some(a), Some(b)) = (small(&a), small(&b)) {
            return pairs_hold(&a, &b, |x, y| x as i128 * y as i128);
        }
        return pairs_hold(&a, &b, |x: num_bigint::BigInt, y: num_bigint::BigInt| x * y);
    }
    pairs_hold(&pm, &qm, |x: ExactScalar, y: ExactScalar| x * y)
}

fn pairs_hold<T, M>(a: &[T], b: &[T], mul: impl Fn(T, T) -> M) -> bool
where
    T: Clone + num_traits::Zero + std::ops::Add<Output = T>,
    M: PartialOrd,
{
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let pb = a[i].clone() + a[j].clone();
            let qb = b[i].clone() + b[j].clone();
            if pb.is_zero() || qb.is_zero() {
                continue;
            }
            if mul(a[j].clone(), qb) > mul(b[j].clone(), pb) {
                return false;
            }
        }
    }
    true
}

impl num_traits::Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}
