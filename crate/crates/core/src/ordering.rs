//! Deciding `P ≤st Q`.
//!
//! [`decide`] runs the stages cheapest-first and keeps the certificate of
//! whichever stage settled each direction:
//!
//! 1. identical specs;
//! 2. closed-form tail criteria for the seven family pairings (an "iff");
//! 3. Bernoulli-convolution criteria for Poisson-binomial pairs;
//! 4. half-monotone likelihood ratio plus tail conditions (sufficient), and
//!    failed tail conditions (necessary, exact pairs only);
//! 5. the survival-function oracle.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::distributions::{self, DistributionSpec, Family, MassTable};
use crate::error::{Error, Result};
use crate::likelihood::{self, Shape, TailConditions};
use crate::oracle::{self, DominanceReport, OracleMode, Relation, Witnesses};
use crate::scalar::{binomial_coefficient, cmp_powers, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormCase {
    /// Either law is a point mass; decided directly from the supports.
    PointMass,
    BinomialBinomial,
    NegbinomialNegbinomial,
    HypergeometricHypergeometric,
    HypergeometricBinomial,
    BinomialHypergeometric,
    BinomialPoisson,
    PoissonNegbinomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

/// One inequality `lhs op rhs`. `holds` is decided exactly where the inputs
/// allow it, so it can be trusted even when the displayed sides are rounded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailCheck {
    pub side: Side,
    pub lhs: ExactScalar,
    pub op: Comparison,
    pub rhs: ExactScalar,
    pub holds: bool,
}

impl TailCheck {
    fn new(side: Side, lhs: ExactScalar, op: Comparison, rhs: ExactScalar, order: Ordering) -> Self {
        let holds = match op {
            Comparison::Ge => order != Ordering::Less,
            Comparison::Le => order != Ordering::Greater,
        };
        Self { side, lhs, op, rhs, holds }
    }

    fn exact(side: Side, lhs: ExactScalar, op: Comparison, rhs: ExactScalar) -> Self {
        let order = lhs.cmp_value(&rhs);
        Self::new(side, lhs, op, rhs, order)
    }
}

/// Whether a certificate was produced for `(P, Q)` or for `(Q, P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedForm {
    pub case: ClosedFormCase,
    pub direction: Direction,
    pub conditions: Vec<TailCheck>,
    /// All conditions hold, i.e. the first law is `≤st` the second.
    pub holds: bool,
}

impl ClosedForm {
    pub fn failed(&self) -> impl Iterator<Item = &TailCheck> {
        self.conditions.iter().filter(|c| !c.holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BcCriterion {
    /// Leading products of success probabilities are dominated.
    SuccessProducts,
    /// Trailing products of failure probabilities dominate.
    FailureProducts,
    /// `BC_q ≤st b_{n,p}` iff `b_{n,p}({0}) ≤ BC_q({0})`.
    ZeroMass,
    /// `b_{n,p} ≤st BC_q` iff `b_{n,p}({n}) ≤ BC_q({n})`.
    FullMass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Identical,
    ClosedForm(ClosedForm),
    Hmlr {
        direction: Direction,
        shape: Shape,
        turning_index: Option<u64>,
        tails: TailConditions,
    },
    BernoulliConvolution {
        direction: Direction,
        criterion: BcCriterion,
    },
    OracleExact,
    OracleTruncated {
        k_cap: u64,
        residual_tail_bound: f64,
        tail_certified: bool,
    },
}

impl Certificate {
    fn reversed(self) -> Self {
        let flip = |d: Direction| match d {
            Direction::Forward => Direction::Reverse,
            Direction::Reverse => Direction::Forward,
        };
        match self {
            Self::ClosedForm(mut c) => {
                c.direction = flip(c.direction);
                Self::ClosedForm(c)
            }
            Self::Hmlr { direction, shape, turning_index, tails } => {
                Self::Hmlr { direction: flip(direction), shape, turning_index, tails }
            }
            Self::BernoulliConvolution { direction, criterion } => {
                Self::BernoulliConvolution { direction: flip(direction), criterion }
            }
            other => other,
        }
    }

    fn from_report(report: &DominanceReport) -> Self {
        match report.mode {
            OracleMode::Exact => Self::OracleExact,
            OracleMode::Truncated { k_cap, tail_bound, tail_certified } => {
                Self::OracleTruncated { k_cap, residual_tail_bound: tail_bound, tail_certified }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingVerdict {
    pub relation: Relation,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Oracle limits for [`decide`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Policy {
    pub k_cap: Option<u64>,
    pub epsilon: f64,
}

impl Default for Policy {
    fn default() -> Self {
        Self { k_cap: None, epsilon: oracle::DEFAULT_EPSILON }
    }
}

// ---------------------------------------------------------------------------
// Closed-form criteria.

/// Zero-aware `a^x` vs `b^y` for nonnegative bases and positive exponents.
fn cmp_pow(a: &ExactScalar, x: &ExactScalar, b: &ExactScalar, y: &ExactScalar) -> Ordering {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => cmp_powers(a, x, b, y),
    }
}

fn hyp_edge(w: u64, total: u64, m: u64) -> ExactScalar {
    ExactScalar::Rational(num_rational::BigRational::new(binomial_coefficient(w, m), binomial_coefficient(total, m)))
}

/// The closed-form tail criteria for `P ≤st Q`, or `UnsupportedPair` when the
/// pairing has none.
pub fn decide_closed_form(p: &DistributionSpec, q: &DistributionSpec) -> Result<ClosedForm> {
    use Comparison::{Ge, Le};
    use Side::{Left, Right};
    let form = |case, conditions: Vec<TailCheck>| {
        let holds = conditions.iter().all(|c| c.holds);
        Ok(ClosedForm { case, direction: Direction::Forward, conditions, holds })
    };
    let n = |v: u64| ExactScalar::from(v);
    let unsupported = Err(Error::UnsupportedPair(p.family_name(), q.family_name()));
    if matches!(p.family(), Family::PoissonBinomial { .. }) || matches!(q.family(), Family::PoissonBinomial { .. }) {
        return unsupported;
    }

    let (sp, sq) = (distributions::support(p), distributions::support(q));
    if sp.k_max == Some(sp.k_min) {
        return form(ClosedFormCase::PointMass, vec![TailCheck::exact(Left, n(sp.k_min), Le, n(sq.k_min))]);
    }
    if let Some(b) = sq.k_max.filter(|&b| b == sq.k_min) {
        let top = sp.k_max.map_or(ExactScalar::float(f64::INFINITY), n);
        return form(ClosedFormCase::PointMass, vec![TailCheck::exact(Right, top, Le, n(b))]);
    }

    match (p.family(), q.family()) {
        (Family::Binomial { n: n1, p: p1 }, Family::Binomial { n: n2, p: p2 }) => {
            let (f1, f2) = (p1.complement(), p2.complement());
            let order = cmp_pow(&f1, &n(*n1), &f2, &n(*n2));
            form(
                ClosedFormCase::BinomialBinomial,
                vec![
                    TailCheck::new(Left, f1.pow(*n1), Ge, f2.pow(*n2), order),
                    TailCheck::exact(Right, n(*n1), Le, n(*n2)),
                ],
            )
        }
        (Family::NegBinomial { r: r1, p: p1 }, Family::NegBinomial { r: r2, p: p2 }) => {
            let order = cmp_pow(p1, r1, p2, r2);
            form(
                ClosedFormCase::NegbinomialNegbinomial,
                vec![
                    TailCheck::new(Left, p1.powf(r1), Ge, p2.powf(r2), order),
                    TailCheck::exact(Right, p1.clone(), Ge, p2.clone()),
                ],
            )
        }
        (
            Family::Hypergeometric { black: b1, white: w1, draws: n1 },
            Family::Hypergeometric { black: b2, white: w2, draws: n2 },
        ) => {
            let (b1, w1, n1, b2, w2, n2) = (*b1, *w1, *n1, *b2, *w2, *n2);
            let larger_urn = b2 + w2 >= b1 + w1;
            let (i, s) = (|v: u64| v as i128, |a: u64, b: u64| a as i128 - b as i128 - 1);
            let lhs_set = [i(n1), i(b1), s(n2, w2)];
            let rhs_set = [i(n2), i(b2), s(n1, w1)];
            let meet = lhs_set.iter().any(|x| rhs_set.contains(x));
            if !(larger_urn || meet) {
                return unsupported;
            }
            let k_lo = n1.saturating_sub(w1).min(n2.saturating_sub(w2));
            let k_hi = n1.min(b1).max(n2.min(b2));
            let mass = |spec, k| distributions::pmf(spec, k);
            form(
                ClosedFormCase::HypergeometricHypergeometric,
                vec![
                    TailCheck::exact(Left, mass(p, k_lo), Ge, mass(q, k_lo)),
                    TailCheck::exact(Right, mass(p, k_hi), Le, mass(q, k_hi)),
                ],
            )
        }
        (Family::Hypergeometric { black, white, draws }, Family::Binomial { n: nb, p: pb }) => {
            let zero_mass = hyp_edge(*white, black + white, *draws);
            let f = pb.complement();
            let order = cmp_pow(&zero_mass, &ExactScalar::one(), &f, &n(*nb));
            form(
                ClosedFormCase::HypergeometricBinomial,
                vec![
                    TailCheck::new(Left, zero_mass, Ge, f.pow(*nb), order),
                    TailCheck::exact(Right, n(*draws.min(black)), Le, n(*nb)),
                ],
            )
        }
        (Family::Binomial { n: m, p: pb }, Family::Hypergeometric { black, white, draws }) if m == draws => {
            let full_mass = hyp_edge(*black, black + white, *draws);
            let order = cmp_pow(pb, &n(*m), &full_mass, &ExactScalar::one());
            form(ClosedFormCase::BinomialHypergeometric, vec![TailCheck::new(Right, pb.pow(*m), Le, full_mass, order)])
        }
        (Family::Binomial { n: nb, p: pb }, Family::Poisson { lambda }) => {
            // (1−p)^n ≥ e^{−λ}  <=>  n ln(1−p) ≥ −λ; never an exact tie for rational λ > 0.
            let lhs = pb.complement().pow(*nb);
            let order = (*nb as f64 * pb.complement().ln()).total_cmp(&-lambda.to_f64());
            let rhs = ExactScalar::float((-lambda.to_f64()).exp());
            form(ClosedFormCase::BinomialPoisson, vec![TailCheck::new(Left, lhs, Ge, rhs, order)])
        }
        (Family::Poisson { lambda }, Family::NegBinomial { r, p: pn }) => {
            let lhs = ExactScalar::float((-lambda.to_f64()).exp());
            let order = (-lambda.to_f64()).total_cmp(&(r.to_f64() * pn.ln()));
            form(ClosedFormCase::PoissonNegbinomial, vec![TailCheck::new(Left, lhs, Ge, pn.powf(r), order)])
        }
        _ => unsupported,
    }
}

// ---------------------------------------------------------------------------
// Bernoulli convolutions.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BcSufficiency {
    pub success_products: bool,
    pub failure_products: bool,
}

impl BcSufficiency {
    pub fn any(&self) -> bool {
        self.success_products || self.failure_products
    }
}

fn check_vector(v: &[ExactScalar]) -> Result<()> {
    let unit = |x: &ExactScalar| !x.is_negative() && x <= &ExactScalar::one();
    if !v.iter().all(unit) || v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidSpec("probability vector must lie in [0,1] and be nonincreasing".into()));
    }
    Ok(())
}

/// Two product conditions, each sufficient for `BC_p ≤st BC_q`. Vectors of
/// different length are padded with zeros.
pub fn bc_sufficient(p_vec: &[ExactScalar], q_vec: &[ExactScalar]) -> Result<BcSufficiency> {
    check_vector(p_vec)?;
    check_vector(q_vec)?;
    let len = p_vec.len().max(q_vec.len());
    let pad = |v: &[ExactScalar]| {
        let mut v = v.to_vec();
        v.resize(len, ExactScalar::zero());
        v
    };
    let (p, q) = (pad(p_vec), pad(q_vec));

    let (mut a, mut b) = (ExactScalar::one(), ExactScalar::one());
    let mut success_products = true;
    for (x, y) in p.iter().zip(&q) {
        a = a * x;
        b = b * y;
        if a > b {
            success_products = false;
            break;
        }
    }
    let (mut a, mut b) = (ExactScalar::one(), ExactScalar::one());
    let mut failure_products = true;
    for (x, y) in p.iter().zip(&q).rev() {
        a = a * x.complement();
        b = b * y.complement();
        if a < b {
            failure_products = false;
            break;
        }
    }
    Ok(BcSufficiency { success_products, failure_products })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaDirection {
    /// `BC_q ≤st b_{n,p}`.
    BcLeB,
    /// `b_{n,p} ≤st BC_q`.
    BLeBc,
}

/// Exact characterisation of the order between `BC_q` and `b_{n,p}` by a
/// single boundary mass.
pub fn ma_criterion(q_vec: &[ExactScalar], n: u64, p: &ExactScalar, direction: MaDirection) -> Result<bool> {
    check_vector(q_vec)?;
    if q_vec.len() as u64 != n {
        return Err(Error::LengthMismatch { left: q_vec.len(), right: n as usize });
    }
    if p.is_zero() || p.is_one() || p.is_negative() || p > &ExactScalar::one() {
        return Err(Error::OutOfDomain(format!("p={p} must lie in (0,1)")));
    }
    let product = |f: &dyn Fn(&ExactScalar) -> ExactScalar| q_vec.iter().fold(ExactScalar::one(), |acc, x| acc * f(x));
    Ok(match direction {
        MaDirection::BcLeB => p.complement().pow(n) <= product(&|x| x.complement()),
        MaDirection::BLeBc => p.pow(n) <= product(&|x| x.clone()),
    })
}

/// The success vector of a law that is a Bernoulli convolution with a
/// known parameter vector.
fn bc_vector(spec: &DistributionSpec) -> Option<Vec<ExactScalar>> {
    match spec.family() {
        Family::PoissonBinomial { p } => Some(p.clone()),
        Family::Binomial { n, p } => Some(vec![p.clone(); *n as usize]),
        _ => None,
    }
}

/// `Some(true)` when a convolution criterion proves `P ≤st Q`, `Some(false)`
/// when the exact characterisation refutes it, `None` otherwise.
fn bc_stage(p: &DistributionSpec, q: &DistributionSpec) -> Option<(bool, BcCriterion)> {
    let is_pb = |s: &DistributionSpec| matches!(s.family(), Family::PoissonBinomial { .. });
    if !(is_pb(p) || is_pb(q)) {
        return None;
    }
    let (pv, qv) = (bc_vector(p)?, bc_vector(q)?);
    let interior = |x: &ExactScalar| !x.is_zero() && !x.is_one();
    match (p.family(), q.family()) {
        (Family::Binomial { n, p: pb }, Family::PoissonBinomial { p: v }) if v.len() as u64 == *n && interior(pb) => {
            return ma_criterion(v, *n, pb, MaDirection::BLeBc).ok().map(|h| (h, BcCriterion::FullMass));
        }
        (Family::PoissonBinomial { p: v }, Family::Binomial { n, p: pb }) if v.len() as u64 == *n && interior(pb) => {
            return ma_criterion(v, *n, pb, MaDirection::BcLeB).ok().map(|h| (h, BcCriterion::ZeroMass));
        }
        _ => {}
    }
    let s = bc_sufficient(&pv, &qv).ok()?;
    if s.success_products {
        Some((true, BcCriterion::SuccessProducts))
    } else if s.failure_products {
        Some((true, BcCriterion::FailureProducts))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// The pipeline.

/// What is known about one direction `P ≤st Q`, and who established it.
type Fact = Option<(bool, Certificate)>;

fn direction_facts(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>) -> Fact {
    if let Ok(c) = decide_closed_form(p, q) {
        return Some((c.holds, Certificate::ClosedForm(c)));
    }
    if let Some((holds, criterion)) = bc_stage(p, q) {
        return Some((holds, Certificate::BernoulliConvolution { direction: Direction::Forward, criterion }));
    }
    let m = likelihood::hmlr_membership(p, q, k_cap).ok()?;
    let cert = |m: likelihood::HmlrMembership| Certificate::Hmlr {
        direction: Direction::Forward,
        shape: m.shape,
        turning_index: m.turning_index,
        tails: m.tails,
    };
    if m.member {
        return Some((true, cert(m)));
    }
    // Both tail conditions are necessary; trust a failure only when it was
    // computed in exact arithmetic.
    if p.is_exact() && q.is_exact() && !(m.tails.left_holds && m.tails.right_holds) {
        return Some((false, cert(m)));
    }
    None
}

/// Whether `P` and `Q` are the same law.
fn same_law(p: &DistributionSpec, q: &DistributionSpec) -> bool {
    if p == q {
        return true;
    }
    let (sp, sq) = (distributions::support(p), distributions::support(q));
    if sp != sq {
        return false;
    }
    let Some(hi) = sp.k_max else {
        // Distinct infinite-support specs in this library never coincide.
        return false;
    };
    let (tp, tq) = (MassTable::new(p, hi), MassTable::new(q, hi));
    (sp.k_min..=hi).all(|k| tp.pmf(k).cmp_value(tq.pmf(k)) == Ordering::Equal)
}

/// Full decision for the pair, in both directions.
pub fn decide(p: &DistributionSpec, q: &DistributionSpec, policy: &Policy) -> OrderingVerdict {
    if p == q {
        return OrderingVerdict { relation: Relation::Equal, certificate: Certificate::Identical, witnesses: None, diagnostic: None };
    }
    let mut le = direction_facts(p, q, policy.k_cap);
    let mut ge = direction_facts(q, p, policy.k_cap).map(|(h, c)| (h, c.reversed()));

    // One proven direction plus distinct laws refutes the other one.
    let proven = matches!(le, Some((true, _))) || matches!(ge, Some((true, _)));
    if proven && (le.is_none() || ge.is_none()) {
        let equal = same_law(p, q);
        let source = le.as_ref().or(ge.as_ref()).map(|(_, c)| c.clone()).unwrap();
        le.get_or_insert_with(|| (equal, source.clone()));
        ge.get_or_insert((equal, source));
    }

    let needs_oracle = le.is_none() || ge.is_none() || matches!((&le, &ge), (Some((false, _)), Some((false, _))));
    let report = needs_oracle.then(|| oracle::dominance(p, q, policy.k_cap, policy.epsilon));
    if let Some(r) = &report {
        if r.relation.is_definite() {
            let cert = Certificate::from_report(r);
            le.get_or_insert_with(|| (matches!(r.relation, Relation::LeSt | Relation::Equal), cert.clone()));
            ge.get_or_insert((matches!(r.relation, Relation::GeSt | Relation::Equal), cert));
        }
    }

    match (le, ge) {
        (Some((true, c)), Some((true, _))) => verdict(Relation::Equal, c),
        (Some((true, c)), Some((false, _))) => verdict(Relation::LeSt, c),
        (Some((false, _)), Some((true, c))) => verdict(Relation::GeSt, c),
        (Some((false, c)), Some((false, _))) => {
            let r = report.expect("oracle consulted for incomparable pairs");
            match r.witnesses {
                Some(w) => OrderingVerdict { relation: Relation::Incomparable, certificate: c, witnesses: Some(w), diagnostic: None },
                None => OrderingVerdict {
                    relation: Relation::Unknown,
                    certificate: Certificate::from_report(&r),
                    witnesses: None,
                    diagnostic: Some("criteria refute both directions but no crossing was found within the scanned range".into()),
                },
            }
        }
        _ => {
            let r = report.expect("oracle consulted for undecided pairs");
            let diagnostic = match r.mode {
                OracleMode::Truncated { k_cap, tail_bound, .. } => format!(
                    "survival comparison up to k={k_cap} leaves tail mass {tail_bound:e} above epsilon={:e}; raise --k-cap or --epsilon",
                    policy.epsilon
                ),
                OracleMode::Exact => "undecided".into(),
            };
            OrderingVerdict { relation: Relation::Unknown, certificate: Certificate::from_report(&r), witnesses: None, diagnostic: Some(diagnostic) }
        }
    }
}

fn verdict(relation: Relation, certificate: Certificate) -> OrderingVerdict {
    OrderingVerdict { relation, certificate, witnesses: None, diagnostic: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }
    fn bin(n: u64, p: &str) -> DistributionSpec {
        DistributionSpec::binomial(n, q(p)).unwrap()
    }
    fn nb(r: &str, p: &str) -> DistributionSpec {
        DistributionSpec::negbinomial(q(r), q(p)).unwrap()
    }
    fn hyp(b: u64, w: u64, n: u64) -> DistributionSpec {
        DistributionSpec::hypergeometric(b, w, n).unwrap()
    }
    fn poi(l: &str) -> DistributionSpec {
        DistributionSpec::poisson(q(l)).unwrap()
    }
    fn vq(xs: &[&str]) -> Vec<ExactScalar> {
        xs.iter().map(|x| q(x)).collect()
    }

    #[test]
    fn closed_form_examples() {
        let c = decide_closed_form(&bin(2, "0.5"), &bin(3, "0.4")).unwrap();
        assert!(c.holds);
        assert_eq!(c.conditions[0].lhs, q("1/4"));
        assert_eq!(c.conditions[0].rhs, q("0.216"));
        assert!(decide_closed_form(&nb("2", "1/3"), &nb("5", "1/3")).unwrap().holds);
        assert!(!decide_closed_form(&nb("5", "1/3"), &nb("2", "1/3")).unwrap().holds);
        assert!(decide_closed_form(&bin(4, "1/10"), &poi("1")).unwrap().holds);
        assert!(!decide_closed_form(&bin(4, "1/2"), &poi("1")).unwrap().holds);
        assert!(decide_closed_form(&poi("1"), &nb("1", "1/4")).unwrap().holds);
        assert!(matches!(decide_closed_form(&poi("1"), &poi("2")), Err(Error::UnsupportedPair(..))));
        // Unequal sample sizes are not a closed-form case.
        assert!(decide_closed_form(&bin(18, "1/2"), &hyp(21, 23, 22)).is_err());
    }

    #[test]
    fn hypergeometric_applicability() {
        // Smaller second urn and no shared value in the two sets.
        assert!(decide_closed_form(&hyp(5, 5, 3), &hyp(2, 2, 1)).is_err());
        assert!(decide_closed_form(&hyp(5, 5, 3), &hyp(2, 2, 3)).is_ok());
    }

    #[test]
    fn point_masses() {
        assert!(decide_closed_form(&bin(5, "0"), &bin(2, "1/3")).unwrap().holds);
        assert!(decide_closed_form(&bin(3, "1/3"), &bin(3, "1")).unwrap().holds);
        assert!(!decide_closed_form(&bin(4, "1/3"), &bin(3, "1")).unwrap().holds);
        assert!(!decide_closed_form(&bin(2, "1"), &bin(3, "1/3")).unwrap().holds);
        let c = decide_closed_form(&poi("2"), &nb("1", "1")).unwrap();
        assert_eq!(c.case, ClosedFormCase::PointMass);
        assert!(!c.holds);
    }

    #[test]
    fn pipeline_examples() {
        let policy = Policy::default();
        let v = decide(&hyp(400, 509, 500), &hyp(310, 710, 700), &policy);
        assert_eq!(v.relation, Relation::Incomparable);
        assert_eq!(v.witnesses, Some(Witnesses { k_minus: 44, k_plus: 45 }));
        let v = decide(&hyp(100, 100, 18), &hyp(21, 23, 22), &policy);
        assert_eq!(v.relation, Relation::LeSt);
        assert_eq!(v.certificate, Certificate::OracleExact);
        assert_eq!(decide(&bin(18, "1/2"), &hyp(21, 23, 22), &policy).relation, Relation::LeSt);
        assert_eq!(decide(&poi("2"), &poi("2"), &policy).relation, Relation::Equal);
        assert_eq!(decide(&bin(3, "0"), &hyp(0, 4, 2), &policy).relation, Relation::Equal);
        assert_eq!(decide(&poi("2"), &poi("1"), &policy).relation, Relation::GeSt);
        assert_eq!(decide(&bin(5, "0.5"), &bin(6, "0.3"), &policy).relation, Relation::Incomparable);
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide(&hyp(400, 509, 500), &hyp(310, 710, 700), &Policy::default());
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["relation"], "incomparable");
        assert_eq!(json["witnesses"]["k_minus"], 44);
        assert_eq!(json["witnesses"]["k_plus"], 45);
        let v = decide(&bin(2, "0.5"), &bin(3, "0.4"), &Policy::default());
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["certificate"]["kind"], "closed_form");
        assert_eq!(json["certificate"]["case"], "binomial_binomial");
        assert_eq!(json["certificate"]["conditions"][0]["rhs"], "27/125");
    }

    #[test]
    fn bernoulli_convolutions() {
        let s = bc_sufficient(&vq(&["0.5", "0.2"]), &vq(&["0.5", "0.2"])).unwrap();
        assert!(s.success_products && s.failure_products);
        // (p1 x n1, 0...) vs (q1 x n2, 0...): failure products <=> n1 <= n2 and (1−p1)^n1 >= (1−q1)^n2.
        for (n1, p1, n2, q1) in [(2, "1/2", 3, "2/5"), (3, "1/2", 2, "1/2"), (2, "1/3", 3, "1/5"), (2, "0.9", 4, "0.5")] {
            let s = bc_sufficient(&vec![q(p1); n1], &vec![q(q1); n2]).unwrap();
            let expect = n1 <= n2 && q(p1).complement().pow(n1 as u64) >= q(q1).complement().pow(n2 as u64);
            assert_eq!(s.failure_products, expect, "{n1} {p1} {n2} {q1}");
        }
        assert!(bc_sufficient(&vq(&["0.2", "0.5"]), &vq(&["0.5"])).is_err());
    }

    #[test]
    fn ma_examples() {
        let v = vq(&["0.9", "0.1"]);
        assert!(ma_criterion(&v, 2, &q("0.7"), MaDirection::BcLeB).unwrap());
        assert!(!ma_criterion(&v, 2, &q("0.69"), MaDirection::BcLeB).unwrap());
        let same = vq(&["0.3", "0.3", "0.3"]);
        assert!(ma_criterion(&same, 3, &q("0.3"), MaDirection::BcLeB).unwrap());
        assert!(ma_criterion(&same, 3, &q("0.3"), MaDirection::BLeBc).unwrap());
        assert!(matches!(ma_criterion(&v, 3, &q("0.5"), MaDirection::BLeBc), Err(Error::LengthMismatch { .. })));
        let pb = DistributionSpec::poisson_binomial(v).unwrap();
        let verdict = decide(&pb, &bin(2, "0.7"), &Policy::default());
        assert_eq!(verdict.relation, Relation::LeSt);
        assert!(matches!(verdict.certificate, Certificate::BernoulliConvolution { criterion: BcCriterion::ZeroMass, .. }));
    }
}
