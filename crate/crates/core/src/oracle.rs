//! Ground truth: compare upper tails `P(X > k)` and `Q(Y > k)` point by point.
//!
//! Finite supports are scanned exactly. On infinite supports the scan runs to
//! `k_cap` and the rest is either certified (the sign of `P({j}) − Q({j})`
//! is fixed from some `K` on, hence so is the sign of every tail difference
//! from `K − 1` on) or bounded by the leftover mass `ε`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::distributions::{self, DistributionSpec, MassTable};
use crate::error::{Error, Result};
use crate::likelihood;

/// Hard ceiling on how far a truncated scan may go.
pub const MAX_K_CAP: u64 = 1_000_000;
pub const DEFAULT_EPSILON: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    LeSt,
    GeSt,
    Equal,
    Incomparable,
    Unknown,
}

impl Relation {
    /// The relation with the arguments swapped.
    pub fn mirror(self) -> Self {
        match self {
            Self::LeSt => Self::GeSt,
            Self::GeSt => Self::LeSt,
            other => other,
        }
    }

    pub fn is_definite(self) -> bool {
        self != Self::Unknown
    }
}

/// `P(X > k_minus) < Q(Y > k_minus)` and `P(X > k_plus) > Q(Y > k_plus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub k_minus: u64,
    pub k_plus: u64,
}

impl Witnesses {
    fn swapped(self) -> Self {
        Self { k_minus: self.k_plus, k_plus: self.k_minus }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum OracleMode {
    Exact,
    Truncated { k_cap: u64, tail_bound: f64, tail_certified: bool },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub relation: Relation,
    /// First `k` of each new sign of `P(X > k) − Q(Y > k)`, zeros skipped.
    pub crossings: Vec<u64>,
    pub mode: OracleMode,
    pub witnesses: Option<Witnesses>,
}

impl DominanceReport {
    pub fn mirrored(&self) -> Self {
        Self {
            relation: self.relation.mirror(),
            crossings: self.crossings.clone(),
            mode: self.mode.clone(),
            witnesses: self.witnesses.map(Witnesses::swapped),
        }
    }
}

struct Scan {
    less: bool,
    greater: bool,
    crossings: Vec<u64>,
    witnesses: Option<Witnesses>,
}

fn scan(signs: impl Iterator<Item = (u64, Ordering)>) -> Scan {
    let mut out = Scan { less: false, greater: false, crossings: Vec::new(), witnesses: None };
    let mut prev: Option<(u64, Ordering)> = None;
    for (k, s) in signs {
        match s {
            Ordering::Equal => continue,
            Ordering::Less => out.less = true,
            Ordering::Greater => out.greater = true,
        }
        if let Some((j, t)) = prev {
            if t != s {
                out.crossings.push(k);
                if out.witnesses.is_none() {
                    out.witnesses = Some(if t == Ordering::Less {
                        Witnesses { k_minus: j, k_plus: k }
                    } else {
                        Witnesses { k_minus: k, k_plus: j }
                    });
                }
            }
        }
        prev = Some((k, s));
    }
    out
}

fn relation_of(scan: &Scan) -> Relation {
    match (scan.less, scan.greater) {
        (false, false) => Relation::Equal,
        (true, false) => Relation::LeSt,
        (false, true) => Relation::GeSt,
        (true, true) => Relation::Incomparable,
    }
}

/// Exact comparison over the whole joint support.
pub fn dominance_exact(p: &DistributionSpec, q: &DistributionSpec) -> Result<DominanceReport> {
    let joint = distributions::support(p).join(&distributions::support(q));
    let hi = joint.k_max.ok_or(Error::InfiniteSupport)?;
    Ok(dominance_exact_tables(&MassTable::new(p, hi), &MassTable::new(q, hi)))
}

/// [`dominance_exact`] over precomputed tables covering the joint support.
pub fn dominance_exact_tables(tp: &MassTable, tq: &MassTable) -> DominanceReport {
    let joint = tp.support().join(&tq.support());
    let hi = joint.k_max.expect("finite joint support");
    let s = scan((0..=hi).map(|k| (k, tp.upper(k).cmp_value(tq.upper(k)))));
    DominanceReport { relation: relation_of(&s), crossings: s.crossings, mode: OracleMode::Exact, witnesses: s.witnesses }
}

/// Scan up to `k_cap` (default: smallest `k` with both tails summing below
/// `epsilon`), certifying the remainder where the likelihood module can.
pub fn dominance_truncated(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>, epsilon: f64) -> DominanceReport {
    let plan = plan(p, q, k_cap, epsilon);
    truncated_scan(&MassTable::new(p, plan.end), &MassTable::new(q, plan.end), &plan, epsilon)
}

/// [`dominance_truncated`] reusing tables where they reach far enough.
pub fn dominance_truncated_tables(tp: &MassTable, tq: &MassTable, k_cap: Option<u64>, epsilon: f64) -> DominanceReport {
    let plan = plan(tp.spec(), tq.spec(), k_cap, epsilon);
    let reach = |t: &MassTable| {
        if t.end() >= plan.end || t.support().k_max.is_some_and(|m| t.end() >= m) {
            None
        } else {
            Some(MassTable::new(t.spec(), plan.end))
        }
    };
    let (ep, eq) = (reach(tp), reach(tq));
    truncated_scan(ep.as_ref().unwrap_or(tp), eq.as_ref().unwrap_or(tq), &plan, epsilon)
}

/// Exact scan on finite supports, truncated scan otherwise.
pub fn dominance(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>, epsilon: f64) -> DominanceReport {
    match dominance_exact(p, q) {
        Ok(r) => r,
        Err(_) => dominance_truncated(p, q, k_cap, epsilon),
    }
}

pub fn crossing_points(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>) -> Vec<u64> {
    dominance(p, q, k_cap, DEFAULT_EPSILON).crossings
}

/// Smallest `k` with `P(X > k) + Q(Y > k) < eps`, capped at [`MAX_K_CAP`].
pub fn default_k_cap(p: &DistributionSpec, q: &DistributionSpec, eps: f64) -> u64 {
    likelihood::tail_cap(p, q, eps, MAX_K_CAP)
}

struct Plan {
    end: u64,
    certificate: Option<(u64, Ordering)>,
}

fn plan(p: &DistributionSpec, q: &DistributionSpec, k_cap: Option<u64>, epsilon: f64) -> Plan {
    let cap = k_cap.unwrap_or_else(|| default_k_cap(p, q, epsilon)).min(MAX_K_CAP);
    let certificate = likelihood::tail_sign(p, q, MAX_K_CAP + 1).filter(|(k, _)| k.saturating_sub(1) <= MAX_K_CAP);
    let end = match certificate {
        Some((k, _)) => cap.max(k.saturating_sub(1)),
        None => cap,
    };
    Plan { end, certificate }
}

fn truncated_scan(tp: &MassTable, tq: &MassTable, plan: &Plan, epsilon: f64) -> DominanceReport {
    let settled = plan.certificate.map(|(k, s)| (k.saturating_sub(1), s));
    let signs = (0..=plan.end).map(|k| match settled {
        Some((from, s)) if k >= from => (k, s),
        _ => (k, tp.upper(k).cmp_value(tq.upper(k))),
    });
    let s = scan(signs);
    let tail_bound = tp.upper(plan.end).to_f64() + tq.upper(plan.end).to_f64();
    let certified = plan.certificate.is_some();
    let relation = if certified || tail_bound <= epsilon { relation_of(&s) } else { Relation::Unknown };
    DominanceReport {
        relation,
        crossings: s.crossings,
        mode: OracleMode::Truncated { k_cap: plan.end, tail_bound, tail_certified: certified },
        witnesses: s.witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }
    fn bin(n: u64, p: &str) -> DistributionSpec {
        DistributionSpec::binomial(n, q(p)).unwrap()
    }
    fn nb(r: &str, p: &str) -> DistributionSpec {
        DistributionSpec::negbinomial(q(r), q(p)).unwrap()
    }
    fn poi(l: &str) -> DistributionSpec {
        DistributionSpec::poisson(q(l)).unwrap()
    }

    #[test]
    fn counterexample_crossing() {
        let p = DistributionSpec::hypergeometric(400, 509, 500).unwrap();
        let r = DistributionSpec::hypergeometric(310, 710, 700).unwrap();
        let rep = dominance_exact(&p, &r).unwrap();
        assert_eq!(rep.relation, Relation::Incomparable);
        assert_eq!(rep.crossings, vec![45]);
        assert_eq!(rep.witnesses, Some(Witnesses { k_minus: 44, k_plus: 45 }));
        let back = dominance_exact(&r, &p).unwrap();
        assert_eq!(back, rep.mirrored());
    }

    #[test]
    fn ordered_binomials() {
        let rep = dominance_exact(&bin(6, "1/3"), &bin(6, "1/2")).unwrap();
        assert_eq!((rep.relation, rep.crossings.len()), (Relation::LeSt, 0));
        assert_eq!(dominance_exact(&bin(6, "1/3"), &bin(6, "1/3")).unwrap().relation, Relation::Equal);
        assert!(!crossing_points(&bin(5, "0.5"), &bin(6, "0.3"), None).is_empty());
        assert!(matches!(dominance_exact(&poi("1"), &bin(2, "1/2")), Err(Error::InfiniteSupport)));
    }

    #[test]
    fn truncated_examples() {
        let rep = dominance_truncated(&nb("1", "1/2"), &nb("1", "1/4"), Some(200), 1e-12);
        assert_eq!(rep.relation, Relation::LeSt);
        let rep = dominance_truncated(&poi("1"), &poi("1"), None, 1e-12);
        assert_eq!(rep.relation, Relation::Equal);
        assert!(matches!(rep.mode, OracleMode::Truncated { .. }));
        // Uncertifiable without the tail bound: a tiny cap on a finite/infinite
        // pair is still certified, so the verdict stays definite.
        let rep = dominance_truncated(&bin(3, "1/2"), &poi("3"), Some(2), 1e-12);
        assert_eq!(rep.relation, Relation::LeSt);
    }

    #[test]
    fn unknown_without_certificate_or_small_tail() {
        let plan = Plan { end: 2, certificate: None };
        let (a, b) = (poi("3"), poi("4"));
        let rep = truncated_scan(&MassTable::new(&a, 2), &MassTable::new(&b, 2), &plan, 1e-12);
        assert_eq!(rep.relation, Relation::Unknown);
    }
}
