use std::io::{self, Write};

use serde::Serialize;
use stochord::distributions;
use stochord::likelihood::{self, TailValue};
use stochord::ordering::{self, bc_sufficient, ma_criterion, MaDirection};
use stochord::oracle::OracleMode;
use stochord::{decide, oracle, DistributionSpec, ExactScalar, Family, Policy, RatioValue, Relation};

/// Rows of the likelihood-ratio table.
const ROWS: u64 = 40;

fn name(value: &impl Serialize) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".into(),
    }
}

fn num(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

fn ratio(v: &RatioValue) -> String {
    match v {
        RatioValue::Finite(x) => num(x.to_f64()),
        RatioValue::Infinite => "inf".into(),
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

/// Success vector of a law that is a Bernoulli convolution.
fn bc_vector(spec: &DistributionSpec) -> Option<Vec<ExactScalar>> {
    match spec.family() {
        Family::PoissonBinomial { p } => Some(p.clone()),
        Family::Binomial { n, p } => Some(vec![p.clone(); *n as usize]),
        _ => None,
    }
}

pub fn render(out: &mut dyn Write, p: &DistributionSpec, q: &DistributionSpec, policy: &Policy) -> io::Result<Relation> {
    let verdict = decide(p, q, policy);
    writeln!(out, "P: {p}")?;
    writeln!(out, "Q: {q}")?;
    writeln!(out, "relation: {}", name(&verdict.relation))?;
    writeln!(out, "certificate: {}", serde_json::to_string(&verdict.certificate).unwrap_or_default())?;
    if let Some(d) = &verdict.diagnostic {
        writeln!(out, "diagnostic: {d}")?;
    }

    match ordering::decide_closed_form(p, q) {
        Ok(form) => {
            writeln!(out, "closed form: case {} -> P <=st Q {}", name(&form.case), holds(form.holds))?;
            for c in &form.conditions {
                writeln!(
                    out,
                    "  {:<5} {} {} {}  [{}]   ({} vs {})",
                    name(&c.side),
                    c.lhs,
                    name(&c.op),
                    c.rhs,
                    holds(c.holds),
                    num(c.lhs.to_f64()),
                    num(c.rhs.to_f64())
                )?;
            }
        }
        Err(_) => writeln!(out, "closed form: none for this pair")?,
    }

    let joint = distributions::support(p).join(&distributions::support(q));
    let last = joint.k_max.map_or(joint.k_min + ROWS - 1, |m| m.min(joint.k_min + ROWS - 1));
    writeln!(out, "likelihood ratio lambda(k) = P({{k}}) / Q({{k}}) on {joint}:")?;
    writeln!(out, "  {:>6}  {:>14}  {:>14}  {:>14}", "k", "P({k})", "Q({k})", "lambda(k)")?;
    for k in joint.k_min..=last {
        let (mp, mq) = (distributions::pmf(p, k), distributions::pmf(q, k));
        let lam = RatioValue::quotient(&mp, &mq);
        writeln!(out, "  {k:>6}  {:>14}  {:>14}  {:>14}", num(mp.to_f64()), num(mq.to_f64()), ratio(&lam))?;
    }
    if joint.k_max.is_none_or(|m| m > last) {
        writeln!(out, "  … (table capped at {ROWS} rows)")?;
    }

    match likelihood::hmlr_membership(p, q, policy.k_cap) {
        Ok(m) => {
            let turning = m.turning_index.map_or(String::new(), |t| format!(", turning at k = {t}"));
            writeln!(out, "profile shape: {}{turning} ({})", name(&m.shape), name(&m.certification))?;
            writeln!(out, "left tail condition: lambda(k_*) = {} >= 1  [{}]", ratio(&m.tails.left_value), holds(m.tails.left_holds))?;
            let right = match &m.tails.right_value {
                TailValue::Point(v) => format!("lambda(k^*) = {}", ratio(v)),
                TailValue::Limit(v) => format!("lim lambda(k) = {}", ratio(v)),
                TailValue::GeometricRate(x) => format!("rate of lambda(k)^(1/k) = {}", num(x.to_f64())),
            };
            writeln!(out, "right tail condition: {right} <= 1  [{}]", holds(m.tails.right_holds))?;
            writeln!(out, "half-monotone class member: {}", if m.member { "yes" } else { "no" })?;
        }
        Err(e) => writeln!(out, "likelihood profile: unavailable ({e})")?,
    }

    if let (Some(vp), Some(vq)) = (bc_vector(p), bc_vector(q)) {
        let is_pb = |s: &DistributionSpec| matches!(s.family(), Family::PoissonBinomial { .. });
        if is_pb(p) || is_pb(q) {
            match bc_sufficient(&vp, &vq) {
                Ok(s) => writeln!(
                    out,
                    "bernoulli convolution: success products {}, failure products {}",
                    holds(s.success_products),
                    holds(s.failure_products)
                )?,
                Err(e) => writeln!(out, "bernoulli convolution: {e}")?,
            }
            let ma = match (p.family(), q.family()) {
                (Family::PoissonBinomial { p: v }, Family::Binomial { n, p: pb }) => Some((v, *n, pb, MaDirection::BcLeB)),
                (Family::Binomial { n, p: pb }, Family::PoissonBinomial { p: v }) => Some((v, *n, pb, MaDirection::BLeBc)),
                _ => None,
            };
            if let Some((v, n, pb, dir)) = ma {
                let label = match dir {
                    MaDirection::BcLeB => "zero mass",
                    MaDirection::BLeBc => "full mass",
                };
                match ma_criterion(v, n, pb, dir) {
                    Ok(b) => writeln!(out, "single-mass criterion ({label}): P <=st Q {}", holds(b))?,
                    Err(e) => writeln!(out, "single-mass criterion: {e}")?,
                }
            }
        }
    }

    let report = oracle::dominance(p, q, policy.k_cap, policy.epsilon);
    let mode = match report.mode {
        OracleMode::Exact => "exact".to_string(),
        OracleMode::Truncated { k_cap, tail_bound, tail_certified } => {
            format!("truncated at k = {k_cap}, residual tail {}, tail certified: {tail_certified}", num(tail_bound))
        }
    };
    writeln!(out, "oracle: {} ({mode}), crossings {:?}", name(&report.relation), report.crossings)?;
    if let Some(w) = verdict.witnesses.or(report.witnesses) {
        writeln!(out, "witnesses: P(X > {}) < P(Y > {}), P(X > {}) > P(Y > {})", w.k_minus, w.k_minus, w.k_plus, w.k_plus)?;
    }
    Ok(verdict.relation)
}
