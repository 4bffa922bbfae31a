use std::io::Write;

use serde::Serialize;
use stochord::couplings::{self, CouplingSample, Method, Trace};
use stochord::{DistributionSpec, Family};

use crate::{json_line, sink, CoupleArgs, Failure, Outcome, EXIT_VIOLATION};

#[derive(Serialize)]
struct Line<'a> {
    i: u64,
    x1: u64,
    x2: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a Trace>,
}

fn wrong_families(method: &str, needs: &str, p: &DistributionSpec, q: &DistributionSpec) -> Failure {
    Failure::input(format!("--method {method} needs {needs}; got {p} and {q}"))
}

fn sample(method: Method, p: &DistributionSpec, q: &DistributionSpec, seed: u64, count: u64, trace: bool) -> Result<Vec<CouplingSample>, Failure> {
    use Family::{Binomial, NegBinomial, Poisson};
    let samples = match (method, p.family(), q.family()) {
        (Method::Explicit, Binomial { n: n1, p: p1 }, Binomial { n: n2, p: p2 }) => {
            couplings::binomial_explicit_coupling(*n1, p1, *n2, p2, seed, count, trace)
        }
        (Method::Explicit, ..) => return Err(wrong_families("explicit", "two binomials", p, q)),
        (Method::Occupancy, Binomial { n: n1, p: p1 }, Binomial { n: n2, p: p2 }) => {
            couplings::occupancy_coupling(*n1, p1, *n2, p2, seed, count, trace)
        }
        (Method::Occupancy, ..) => return Err(wrong_families("occupancy", "two binomials", p, q)),
        (Method::Levy, NegBinomial { r: r1, p: p1 }, NegBinomial { r: r2, p: p2 }) => {
            couplings::levy_coupling_negbinom(r1, p1, r2, p2, seed, count, trace)
        }
        (Method::Levy, Poisson { lambda }, NegBinomial { r, p: pn }) => {
            couplings::levy_coupling_poisson_negbinom(lambda, r, pn, seed, count, trace)
        }
        (Method::Levy, ..) => {
            return Err(wrong_families("levy", "two negative binomials or a Poisson and a negative binomial", p, q))
        }
        (Method::Poissonize, Binomial { n, p: pb }, Poisson { lambda }) => {
            couplings::binom_poisson_coupling(*n, pb, lambda, seed, count, trace)
        }
        (Method::Poissonize, ..) => return Err(wrong_families("poissonize", "a binomial and a Poisson", p, q)),
        (Method::Quantile, ..) => {
            let run = couplings::quantile_coupling(p, q, seed, count, trace);
            if !run.guaranteed {
                return Err(Failure::input(format!("--method quantile needs P <=st Q, which fails for {p} and {q}")));
            }
            Ok(run.samples)
        }
    };
    samples.map_err(Failure::input)
}

pub fn run(args: &CoupleArgs) -> Outcome {
    let (p, q) = crate::input::pair(&args.p, &args.q)?;
    let samples = sample(args.method.into(), &p, &q, args.seed, args.samples, args.trace)?;
    let mut out = sink(&args.output)?;
    for (i, s) in samples.iter().enumerate() {
        json_line(&mut out, &Line { i: i as u64, x1: s.x1, x2: s.x2, trace: s.trace.as_ref() })?;
    }
    let summary = couplings::summarize(&samples, &p, &q);
    json_line(&mut out, &summary)?;
    out.flush()?;
    Ok(if summary.violations > 0 { EXIT_VIOLATION } else { 0 })
}
