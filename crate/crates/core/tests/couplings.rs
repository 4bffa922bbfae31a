use stochord::couplings::{self, violations, Trace};
use stochord::{DistributionSpec, Error, ExactScalar};

fn q(s: &str) -> ExactScalar {
    ExactScalar::parse(s).unwrap()
}

#[test]
fn samplers_are_deterministic_in_the_seed() {
    let run = |seed| couplings::binomial_explicit_coupling(3, &q("1/3"), 6, &q("1/4"), seed, 200, true).unwrap();
    assert_eq!(run(5), run(5));
    assert_ne!(run(5), run(6));
    let levy = |seed| couplings::levy_coupling_negbinom(&q("2"), &q("1/2"), &q("3"), &q("2/5"), seed, 200, false).unwrap();
    assert_eq!(levy(1), levy(1));
}

#[test]
fn every_sampler_dominates() {
    let a = couplings::binomial_explicit_coupling(4, &q("1/5"), 7, &q("1/5"), 3, 5000, false).unwrap();
    let b = couplings::occupancy_coupling(4, &q("1/5"), 7, &q("1/5"), 3, 5000, false).unwrap();
    let c = couplings::binom_poisson_coupling(4, &q("1/5"), &q("1"), 3, 5000, false).unwrap();
    let d = couplings::levy_coupling_poisson_negbinom(&q("1"), &q("2"), &q("1/2"), 3, 5000, false).unwrap();
    for s in [a, b, c, d] {
        assert_eq!(violations(&s), 0);
    }
}

#[test]
fn traces_record_construction() {
    let s = couplings::binom_poisson_coupling(3, &q("1/2"), &q("3"), 8, 100, true).unwrap();
    for sample in &s {
        let Some(Trace::Poissonize { x0, x }) = &sample.trace else { panic!("missing trace") };
        assert_eq!(sample.x2, x0 + x.iter().sum::<u64>());
        assert_eq!(sample.x1, x.iter().filter(|&&v| v > 0).count() as u64);
    }
}

#[test]
fn unordered_parameters_are_rejected() {
    assert!(matches!(
        couplings::binom_poisson_coupling(5, &q("1/2"), &q("1"), 1, 1, false),
        Err(Error::ConditionsViolated(_))
    ));
    assert!(matches!(
        couplings::levy_coupling_poisson_negbinom(&q("3"), &q("1"), &q("1/2"), 1, 1, false),
        Err(Error::ConditionsViolated(_))
    ));
    let p = DistributionSpec::poisson(q("3")).unwrap();
    let r = DistributionSpec::poisson(q("2")).unwrap();
    assert!(!couplings::quantile_coupling(&p, &r, 1, 10, false).guaranteed);
}
