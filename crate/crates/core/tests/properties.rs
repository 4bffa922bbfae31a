use proptest::prelude::*;
use stochord::distributions::{self, MassTable};
use stochord::ordering::{self, bc_sufficient, ma_criterion, MaDirection};
use stochord::{decide, oracle, DistributionSpec, ExactScalar, Policy, Relation};

fn tenth(i: u64) -> ExactScalar {
    ExactScalar::ratio(i, 10)
}

fn finite_spec() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        (1u64..=8, 0u64..=10).prop_map(|(n, i)| DistributionSpec::binomial(n, tenth(i)).unwrap()),
        (0u64..=7, 0u64..=7, 1u64..=14)
            .prop_filter("draws within urn", |(b, w, n)| *n <= b + w)
            .prop_map(|(b, w, n)| DistributionSpec::hypergeometric(b, w, n).unwrap()),
        prop::collection::vec(0u64..=10, 1..=5).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            DistributionSpec::poisson_binomial(v.into_iter().map(tenth).collect()).unwrap()
        }),
    ]
}

fn any_spec() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        3 => finite_spec(),
        1 => (1u64..=4, 1u64..=9).prop_map(|(r, i)| DistributionSpec::negbinomial(ExactScalar::from(r), tenth(i)).unwrap()),
        1 => (1u64..=15).prop_map(|i| DistributionSpec::poisson(ExactScalar::ratio(i, 5)).unwrap()),
    ]
}

fn decreasing_vector(len: usize) -> impl Strategy<Value = Vec<ExactScalar>> {
    prop::collection::vec(1u64..=9, len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.into_iter().map(tenth).collect()
    })
}

fn upper_tails_agree(p: &DistributionSpec, q: &DistributionSpec, relation: Relation) -> bool {
    let hi = distributions::support(p).join(&distributions::support(q)).k_max.unwrap();
    let (tp, tq) = (MassTable::new(p, hi), MassTable::new(q, hi));
    let le = (0..=hi).all(|k| tp.upper(k) <= tq.upper(k));
    let ge = (0..=hi).all(|k| tp.upper(k) >= tq.upper(k));
    match relation {
        Relation::Equal => le && ge,
        Relation::LeSt => le && !ge,
        Relation::GeSt => ge && !le,
        Relation::Incomparable => !le && !ge,
        Relation::Unknown => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflexive(p in any_spec()) {
        prop_assert_eq!(decide(&p, &p, &Policy::default()).relation, Relation::Equal);
    }

    #[test]
    fn swapping_mirrors(p in any_spec(), q in any_spec()) {
        let forward = decide(&p, &q, &Policy::default()).relation;
        let backward = decide(&q, &p, &Policy::default()).relation;
        prop_assert_eq!(forward, backward.mirror());
    }

    #[test]
    fn ordered_laws_have_ordered_means(p in any_spec(), q in any_spec()) {
        let relation = decide(&p, &q, &Policy::default()).relation;
        let (mp, mq) = (distributions::mean(&p).to_f64(), distributions::mean(&q).to_f64());
        if relation == Relation::LeSt {
            prop_assert!(mp <= mq + 1e-12, "{} <= {} but means {} > {}", p, q, mp, mq);
        }
        if relation == Relation::Equal {
            prop_assert!((mp - mq).abs() <= 1e-9);
        }
    }

    #[test]
    fn pipeline_matches_exact_tails(p in finite_spec(), q in finite_spec()) {
        let verdict = decide(&p, &q, &Policy::default());
        prop_assert!(upper_tails_agree(&p, &q, verdict.relation), "{} vs {}: {:?}", p, q, verdict);
        let report = oracle::dominance_exact(&p, &q).unwrap();
        prop_assert_eq!(report.relation, verdict.relation);
        prop_assert_eq!(report.mirrored().relation, oracle::dominance_exact(&q, &p).unwrap().relation);
    }

    #[test]
    fn incomparable_witnesses_check_out(p in finite_spec(), q in finite_spec()) {
        let verdict = decide(&p, &q, &Policy::default());
        if verdict.relation == Relation::Incomparable {
            let w = verdict.witnesses.expect("witnesses");
            prop_assert!(distributions::upper_tail(&p, w.k_minus) < distributions::upper_tail(&q, w.k_minus));
            prop_assert!(distributions::upper_tail(&p, w.k_plus) > distributions::upper_tail(&q, w.k_plus));
        }
    }

    #[test]
    fn closed_form_matches_oracle(p in any_spec(), q in any_spec()) {
        if let Ok(form) = ordering::decide_closed_form(&p, &q) {
            let relation = oracle::dominance(&p, &q, None, oracle::DEFAULT_EPSILON).relation;
            prop_assert_ne!(relation, Relation::Unknown);
            prop_assert_eq!(form.holds, matches!(relation, Relation::LeSt | Relation::Equal), "{} vs {}", p, q);
        }
    }

    #[test]
    fn ma_is_exact((v, i) in (1usize..=5).prop_flat_map(|n| (decreasing_vector(n), 1u64..=9))) {
        let n = v.len() as u64;
        let bc = DistributionSpec::poisson_binomial(v.clone()).unwrap();
        let b = DistributionSpec::binomial(n, tenth(i)).unwrap();
        let below = matches!(oracle::dominance_exact(&bc, &b).unwrap().relation, Relation::LeSt | Relation::Equal);
        let above = matches!(oracle::dominance_exact(&b, &bc).unwrap().relation, Relation::LeSt | Relation::Equal);
        prop_assert_eq!(ma_criterion(&v, n, &tenth(i), MaDirection::BcLeB).unwrap(), below);
        prop_assert_eq!(ma_criterion(&v, n, &tenth(i), MaDirection::BLeBc).unwrap(), above);
    }

    #[test]
    fn product_criteria_are_sufficient(v in (1usize..=4).prop_flat_map(decreasing_vector), w in (1usize..=4).prop_flat_map(decreasing_vector)) {
        let verdict = bc_sufficient(&v, &w).unwrap();
        if verdict.any() {
            let p = DistributionSpec::poisson_binomial(v).unwrap();
            let q = DistributionSpec::poisson_binomial(w).unwrap();
            let relation = oracle::dominance_exact(&p, &q).unwrap().relation;
            prop_assert!(matches!(relation, Relation::LeSt | Relation::Equal));
        }
    }

    #[test]
    fn spec_json_round_trips(p in any_spec()) {
        let text = serde_json::to_string(&p).unwrap();
        let back: DistributionSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, p);
    }
}
