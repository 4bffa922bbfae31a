//! Two rows of boxes hit by the same Poisson number of balls, each ball's
//! pair of boxes drawn from `q^{A1,A2}` so the occupied counts never cross.
//!
//! With `(1−p1)^{n1} = (1−p2)^{n2}` the occupied counts are exactly
//! `b_{n1,p1}` and `b_{n2,p2}`; a looser pair is first reduced to that
//! boundary and the second side is then thinned up box by box.

use rand::Rng;

use super::qjoint::{region_masses, sample_region};
use super::{boundary_p2, check_binomial_pair, rng, thin_up, CouplingSample, Trace};
use crate::error::Result;
use crate::scalar::ExactScalar;

/// Occupied and empty box labels of one row.
struct Row {
    occupied: Vec<u64>,
    empty: Vec<u64>,
}

impl Row {
    fn new(n: u64) -> Self {
        Self { occupied: Vec::new(), empty: (1..=n).collect() }
    }

    fn hit<R: Rng + ?Sized>(&mut self, rng: &mut R, inside: bool) -> u64 {
        if inside {
            self.occupied[rng.random_range(0..self.occupied.len())]
        } else {
            let box_ = self.empty.swap_remove(rng.random_range(0..self.empty.len()));
            self.occupied.push(box_);
            box_
        }
    }

    fn count(&self) -> u64 {
        self.occupied.len() as u64
    }
}

pub fn binomial_explicit_coupling(
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
    Ok(rng::generate(seed, count, |r| one(r, n1, n2, p1, p2, reduced, lambda, trace)))
}

#[allow(clippy::too_many_arguments)]
fn one<R: Rng + ?Sized>(r: &mut R, n1: u64, n2: u64, p1: f64, p2: f64, reduced: f64, lambda: f64, trace: bool) -> CouplingSample {
    if p1 >= 1.0 {
        // Only possible with p2 = 1 as well.
        return CouplingSample::plain(n1, n2);
    }
    let t = rng::poisson(r, lambda);
    let (mut row1, mut row2) = (Row::new(n1), Row::new(n2));
    let (mut draws, mut occupied) = (Vec::new(), Vec::new());
    for _ in 0..t {
        let (a1, a2) = (row1.count(), row2.count());
        if a1 == n1 && a2 == n2 {
            break;
        }
        let region = sample_region(r, &region_masses(a1, a2, n1, n2));
        let f1 = row1.hit(r, region.first_in());
        let f2 = row2.hit(r, region.second_in());
        if trace {
            draws.push((f1, f2));
            occupied.push((row1.count(), row2.count()));
        }
    }
    let lifted = thin_up(r, n2 - row2.count(), reduced, p2);
    let (x1, x2) = (row1.count(), row2.count() + lifted);
    let trace = trace.then_some(Trace::Explicit { t, draws, occupied, lifted });
    CouplingSample { x1, x2, trace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::couplings::{stats, violations};
    use crate::distributions::DistributionSpec;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    #[test]
    fn equal_parameters_give_equal_counts() {
        let s = binomial_explicit_coupling(4, &q("0.3"), 4, &q("0.3"), 3, 2000, false).unwrap();
        assert!(s.iter().all(|s| s.x1 == s.x2));
    }

    #[test]
    fn traces_keep_counts_ordered() {
        let s = binomial_explicit_coupling(3, &q("0.6"), 5, &q("0.7"), 11, 500, true).unwrap();
        for sample in &s {
            let Some(Trace::Explicit { occupied, .. }) = &sample.trace else { panic!() };
            assert!(occupied.iter().all(|(a, b)| a <= b));
        }
        assert_eq!(violations(&s), 0);
    }

    #[test]
    fn boundary_marginals() {
        let p2 = 1.0 - 0.5f64.sqrt();
        let s = binomial_explicit_coupling(2, &q("1/2"), 4, &ExactScalar::float(p2), 5, 20_000, false).unwrap();
        assert_eq!(violations(&s), 0);
        let x1: Vec<u64> = s.iter().map(|s| s.x1).collect();
        let x2: Vec<u64> = s.iter().map(|s| s.x2).collect();
        let b1 = DistributionSpec::binomial(2, q("1/2")).unwrap();
        let b2 = DistributionSpec::binomial(4, ExactScalar::float(p2)).unwrap();
        assert!(stats::chi_square_gof(&x1, &b1).p_value > 1e-3);
        assert!(stats::chi_square_gof(&x2, &b2).p_value > 1e-3);
    }

    #[test]
    fn rejects_unordered_parameters() {
        assert!(binomial_explicit_coupling(3, &q("0.5"), 2, &q("0.9"), 1, 1, false).is_err());
        assert!(binomial_explicit_coupling(2, &q("0.5"), 3, &q("0.1"), 1, 1, false).is_err());
    }
}
