//! The joint law `q^{A1,A2}` on `{1..n1} × {1..n2}` used to throw one ball
//! into each of two rows of boxes, given the occupied sets `A1`, `A2`.
//!
//! It depends on the sets only through their sizes and through membership,
//! so it is stored as four constant weights, one per region.

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `r1 ∈ A1`, `r2 ∈ A2`.
    InIn,
    /// `r1 ∈ A1`, `r2 ∉ A2`.
    InOut,
    /// `r1 ∉ A1`, `r2 ∉ A2`.
    OutOut,
    /// `r1 ∉ A1`, `r2 ∈ A2`.
    OutIn,
}

pub const REGIONS: [Region; 4] = [Region::InIn, Region::InOut, Region::OutOut, Region::OutIn];

impl Region {
    pub fn first_in(self) -> bool {
        matches!(self, Region::InIn | Region::InOut)
    }

    pub fn second_in(self) -> bool {
        matches!(self, Region::InIn | Region::OutIn)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QJoint {
    pub a1: u64,
    pub a2: u64,
    pub n1: u64,
    pub n2: u64,
    /// Per-cell weight in each region, in [`REGIONS`] order; empty regions
    /// carry weight zero.
    pub weights: [ExactScalar; 4],
}

fn frac(num: i128, den: i128) -> ExactScalar {
    ExactScalar::Rational(BigRational::new(num.into(), den.into()))
}

pub fn q_joint(a1: u64, a2: u64, n1: u64, n2: u64) -> Result<QJoint> {
    let invalid = Error::InvalidOccupancy { a1, a2, n1, n2 };
    if n1 == 0 || a1 > n1 || n1 > n2 || a2 > n2 {
        return Err(invalid);
    }
    let (a1i, a2i, n1i, n2i) = (a1 as i128, a2 as i128, n1 as i128, n2 as i128);
    let zero = ExactScalar::zero;
    let weights = if a1 < a2 {
        let u = frac(1, n1i * n2i);
        [u.clone(), u.clone(), u.clone(), u]
    } else {
        let in_in = if a1 > 0 && a2 > 0 { frac(1, a1i * n2i) } else { zero() };
        let in_out = if a1 > 0 && a2 < n2 { frac(a1i * n2i - a2i * n1i, a1i * n1i * n2i * (n2i - a2i)) } else { zero() };
        let out_out = if a1 < n1 { frac(1, (n2i - a2i) * n1i) } else { zero() };
        [in_in, in_out, out_out, zero()]
    };
    Ok(QJoint { a1, a2, n1, n2, weights })
}

impl QJoint {
    fn cells(&self, region: Region) -> u64 {
        let rows = if region.first_in() { self.a1 } else { self.n1 - self.a1 };
        let cols = if region.second_in() { self.a2 } else { self.n2 - self.a2 };
        rows * cols
    }

    fn index(region: Region) -> usize {
        REGIONS.iter().position(|&r| r == region).unwrap()
    }

    /// Total mass of a region.
    pub fn region_mass(&self, region: Region) -> ExactScalar {
        &self.weights[Self::index(region)] * &ExactScalar::from(self.cells(region))
    }

    /// `q(r1, r2)` with `A1 = {1..a1}` and `A2 = {1..a2}`.
    pub fn entry(&self, r1: u64, r2: u64) -> ExactScalar {
        let region = match (r1 <= self.a1, r2 <= self.a2) {
            (true, true) => Region::InIn,
            (true, false) => Region::InOut,
            (false, false) => Region::OutOut,
            (false, true) => Region::OutIn,
        };
        self.weights[Self::index(region)].clone()
    }

    /// The full `n1 × n2` table with `A1 = {1..a1}`, `A2 = {1..a2}`.
    pub fn table(&self) -> Vec<Vec<ExactScalar>> {
        (1..=self.n1).map(|r1| (1..=self.n2).map(|r2| self.entry(r1, r2)).collect()).collect()
    }

    /// Row sums and column sums of [`table`](Self::table).
    pub fn marginals(&self) -> (Vec<ExactScalar>, Vec<ExactScalar>) {
        let t = self.table();
        let rows = t.iter().map(|row| row.iter().fold(ExactScalar::zero(), |a, x| a + x)).collect();
        let cols = (0..self.n2 as usize).map(|j| t.iter().fold(ExactScalar::zero(), |a, row| a + &row[j])).collect();
        (rows, cols)
    }

    /// Region probabilities as floats, for sampling.
    pub fn region_probabilities(&self) -> [f64; 4] {
        REGIONS.map(|r| self.region_mass(r).to_f64())
    }
}

/// Region masses in floating point straight from the sizes, without building
/// the exact table; same preconditions as [`q_joint`].
pub fn region_masses(a1: u64, a2: u64, n1: u64, n2: u64) -> [f64; 4] {
    let (a1, a2, n1, n2) = (a1 as f64, a2 as f64, n1 as f64, n2 as f64);
    if a1 < a2 {
        let d = n1 * n2;
        [a1 * a2 / d, a1 * (n2 - a2) / d, (n1 - a1) * (n2 - a2) / d, (n1 - a1) * a2 / d]
    } else {
        [a2 / n2, (a1 * n2 - a2 * n1) / (n1 * n2), (n1 - a1) / n1, 0.0]
    }
}

/// Draws a region from float region masses.
pub fn sample_region<R: Rng + ?Sized>(rng: &mut R, masses: &[f64; 4]) -> Region {
    let total: f64 = masses.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (region, &m) in REGIONS.iter().zip(masses) {
        if m > 0.0 && u < m {
            return *region;
        }
        u -= m;
    }
    // Rounding left `u` past the end: take the last region with mass.
    *REGIONS.iter().zip(masses).rev().find(|(_, &m)| m > 0.0).unwrap().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    #[test]
    fn small_table() {
        let q = q_joint(1, 1, 2, 3).unwrap();
        assert_eq!(q.weights, [r("1/3"), r("1/12"), r("1/4"), r("0")]);
        let (rows, cols) = q.marginals();
        assert!(rows.iter().all(|x| *x == r("1/2")));
        assert!(cols.iter().all(|x| *x == r("1/3")));
    }

    #[test]
    fn empty_sets_are_uniform() {
        let q = q_joint(0, 0, 3, 5).unwrap();
        assert!(q.table().iter().flatten().all(|x| *x == r("1/15")));
    }

    #[test]
    fn float_masses_match_exact() {
        for n2 in 1..=6 {
            for n1 in 1..=n2 {
                for a1 in 0..=n1 {
                    for a2 in 0..=n2 {
                        let Ok(q) = q_joint(a1, a2, n1, n2) else { continue };
                        let exact = q.region_probabilities();
                        let float = region_masses(a1, a2, n1, n2);
                        for (x, y) in exact.iter().zip(float) {
                            assert!((x - y).abs() < 1e-15, "{a1} {a2} {n1} {n2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(q_joint(2, 1, 3, 2).is_err());
        assert_eq!(q_joint(3, 3, 3, 3).unwrap().region_mass(Region::InIn), ExactScalar::one());
        assert!(q_joint(4, 1, 3, 5).is_err());
        assert!(q_joint(1, 2, 3, 3).is_ok());
    }
}
