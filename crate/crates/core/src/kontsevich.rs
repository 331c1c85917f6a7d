//! Rational plane curve counts `N_d` from the WDVV recursion
//!
//! ```text
//! N_d = sum_{d1 + d2 = d} N_d1 N_d2 [ d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1) ]
//! ```
//!
//! with `N_1 = 1`.

use alloc::vec::Vec;

use crate::asymptotics::CountSeries;
use crate::geometry::{DivisorClass, Surface};
use crate::numerics::{Combinatorics, Nat, SignedInt};

/// Downward-closed table `d -> N_d`, filled in increasing degree.
#[derive(Debug, Clone)]
pub struct PlaneCountTable {
    counts: Vec<Nat>,
    comb: Combinatorics,
}

impl Default for PlaneCountTable {
    fn default() -> Self {
        Self::new()
    }
}

impl PlaneCountTable {
    pub fn new() -> Self {
        PlaneCountTable { counts: alloc::vec![Nat::one()], comb: Combinatorics::new() }
    }

    /// Highest degree currently in the table.
    pub fn max_degree(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn get(&self, d: u32) -> Option<&Nat> {
        d.checked_sub(1).and_then(|i| self.counts.get(i as usize))
    }

    /// Returns `N_d`, filling every degree up to `d`.
    ///
    /// # Panics
    ///
    /// If `d == 0`.
    pub fn count(&mut self, d: u32) -> Nat {
        assert!(d >= 1, "degree must be positive");
        while self.max_degree() < d {
            let next = self.max_degree() + 1;
            let value = self.recurse(next);
            self.counts.push(value);
        }
        self.counts[d as usize - 1].clone()
    }

    fn recurse(&mut self, d: u32) -> Nat {
        let d = d as i64;
        let row = 3 * d - 4;
        self.comb.row(row as usize);
        let mut acc = SignedInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let plus = self.comb.cached_binomial(row, 3 * d1 - 2).cloned().unwrap_or_default();
            let minus = self.comb.cached_binomial(row, 3 * d1 - 1).cloned().unwrap_or_default();
            let bracket = SignedInt::from(Nat::from((d1 * d1 * d2 * d2) as u64) * plus)
                - SignedInt::from(Nat::from((d1 * d1 * d1 * d2) as u64) * minus);
            let weight = &self.counts[d1 as usize - 1] * &self.counts[d2 as usize - 1];
            acc += SignedInt::from(weight) * bracket;
        }
        acc.into_nat().expect("WDVV sum is positive")
    }

    /// Entries `(d, N_d)` for `d = 1..=d_max`.
    pub fn entries(&mut self, d_max: u32) -> Vec<(u32, Nat)> {
        self.count(d_max);
        (1..=d_max).map(|d| (d, self.counts[d as usize - 1].clone())).collect()
    }
}

pub fn count_plane(d: u32) -> Nat {
    PlaneCountTable::new().count(d)
}

/// Series of `N_d` for the line class on the plane, `d = 1..=d_max`.
pub fn series_plane(d_max: u32) -> CountSeries {
    let mut table = PlaneCountTable::new();
    let mut series = CountSeries::new(Surface::Plane, DivisorClass::new([1]));
    for (d, n) in table.entries(d_max) {
        series.push(d, n).expect("degrees increase");
    }
    series
}
