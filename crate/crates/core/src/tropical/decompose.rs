//! Irreducible counts from lattice-path totals.
//!
//! The weighted path total with `m + g - 1` steps counts every curve with the
//! given Newton polygon through `m + g - 1` points whose genus, taken as
//! `sum(g_i) - (#components - 1)`, equals `g`. That includes reducible curves:
//! on the degree-4 triangle the genus-0 total is `620 + C(11, 2)`, the second
//! term being an elliptic cubic through 9 of the points plus a line through
//! the other 2.
//!
//! Components have Newton polygons that Minkowski-sum to the whole polygon.
//! A summand is a closed sub-vector of the edge-length vector, so the
//! reducible part is enumerated over those sub-vectors. Root each
//! configuration at the first marked point: its component `(b, g_b)` takes
//! `n_b - 1` of the other `n - 1` points and the rest is an arbitrary
//! configuration of shape `a - b` and genus `g - g_b + 1`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::multiplicity::MultiplicityEngine;
use super::paths::PathContext;
use super::{LambdaFunctional, TropicalError};
use crate::geometry::{GeometryError, LatticePolygon, Point};
use crate::numerics::{Combinatorics, Nat};

/// Source of raw weighted path totals, so that drivers can parallelize or checkpoint.
pub trait PathTotals {
    fn path_total(&mut self, polygon: &LatticePolygon, genus: u32) -> Result<Nat, TropicalError>;
}

/// Single-threaded [`PathTotals`].
#[derive(Debug, Clone, Copy)]
pub struct SequentialPathTotals {
    pub lambda: LambdaFunctional,
}

impl SequentialPathTotals {
    pub fn new(lambda: LambdaFunctional) -> Self {
        SequentialPathTotals { lambda }
    }
}

impl PathTotals for SequentialPathTotals {
    fn path_total(&mut self, polygon: &LatticePolygon, genus: u32) -> Result<Nat, TropicalError> {
        let ctx = PathContext::new(polygon, self.lambda);
        let steps = ctx.steps_for_genus(genus);
        let mut engine = MultiplicityEngine::new(&ctx);
        let mut total = Nat::zero();
        for path in ctx.enumerate(steps)? {
            total += engine.weight(&path);
        }
        Ok(total)
    }
}

#[derive(Debug, Clone)]
enum Piece {
    Polygon { polygon: LatticePolygon, interior: i64 },
    Segment { length: i64 },
}

/// Edge directions of a polygon with a cache of the pieces its closed
/// sub-vectors describe.
#[derive(Debug, Clone)]
struct EdgeProfile {
    dirs: Vec<Point>,
    lengths: Vec<i64>,
    summands: Vec<Vec<i64>>,
    pieces: BTreeMap<Vec<i64>, Piece>,
}

impl EdgeProfile {
    fn new(polygon: &LatticePolygon) -> Result<Self, GeometryError> {
        let (dirs, lengths): (Vec<Point>, Vec<i64>) = polygon.edges().into_iter().unzip();
        let mut profile = EdgeProfile { dirs, lengths, summands: Vec::new(), pieces: BTreeMap::new() };
        let mut current = alloc::vec![0i64; profile.lengths.len()];
        profile.collect_summands(0, &mut current, Point::new(0, 0));
        for a in profile.summands.clone() {
            let piece = profile.build_piece(&a)?;
            profile.pieces.insert(a, piece);
        }
        Ok(profile)
    }

    fn collect_summands(&mut self, i: usize, current: &mut Vec<i64>, sum: Point) {
        if i == self.lengths.len() {
            if sum == Point::new(0, 0) && current.iter().any(|&x| x > 0) {
                self.summands.push(current.clone());
            }
            return;
        }
        for len in 0..=self.lengths[i] {
            current[i] = len;
            let d = self.dirs[i];
            self.collect_summands(i + 1, current, Point::new(sum.x + len * d.x, sum.y + len * d.y));
        }
        current[i] = 0;
    }

    fn build_piece(&self, a: &[i64]) -> Result<Piece, GeometryError> {
        let mut cycle = Vec::new();
        let mut at = Point::new(0, 0);
        for (len, d) in a.iter().zip(&self.dirs) {
            if *len > 0 {
                cycle.push(at);
                at = Point::new(at.x + len * d.x, at.y + len * d.y);
            }
        }
        if cycle.len() == 2 {
            return Ok(Piece::Segment { length: a.iter().sum::<i64>() / 2 });
        }
        let polygon = LatticePolygon::new(cycle)?;
        let interior = polygon.interior_lattice_count();
        Ok(Piece::Polygon { polygon, interior })
    }
}

/// Irreducible curve counts of every genus on a polygon and its Minkowski summands.
pub struct IrreducibleCounter<T> {
    totals: T,
    profile: EdgeProfile,
    comb: Combinatorics,
    irreducible: BTreeMap<(Vec<i64>, i64), Nat>,
    reducible: BTreeMap<(Vec<i64>, i64), Nat>,
}

impl<T: PathTotals> IrreducibleCounter<T> {
    pub fn new(polygon: &LatticePolygon, totals: T) -> Result<Self, TropicalError> {
        Ok(IrreducibleCounter {
            totals,
            profile: EdgeProfile::new(polygon)?,
            comb: Combinatorics::new(),
            irreducible: BTreeMap::new(),
            reducible: BTreeMap::new(),
        })
    }

    /// Number of irreducible genus-`genus` curves with exactly this Newton
    /// polygon through `m + genus - 1` generic points.
    pub fn count(&mut self, genus: u32) -> Result<Nat, TropicalError> {
        let whole = self.profile.lengths.clone();
        self.irreducible_of(&whole, genus as i64)
    }

    /// The full raw total (all configurations) at the given genus.
    pub fn total(&mut self, genus: i64) -> Result<Nat, TropicalError> {
        let whole = self.profile.lengths.clone();
        self.all_of(&whole, genus)
    }

    pub fn into_totals(self) -> T {
        self.totals
    }

    fn points_of(a: &[i64], genus: i64) -> i64 {
        a.iter().sum::<i64>() + genus - 1
    }

    fn irreducible_of(&mut self, a: &[i64], genus: i64) -> Result<Nat, TropicalError> {
        if genus < 0 {
            return Ok(Nat::zero());
        }
        let key = (a.to_vec(), genus);
        if let Some(v) = self.irreducible.get(&key) {
            return Ok(v.clone());
        }
        let value = match self.profile.pieces[a].clone() {
            Piece::Segment { length } => {
                if length == 1 && genus == 0 {
                    Nat::one()
                } else {
                    Nat::zero()
                }
            }
            Piece::Polygon { interior, .. } if genus > interior => Nat::zero(),
            Piece::Polygon { polygon, .. } => {
                let raw = self.totals.path_total(&polygon, genus as u32)?;
                let reducible = self.reducible_of(a, genus)?;
                raw.checked_sub(&reducible).map_err(|_| TropicalError::InconsistentDecomposition { raw, reducible })?
            }
        };
        self.irreducible.insert(key, value.clone());
        Ok(value)
    }

    fn all_of(&mut self, a: &[i64], genus: i64) -> Result<Nat, TropicalError> {
        if Self::points_of(a, genus) < 1 {
            return Ok(Nat::zero());
        }
        Ok(self.irreducible_of(a, genus)? + self.reducible_of(a, genus)?)
    }

    fn reducible_of(&mut self, a: &[i64], genus: i64) -> Result<Nat, TropicalError> {
        let n = Self::points_of(a, genus);
        if n < 1 {
            return Ok(Nat::zero());
        }
        let key = (a.to_vec(), genus);
        if let Some(v) = self.reducible.get(&key) {
            return Ok(v.clone());
        }
        let candidates: Vec<Vec<i64>> = self
            .profile
            .summands
            .iter()
            .filter(|b| b.as_slice() != a && b.iter().zip(a).all(|(x, y)| x <= y))
            .cloned()
            .collect();
        let mut total = Nat::zero();
        for b in candidates {
            let rest: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
            let max_genus = match &self.profile.pieces[&b] {
                Piece::Segment { .. } => 0,
                Piece::Polygon { interior, .. } => *interior,
            };
            for gb in 0..=max_genus {
                let nb = Self::points_of(&b, gb);
                if nb < 1 || nb >= n {
                    continue;
                }
                let ib = self.irreducible_of(&b, gb)?;
                if ib.is_zero() {
                    continue;
                }
                let others = self.all_of(&rest, genus - gb + 1)?;
                if others.is_zero() {
                    continue;
                }
                total += self.comb.binomial(n - 1, nb - 1) * ib * others;
            }
        }
        self.reducible.insert(key, total.clone());
        Ok(total)
    }
}
