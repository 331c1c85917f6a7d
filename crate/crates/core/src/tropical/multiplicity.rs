//! Corner-cutting recursion for the side multiplicities of a lattice path.
//!
//! For side `±`, a path equal to that side's boundary chain has multiplicity 1.
//! Otherwise take the first vertex `g(j)` where the path turns toward the side.
//! With `T` the triangle `g(j-1), g(j), g(j+1)`:
//!
//! ```text
//! mu(g) = 2 Area(T) mu(g') + mu(g'')
//! ```
//!
//! where `g'` skips `g(j)` and `g''` replaces it by `g(j-1) + g(j+1) - g(j)`.
//! The `g''` term is dropped when that point leaves the polygon or breaks
//! λ-monotonicity. A path that never turns toward the side and is not the
//! boundary has multiplicity 0.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::paths::{LatticePath, PathContext, Side};
use crate::geometry::{turn, Point};
use crate::numerics::Nat;

/// Memoizing evaluator of side multiplicities for one [`PathContext`].
pub struct MultiplicityEngine<'a> {
    ctx: &'a PathContext,
    memo: BTreeMap<(Side, Vec<Point>), Nat>,
}

impl<'a> MultiplicityEngine<'a> {
    pub fn new(ctx: &'a PathContext) -> Self {
        MultiplicityEngine { ctx, memo: BTreeMap::new() }
    }

    pub fn context(&self) -> &PathContext {
        self.ctx
    }

    pub fn mu(&mut self, path: &LatticePath, side: Side) -> Nat {
        debug_assert!(self.ctx.is_valid_path(&path.points));
        self.mu_points(&path.points, side)
    }

    /// `mu_+ * mu_-`, skipping the second factor when the first vanishes.
    pub fn weight(&mut self, path: &LatticePath) -> Nat {
        let plus = self.mu(path, Side::Positive);
        if plus.is_zero() {
            return plus;
        }
        plus * self.mu(path, Side::Negative)
    }

    fn mu_points(&mut self, path: &[Point], side: Side) -> Nat {
        if path == &self.ctx.boundary(side).path[..] {
            return Nat::one();
        }
        if let Some(v) = self.memo.get(&(side, path.to_vec())) {
            return v.clone();
        }
        let sign = side.turn_sign();
        let corner = (1..path.len().saturating_sub(1)).find(|&j| sign * turn(path[j - 1], path[j], path[j + 1]) > 0);
        let value = match corner {
            None => Nat::zero(),
            Some(j) => {
                let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
                let twice_area = (sign * turn(a, b, c)) as u64;
                #[cfg(debug_assertions)]
                let before = self.gap(path, side);

                let mut cut = path.to_vec();
                cut.remove(j);
                debug_assert!(self.gap(&cut, side) < before);
                let mut total = Nat::from(twice_area) * self.mu_points(&cut, side);

                let reflected = a + c - b;
                let lambda = self.ctx.lambda();
                if self.ctx.contains(reflected) && lambda.less(a, reflected) && lambda.less(reflected, c) {
                    let mut flipped = path.to_vec();
                    flipped[j] = reflected;
                    debug_assert!(self.gap(&flipped, side) < before);
                    total += self.mu_points(&flipped, side);
                }
                total
            }
        };
        self.memo.insert((side, path.to_vec()), value.clone());
        value
    }

    /// Twice the area enclosed between `path` and the boundary chain of `side`.
    fn gap(&self, path: &[Point], side: Side) -> i64 {
        let boundary = &self.ctx.boundary(side).path;
        // Traverse the region counterclockwise.
        let ring: Vec<Point> = match side {
            Side::Positive => path.iter().chain(boundary.iter().rev().skip(1)).copied().collect(),
            Side::Negative => boundary.iter().chain(path.iter().rev().skip(1)).copied().collect(),
        };
        let n = ring.len() - 1;
        (0..n).map(|i| ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y).sum()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// One-shot side multiplicity without a shared memo.
pub fn mu_side(path: &LatticePath, ctx: &PathContext, side: Side) -> Nat {
    MultiplicityEngine::new(ctx).mu(path, side)
}
