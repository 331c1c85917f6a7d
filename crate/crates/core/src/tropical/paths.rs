use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{LambdaFunctional, TropicalError};
use crate::geometry::{LatticePolygon, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Left of the direction of travel from `p` to `q`.
    Positive,
    Negative,
}

impl Side {
    /// Sign of the turn that points toward this side.
    pub(crate) fn turn_sign(self) -> i64 {
        match self {
            Side::Positive => 1,
            Side::Negative => -1,
        }
    }
}

/// Boundary chain of the polygon from `p` to `q` on one side, through every
/// boundary lattice point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideBoundary {
    pub side: Side,
    pub path: Vec<Point>,
}

/// Chain of lattice points `p = g(0), ..., g(n) = q`, strictly increasing in λ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    pub points: Vec<Point>,
}

impl LatticePath {
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }
}

/// Polygon together with a λ choice and everything the path machinery derives from them.
#[derive(Debug, Clone)]
pub struct PathContext {
    polygon: LatticePolygon,
    lambda: LambdaFunctional,
    sorted: Vec<Point>,
    members: BTreeSet<Point>,
    positive: SideBoundary,
    negative: SideBoundary,
}

impl PathContext {
    pub fn new(polygon: &LatticePolygon, lambda: LambdaFunctional) -> Self {
        let mut sorted = polygon.lattice_points();
        sorted.sort_by(|a, b| lambda.cmp(*a, *b));
        let members = sorted.iter().copied().collect();
        let (p, q) = (sorted[0], *sorted.last().expect("non-empty"));

        let ring = polygon.boundary_points();
        let ip = ring.iter().position(|&x| x == p).expect("λ-extreme points are vertices");
        let iq = ring.iter().position(|&x| x == q).expect("λ-extreme points are vertices");
        let len = ring.len();
        // Counterclockwise from p keeps the interior on the left, so that chain
        // lies to the right of the direction p -> q.
        let mut negative = Vec::new();
        let mut i = ip;
        loop {
            negative.push(ring[i]);
            if i == iq {
                break;
            }
            i = (i + 1) % len;
        }
        let mut positive = Vec::new();
        let mut i = ip;
        loop {
            positive.push(ring[i]);
            if i == iq {
                break;
            }
            i = (i + len - 1) % len;
        }
        PathContext {
            polygon: polygon.clone(),
            lambda,
            sorted,
            members,
            positive: SideBoundary { side: Side::Positive, path: positive },
            negative: SideBoundary { side: Side::Negative, path: negative },
        }
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn lambda(&self) -> LambdaFunctional {
        self.lambda
    }

    /// λ-minimal vertex.
    pub fn start(&self) -> Point {
        self.sorted[0]
    }

    /// λ-maximal vertex.
    pub fn end(&self) -> Point {
        *self.sorted.last().unwrap()
    }

    /// Lattice points of the polygon in increasing λ order.
    pub fn sorted_points(&self) -> &[Point] {
        &self.sorted
    }

    pub fn contains(&self, p: Point) -> bool {
        self.members.contains(&p)
    }

    pub fn boundary(&self, side: Side) -> &SideBoundary {
        match side {
            Side::Positive => &self.positive,
            Side::Negative => &self.negative,
        }
    }

    /// Number of steps of a genus-`g` path: `m + g - 1`.
    pub fn steps_for_genus(&self, genus: u32) -> usize {
        self.polygon.boundary_lattice_count() as usize + genus as usize - 1
    }

    /// Checks the [`LatticePath`] invariants against this context.
    pub fn is_valid_path(&self, path: &[Point]) -> bool {
        path.len() >= 2
            && path[0] == self.start()
            && *path.last().unwrap() == self.end()
            && path.iter().all(|p| self.contains(*p))
            && path.windows(2).all(|w| self.lambda.less(w[0], w[1]))
    }

    /// Disjoint prefixes (indices into [`sorted_points`](Self::sorted_points))
    /// of the first two interior points, covering every `steps`-step path.
    pub fn partitions(&self, steps: usize) -> Vec<Vec<usize>> {
        let inner = self.sorted.len().saturating_sub(2);
        let choose = steps.saturating_sub(1);
        if steps == 0 || choose > inner {
            return Vec::new();
        }
        let fixed = choose.min(2);
        let mut out = Vec::new();
        match fixed {
            0 => out.push(Vec::new()),
            1 => {
                for a in 1..=inner {
                    out.push(alloc::vec![a]);
                }
            }
            _ => {
                for a in 1..=inner {
                    for b in a + 1..=inner {
                        // Leave room for the remaining choose - 2 points.
                        if inner - b >= choose - 2 {
                            out.push(alloc::vec![a, b]);
                        }
                    }
                }
            }
        }
        out
    }

    /// All `steps`-step paths.
    pub fn enumerate(&self, steps: usize) -> Result<PathEnumerator<'_>, TropicalError> {
        if steps == 0 {
            return Err(TropicalError::ZeroSteps);
        }
        Ok(PathEnumerator::new(self, steps, &[]))
    }

    /// The paths of one partition from [`partitions`](Self::partitions).
    pub fn enumerate_partition(&self, steps: usize, prefix: &[usize]) -> Result<PathEnumerator<'_>, TropicalError> {
        if steps == 0 {
            return Err(TropicalError::ZeroSteps);
        }
        Ok(PathEnumerator::new(self, steps, prefix))
    }
}

/// Depth-first enumeration of λ-increasing paths in λ-sorted order.
///
/// A path is a choice of `steps - 1` interior points, so this walks
/// combinations of indices into the sorted point list.
pub struct PathEnumerator<'a> {
    ctx: &'a PathContext,
    chosen: Vec<usize>,
    fixed: usize,
    done: bool,
}

impl<'a> PathEnumerator<'a> {
    fn new(ctx: &'a PathContext, steps: usize, prefix: &[usize]) -> Self {
        let inner = ctx.sorted.len().saturating_sub(2);
        let choose = steps - 1;
        let mut chosen: Vec<usize> = prefix.to_vec();
        let valid_prefix = prefix.len() <= choose
            && prefix.windows(2).all(|w| w[0] < w[1])
            && prefix.iter().all(|&i| (1..=inner).contains(&i));
        let mut next = prefix.last().map_or(1, |&i| i + 1);
        while chosen.len() < choose {
            chosen.push(next);
            next += 1;
        }
        let done = !valid_prefix || choose > inner || chosen.last().is_some_and(|&i| i > inner);
        PathEnumerator { ctx, chosen, fixed: prefix.len(), done }
    }

    fn advance(&mut self) {
        let inner = self.ctx.sorted.len() - 2;
        let k = self.chosen.len();
        // Find the rightmost free slot that can still move.
        let mut i = k;
        while i > self.fixed {
            i -= 1;
            if self.chosen[i] < inner - (k - 1 - i) {
                self.chosen[i] += 1;
                for j in i + 1..k {
                    self.chosen[j] = self.chosen[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for PathEnumerator<'_> {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        if self.done {
            return None;
        }
        let s = &self.ctx.sorted;
        let mut points = Vec::with_capacity(self.chosen.len() + 2);
        points.push(s[0]);
        points.extend(self.chosen.iter().map(|&i| s[i]));
        points.push(s[s.len() - 1]);
        self.advance();
        Some(LatticePath { points })
    }
}

/// Every λ-increasing path with exactly `steps` steps from the λ-minimal to
/// the λ-maximal vertex.
pub fn enumerate_paths(
    polygon: &LatticePolygon,
    lambda: LambdaFunctional,
    steps: usize,
) -> Result<Vec<LatticePath>, TropicalError> {
    let ctx = PathContext::new(polygon, lambda);
    Ok(ctx.enumerate(steps)?.collect())
}
