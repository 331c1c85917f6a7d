//! Lattice-path count of curves on toric surfaces.
//!
//! Curves with Newton polygon `Δ` through `m + g - 1` generic points
//! (`m` = boundary lattice points) correspond to λ-increasing lattice paths
//! with that many steps from the λ-minimal to the λ-maximal vertex of `Δ`,
//! each weighted by the product of its two side multiplicities.

mod decompose;
mod lambda;
mod multiplicity;
mod paths;

use thiserror::Error;

pub use decompose::{IrreducibleCounter, PathTotals, SequentialPathTotals};
pub use lambda::LambdaFunctional;
pub use multiplicity::{mu_side, MultiplicityEngine};
pub use paths::{enumerate_paths, LatticePath, PathContext, PathEnumerator, Side, SideBoundary};

use crate::geometry::{GeometryError, LatticePolygon};
use crate::numerics::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropicalError {
    #[error("paths need at least one step")]
    ZeroSteps,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("reducible total {reducible} exceeds raw path total {raw}")]
    InconsistentDecomposition { raw: Nat, reducible: Nat },
    #[error("{0}")]
    Driver(alloc::string::String),
}

/// Raw genus-zero weighted path total `sum mu_+ mu_-` over `(m-1)`-step paths.
///
/// Counts reducible configurations of total genus zero as well; see
/// [`count_polygon`] for the irreducible count.
pub fn path_total(polygon: &LatticePolygon, lambda: LambdaFunctional) -> Result<Nat, TropicalError> {
    SequentialPathTotals::new(lambda).path_total(polygon, 0)
}

/// Number of irreducible rational curves with Newton polygon `polygon`
/// through `m - 1` generic points.
pub fn count_polygon(polygon: &LatticePolygon, lambda: LambdaFunctional) -> Result<Nat, TropicalError> {
    IrreducibleCounter::new(polygon, SequentialPathTotals::new(lambda))?.count(0)
}

#[cfg(test)]
mod tests;
