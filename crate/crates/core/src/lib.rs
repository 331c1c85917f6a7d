//! Genus-zero curve counts on the projective plane, blown-up planes and
//! Hirzebruch surfaces, computed two independent ways (WDVV recursion and
//! lattice paths), plus the checks on their `λ n log n` growth.
//!
//! This crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod geometry;
pub mod kontsevich;
pub mod numerics;
pub mod tropical;

pub use asymptotics::{CountSeries, FitReport, InequalityReport};
pub use geometry::{DivisorClass, LatticePolygon, Point, Surface};
pub use numerics::Nat;
pub use tropical::LambdaFunctional;
