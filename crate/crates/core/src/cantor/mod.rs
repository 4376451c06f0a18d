//! Finite-level model of a measured Cantor system: permutation actions of
//! `ℤ^r` on a finite set with uniform measure, thick orbits over cells of
//! the cover, and the greedy equivariant constructions built on them.

mod algebra;
mod orbit;
mod packing;
mod weight;

pub use algebra::{ActionFixture, Clopen, ClopenAlgebra, Measure, Word};
pub use orbit::{overlap_set, pattern_partition, thick_area, Cell, CellSet, PatternPartition, ThickOrbit, Translate};
pub use packing::{greedy_equivariant_packing, independent_partition, EquivariantPacking, IndependentPartition};
pub use weight::{parametrized_l1_norm, thick_rainbow_weight};
