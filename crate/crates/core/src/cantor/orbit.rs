//! Thick orbits over cells of the cover and the partitions they induce.

use std::collections::{BTreeMap, BTreeSet};

use super::algebra::{Clopen, ClopenAlgebra, Word};
use crate::error::{Error, Result};

/// A cell of the cover: a cell of the fundamental domain moved by a lattice
/// translation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub offset: Vec<i64>,
    pub local: usize,
}

impl Cell {
    pub fn new(offset: Vec<i64>, local: usize) -> Self {
        Cell { offset, local }
    }

    pub fn translated(&self, shift: &[i64]) -> Cell {
        Cell {
            offset: self.offset.iter().zip(shift).map(|(a, b)| a + b).collect(),
            local: self.local,
        }
    }
}

/// A bounded set of cells of one dimension with their areas.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CellSet {
    pub dim: usize,
    pub cells: BTreeMap<Cell, f64>,
}

impl CellSet {
    pub fn new(dim: usize) -> Self {
        CellSet {
            dim,
            cells: BTreeMap::new(),
        }
    }

    pub fn with(mut self, cell: Cell, area: f64) -> Self {
        self.cells.insert(cell, area);
        self
    }

    pub fn area(&self) -> f64 {
        self.cells.values().sum()
    }

    pub fn translated(&self, shift: &[i64]) -> CellSet {
        CellSet {
            dim: self.dim,
            cells: self.cells.iter().map(|(c, &a)| (c.translated(shift), a)).collect(),
        }
    }

    pub fn meets(&self, other: &CellSet) -> bool {
        self.cells.keys().any(|c| other.cells.contains_key(c))
    }

    /// Every translation `d` with `(d + other) ∩ self ≠ ∅`.
    pub fn shifts_onto(&self, other: &CellSet) -> BTreeSet<Vec<i64>> {
        let mut out = BTreeSet::new();
        for a in self.cells.keys() {
            for b in other.cells.keys().filter(|b| b.local == a.local) {
                out.insert(a.offset.iter().zip(&b.offset).map(|(x, y)| x - y).collect());
            }
        }
        out
    }
}

/// `{γ : γB ∩ B ≠ ∅}` as canonical words; symmetric and containing the
/// identity whenever `B` is nonempty.
pub fn overlap_set(ball: &CellSet) -> Vec<Word> {
    ball.shifts_onto(ball).iter().map(|d| Word::from_shift(d)).collect()
}

/// `A × S` together with all its translates.
#[derive(Clone, Debug, PartialEq)]
pub struct ThickOrbit {
    pub base: Clopen,
    pub cells: CellSet,
}

impl ThickOrbit {
    pub fn new(base: Clopen, cells: CellSet) -> Self {
        ThickOrbit { base, cells }
    }

    /// For every `γ ≠ e` with `γS ∩ S ≠ ∅`, `γA ∩ A = ∅`.
    pub fn is_non_self_intersecting(&self, algebra: &ClopenAlgebra) -> Result<bool> {
        for d in self.cells.shifts_onto(&self.cells) {
            if d.iter().all(|&a| a == 0) {
                continue;
            }
            check_rank(algebra, &d)?;
            if !algebra.image(&Word::from_shift(&d), &self.base)?.is_disjoint(&self.base) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_rank(algebra: &ClopenAlgebra, shift: &[i64]) -> Result<()> {
    if shift.len() != algebra.rank() {
        return Err(Error::DimensionMismatch {
            expected: algebra.rank(),
            got: shift.len(),
        });
    }
    Ok(())
}

/// `μ(A) · Area_d(S)`.
pub fn thick_area(algebra: &ClopenAlgebra, orbit: &ThickOrbit, d: usize) -> Result<f64> {
    if orbit.cells.dim != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: orbit.cells.dim,
        });
    }
    let mu = algebra.measure(&orbit.base);
    Ok(*mu.numer() as f64 / *mu.denom() as f64 * orbit.cells.area())
}

/// One translate `γ(A_j × S_j)` that meets the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translate {
    pub orbit: usize,
    pub shift: Vec<i64>,
    pub clopen: Clopen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPartition {
    pub translates: Vec<Translate>,
    /// Minimal sets of the algebra generated by the translates' clopens,
    /// ordered by least point.
    pub parts: Vec<Clopen>,
}

/// Partition of `X` into sets over which the thick orbits look the same
/// inside `ball`.
pub fn pattern_partition(algebra: &ClopenAlgebra, orbits: &[ThickOrbit], ball: &CellSet) -> Result<PatternPartition> {
    let mut translates = Vec::new();
    for (j, orbit) in orbits.iter().enumerate() {
        for shift in ball.shifts_onto(&orbit.cells) {
            check_rank(algebra, &shift)?;
            let clopen = algebra.image(&Word::from_shift(&shift), &orbit.base)?;
            translates.push(Translate { orbit: j, shift, clopen });
        }
    }
    let mut parts = vec![algebra.full()];
    for t in &translates {
        parts = parts
            .into_iter()
            .flat_map(|p| [p.intersection(&t.clopen), p.difference(&t.clopen)])
            .filter(|p| !p.is_empty())
            .collect();
    }
    parts.sort_by_key(|p| p.points().next());
    Ok(PatternPartition { translates, parts })
}
