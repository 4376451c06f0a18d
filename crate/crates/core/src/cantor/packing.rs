//! The independent-set partition and the greedy equivariant packing.

use std::collections::BTreeSet;

use super::algebra::{Clopen, ClopenAlgebra, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentPartition {
    pub parts: Vec<Clopen>,
    /// Part index of every point.
    pub colors: Vec<usize>,
}

impl IndependentPartition {
    pub fn m(&self) -> usize {
        self.parts.len()
    }
}

fn nontrivial(algebra: &ClopenAlgebra, f: &[Word]) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for w in f {
        if !algebra.is_identity(w)? {
            out.push(algebra.permutation(w)?);
        }
    }
    Ok(out)
}

/// Parts `X_j` with `γX_j ∩ X_j = ∅` for every `γ ≠ e` in `F`: a greedy
/// coloring of the graph with edges `{x, γx}`, in decreasing degree order
/// with ties by index.
pub fn independent_partition(algebra: &ClopenAlgebra, f: &[Word]) -> Result<IndependentPartition> {
    let n = algebra.size();
    let mut adjacency = vec![BTreeSet::new(); n];
    for perm in nontrivial(algebra, f)? {
        for (x, &y) in perm.iter().enumerate() {
            if x == y {
                return Err(Error::BadParams(format!("a nonidentity element of F fixes point {x}")));
            }
            adjacency[x].insert(y);
            adjacency[y].insert(x);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| adjacency[b].len().cmp(&adjacency[a].len()).then(a.cmp(&b)));
    let mut colors = vec![usize::MAX; n];
    for &x in &order {
        let used: BTreeSet<usize> = adjacency[x].iter().map(|&y| colors[y]).collect();
        colors[x] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    let m = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    let parts = (0..m)
        .map(|c| Clopen::from_points(n, (0..n).filter(|&x| colors[x] == c)))
        .collect();
    Ok(IndependentPartition { parts, colors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantPacking {
    /// `A_0 ⊆ A_1 ⊆ … ⊆ A_m`.
    pub stages: Vec<Clopen>,
}

impl EquivariantPacking {
    /// `E = A_m`.
    pub fn set(&self) -> &Clopen {
        self.stages.last().expect("stages start with A_0")
    }
}

/// Builds `E ⊆ A` part by part: step `j` adds the points of `A ∩ X_j` not
/// already hit by some `γ ∈ F` from the earlier stages.
pub fn greedy_equivariant_packing(
    algebra: &ClopenAlgebra,
    a: &Clopen,
    f: &[Word],
    parts: &[Clopen],
) -> Result<EquivariantPacking> {
    let n = algebra.size();
    if a.size() != n || parts.iter().any(|p| p.size() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.size(),
        });
    }
    let shifts: BTreeSet<Vec<i64>> = f.iter().map(|w| w.shift(algebra.rank())).collect::<Result<_>>()?;
    for s in &shifts {
        let neg: Vec<i64> = s.iter().map(|x| -x).collect();
        if !shifts.contains(&neg) {
            return Err(Error::BadParams(format!("F is not symmetric: {s:?} has no inverse")));
        }
    }
    let mut seen = algebra.empty();
    for (j, p) in parts.iter().enumerate() {
        if !seen.is_disjoint(p) {
            return Err(Error::PartitionInvalid(format!("part {j} overlaps an earlier part")));
        }
        seen = seen.union(p);
    }
    if seen.len() != n {
        return Err(Error::PartitionInvalid("parts do not cover X".into()));
    }
    let perms = nontrivial(algebra, f)?;
    for (j, p) in parts.iter().enumerate() {
        if perms.iter().any(|perm| p.points().any(|x| p.contains(perm[x]))) {
            return Err(Error::PartitionInvalid(format!("part {j} meets one of its translates")));
        }
    }
    let all: Vec<Vec<usize>> = f.iter().map(|w| algebra.permutation(w)).collect::<Result<_>>()?;
    let mut stages = vec![algebra.empty()];
    for p in parts {
        let prev = stages.last().unwrap();
        let mut hit = algebra.empty();
        for perm in &all {
            for x in prev.points() {
                hit.insert(perm[x]);
            }
        }
        stages.push(prev.union(&a.intersection(p).difference(&hit)));
    }
    Ok(EquivariantPacking { stages })
}
