//! Fixture generators: flat tori, circles and genus-g surfaces.

use std::collections::BTreeMap;

use super::WeightedComplex;
use crate::error::{Error, Result};

/// Flat torus made of `side × side` squares of edge `cell`, each split along
/// its diagonal into two triangles.
pub fn torus(side: usize, cell: f64) -> Result<WeightedComplex> {
    if side < 3 {
        return Err(Error::BadParams(format!("torus side must be at least 3, got {side}")));
    }
    if !(cell.is_finite() && cell > 0.0) {
        return Err(Error::BadParams(format!("torus cell size must be positive, got {cell}")));
    }
    let id = |i: usize, j: usize| (i % side) * side + (j % side);
    let mut simplices = Vec::with_capacity(2 * side * side);
    let mut lengths = Vec::new();
    for i in 0..side {
        for j in 0..side {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            simplices.push(vec![a, b, c]);
            simplices.push(vec![a, d, c]);
            lengths.push((a, b, cell));
            lengths.push((a, d, cell));
            lengths.push((a, c, cell * 2f64.sqrt()));
        }
    }
    WeightedComplex::new(2, simplices, lengths)
}

/// Cycle graph on `nodes` vertices with total length `length`.
pub fn circle(nodes: usize, length: f64) -> Result<WeightedComplex> {
    if nodes < 3 {
        return Err(Error::BadParams(format!("circle needs at least 3 nodes, got {nodes}")));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::BadParams(format!("circle length must be positive, got {length}")));
    }
    let h = length / nodes as f64;
    let simplices = (0..nodes).map(|i| vec![i, (i + 1) % nodes]).collect();
    let lengths = (0..nodes).map(|i| (i, (i + 1) % nodes, h)).collect::<Vec<_>>();
    WeightedComplex::new(1, simplices, lengths)
}

/// Closed orientable surface of genus `genus`, built from the identified
/// `4g`-gon `a1 b1 a1⁻¹ b1⁻¹ …` with every side cut in three. A ring of
/// interior vertices and a central cone make the result simplicial; all
/// edges have unit length.
pub fn genus_surface(genus: usize) -> Result<WeightedComplex> {
    if genus == 0 {
        return Err(Error::BadParams("genus must be at least 1".into()));
    }
    let sides = 4 * genus;
    let corner = 0usize;
    // (label, step) -> vertex id for the two interior points of each side label.
    let mut side_points: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut next = 1usize;
    let mut boundary = Vec::with_capacity(3 * sides);
    for s in 0..sides {
        let block = s / 4;
        let (label, reversed) = match s % 4 {
            0 => (2 * block, false),
            1 => (2 * block + 1, false),
            2 => (2 * block, true),
            _ => (2 * block + 1, true),
        };
        let mut mid = Vec::with_capacity(2);
        for step in 0..2 {
            let id = *side_points.entry((label, step)).or_insert_with(|| {
                next += 1;
                next - 1
            });
            mid.push(id);
        }
        if reversed {
            mid.reverse();
        }
        boundary.push(corner);
        boundary.extend(mid);
    }
    let m = boundary.len();
    let ring: Vec<usize> = (0..m).map(|k| next + k).collect();
    let center = next + m;
    let mut simplices = Vec::with_capacity(3 * m);
    for k in 0..m {
        let k1 = (k + 1) % m;
        simplices.push(vec![boundary[k], boundary[k1], ring[k1]]);
        simplices.push(vec![boundary[k], ring[k], ring[k1]]);
        simplices.push(vec![center, ring[k], ring[k1]]);
    }
    let mut lengths = Vec::new();
    for s in &simplices {
        for a in 0..3 {
            for b in (a + 1)..3 {
                lengths.push((s[a], s[b], 1.0));
            }
        }
    }
    WeightedComplex::new(2, simplices, lengths)
}
