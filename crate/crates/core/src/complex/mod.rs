//! Pure weighted simplicial complexes and their PL geometry.

mod exact;
mod generate;
mod metric;
mod pl;
mod point;
mod volume;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::{barycentric_coordinates, contains, Exact};
pub use generate::{circle, genus_surface, torus};
pub use metric::{BallVolume, MetricGraph, MetricSpace};
pub use pl::{Geometry, PlComplex, PlSimplex};
pub use point::{Point, Weight};
pub use volume::{dimension_from_edge_count, embed_simplex, simplex_volume};

/// Default barycentric refinement level of the metric graph.
pub const DEFAULT_SUBDIVISION_DEPTH: usize = 2;

/// On-disk form of a [`WeightedComplex`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dimension: usize,
    pub simplices: Vec<Vec<usize>>,
    pub edge_lengths: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision_depth: Option<usize>,
}

/// A pure `n`-dimensional simplicial complex with a Euclidean metric on
/// every maximal simplex, determined by its edge lengths.
#[derive(Clone, Debug)]
pub struct WeightedComplex {
    dimension: usize,
    simplices: Vec<Vec<usize>>,
    edge_lengths: BTreeMap<(usize, usize), f64>,
    subdivision_depth: usize,
    vertices: Vec<usize>,
    volumes: Vec<f64>,
}

fn edge_key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl WeightedComplex {
    pub fn new(
        dimension: usize,
        simplices: Vec<Vec<usize>>,
        edge_lengths: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Malformed("dimension must be at least 1".into()));
        }
        let mut lengths = BTreeMap::new();
        for (u, v, l) in edge_lengths {
            if u == v {
                return Err(Error::Malformed(format!("loop edge at vertex {u}")));
            }
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Malformed(format!("edge ({u}, {v}) has length {l}")));
            }
            if let Some(prev) = lengths.insert(edge_key(u, v), l) {
                if prev != l {
                    return Err(Error::Malformed(format!(
                        "metric inconsistency on edge ({u}, {v}): {prev} vs {l}"
                    )));
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if s.len() != dimension + 1 {
                return Err(Error::DimensionMismatch {
                    expected: dimension + 1,
                    got: s.len(),
                });
            }
            if !seen.insert(s.clone()) {
                return Err(Error::Malformed(format!("duplicate simplex {s:?}")));
            }
            sorted.push(s);
        }
        if sorted.is_empty() {
            return Err(Error::Malformed("complex has no simplices".into()));
        }
        let mut used = BTreeSet::new();
        for s in &sorted {
            for i in 0..s.len() {
                for j in (i + 1)..s.len() {
                    let key = (s[i], s[j]);
                    if !lengths.contains_key(&key) {
                        return Err(Error::Malformed(format!("edge {key:?} has no length")));
                    }
                    used.insert(key);
                }
            }
        }
        if let Some(extra) = lengths.keys().find(|k| !used.contains(*k)) {
            return Err(Error::Malformed(format!("edge {extra:?} lies in no simplex")));
        }
        let vertices: Vec<usize> = sorted.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut complex = WeightedComplex {
            dimension,
            simplices: sorted,
            edge_lengths: lengths,
            subdivision_depth: DEFAULT_SUBDIVISION_DEPTH,
            vertices,
            volumes: Vec::new(),
        };
        complex.volumes = (0..complex.simplices.len())
            .map(|i| simplex_volume(&complex.simplex_edge_lengths(i)))
            .collect::<Result<_>>()?;
        Ok(complex)
    }

    pub fn from_file(file: ComplexFile) -> Result<Self> {
        let depth = file.subdivision_depth.unwrap_or(DEFAULT_SUBDIVISION_DEPTH);
        Ok(Self::new(file.dimension, file.simplices, file.edge_lengths)?.with_subdivision_depth(depth))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            dimension: self.dimension,
            simplices: self.simplices.clone(),
            edge_lengths: self.edge_lengths.iter().map(|(&(u, v), &l)| (u, v, l)).collect(),
            subdivision_depth: Some(self.subdivision_depth),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("complex serializes")
    }

    pub fn with_subdivision_depth(mut self, depth: usize) -> Self {
        self.subdivision_depth = depth;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn subdivision_depth(&self) -> usize {
        self.subdivision_depth
    }

    pub fn edge_length(&self, u: usize, v: usize) -> Option<f64> {
        self.edge_lengths.get(&edge_key(u, v)).copied()
    }

    /// Edge lengths of simplex `i` in lexicographic vertex-pair order.
    pub fn simplex_edge_lengths(&self, i: usize) -> Vec<f64> {
        let s = &self.simplices[i];
        let mut out = Vec::with_capacity(s.len() * (s.len() - 1) / 2);
        for a in 0..s.len() {
            for b in (a + 1)..s.len() {
                out.push(self.edge_lengths[&(s[a], s[b])]);
            }
        }
        out
    }

    pub fn simplex_volume(&self, i: usize) -> f64 {
        self.volumes[i]
    }

    /// `Area_n` of the whole complex.
    pub fn total_area(&self) -> f64 {
        self.volumes.iter().sum()
    }

    /// Every codimension-one face has exactly two cofaces.
    pub fn is_closed(&self) -> bool {
        let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for s in &self.simplices {
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect();
                *count.entry(face).or_default() += 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Disjoint union, with `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &WeightedComplex) -> Result<WeightedComplex> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: other.dimension,
            });
        }
        let shift = self.vertices.last().map_or(0, |v| v + 1);
        let simplices = self
            .simplices
            .iter()
            .cloned()
            .chain(other.simplices.iter().map(|s| s.iter().map(|v| v + shift).collect()))
            .collect();
        let lengths = self
            .edge_lengths
            .iter()
            .map(|(&(u, v), &l)| (u, v, l))
            .chain(other.edge_lengths.iter().map(|(&(u, v), &l)| (u + shift, v + shift, l)))
            .collect::<Vec<_>>();
        Ok(WeightedComplex::new(self.dimension, simplices, lengths)?.with_subdivision_depth(self.subdivision_depth))
    }
}
