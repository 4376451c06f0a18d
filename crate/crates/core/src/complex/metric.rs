//! Shortest-path metric on the refined 1-skeleton, balls and ball volumes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};

use super::{Geometry, PlComplex, Point, WeightedComplex};
use crate::error::{Error, Result};

/// Weighted 1-skeleton of a subdivision. Node `i` is point `i` of the
/// subdivision it was built from.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
}

#[derive(Copy, Clone, PartialEq)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MetricGraph {
    pub fn from_complex(complex: &PlComplex, geometry: &Geometry) -> Self {
        let mut arcs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for s in complex.simplices() {
            let v = &s.vertices;
            for a in 0..v.len() {
                for b in (a + 1)..v.len() {
                    arcs.entry((v[a], v[b])).or_insert_with(|| {
                        geometry.distance(complex.point(v[a]), complex.point(v[b]), s.host)
                    });
                }
            }
        }
        let mut adjacency = vec![Vec::new(); complex.points().len()];
        for ((a, b), w) in arcs {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        MetricGraph { adjacency }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adjacency[node]
    }

    /// Single-source shortest-path lengths; unreachable nodes get `+∞`.
    pub fn dijkstra(&self, source: usize) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.adjacency.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(Frontier { dist: 0.0, node: source });
        while let Some(Frontier { dist: d, node }) = heap.pop() {
            if d > dist[node] {
                continue;
            }
            for &(next, w) in &self.adjacency[node] {
                let nd = d + w;
                if nd < dist[next] {
                    dist[next] = nd;
                    heap.push(Frontier { dist: nd, node: next });
                }
            }
        }
        dist
    }
}

/// Ball volume estimate with its error bar.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallVolume {
    /// Full cells plus node-fraction credit for boundary cells.
    pub value: f64,
    /// Total volume of the boundary cells; the exact PL volume of the node
    /// ball lies within this much of `value`.
    pub boundary_credit: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub nodes: Vec<usize>,
    pub cells: Vec<usize>,
}

/// A base complex together with its metric refinement.
#[derive(Clone, Debug)]
pub struct MetricSpace {
    geometry: Geometry,
    fine: PlComplex,
    graph: MetricGraph,
    cell_volumes: Vec<f64>,
    depth: usize,
}

impl MetricSpace {
    /// Metric refinement at the complex's subdivision depth, raised to at
    /// least the dimension so that every filtration point is a graph node.
    pub fn new(complex: &WeightedComplex) -> Result<Self> {
        let depth = complex.subdivision_depth().max(complex.dimension());
        Self::with_depth(complex, depth)
    }

    pub fn with_depth(complex: &WeightedComplex, depth: usize) -> Result<Self> {
        let geometry = Geometry::new(complex)?;
        let fine = PlComplex::from_base(complex).subdivided(depth);
        let graph = MetricGraph::from_complex(&fine, &geometry);
        let cell_volumes = fine.volumes(&geometry)?;
        Ok(MetricSpace {
            geometry,
            fine,
            graph,
            cell_volumes,
            depth,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn complex(&self) -> &WeightedComplex {
        self.geometry.complex()
    }

    pub fn dimension(&self) -> usize {
        self.complex().dimension()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn fine(&self) -> &PlComplex {
        &self.fine
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn node_point(&self, node: usize) -> &Point {
        self.fine.point(node)
    }

    pub fn node_of(&self, p: &Point) -> Result<usize> {
        self.fine.point_id(p).ok_or(Error::NotANode { depth: self.depth })
    }

    pub fn total_area(&self) -> f64 {
        self.cell_volumes.iter().sum()
    }

    pub fn cell_volumes(&self) -> &[f64] {
        &self.cell_volumes
    }

    pub fn distances_from(&self, node: usize) -> Vec<f64> {
        self.graph.dijkstra(node)
    }

    pub fn ball(&self, center: usize, r: f64) -> Ball {
        self.ball_from(&self.distances_from(center), r)
    }

    /// Ball of radius `r` given precomputed distances from its center.
    pub fn ball_from(&self, dist: &[f64], r: f64) -> Ball {
        let nodes = (0..dist.len()).filter(|&i| dist[i] <= r).collect();
        let cells = (0..self.fine.simplices().len())
            .filter(|&c| self.fine.simplices()[c].vertices.iter().all(|&v| dist[v] <= r))
            .collect();
        Ball { nodes, cells }
    }

    pub fn ball_volume(&self, center: usize, r: f64) -> BallVolume {
        self.ball_volume_from(&self.distances_from(center), r)
    }

    pub fn ball_volume_from(&self, dist: &[f64], r: f64) -> BallVolume {
        let mut value = 0.0;
        let mut boundary_credit = 0.0;
        for (s, vol) in self.fine.simplices().iter().zip(&self.cell_volumes) {
            let inside = s.vertices.iter().filter(|&&v| dist[v] <= r).count();
            if inside == s.vertices.len() {
                value += vol;
            } else if inside > 0 {
                value += vol * inside as f64 / s.vertices.len() as f64;
                boundary_credit += vol;
            }
        }
        BallVolume { value, boundary_credit }
    }

    /// Node-fraction credited `Area` of `complex ∩ B`, with boundary credit.
    /// Vertices of `complex` must be graph nodes.
    pub fn area_within(&self, complex: &PlComplex, volumes: &[f64], dist: &[f64], r: f64) -> Result<BallVolume> {
        let nodes: Vec<usize> = complex.points().iter().map(|p| self.node_of(p)).collect::<Result<_>>()?;
        let mut value = 0.0;
        let mut boundary_credit = 0.0;
        for (s, vol) in complex.simplices().iter().zip(volumes) {
            let inside = s.vertices.iter().filter(|&&v| dist[nodes[v]] <= r).count();
            if inside == s.vertices.len() {
                value += vol;
            } else if inside > 0 {
                value += vol * inside as f64 / s.vertices.len() as f64;
                boundary_credit += vol;
            }
        }
        Ok(BallVolume { value, boundary_credit })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{circle, torus};

    #[test]
    fn circle_distances_are_arc_lengths() {
        let c = circle(8, 4.0).unwrap();
        let m = MetricSpace::with_depth(&c, 1).unwrap();
        let v0 = m.node_of(&Point::vertex(0)).unwrap();
        let v4 = m.node_of(&Point::vertex(4)).unwrap();
        let d = m.distances_from(v0);
        assert!((d[v4] - 2.0).abs() < 1e-12);
        assert_eq!(m.node_count(), 16);
    }

    #[test]
    fn huge_ball_is_everything() {
        let t = torus(4, 1.0).unwrap();
        let m = MetricSpace::with_depth(&t, 1).unwrap();
        let b = m.ball(0, 100.0);
        assert_eq!(b.nodes.len(), m.node_count());
        assert_eq!(b.cells.len(), m.fine().simplices().len());
        let v = m.ball_volume(0, 100.0);
        assert!((v.value - 16.0).abs() < 1e-9);
        assert_eq!(v.boundary_credit, 0.0);
    }

    #[test]
    fn tiny_ball_is_center_only() {
        let t = torus(4, 1.0).unwrap();
        let m = MetricSpace::with_depth(&t, 2).unwrap();
        let b = m.ball(0, 1e-9);
        assert_eq!(b.nodes, vec![0]);
        assert!(b.cells.is_empty());
        let v = m.ball_volume(0, 1e-9);
        let biggest = m.cell_volumes().iter().cloned().fold(0.0, f64::max);
        assert!(v.value <= biggest * 8.0);
    }
}
