//! Separation geometry of one filtration level: the edge graph of the parent
//! complex, dual-cell areas, components of the complement and radius
//! certificates.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::complex::{contains, MetricSpace, PlComplex};
use crate::error::{Error, Result};

/// Slack on the radius comparison, absorbing float noise in path sums.
pub(crate) const RADIUS_TOL: f64 = 1e-9;

/// Evidence that a component does or does not fit in a ball of radius `R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every sample of the component lies within `eccentricity` of `node`.
    Center { node: usize, eccentricity: f64 },
    /// Two samples further apart than `2R`; no ball of radius `R` holds both.
    FarPair { a: usize, b: usize, distance: f64 },
    /// No node works; the smallest eccentricity found is reported.
    NoCenter { best_eccentricity: f64 },
}

impl Certificate {
    pub fn fits(&self) -> bool {
        matches!(self, Certificate::Center { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentCertificate {
    /// Sorted parent-vertex indices of the component.
    pub vertices: Vec<usize>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub separating: bool,
    pub components: Vec<ComponentCertificate>,
}

/// For each parent vertex, the sorted metric nodes lying in its closed dual
/// block, the union of simplices of the parent's barycentric subdivision
/// having that vertex as a corner.
fn block_nodes(metric: &MetricSpace, parent: &PlComplex) -> Result<Vec<Vec<usize>>> {
    let base = metric.complex();
    let mut host_nodes = vec![Vec::new(); base.simplices().len()];
    for node in 0..metric.node_count() {
        let p = metric.node_point(node);
        for (h, frame) in base.simplices().iter().enumerate() {
            if p.supported_in(frame) {
                host_nodes[h].push(node);
            }
        }
    }
    let mut blocks: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); parent.points().len()];
    let sd = parent.barycentric_subdivision();
    for (i, s) in sd.simplices().iter().enumerate() {
        let pts = sd.simplex_points(i);
        let corners: Vec<usize> = pts.iter().filter_map(|p| parent.point_id(p)).collect();
        let frame = &base.simplices()[s.host];
        for &node in &host_nodes[s.host] {
            if contains(metric.node_point(node), &pts, frame) {
                for &v in &corners {
                    blocks[v].insert(node);
                }
            }
        }
    }
    for (v, b) in blocks.iter().enumerate() {
        if !b.contains(&metric.node_of(parent.point(v))?) {
            return Err(Error::NotANode { depth: metric.depth() });
        }
    }
    Ok(blocks.into_iter().map(|b| b.into_iter().collect()).collect())
}

/// Set of cut edges, indexed like [`LevelSearch::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutSet(pub Vec<bool>);

impl CutSet {
    pub fn none(edges: usize) -> Self {
        CutSet(vec![false; edges])
    }

    pub fn all(edges: usize) -> Self {
        CutSet(vec![true; edges])
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0[e]
    }

    pub fn ids(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&e| self.0[e]).collect()
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Search space for R-separating subpolyhedra of one parent complex.
///
/// Candidate separators are unions of cells dual to edges of the parent;
/// removing them leaves the dual blocks of the parent's vertices, glued
/// along uncut edges. A component is represented by its vertex set and
/// sampled by the metric nodes of its blocks.
pub struct LevelSearch<'a> {
    metric: &'a MetricSpace,
    parent: &'a PlComplex,
    radius: f64,
    edges: Vec<(usize, usize)>,
    edge_area: Vec<f64>,
    adjacency: Vec<Vec<(usize, usize)>>,
    samples: Vec<Vec<usize>>,
    vertex_nodes: Vec<usize>,
    rows: Mutex<HashMap<usize, Arc<Vec<f64>>>>,
    fits: Mutex<HashMap<Vec<usize>, Certificate>>,
}

impl<'a> LevelSearch<'a> {
    pub fn new(metric: &'a MetricSpace, parent: &'a PlComplex, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::BadParams(format!("separation radius must be positive, got {radius}")));
        }
        if parent.dim() == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let edges = parent.edges();
        let edge_area = edges
            .iter()
            .map(|&e| parent.dual_cell_area(e, metric.geometry()))
            .collect::<Result<Vec<_>>>()?;
        let nv = parent.points().len();
        let mut adjacency = vec![Vec::new(); nv];
        for (id, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, id));
            adjacency[b].push((a, id));
        }
        let samples = block_nodes(metric, parent)?;
        let vertex_nodes = parent.points().iter().map(|p| metric.node_of(p)).collect::<Result<_>>()?;
        Ok(LevelSearch {
            metric,
            parent,
            radius,
            edges,
            edge_area,
            adjacency,
            samples,
            vertex_nodes,
            rows: Mutex::new(HashMap::new()),
            fits: Mutex::new(HashMap::new()),
        })
    }

    pub fn metric(&self) -> &MetricSpace {
        self.metric
    }

    pub fn parent(&self) -> &PlComplex {
        self.parent
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).ok()
    }

    pub fn edge_area(&self, e: usize) -> f64 {
        self.edge_area[e]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        self.vertex_nodes[v]
    }

    /// `Area_{d-1}` of the separator made of the cut's dual cells.
    pub fn area(&self, cut: &CutSet) -> f64 {
        cut.ids().into_iter().map(|e| self.edge_area[e]).sum()
    }

    /// Metric distances from graph node `node` to every node, cached.
    pub fn row(&self, node: usize) -> Arc<Vec<f64>> {
        if let Some(r) = self.rows.lock().expect("row cache").get(&node) {
            return r.clone();
        }
        let r = Arc::new(self.metric.distances_from(node));
        self.rows.lock().expect("row cache").insert(node, r.clone());
        r
    }

    /// Connected components of the parent's vertex graph with cut edges
    /// removed, each sorted, ordered by smallest vertex.
    pub fn components(&self, cut: &CutSet) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &(w, e) in &self.adjacency[v] {
                    if !cut.contains(e) && label[w] == usize::MAX {
                        label[w] = id;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Metric nodes in the closed dual block of parent vertex `v`.
    pub fn block_samples(&self, v: usize) -> &[usize] {
        &self.samples[v]
    }

    pub fn component_samples(&self, vertices: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = vertices.iter().flat_map(|&v| self.samples[v].iter().copied()).collect();
        set.into_iter().collect()
    }

    /// Radius certificate for a sorted vertex set, memoized.
    pub fn certify(&self, vertices: &[usize]) -> Certificate {
        if let Some(c) = self.fits.lock().expect("fit cache").get(vertices) {
            return c.clone();
        }
        let cert = self.certify_uncached(vertices);
        self.fits.lock().expect("fit cache").insert(vertices.to_vec(), cert.clone());
        cert
    }

    pub fn fits(&self, vertices: &[usize]) -> bool {
        self.certify(vertices).fits()
    }

    fn certify_uncached(&self, vertices: &[usize]) -> Certificate {
        let samples = self.component_samples(vertices);
        let rows: Vec<Arc<Vec<f64>>> = samples.iter().map(|&s| self.row(s)).collect();
        let limit = self.radius + RADIUS_TOL;
        let eccentricity = |c: usize, cap: f64| {
            let mut worst = 0.0f64;
            for r in &rows {
                worst = worst.max(r[c]);
                if worst > cap {
                    break;
                }
            }
            worst
        };
        // Centers near the component first, then anywhere.
        let mut near: BTreeSet<usize> = samples.iter().copied().collect();
        for &s in &samples {
            near.extend(self.metric.graph().neighbors(s).iter().map(|&(w, _)| w));
        }
        let mut best = (f64::INFINITY, usize::MAX);
        for &c in &near {
            let e = eccentricity(c, best.0.min(f64::INFINITY));
            if e < best.0 {
                best = (e, c);
            }
        }
        if best.0 > limit {
            for c in 0..self.metric.node_count() {
                let e = eccentricity(c, best.0);
                if e < best.0 {
                    best = (e, c);
                }
            }
        }
        if best.0 <= limit {
            return Certificate::Center {
                node: best.1,
                eccentricity: best.0,
            };
        }
        for (i, r) in rows.iter().enumerate() {
            for &t in &samples[i + 1..] {
                if r[t] > 2.0 * self.radius + RADIUS_TOL {
                    return Certificate::FarPair {
                        a: samples[i],
                        b: t,
                        distance: r[t],
                    };
                }
            }
        }
        Certificate::NoCenter {
            best_eccentricity: best.0,
        }
    }

    /// Whether removing the cut's dual cells leaves only components that fit
    /// in a ball of radius `R`, with one certificate per component.
    pub fn is_r_separating(&self, cut: &CutSet) -> SeparationReport {
        let components: Vec<ComponentCertificate> = self
            .components(cut)
            .into_iter()
            .map(|vertices| {
                let certificate = self.certify(&vertices);
                ComponentCertificate { vertices, certificate }
            })
            .collect();
        SeparationReport {
            separating: components.iter().all(|c| c.certificate.fits()),
            components,
        }
    }

    /// Converts cut edges given as parent point pairs into a [`CutSet`].
    pub fn cut_from_pairs(&self, pairs: &[(usize, usize)]) -> Result<CutSet> {
        let mut cut = CutSet::none(self.edges.len());
        for &(a, b) in pairs {
            let e = self
                .edge_id(a, b)
                .ok_or_else(|| Error::Malformed(format!("({a}, {b}) is not an edge of the parent level")))?;
            cut.0[e] = true;
        }
        Ok(cut)
    }

    pub fn pairs(&self, cut: &CutSet) -> Vec<(usize, usize)> {
        cut.ids().into_iter().map(|e| self.edges[e]).collect()
    }
}
