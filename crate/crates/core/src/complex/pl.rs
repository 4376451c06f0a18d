//! Geometric complexes whose vertices are exact points of a base complex.

use std::collections::{BTreeSet, HashMap};

use super::volume::{embed_simplex, euclidean, simplex_volume};
use super::{Point, WeightedComplex};
use crate::error::{Error, Result};
use crate::perm::permutations;

/// Euclidean embeddings of every maximal simplex of a base complex.
#[derive(Clone, Debug)]
pub struct Geometry {
    complex: WeightedComplex,
    coords: Vec<Vec<Vec<f64>>>,
    cofaces: HashMap<usize, Vec<usize>>,
}

impl Geometry {
    pub fn new(complex: &WeightedComplex) -> Result<Self> {
        let n = complex.dimension();
        let mut coords = Vec::with_capacity(complex.simplices().len());
        let mut cofaces: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, s) in complex.simplices().iter().enumerate() {
            coords.push(embed_simplex(n, |a, b| {
                if a == b {
                    0.0
                } else {
                    complex.edge_length(s[a], s[b]).expect("validated edge")
                }
            })?);
            for &v in s {
                cofaces.entry(v).or_default().push(i);
            }
        }
        Ok(Geometry {
            complex: complex.clone(),
            coords,
            cofaces,
        })
    }

    pub fn complex(&self) -> &WeightedComplex {
        &self.complex
    }

    pub fn position(&self, p: &Point, host: usize) -> Vec<f64> {
        let verts = &self.complex.simplices()[host];
        let mut x = vec![0.0; self.complex.dimension()];
        for (v, w) in p.support().iter().zip(p.weights()) {
            let local = verts.binary_search(v).expect("point supported in host");
            let w = *w.numer() as f64 / *w.denom() as f64;
            for (xi, ci) in x.iter_mut().zip(&self.coords[host][local]) {
                *xi += w * ci;
            }
        }
        x
    }

    pub fn distance(&self, p: &Point, q: &Point, host: usize) -> f64 {
        euclidean(&self.position(p, host), &self.position(q, host))
    }

    /// First maximal simplex whose vertex set contains every point's support.
    pub fn host_for<'a>(&self, points: impl IntoIterator<Item = &'a Point> + Clone) -> Option<usize> {
        let first = points.clone().into_iter().next()?;
        let anchor = first.support()[0];
        self.cofaces.get(&anchor)?.iter().copied().find(|&h| {
            let verts = &self.complex.simplices()[h];
            points.clone().into_iter().all(|p| p.supported_in(verts))
        })
    }

    /// Euclidean volume of the simplex spanned by `points` inside `host`.
    pub fn volume(&self, points: &[&Point], host: usize) -> Result<f64> {
        let pos: Vec<Vec<f64>> = points.iter().map(|p| self.position(p, host)).collect();
        let mut lengths = Vec::new();
        for a in 0..pos.len() {
            for b in (a + 1)..pos.len() {
                lengths.push(euclidean(&pos[a], &pos[b]));
            }
        }
        simplex_volume(&lengths)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSimplex {
    /// Sorted indices into the owning complex's point list.
    pub vertices: Vec<usize>,
    /// Maximal simplex of the base complex containing this simplex.
    pub host: usize,
}

/// Pure simplicial complex whose vertices are points of a base complex and
/// whose simplices are straight inside one base simplex each.
#[derive(Clone, Debug, Default)]
pub struct PlComplex {
    dim: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    simplices: Vec<PlSimplex>,
}

impl PlComplex {
    pub fn empty(dim: usize) -> Self {
        PlComplex {
            dim,
            ..Default::default()
        }
    }

    pub fn from_base(complex: &WeightedComplex) -> Self {
        let mut out = PlComplex::empty(complex.dimension());
        for (h, s) in complex.simplices().iter().enumerate() {
            let pts: Vec<Point> = s.iter().map(|&v| Point::vertex(v)).collect();
            out.push_simplex(pts, h);
        }
        out
    }

    /// Assembles a complex from points and simplices over them.
    pub fn from_parts(dim: usize, points: Vec<Point>, simplices: Vec<PlSimplex>) -> Self {
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PlComplex {
            dim,
            points,
            index,
            simplices,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn point_id(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn simplices(&self) -> &[PlSimplex] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn intern(&mut self, p: Point) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        self.points.push(p.clone());
        self.index.insert(p, self.points.len() - 1);
        self.points.len() - 1
    }

    /// Adds a simplex; the caller guarantees it is new and of dimension `dim`.
    pub fn push_simplex(&mut self, points: Vec<Point>, host: usize) -> usize {
        debug_assert_eq!(points.len(), self.dim + 1);
        let mut vertices: Vec<usize> = points.into_iter().map(|p| self.intern(p)).collect();
        vertices.sort_unstable();
        self.simplices.push(PlSimplex { vertices, host });
        self.simplices.len() - 1
    }

    pub fn simplex_points(&self, i: usize) -> Vec<&Point> {
        self.simplices[i].vertices.iter().map(|&v| &self.points[v]).collect()
    }

    pub fn simplex_volume(&self, i: usize, geometry: &Geometry) -> Result<f64> {
        geometry.volume(&self.simplex_points(i), self.simplices[i].host)
    }

    pub fn volumes(&self, geometry: &Geometry) -> Result<Vec<f64>> {
        (0..self.simplices.len()).map(|i| self.simplex_volume(i, geometry)).collect()
    }

    /// `Area_dim` of the complex; zero when empty.
    pub fn total_area(&self, geometry: &Geometry) -> Result<f64> {
        Ok(self.volumes(geometry)?.iter().sum())
    }

    /// Sorted list of all edges as pairs of point indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for s in &self.simplices {
            for a in 0..s.vertices.len() {
                for b in (a + 1)..s.vertices.len() {
                    set.insert((s.vertices[a], s.vertices[b]));
                }
            }
        }
        set.into_iter().collect()
    }

    /// Every face (sorted point-index list) with one simplex containing it.
    pub fn faces(&self) -> Vec<(Vec<usize>, usize)> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut out = Vec::new();
        for (si, s) in self.simplices.iter().enumerate() {
            let k = s.vertices.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| s.vertices[b]).collect();
                if !seen.contains_key(&face) {
                    seen.insert(face.clone(), si);
                    out.push((face, si));
                }
            }
        }
        out.sort();
        out
    }

    pub fn barycenter_of(&self, face: &[usize]) -> Point {
        Point::barycenter(face.iter().map(|&v| &self.points[v]))
    }

    /// Barycentric subdivision: one simplex per full flag of every simplex.
    pub fn barycentric_subdivision(&self) -> PlComplex {
        let mut out = PlComplex::empty(self.dim);
        let perms = permutations(self.dim + 1);
        for s in &self.simplices {
            for perm in &perms {
                let mut pts = Vec::with_capacity(perm.len());
                for k in 1..=perm.len() {
                    pts.push(Point::barycenter(perm[..k].iter().map(|&i| &self.points[s.vertices[i]])));
                }
                out.push_simplex(pts, s.host);
            }
        }
        out
    }

    /// `self` barycentrically subdivided `k` times.
    pub fn subdivided(&self, k: usize) -> PlComplex {
        let mut c = self.clone();
        for _ in 0..k {
            c = c.barycentric_subdivision();
        }
        c
    }

    /// Flag simplices `e = f₁ ⊂ f₂ ⊂ … ⊂ f_d` of the barycentric subdivision
    /// starting at the edge `e`; together they form the codimension-one cell
    /// dual to `e`. Each entry lists the barycenter points and the host.
    pub fn dual_cell(&self, edge: (usize, usize)) -> Vec<(Vec<Point>, usize)> {
        let mut out = Vec::new();
        let be = Point::barycenter([&self.points[edge.0], &self.points[edge.1]]);
        for s in &self.simplices {
            if !(s.vertices.contains(&edge.0) && s.vertices.contains(&edge.1)) {
                continue;
            }
            let rest: Vec<usize> = s.vertices.iter().copied().filter(|&v| v != edge.0 && v != edge.1).collect();
            for perm in permutations(rest.len()) {
                let mut pts = vec![be.clone()];
                let mut face = vec![edge.0, edge.1];
                for &i in &perm {
                    face.push(rest[i]);
                    pts.push(self.barycenter_of(&face));
                }
                out.push((pts, s.host));
            }
        }
        out
    }

    /// `Area_{dim-1}` of the cell dual to `edge`.
    pub fn dual_cell_area(&self, edge: (usize, usize), geometry: &Geometry) -> Result<f64> {
        let mut area = 0.0;
        for (pts, host) in self.dual_cell(edge) {
            let refs: Vec<&Point> = pts.iter().collect();
            area += geometry.volume(&refs, host)?;
        }
        Ok(area)
    }

    /// The codimension-one subcomplex made of the cells dual to `cut`.
    pub fn dual_of_cut(&self, cut: &[(usize, usize)]) -> Result<PlComplex> {
        if self.dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let mut out = PlComplex::empty(self.dim - 1);
        let mut seen = BTreeSet::new();
        for &e in cut {
            for (pts, host) in self.dual_cell(e) {
                let mut key: Vec<Point> = pts.clone();
                key.sort();
                if seen.insert(key) {
                    out.push_simplex(pts, host);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{circle, torus};

    #[test]
    fn subdivision_counts() {
        let t = torus(4, 1.0).unwrap();
        let base = PlComplex::from_base(&t);
        let sd = base.barycentric_subdivision();
        assert_eq!(sd.simplices().len(), 32 * 6);
        assert_eq!(sd.points().len(), 16 + 48 + 32);
        let g = Geometry::new(&t).unwrap();
        assert!((sd.total_area(&g).unwrap() - 16.0).abs() < 1e-9);
        assert!((base.subdivided(2).total_area(&g).unwrap() - 16.0).abs() < 1e-9);
    }

    #[test]
    fn dual_cells_on_circle_are_midpoints() {
        let c = circle(4, 4.0).unwrap();
        let base = PlComplex::from_base(&c);
        let g = Geometry::new(&c).unwrap();
        let dual = base.dual_of_cut(&[(0, 1)]).unwrap();
        assert_eq!(dual.dim(), 0);
        assert_eq!(dual.simplices().len(), 1);
        assert_eq!(dual.total_area(&g).unwrap(), 1.0);
        assert_eq!(dual.point(0).support(), &[0, 1]);
    }

    #[test]
    fn dual_cell_of_torus_edge() {
        let t = torus(4, 1.0).unwrap();
        let base = PlComplex::from_base(&t);
        let g = Geometry::new(&t).unwrap();
        // Axis edge: two segments from its midpoint to the centroids of the
        // adjacent right triangles, each of length sqrt(1/9 + 1/36).
        let e = base.edges()[0];
        assert_eq!(base.point(e.0).support(), &[0]);
        assert_eq!(base.point(e.1).support(), &[4]);
        let cell = base.dual_cell(e);
        assert_eq!(cell.len(), 2);
        let area = base.dual_cell_area(e, &g).unwrap();
        assert!((area - 5f64.sqrt() / 3.0).abs() < 1e-12);
    }
}
