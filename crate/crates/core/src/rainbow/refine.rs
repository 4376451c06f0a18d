//! Subdividing a triangulation until every filtration level is a subcomplex.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{barycentric_coordinates, Point, PlComplex, PlSimplex, WeightedComplex};
use crate::error::{Error, Result};
use crate::filtration::Filtration;

/// Order in which points of equal support dimension are inserted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InsertionOrder {
    #[default]
    Ascending,
    Descending,
}

struct Triangulation<'a> {
    base: &'a WeightedComplex,
    points: Vec<Point>,
    index: std::collections::HashMap<Point, usize>,
    simplices: Vec<PlSimplex>,
}

impl<'a> Triangulation<'a> {
    fn new(base: &'a WeightedComplex, start: &PlComplex) -> Self {
        Triangulation {
            base,
            points: start.points().to_vec(),
            index: start.points().iter().cloned().enumerate().map(|(i, p)| (p, i)).collect(),
            simplices: start.simplices().to_vec(),
        }
    }

    /// The face of the triangulation whose relative interior holds `x`.
    fn locate(&self, x: &Point) -> Option<Vec<usize>> {
        for s in &self.simplices {
            let frame = &self.base.simplices()[s.host];
            if !x.supported_in(frame) {
                continue;
            }
            let pts: Vec<&Point> = s.vertices.iter().map(|&v| &self.points[v]).collect();
            if let Some(l) = barycentric_coordinates(x, &pts, frame) {
                if l.iter().all(|c| *c >= Zero::zero()) {
                    return Some(s.vertices.iter().zip(&l).filter(|(_, c)| !c.is_zero()).map(|(&v, _)| v).collect());
                }
            }
        }
        None
    }

    /// Stellar subdivision of the face holding `x`, starring at `x`.
    fn insert(&mut self, x: &Point) -> Result<()> {
        if self.index.contains_key(x) {
            return Ok(());
        }
        let face = self
            .locate(x)
            .ok_or_else(|| Error::RefinementFailed(format!("{x:?} lies in no simplex")))?;
        let id = self.points.len();
        self.points.push(x.clone());
        self.index.insert(x.clone(), id);
        let mut next = Vec::with_capacity(self.simplices.len() + face.len());
        for s in self.simplices.drain(..) {
            if face.iter().all(|v| s.vertices.contains(v)) {
                for &u in &face {
                    let mut vertices: Vec<usize> = s.vertices.iter().map(|&w| if w == u { id } else { w }).collect();
                    vertices.sort_unstable();
                    next.push(PlSimplex { vertices, host: s.host });
                }
            } else {
                next.push(s);
            }
        }
        self.simplices = next;
        Ok(())
    }
}

/// Common subdivision of the base triangulation in which every `Z_i` is a
/// subcomplex.
///
/// Levels are processed from `Z_{n-1}` down to `Z_0`; each new vertex is
/// inserted by starring the face whose interior contains it, higher support
/// dimension first. Vertices already present leave the triangulation alone.
pub fn refine_with_filtration(filtration: &Filtration) -> Result<PlComplex> {
    refine_with_order(filtration, InsertionOrder::Ascending)
}

pub fn refine_with_order(filtration: &Filtration, order: InsertionOrder) -> Result<PlComplex> {
    refine_from(&PlComplex::from_base(filtration.complex()), filtration, order)
}

/// As [`refine_with_order`], starting from a subdivision `start` of the base
/// complex instead of the base itself.
pub fn refine_from(start: &PlComplex, filtration: &Filtration, order: InsertionOrder) -> Result<PlComplex> {
    let base = filtration.complex();
    let n = filtration.dimension();
    if start.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: start.dim() });
    }
    let mut t = Triangulation::new(base, start);
    for i in (0..n).rev() {
        let mut pending: Vec<(usize, usize, &Point)> = Vec::new();
        for (k, p) in filtration.level(i).points().iter().enumerate() {
            if t.index.contains_key(p) {
                continue;
            }
            let face = t
                .locate(p)
                .ok_or_else(|| Error::RefinementFailed(format!("level {i} point {k} lies in no simplex")))?;
            pending.push((face.len(), k, p));
        }
        pending.sort_by(|a, b| {
            b.0.cmp(&a.0).then(match order {
                InsertionOrder::Ascending => a.1.cmp(&b.1),
                InsertionOrder::Descending => b.1.cmp(&a.1),
            })
        });
        for (_, _, p) in pending {
            t.insert(p)?;
        }
    }
    let mut simplices = t.simplices;
    simplices.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    let refined = PlComplex::from_parts(n, t.points, simplices);
    check_subcomplexes(&refined, filtration)?;
    Ok(refined)
}

/// Whether `face` (point ids of `t`) lies in the closed simplex `j` of `z`.
pub(crate) fn face_in_simplex(t: &PlComplex, face: &[usize], z: &PlComplex, j: usize, base: &WeightedComplex) -> bool {
    let frame = &base.simplices()[z.simplices()[j].host];
    let hull = z.simplex_points(j);
    face.iter().all(|&v| crate::complex::contains(t.point(v), &hull, frame))
}

/// Every `Z_i` must be the union of the `i`-faces of `t` it contains.
fn check_subcomplexes(t: &PlComplex, filtration: &Filtration) -> Result<()> {
    let base = filtration.complex();
    let geometry = filtration.metric().geometry();
    let faces = t.faces();
    for i in 0..filtration.dimension() {
        let z = filtration.level(i);
        if i == 0 {
            for p in z.points() {
                if t.point_id(p).is_none() {
                    return Err(Error::RefinementFailed(format!("Z_0 point {p:?} is not a vertex")));
                }
            }
            continue;
        }
        let mut covered = 0.0;
        for (face, host_simplex) in faces.iter().filter(|(f, _)| f.len() == i + 1) {
            if (0..z.simplices().len()).any(|j| face_in_simplex(t, face, z, j, base)) {
                let pts: Vec<&Point> = face.iter().map(|&v| t.point(v)).collect();
                covered += geometry.volume(&pts, t.simplices()[*host_simplex].host)?;
            }
        }
        let area = z.total_area(geometry)?;
        if (covered - area).abs() > 1e-9 * area.max(1.0) {
            return Err(Error::RefinementFailed(format!(
                "level {i} has area {area} but its faces in the refinement cover {covered}"
            )));
        }
    }
    Ok(())
}
