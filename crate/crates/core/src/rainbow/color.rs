//! Colorings by filtration level and component, and the rainbow census.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::refine::face_in_simplex;
use crate::complex::PlComplex;
use crate::error::{Error, Result};
use crate::filtration::{Certificate, Filtration};
use crate::perm::permutations;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorMeta {
    pub level: usize,
    /// Index of the component among the level's separation certificates;
    /// for `Z_0` the point index.
    pub component: usize,
    /// Metric node of the witnessing ball.
    pub center: usize,
    pub radius: f64,
    /// Number of faces of the refined complex carrying the color.
    pub faces: usize,
}

/// Colors of the faces of a refined triangulation, i.e. of the vertices of
/// its barycentric subdivision.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelColoring {
    faces: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    levels: Vec<usize>,
    colors: Vec<usize>,
    meta: Vec<ColorMeta>,
}

impl LevelColoring {
    /// Faces as sorted point ids of the refined complex.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_id(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face).copied()
    }

    pub fn level_of(&self, face: usize) -> usize {
        self.levels[face]
    }

    pub fn color_of(&self, face: usize) -> usize {
        self.colors[face]
    }

    pub fn meta(&self) -> &[ColorMeta] {
        &self.meta
    }

    pub fn color_count(&self) -> usize {
        self.meta.len()
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Level of each face: the least `i` with the face inside `Z_i`.
fn face_levels(t: &PlComplex, faces: &[Vec<usize>], filtration: &Filtration) -> Vec<usize> {
    let n = filtration.dimension();
    let base = filtration.complex();
    faces
        .par_iter()
        .map(|face| {
            (0..n)
                .find(|&i| {
                    let z = filtration.level(i);
                    face.len() <= i + 1 && (0..z.simplices().len()).any(|j| face_in_simplex(t, face, z, j, base))
                })
                .unwrap_or(n)
        })
        .collect()
}

/// Colors faces so that two share a color exactly when they lie in the same
/// component of the same `Z_i \ Z_{i-1}`, each color carrying the radius
/// certificate of its component.
pub fn color_by_filtration(t: &PlComplex, filtration: &Filtration) -> Result<LevelColoring> {
    let faces: Vec<Vec<usize>> = t.faces().into_iter().map(|(f, _)| f).collect();
    let index: BTreeMap<Vec<usize>, usize> = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let levels = face_levels(t, &faces, filtration);

    let mut dsu = Dsu((0..faces.len()).collect());
    for (g, face) in faces.iter().enumerate() {
        if face.len() < 2 {
            continue;
        }
        for skip in 0..face.len() {
            let sub: Vec<usize> = face.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
            let f = index[&sub];
            if levels[f] == levels[g] {
                dsu.union(f, g);
            }
        }
    }

    let radius = filtration.config().radius;
    let metric = filtration.metric();
    let mut root_color: BTreeMap<usize, usize> = BTreeMap::new();
    let mut colors = vec![0; faces.len()];
    let mut meta: Vec<ColorMeta> = Vec::new();
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    // Faces are sorted, so vertices come first and each class meets its
    // lowest vertex before any other face.
    let mut order: Vec<usize> = (0..faces.len()).collect();
    order.sort_by_key(|&f| (faces[f].len(), f));
    for &f in &order {
        let root = dsu.find(f);
        if let Some(&c) = root_color.get(&root) {
            colors[f] = c;
            meta[c].faces += 1;
            continue;
        }
        let level = levels[f];
        if faces[f].len() != 1 {
            return Err(Error::RefinementFailed(format!("level {level} class without a vertex")));
        }
        let point = t.point(faces[f][0]);
        let z = filtration.level(level);
        let vertex = z.point_id(point).ok_or_else(|| {
            Error::RefinementFailed(format!("level {level} class has no vertex of Z_{level}"))
        })?;
        let (component, center, ecc) = if level == 0 {
            (vertex, metric.node_of(point)?, 0.0)
        } else {
            let rec = &filtration.records()[level - 1];
            let component = rec
                .certificates
                .components
                .iter()
                .position(|c| c.vertices.binary_search(&vertex).is_ok())
                .ok_or_else(|| Error::RefinementFailed(format!("vertex {vertex} of Z_{level} has no component")))?;
            match rec.certificates.components[component].certificate {
                Certificate::Center { node, eccentricity } if eccentricity <= radius + 1e-9 => {
                    (component, node, eccentricity)
                }
                _ => return Err(Error::SeparationViolation { level, component, radius }),
            }
        };
        if owner.insert((level, component), meta.len()).is_some() {
            return Err(Error::RefinementFailed(format!(
                "component {component} of level {level} split into several colors"
            )));
        }
        let c = meta.len();
        root_color.insert(root, c);
        colors[f] = c;
        meta.push(ColorMeta {
            level,
            component,
            center,
            radius: ecc,
            faces: 1,
        });
    }
    check_classes_match(filtration, &meta, &faces, &colors, t)?;
    Ok(LevelColoring {
        faces,
        index,
        levels,
        colors,
        meta,
    })
}

/// Every level vertex must be colored by its own component.
fn check_classes_match(
    filtration: &Filtration,
    meta: &[ColorMeta],
    faces: &[Vec<usize>],
    colors: &[usize],
    t: &PlComplex,
) -> Result<()> {
    for (f, face) in faces.iter().enumerate() {
        if face.len() != 1 {
            continue;
        }
        let m = &meta[colors[f]];
        let level = m.level;
        let Some(vertex) = filtration.level(level).point_id(t.point(face[0])) else {
            continue;
        };
        let expected = if level == 0 {
            vertex
        } else {
            let comps = &filtration.records()[level - 1].certificates.components;
            comps.iter().position(|c| c.vertices.binary_search(&vertex).is_ok()).unwrap_or(usize::MAX)
        };
        if expected != m.component {
            return Err(Error::RefinementFailed(format!(
                "vertex {vertex} of Z_{level} joins component {} instead of {expected}",
                m.component
            )));
        }
    }
    let expected: usize = filtration.level(0).points().len()
        + filtration.records().iter().map(|r| if filtration.level(r.level + 1).is_empty() { 0 } else { r.certificates.components.len() }).sum::<usize>();
    if expected != meta.len() {
        return Err(Error::RefinementFailed(format!("{} colors but {expected} components", meta.len())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCount {
    /// Index of the point in `Z_0`.
    pub point: usize,
    pub rainbow: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub dimension: usize,
    pub zero_points: usize,
    pub subdivision_simplices: usize,
    pub rainbow_total: usize,
    pub expected: usize,
    pub per_point: Vec<PointCount>,
    pub colors: Vec<ColorMeta>,
}

/// A top simplex of the barycentric subdivision, as a flag of faces.
fn flags(t: &PlComplex) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(t.dim() + 1);
    t.simplices()
        .iter()
        .flat_map(|s| {
            perms.iter().map(move |p| {
                (1..=p.len())
                    .map(|k| {
                        let mut f: Vec<usize> = p[..k].iter().map(|&i| s.vertices[i]).collect();
                        f.sort_unstable();
                        f
                    })
                    .collect()
            })
        })
        .collect()
}

/// Counts rainbow `n`-simplices of the barycentric subdivision of `t` and
/// checks the identity `2^n · #Z_0`, overall and point by point.
pub fn count_rainbow(t: &PlComplex, coloring: &LevelColoring, filtration: &Filtration) -> Result<CensusReport> {
    let n = t.dim();
    let z0 = filtration.level(0);
    let all = flags(t);
    let rainbow: Vec<(usize, bool)> = all
        .par_iter()
        .filter_map(|flag| {
            let ids: Vec<usize> = flag.iter().map(|f| coloring.face_id(f).expect("face of t")).collect();
            let mut colors: Vec<usize> = ids.iter().map(|&f| coloring.color_of(f)).collect();
            colors.sort_unstable();
            colors.dedup();
            if colors.len() != ids.len() {
                return None;
            }
            let mut levels: Vec<usize> = ids.iter().map(|&f| coloring.level_of(f)).collect();
            levels.sort_unstable();
            let one_per_level = levels == (0..=n).collect::<Vec<_>>();
            let zero = ids.iter().find(|&&f| coloring.level_of(f) == 0).map(|&f| {
                let face = &coloring.faces()[f];
                z0.point_id(t.point(face[0])).expect("level 0 face is a Z_0 point")
            });
            Some((zero.unwrap_or(usize::MAX), one_per_level))
        })
        .collect();
    if rainbow.iter().any(|r| !r.1) {
        return Err(Error::CensusMismatch("a rainbow simplex misses a level".into()));
    }
    let mut per: BTreeMap<usize, usize> = (0..z0.points().len()).map(|p| (p, 0)).collect();
    for &(p, _) in &rainbow {
        *per.get_mut(&p).expect("rainbow simplex through a Z_0 point") += 1;
    }
    let expected = (1usize << n) * z0.points().len();
    let report = CensusReport {
        dimension: n,
        zero_points: z0.points().len(),
        subdivision_simplices: all.len(),
        rainbow_total: rainbow.len(),
        expected,
        per_point: per.iter().map(|(&point, &rainbow)| PointCount { point, rainbow }).collect(),
        colors: coloring.meta().to_vec(),
    };
    if report.rainbow_total != expected {
        return Err(Error::CensusMismatch(format!("{} rainbow simplices, expected {expected}", report.rainbow_total)));
    }
    if let Some(bad) = report.per_point.iter().find(|c| c.rainbow != 1 << n) {
        return Err(Error::CensusMismatch(format!("point {} meets {} rainbow simplices", bad.point, bad.rainbow)));
    }
    Ok(report)
}
