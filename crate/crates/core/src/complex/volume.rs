//! Simplex volumes from edge lengths via the Cayley-Menger determinant.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative threshold below which a squared volume counts as zero.
const DEGENERACY_RTOL: f64 = 1e-12;

/// Dimension of the simplex whose edge count is `edges`, if any.
pub fn dimension_from_edge_count(edges: usize) -> Option<usize> {
    (0..64).find(|d| d * (d + 1) / 2 == edges)
}

/// Euclidean volume of a simplex given its edge lengths.
///
/// Lengths are listed in lexicographic vertex-pair order
/// `(0,1), (0,2), …, (0,d), (1,2), …, (d-1,d)`. An empty list is a point,
/// whose 0-volume is 1.
pub fn simplex_volume(lengths: &[f64]) -> Result<f64> {
    let d = dimension_from_edge_count(lengths.len())
        .ok_or_else(|| Error::Malformed(format!("{} lengths match no simplex", lengths.len())))?;
    if d == 0 {
        return Ok(1.0);
    }
    if let Some(bad) = lengths.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::Malformed(format!("edge length {bad} is not positive")));
    }
    let volume_sq = squared_volume(d, lengths);
    let scale = lengths.iter().fold(0.0f64, |m, l| m.max(*l)).powi(2 * d as i32);
    if !(volume_sq > DEGENERACY_RTOL * scale) {
        return Err(Error::NondegenerateViolation(volume_sq));
    }
    Ok(volume_sq.sqrt())
}

/// Signed squared volume `(-1)^(d+1) det(CM) / (2^d (d!)^2)`.
pub(crate) fn squared_volume(d: usize, lengths: &[f64]) -> f64 {
    let size = d + 2;
    let mut cm = DMatrix::<f64>::zeros(size, size);
    for i in 1..size {
        cm[(0, i)] = 1.0;
        cm[(i, 0)] = 1.0;
    }
    let mut k = 0;
    for i in 0..=d {
        for j in (i + 1)..=d {
            let sq = lengths[k] * lengths[k];
            cm[(i + 1, j + 1)] = sq;
            cm[(j + 1, i + 1)] = sq;
            k += 1;
        }
    }
    let factorial: f64 = (1..=d).map(|x| x as f64).product();
    let sign = if d.is_multiple_of(2) { -1.0 } else { 1.0 };
    sign * cm.determinant() / (2f64.powi(d as i32) * factorial * factorial)
}

/// Vertex coordinates in `R^d` realizing the given edge lengths.
///
/// Vertex 0 sits at the origin; the rest come from a Cholesky factor of the
/// Gram matrix. Fails when the lengths describe no nondegenerate simplex.
pub fn embed_simplex(d: usize, length: impl Fn(usize, usize) -> f64) -> Result<Vec<Vec<f64>>> {
    let mut coords = vec![vec![0.0; d]; d + 1];
    if d == 0 {
        return Ok(coords);
    }
    let gram = DMatrix::<f64>::from_fn(d, d, |i, j| {
        let (a, b) = (length(0, i + 1), length(0, j + 1));
        let c = if i == j { 0.0 } else { length(i + 1, j + 1) };
        0.5 * (a * a + b * b - c * c)
    });
    let chol = gram
        .cholesky()
        .ok_or(Error::NondegenerateViolation(0.0))?;
    let l = chol.l();
    for i in 0..d {
        for j in 0..d {
            coords[i + 1][j] = l[(i, j)];
        }
    }
    Ok(coords)
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
