//! Exact point location in barycentric coordinates.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use super::Point;

pub type Exact = Ratio<i128>;

fn widen(w: &Ratio<i64>) -> Exact {
    Exact::new(*w.numer() as i128, *w.denom() as i128)
}

/// Coordinates `λ` with `Σ λ_j q_j = p` and `Σ λ_j = 1`, solved exactly.
///
/// `frame` lists the base vertices spanning the ambient simplex, and the
/// `simplex` points must be affinely independent. Returns `None` when `p`
/// lies outside the affine span.
pub fn barycentric_coordinates(p: &Point, simplex: &[&Point], frame: &[usize]) -> Option<Vec<Exact>> {
    if !p.supported_in(frame) {
        return None;
    }
    let cols = simplex.len();
    let mut rows: Vec<Vec<Exact>> = frame
        .iter()
        .map(|&v| {
            let mut row: Vec<Exact> = simplex.iter().map(|q| widen(&q.weight_of(v))).collect();
            row.push(widen(&p.weight_of(v)));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let found = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, found);
        let lead = rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x /= lead;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col];
                for c in 0..=cols {
                    let delta = factor * rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][cols]).collect())
}

/// Whether `p` lies in the closed simplex spanned by `simplex`.
pub fn contains(p: &Point, simplex: &[&Point], frame: &[usize]) -> bool {
    barycentric_coordinates(p, simplex, frame).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locates_barycenters() {
        let (a, b, c) = (Point::vertex(0), Point::vertex(1), Point::vertex(2));
        let ab = Point::barycenter([&a, &b]);
        let abc = Point::barycenter([&a, &b, &c]);
        let frame = [0, 1, 2];
        let l = barycentric_coordinates(&abc, &[&a, &ab, &c], &frame).unwrap();
        assert_eq!(l, vec![Exact::new(0, 1), Exact::new(2, 3), Exact::new(1, 3)]);
        assert!(contains(&ab, &[&a, &b], &frame));
        assert!(!contains(&abc, &[&a, &b], &frame));
        assert!(!contains(&c, &[&a, &ab], &frame));
        let outside = Point::combination(&[(Ratio::new(1, 2), &ab), (Ratio::new(1, 2), &b)]);
        assert!(!contains(&outside, &[&a, &ab], &frame));
        assert!(contains(&outside, &[&ab, &b], &frame));
    }
}
