use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Weight = Ratio<i64>;

/// A point of the base complex in exact barycentric coordinates.
///
/// `support` is the sorted list of base vertices with positive weight, so
/// the support is the unique face whose relative interior holds the point.
/// Two equal points always compare equal, which lets barycenters of
/// iterated subdivisions be interned by value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    support: Vec<usize>,
    weights: Vec<Weight>,
}

impl Point {
    pub fn vertex(v: usize) -> Self {
        Point {
            support: vec![v],
            weights: vec![Weight::one()],
        }
    }

    /// Affine combination `Σ c_i p_i` with nonnegative coefficients summing to one.
    pub fn combination(terms: &[(Weight, &Point)]) -> Self {
        let mut acc: BTreeMap<usize, Weight> = BTreeMap::new();
        for (c, p) in terms {
            for (v, w) in p.support.iter().zip(&p.weights) {
                *acc.entry(*v).or_insert_with(Weight::zero) += *c * *w;
            }
        }
        let (support, weights) = acc.into_iter().filter(|(_, w)| !w.is_zero()).unzip();
        Point { support, weights }
    }

    pub fn barycenter<'a>(points: impl IntoIterator<Item = &'a Point>) -> Self {
        let points: Vec<&Point> = points.into_iter().collect();
        let c = Weight::new(1, points.len() as i64);
        let terms: Vec<(Weight, &Point)> = points.into_iter().map(|p| (c, p)).collect();
        Self::combination(&terms)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_of(&self, v: usize) -> Weight {
        match self.support.binary_search(&v) {
            Ok(i) => self.weights[i],
            Err(_) => Weight::zero(),
        }
    }

    /// Whether the support lies inside the sorted vertex list `face`.
    pub fn supported_in(&self, face: &[usize]) -> bool {
        self.support.iter().all(|v| face.binary_search(v).is_ok())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (v, w)) in self.support.iter().zip(&self.weights).enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}·v{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barycenters_are_canonical() {
        let (a, b, c) = (Point::vertex(0), Point::vertex(1), Point::vertex(2));
        let ab = Point::barycenter([&a, &b]);
        let abc = Point::barycenter([&a, &b, &c]);
        let again = Point::barycenter([&c, &a, &b]);
        assert_eq!(abc, again);
        assert_eq!(ab.support(), &[0, 1]);
        assert_eq!(ab.weight_of(1), Weight::new(1, 2));
        assert_eq!(Point::barycenter([&a, &a]), a);
        assert!(ab.supported_in(&[0, 1, 2]));
        assert!(!abc.supported_in(&[0, 1]));
    }
}
