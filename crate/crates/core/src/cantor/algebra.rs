//! A finite quotient of a free `ℤ^r` action with its uniform measure.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact measure values.
pub type Measure = Ratio<i64>;

/// A word in the generators. Letter `g + 1` is generator `g` and `-(g + 1)`
/// its inverse; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// The canonical word `g_0^{a_0} ⋯ g_{r-1}^{a_{r-1}}` for a translation.
    pub fn from_shift(shift: &[i64]) -> Self {
        let mut letters = Vec::new();
        for (g, &a) in shift.iter().enumerate() {
            let letter = (g as i32 + 1) * a.signum() as i32;
            letters.extend(std::iter::repeat_n(letter, a.unsigned_abs() as usize));
        }
        Word(letters)
    }

    /// Translation vector of the word in `ℤ^rank`.
    pub fn shift(&self, rank: usize) -> Result<Vec<i64>> {
        let mut v = vec![0i64; rank];
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize;
            if l == 0 || g > rank {
                return Err(Error::ActionIncomplete(format!("letter {l} with {rank} generators")));
            }
            v[g - 1] += l.signum() as i64;
        }
        Ok(v)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }
}

/// A subset of the finite level `X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Clopen(Vec<bool>);

impl Clopen {
    pub fn empty(size: usize) -> Self {
        Clopen(vec![false; size])
    }

    pub fn full(size: usize) -> Self {
        Clopen(vec![true; size])
    }

    pub fn from_points(size: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Self::empty(size);
        for x in points {
            c.0[x] = true;
        }
        c
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        Clopen(mask)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0[x]
    }

    pub fn insert(&mut self, x: usize) {
        self.0[x] = true;
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.contains(&true)
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len()).filter(|&x| self.0[x])
    }

    pub fn union(&self, other: &Clopen) -> Clopen {
        Clopen(self.0.iter().zip(&other.0).map(|(a, b)| *a || *b).collect())
    }

    pub fn intersection(&self, other: &Clopen) -> Clopen {
        Clopen(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }

    pub fn difference(&self, other: &Clopen) -> Clopen {
        Clopen(self.0.iter().zip(&other.0).map(|(a, b)| *a && !*b).collect())
    }

    pub fn complement(&self) -> Clopen {
        Clopen(self.0.iter().map(|b| !b).collect())
    }

    pub fn is_disjoint(&self, other: &Clopen) -> bool {
        !self.0.iter().zip(&other.0).any(|(a, b)| *a && *b)
    }

    pub fn is_subset(&self, other: &Clopen) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| !*a || *b)
    }
}

/// Action document: level size, one permutation per generator, and words
/// that must act trivially.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActionFixture {
    pub size: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub relations: Vec<Word>,
}

/// `X` of size `N` with permutation generators and `μ(A) = |A| / N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClopenAlgebra {
    size: usize,
    generators: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
    relations: Vec<Word>,
}

impl ClopenAlgebra {
    pub fn new(size: usize, generators: Vec<Vec<usize>>, relations: Vec<Word>) -> Result<Self> {
        if size == 0 {
            return Err(Error::BadParams("level size must be positive".into()));
        }
        let mut inverses = Vec::with_capacity(generators.len());
        for (g, perm) in generators.iter().enumerate() {
            if perm.len() != size {
                return Err(Error::Malformed(format!("generator {g} has {} images, expected {size}", perm.len())));
            }
            let mut inv = vec![usize::MAX; size];
            for (x, &y) in perm.iter().enumerate() {
                if y >= size || inv[y] != usize::MAX {
                    return Err(Error::Malformed(format!("generator {g} is not a bijection")));
                }
                inv[y] = x;
            }
            inverses.push(inv);
        }
        let algebra = ClopenAlgebra {
            size,
            generators,
            inverses,
            relations,
        };
        for w in &algebra.relations {
            let p = algebra.permutation(w)?;
            if p.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::Malformed(format!("relation {:?} does not act trivially", w.0)));
            }
        }
        Ok(algebra)
    }

    pub fn from_fixture(fixture: ActionFixture) -> Result<Self> {
        Self::new(fixture.size, fixture.generators, fixture.relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_fixture(serde_json::from_str(text)?)
    }

    pub fn to_fixture(&self) -> ActionFixture {
        ActionFixture {
            size: self.size,
            generators: self.generators.clone(),
            relations: self.relations.clone(),
        }
    }

    /// `ℤ` acting on `ℤ/n` by `x ↦ x + 1`, the level-`n` odometer quotient.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(n, vec![(0..n).map(|x| (x + 1) % n).collect()], Vec::new())
    }

    /// `ℤ²` acting on `ℤ/a × ℤ/b` by unit translations; point `(i, j)` is
    /// `i * b + j`.
    pub fn grid_torus(a: usize, b: usize) -> Result<Self> {
        let n = a * b;
        let first = (0..n).map(|x| ((x / b + 1) % a) * b + x % b).collect();
        let second = (0..n).map(|x| (x / b) * b + (x % b + 1) % b).collect();
        Self::new(n, vec![first, second], vec![Word(vec![1, 2, -1, -2])])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn full(&self) -> Clopen {
        Clopen::full(self.size)
    }

    pub fn empty(&self) -> Clopen {
        Clopen::empty(self.size)
    }

    /// `w · x`, applying the rightmost letter first.
    pub fn act(&self, w: &Word, x: usize) -> Result<usize> {
        let mut y = x;
        for &l in w.0.iter().rev() {
            let g = l.unsigned_abs() as usize;
            if l == 0 || g > self.rank() {
                return Err(Error::ActionIncomplete(format!("letter {l} with {} generators", self.rank())));
            }
            y = if l > 0 { self.generators[g - 1][y] } else { self.inverses[g - 1][y] };
        }
        Ok(y)
    }

    pub fn permutation(&self, w: &Word) -> Result<Vec<usize>> {
        (0..self.size).map(|x| self.act(w, x)).collect()
    }

    /// `γA`.
    pub fn image(&self, w: &Word, a: &Clopen) -> Result<Clopen> {
        let p = self.permutation(w)?;
        Ok(Clopen::from_points(self.size, a.points().map(|x| p[x])))
    }

    pub fn measure(&self, a: &Clopen) -> Measure {
        Measure::new(a.len() as i64, self.size as i64)
    }

    /// Whether `w` is the identity of `ℤ^r`.
    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        Ok(w.shift(self.rank())?.iter().all(|&a| a == 0))
    }
}
