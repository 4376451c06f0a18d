//! Integer chains on ordered simplices and signed barycentric straightening.

use std::collections::BTreeMap;

use crate::perm::signed_permutations;

/// A finite integer combination of ordered simplices over labels `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<L: Ord> {
    terms: BTreeMap<Vec<L>, i64>,
}

impl<L: Ord> Default for Chain<L> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> Chain<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn simplex(vertices: Vec<L>) -> Self {
        let mut c = Chain::new();
        c.add(vertices, 1);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Vec<L>)>) -> Self {
        let mut c = Chain::new();
        for (a, s) in terms {
            c.add(s, a);
        }
        c
    }

    /// Adds `coefficient · simplex`, dropping terms that cancel.
    pub fn add(&mut self, simplex: Vec<L>, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(simplex);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
        }
    }

    pub fn add_chain(&mut self, other: &Chain<L>, scale: i64) {
        for (s, &a) in &other.terms {
            self.add(s.clone(), a * scale);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[L], i64)> {
        self.terms.iter().map(|(s, &a)| (s.as_slice(), a))
    }

    pub fn coefficient(&self, simplex: &[L]) -> i64 {
        self.terms.get(simplex).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂[v_0, …, v_d] = Σ_k (−1)^k [v_0, …, v̂_k, …, v_d]`.
    pub fn boundary(&self) -> Chain<L> {
        let mut out = Chain::new();
        for (s, &a) in &self.terms {
            if s.len() < 2 {
                continue;
            }
            for k in 0..s.len() {
                let face: Vec<L> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, v)| v.clone()).collect();
                out.add(face, if k % 2 == 0 { a } else { -a });
            }
        }
        out
    }

    /// `Σ_π sign(π) · σ∘π` over all vertex orders of each simplex.
    pub fn antisymmetrize(&self) -> Chain<L> {
        let mut out = Chain::new();
        for (s, &a) in &self.terms {
            for (p, sign) in signed_permutations(s.len()) {
                out.add(p.iter().map(|&i| s[i].clone()).collect(), a * sign);
            }
        }
        out
    }

    /// Signed barycentric subdivision, extended linearly.
    pub fn straighten(&self) -> Chain<Vec<L>> {
        let mut out = Chain::new();
        for (s, &a) in &self.terms {
            for (sign, piece) in straighten_pieces(s) {
                out.add(piece, a * sign);
            }
        }
        out
    }
}

/// Barycenter of a vertex subset, named by the sorted subset.
fn label<L: Ord + Clone>(vertices: &[L]) -> Vec<L> {
    let mut l = vertices.to_vec();
    l.sort();
    l.dedup();
    l
}

/// The `(d+1)!` flag simplices `[b{σπ0}, b{σπ0,σπ1}, …]` of one simplex, each
/// with the sign of `π`, before any cancellation.
pub fn straighten_pieces<L: Ord + Clone>(simplex: &[L]) -> Vec<(i64, Vec<Vec<L>>)> {
    signed_permutations(simplex.len())
        .into_iter()
        .map(|(p, sign)| {
            let ordered: Vec<L> = p.iter().map(|&i| simplex[i].clone()).collect();
            (sign, (1..=ordered.len()).map(|k| label(&ordered[..k])).collect())
        })
        .collect()
}
