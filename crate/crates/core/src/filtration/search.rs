//! Anytime local search for low-area separating cut sets.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::separate::{CutSet, LevelSearch, RADIUS_TOL};
use crate::error::{Error, Result};

/// Search effort knobs for one level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    /// Area slack `ε_i` reported when no lower bound certifies the result.
    pub epsilon: f64,
    /// Maximum number of candidate feasibility evaluations.
    pub move_budget: usize,
    /// Random feasible restarts and perturbation kicks, each.
    pub restarts: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub cut: CutSet,
    pub area: f64,
    /// `best area − lower bound` when a bound is known, else `ε_i`.
    pub slack: f64,
    pub slack_assumed: bool,
    pub evaluations: usize,
}

impl LevelSearch<'_> {
    /// Component label of every vertex.
    pub fn labels(&self, cut: &CutSet) -> Vec<usize> {
        let mut labels = vec![0; self.vertex_count()];
        for (i, comp) in self.components(cut).iter().enumerate() {
            for &v in comp {
                labels[v] = i;
            }
        }
        labels
    }

    /// Edges whose endpoints carry different labels.
    pub fn boundary_of(&self, labels: &[usize]) -> CutSet {
        CutSet(self.edges().iter().map(|&(a, b)| labels[a] != labels[b]).collect())
    }

    /// Drops cut edges that do not separate anything. Components and
    /// separation are unchanged, area can only drop.
    pub fn normalize(&self, cut: &CutSet) -> CutSet {
        self.boundary_of(&self.labels(cut))
    }

    /// Largest distance from node `p` to the closed dual block of `v`.
    pub fn block_radius(&self, p: usize, v: usize) -> f64 {
        let row = self.row(p);
        self.block_samples(v).iter().map(|&s| row[s]).fold(0.0, f64::max)
    }

    /// Replaces the part of `cut` inside the ball `B(p, ρ)` by the boundary
    /// of the ball. A vertex counts as inside when its whole dual block lies
    /// in the ball, so every new component fits in `B(p, ρ)`.
    pub fn sphere_replacement_move(&self, cut: &CutSet, p: usize, rho: f64) -> CutSet {
        self.replace_inside(cut, &self.inside_ball(p, rho))
    }

    fn inside_ball(&self, p: usize, rho: f64) -> Vec<bool> {
        (0..self.vertex_count()).map(|v| self.block_radius(p, v) <= rho).collect()
    }

    fn replace_inside(&self, cut: &CutSet, inside: &[bool]) -> CutSet {
        CutSet(
            self.edges()
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| match (inside[a], inside[b]) {
                    (true, true) => false,
                    (false, false) => cut.contains(e),
                    _ => true,
                })
                .collect(),
        )
    }

    fn feasible(&self, cut: &CutSet) -> bool {
        self.components(cut).iter().all(|c| self.fits(c))
    }

    /// Sphere-move parameters `(p, ρ)`: centers at parent vertices, radii at
    /// the block radii below `R`.
    fn sphere_moves(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for c in 0..self.vertex_count() {
            let p = self.vertex_node(c);
            let radius: Vec<f64> = (0..self.vertex_count()).map(|v| self.block_radius(p, v)).collect();
            let mut radii: Vec<f64> = radius.iter().copied().filter(|&r| r <= self.radius() + RADIUS_TOL).collect();
            radii.sort_by(f64::total_cmp);
            radii.dedup();
            for rho in radii {
                let inside: Vec<bool> = radius.iter().map(|&r| r <= rho).collect();
                if seen.insert(inside.clone()) {
                    out.push(inside);
                }
            }
        }
        out
    }

    /// Candidate neighbors of a normalized cut, in move order.
    fn neighbors_of(&self, cut: &CutSet, spheres: &[Vec<bool>]) -> Vec<CutSet> {
        let labels = self.labels(cut);
        let mut out = Vec::new();
        // Toggle a cut edge off: merges the two components it separates.
        for e in cut.ids() {
            let mut next = cut.clone();
            next.0[e] = false;
            out.push(self.normalize(&next));
        }
        // Move a boundary vertex into a neighboring component.
        for v in 0..self.vertex_count() {
            let mut seen = Vec::new();
            for &(w, _) in self.neighbors(v) {
                let target = labels[w];
                if target != labels[v] && !seen.contains(&target) {
                    seen.push(target);
                    let mut l = labels.clone();
                    l[v] = target;
                    out.push(self.normalize(&self.boundary_of(&l)));
                }
            }
        }
        for inside in spheres {
            out.push(self.normalize(&self.replace_inside(cut, inside)));
        }
        out
    }

    /// Best-improvement descent. Returns the local minimum reached.
    fn descend(&self, mut cut: CutSet, spheres: &[Vec<bool>], evaluations: &mut usize, budget: usize) -> CutSet {
        let mut area = self.area(&cut);
        while *evaluations < budget {
            let mut seen = HashSet::new();
            let mut improving: Vec<(f64, usize, CutSet)> = self
                .neighbors_of(&cut, spheres)
                .into_iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    let a = self.area(&c);
                    (a < area - 1e-12 && seen.insert(c.clone())).then_some((a, i, c))
                })
                .collect();
            improving.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            let mut moved = false;
            for (a, _, c) in improving {
                if *evaluations >= budget {
                    break;
                }
                *evaluations += 1;
                if self.feasible(&c) {
                    cut = c;
                    area = a;
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        cut
    }

    /// Random feasible partition grown region by region.
    fn random_start(&self, rng: &mut ChaCha8Rng) -> CutSet {
        let n = self.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut labels = vec![usize::MAX; n];
        for (region, &seed) in order.iter().enumerate() {
            if labels[seed] != usize::MAX {
                continue;
            }
            let mut members = vec![seed];
            labels[seed] = region;
            let mut frontier: Vec<usize> = self.neighbors(seed).iter().map(|&(w, _)| w).collect();
            while !frontier.is_empty() {
                let w = frontier.swap_remove(rng.gen_range(0..frontier.len()));
                if labels[w] != usize::MAX {
                    continue;
                }
                let mut trial = members.clone();
                trial.push(w);
                trial.sort_unstable();
                if self.fits(&trial) {
                    labels[w] = region;
                    members = trial;
                    frontier.extend(self.neighbors(w).iter().map(|&(x, _)| x).filter(|&x| labels[x] == usize::MAX));
                }
            }
        }
        self.boundary_of(&labels)
    }
}

/// Searches for an `R`-separating cut of small dual area.
///
/// Descends from the full 1-skeleton, from random feasible partitions and
/// from random sphere-replacement kicks of the incumbent. Ties between equal
/// improvements go to the earliest move in enumeration order, so the result
/// depends only on the inputs and the seed.
pub fn minimize_separating(search: &LevelSearch<'_>, params: &SearchParams) -> Result<SearchOutcome> {
    if !(params.epsilon > 0.0) {
        return Err(Error::BadParams(format!("epsilon must be positive, got {}", params.epsilon)));
    }
    let edges = search.edges().len();
    let empty = CutSet::none(edges);
    let mut evaluations = 1;
    if search.is_r_separating(&empty).separating {
        return Ok(SearchOutcome {
            cut: empty,
            area: 0.0,
            slack: 0.0,
            slack_assumed: false,
            evaluations,
        });
    }
    let skeleton = search.normalize(&CutSet::all(edges));
    evaluations += 1;
    if !search.is_r_separating(&skeleton).separating {
        return Err(Error::Infeasible);
    }
    let budget = params.move_budget.max(evaluations);
    let spheres = search.sphere_moves();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut best = search.descend(skeleton, &spheres, &mut evaluations, budget);
    let mut best_area = search.area(&best);
    let consider = |cand: CutSet, best: &mut CutSet, best_area: &mut f64| {
        let a = search.area(&cand);
        if a < *best_area - 1e-12 {
            *best = cand;
            *best_area = a;
        }
    };
    for _ in 0..params.restarts {
        if evaluations >= budget {
            break;
        }
        let start = search.random_start(&mut rng);
        let cand = search.descend(start, &spheres, &mut evaluations, budget);
        consider(cand, &mut best, &mut best_area);
    }
    for _ in 0..params.restarts {
        if evaluations >= budget || spheres.is_empty() {
            break;
        }
        let inside = &spheres[rng.gen_range(0..spheres.len())];
        let kicked = search.normalize(&search.replace_inside(&best, inside));
        evaluations += 1;
        if !search.is_r_separating(&kicked).separating {
            continue;
        }
        let cand = search.descend(kicked, &spheres, &mut evaluations, budget);
        consider(cand, &mut best, &mut best_area);
    }
    Ok(SearchOutcome {
        cut: best,
        area: best_area,
        slack: params.epsilon,
        slack_assumed: true,
        evaluations,
    })
}
