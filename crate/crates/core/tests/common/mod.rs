
//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use sepfilt::complex::{torus, MetricSpace, PlComplex, Point};
use sepfilt::filtration::LevelSearch;

pub fn vertex_id(parent: &PlComplex, v: usize) -> usize {
    parent.point_id(&Point::vertex(v)).unwrap()
}

/// Fewest cut points on an `n`-cycle of length `len` leaving arcs that fit
/// in a ball of radius `r`, by brute force over all edge subsets.
pub fn circle_optimum(n: usize, len: f64, r: f64) -> Option<usize> {
    let h = len / n as f64;
    let fits = |arc: usize| arc as f64 * h / 2.0 <= r + 1e-9;
    (0u32..1 << n)
        .filter(|mask| {
            let cuts: Vec<usize> = (0..n).filter(|e| mask & (1 << e) != 0).collect();
            if cuts.len() < 2 {
                return fits(n);
            }
            (0..cuts.len()).all(|k| {
                let next = cuts[(k + 1) % cuts.len()];
                fits((next + n - cuts[k] - 1) % n + 1)
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            grow(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    grow(&mut prefix, 0, n, &mut out);
    out
}

/// Optimum by exhaustive search over vertex partitions, with an independent
/// Floyd–Warshall distance table and block membership read off barycentric
/// weights.
pub fn torus_optimum(side: usize, r: f64) -> f64 {
    let t = torus(side, 1.0).unwrap();
    let m = MetricSpace::new(&t).unwrap();
    let base = PlComplex::from_base(&t);
    let search = LevelSearch::new(&m, &base, r).unwrap();
    let nodes = m.node_count();
    let mut d = vec![vec![f64::INFINITY; nodes]; nodes];
    for a in 0..nodes {
        d[a][a] = 0.0;
        for &(b, w) in m.graph().neighbors(a) {
            d[a][b] = d[a][b].min(w);
        }
    }
    for k in 0..nodes {
        for i in 0..nodes {
            let dik = d[i][k];
            for j in 0..nodes {
                if dik + d[k][j] < d[i][j] {
                    d[i][j] = dik + d[k][j];
                }
            }
        }
    }
    // A node lies in the dual block of every vertex carrying its largest
    // barycentric weight.
    let nv = base.points().len();
    let mut samples: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for node in 0..nodes {
        let p = m.node_point(node);
        let top = p.weights().iter().max().unwrap();
        for (v, w) in p.support().iter().zip(p.weights()) {
            if w == top {
                samples[vertex_id(&base, *v)].push(node);
            }
        }
    }
    let mut memo: HashMap<u32, bool> = HashMap::new();
    let mut fits = |part: u32| {
        *memo.entry(part).or_insert_with(|| {
            let pts: Vec<usize> = (0..nv).filter(|v| part & (1 << v) != 0).flat_map(|v| samples[v].clone()).collect();
            (0..nodes).any(|c| pts.iter().all(|&p| d[c][p] <= r + 1e-9))
        })
    };
    let mut best = f64::INFINITY;
    for labels in set_partitions(nv) {
        let parts = labels.iter().max().unwrap() + 1;
        let cut = search.normalize(&search.boundary_of(&labels));
        let area = search.area(&cut);
        if area >= best {
            continue;
        }
        let comps = search.components(&cut);
        assert!(comps.len() >= parts);
        if comps.iter().all(|c| fits(c.iter().map(|&v| 1u32 << v).sum())) {
            best = area;
        }
    }
    best
}
