mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepfilt::complex::{circle, torus, MetricSpace, PlComplex, Point, WeightedComplex};
use sepfilt::filtration::{
    build_filtration, minimize_separating, Certificate, CutSet, Filtration, FiltrationDocument, LevelSearch,
    SearchParams, SeparationConfig,
};
use sepfilt::Error;

use common::{circle_optimum, torus_optimum, vertex_id};

fn params(epsilon: f64) -> SearchParams {
    SearchParams {
        epsilon,
        move_budget: 20_000,
        restarts: 4,
        seed: 11,
    }
}

/// Cut edges between torus columns `x` and `x + 1`.
fn column_cut(search: &LevelSearch<'_>, side: usize, x: usize) -> Vec<(usize, usize)> {
    let id = |i: usize, j: usize| vertex_id(search.parent(), (i % side) * side + (j % side));
    (0..side)
        .flat_map(|j| [(id(x, j), id(x + 1, j)), (id(x, j), id(x + 1, j + 1))])
        .collect()
}

#[test]
fn full_skeleton_separates_and_empty_does_not() {
    let t = torus(4, 1.0).unwrap();
    let m = MetricSpace::new(&t).unwrap();
    let base = PlComplex::from_base(&t);
    let s = LevelSearch::new(&m, &base, 1.1).unwrap();
    let all = s.is_r_separating(&CutSet::all(s.edges().len()));
    assert!(all.separating);
    assert_eq!(all.components.len(), 16);
    let none = s.is_r_separating(&CutSet::none(s.edges().len()));
    assert!(!none.separating);
    assert_eq!(none.components.len(), 1);
}

#[test]
fn essential_circle_pair_leaves_annuli_too_long() {
    let t = torus(4, 1.0).unwrap();
    let m = MetricSpace::new(&t).unwrap();
    let base = PlComplex::from_base(&t);
    let s = LevelSearch::new(&m, &base, 1.1).unwrap();
    let mut pairs = column_cut(&s, 4, 0);
    pairs.extend(column_cut(&s, 4, 2));
    let cut = s.cut_from_pairs(&pairs).unwrap();
    let report = s.is_r_separating(&cut);
    assert_eq!(report.components.len(), 2);
    assert!(!report.separating);
    for c in &report.components {
        assert_eq!(c.vertices.len(), 8);
        match c.certificate {
            Certificate::FarPair { distance, .. } => assert!(distance > 2.2),
            Certificate::NoCenter { best_eccentricity } => assert!(best_eccentricity > 1.1),
            Certificate::Center { .. } => panic!("annulus of length 4 fits in a ball of radius 1.1"),
        }
    }
}

#[test]
fn zero_dimensional_parent_is_rejected() {
    let c = circle(4, 4.0).unwrap();
    let m = MetricSpace::new(&c).unwrap();
    let dual = PlComplex::from_base(&c).dual_of_cut(&[(0, 1)]).unwrap();
    assert!(matches!(LevelSearch::new(&m, &dual, 1.0), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn sphere_replacement_on_circle() {
    let c = circle(8, 4.0).unwrap();
    let m = MetricSpace::new(&c).unwrap();
    let base = PlComplex::from_base(&c);
    let s = LevelSearch::new(&m, &base, 1.5).unwrap();
    let q = (vertex_id(&base, 0), vertex_id(&base, 1));
    let cut = s.cut_from_pairs(&[q]).unwrap();
    let p = m.node_of(&Point::barycenter([&Point::vertex(4), &Point::vertex(5)])).unwrap();

    let moved = s.sphere_replacement_move(&cut, p, 1.0);
    assert!(moved.contains(s.edge_id(q.0, q.1).unwrap()));
    assert_eq!(moved.len(), 3);
    let row = m.distances_from(p);
    let z = base.dual_of_cut(&s.pairs(&moved)).unwrap();
    let mut far: Vec<f64> = z.points().iter().map(|x| row[m.node_of(x).unwrap()]).collect();
    far.sort_by(f64::total_cmp);
    assert!((far[0] - 1.0).abs() < 1e-12 && (far[1] - 1.0).abs() < 1e-12);
    assert!((far[2] - 2.0).abs() < 1e-12);

    assert_eq!(s.sphere_replacement_move(&cut, p, 1e-9), cut);
}

#[test]
fn sphere_replacement_away_from_cut_only_adds() {
    let t = torus(4, 1.0).unwrap();
    let m = MetricSpace::new(&t).unwrap();
    let base = PlComplex::from_base(&t);
    let s = LevelSearch::new(&m, &base, 1.1).unwrap();
    let cut = s.cut_from_pairs(&column_cut(&s, 4, 0)).unwrap();
    let p = s.vertex_node(vertex_id(&base, 2 * 4 + 1));
    let moved = s.sphere_replacement_move(&cut, p, 0.8);
    for e in cut.ids() {
        assert!(moved.contains(e));
    }
    assert!(moved.len() > cut.len());
    // The center's own block is inside, so all its edges are now cut.
    for &(_, e) in s.neighbors(vertex_id(&base, 9)) {
        assert!(moved.contains(e));
    }
}

#[test]
fn sphere_replacement_preserves_separation() {
    let t = torus(4, 1.0).unwrap();
    let m = MetricSpace::new(&t).unwrap();
    let base = PlComplex::from_base(&t);
    for radius in [1.1, 1.6] {
        let s = LevelSearch::new(&m, &base, radius).unwrap();
        let start = minimize_separating(&s, &params(1e-6)).unwrap().cut;
        assert!(s.is_r_separating(&start).separating);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p = rng.gen_range(0..m.node_count());
            let rho = rng.gen_range(0.0..radius);
            let moved = s.sphere_replacement_move(&start, p, rho);
            assert!(s.is_r_separating(&moved).separating, "p = {p}, rho = {rho}");
        }
    }
}

#[test]
fn parent_inside_one_ball_needs_no_cut() {
    let t = torus(4, 0.1).unwrap();
    let m = MetricSpace::new(&t).unwrap();
    let base = PlComplex::from_base(&t);
    let s = LevelSearch::new(&m, &base, 1.0).unwrap();
    let out = minimize_separating(&s, &params(1e-6)).unwrap();
    assert!(out.cut.is_empty());
    assert_eq!(out.area, 0.0);
    assert_eq!(out.slack, 0.0);
}

#[test]
fn circle_minimum_matches_brute_force() {
    for n in 3..=12 {
        for (len, r) in [(4.0, 1.0), (n as f64, 1.3), (6.0, 0.9), (3.0, 2.0), (10.0, 1.0)] {
            let c = circle(n, len).unwrap();
            let m = MetricSpace::new(&c).unwrap();
            let base = PlComplex::from_base(&c);
            let s = LevelSearch::new(&m, &base, r).unwrap();
            match (minimize_separating(&s, &params(1e-6)), circle_optimum(n, len, r)) {
                (Ok(out), Some(opt)) => {
                    assert_eq!(out.area, opt as f64, "n = {n}, len = {len}, r = {r}");
                    assert!(s.is_r_separating(&out.cut).separating);
                }
                (Err(Error::Infeasible), None) => {}
                (got, want) => panic!("n = {n}, len = {len}, r = {r}: {got:?} vs {want:?}"),
            }
        }
    }
}

#[test]
fn circle_of_length_four_splits_in_two() {
    let c = circle(8, 4.0).unwrap();
    let cfg = SeparationConfig::new(1, 1.0, 1e-6, 3).unwrap();
    let f = build_filtration(&c, &cfg).unwrap();
    assert_eq!(f.zero_level().len(), 2);
    assert_eq!(circle_optimum(8, 4.0, 1.0), Some(2));
    assert_eq!(f.records()[0].area, 2.0);
}

#[test]
fn torus_minimum_matches_exhaustive_partitions() {
    for r in [1.1, 1.4, 1.8] {
        let opt = torus_optimum(3, r);
        let t = torus(3, 1.0).unwrap();
        let m = MetricSpace::new(&t).unwrap();
        let base = PlComplex::from_base(&t);
        let s = LevelSearch::new(&m, &base, r).unwrap();
        let eps = 1e-6 * opt.max(1.0);
        let out = minimize_separating(&s, &params(eps)).unwrap();
        assert!(out.area <= opt + eps, "r = {r}: {} vs optimum {opt}", out.area);
        assert!(out.area >= opt - 1e-9);
    }
}

#[test]
fn small_complex_has_empty_filtration() {
    let t = torus(3, 0.1).unwrap();
    let cfg = SeparationConfig::new(2, 1.0, 1e-3, 1).unwrap();
    let f = build_filtration(&t, &cfg).unwrap();
    assert!(f.level(1).is_empty());
    assert!(f.level(0).is_empty());
    assert_eq!(f.level_areas(), vec![0.0, 0.0]);
}

#[test]
fn torus_filtration_verifies() {
    let t = torus(4, 1.0).unwrap();
    let cfg = SeparationConfig::new(2, 1.1, 1e-3, 9).unwrap();
    let f = build_filtration(&t, &cfg).unwrap();
    assert_eq!(f.level(1).dim(), 1);
    assert!(!f.level(1).is_empty());
    assert!(!f.zero_level().is_empty());
    f.verify().unwrap();
    for rec in f.records() {
        assert!(rec.certificates.separating);
        for c in &rec.certificates.components {
            if let Certificate::Center { eccentricity, .. } = c.certificate {
                assert!(eccentricity <= 1.1 + 1e-9);
            }
        }
    }
    // Every Z_0 point sits on Z_1.
    let z1: Vec<&Point> = f.level(1).points().iter().collect();
    for p in f.zero_level() {
        let on_edge = f.level(1).simplices().iter().any(|s| {
            let mid = Point::barycenter(s.vertices.iter().map(|&v| z1[v]));
            &mid == p
        });
        assert!(on_edge);
    }
}

#[test]
fn epsilon_schedule_sums_back() {
    let cfg = SeparationConfig::new(3, 1.5, 0.2, 0).unwrap();
    assert_eq!(cfg.epsilon_schedule.len(), 3);
    assert!((cfg.epsilon_schedule[2] - 0.2 / (6.0 * 1.5)).abs() < 1e-15);
    assert!((cfg.total_epsilon() - 0.2).abs() < 1e-12);
    assert!(SeparationConfig::new(2, -1.0, 0.1, 0).is_err());
    assert!(SeparationConfig::new(2, 1.0, 0.0, 0).is_err());
}

fn build(c: &WeightedComplex, seed: u64) -> Filtration {
    build_filtration(c, &SeparationConfig::new(c.dimension(), 1.1, 1e-3, seed).unwrap()).unwrap()
}

#[test]
fn identical_seeds_give_identical_documents() {
    let t = torus(4, 1.0).unwrap();
    let a = build(&t, 21).to_document().to_json();
    let b = build(&t, 21).to_document().to_json();
    assert_eq!(a, b);
}

#[test]
fn document_round_trip_and_tampering() {
    let t = torus(4, 1.0).unwrap();
    let f = build(&t, 4);
    let doc = f.to_document();
    let back = Filtration::from_document(&FiltrationDocument::from_json(&doc.to_json()).unwrap()).unwrap();
    assert_eq!(back.to_document(), doc);
    assert_eq!(back.zero_level(), f.zero_level());

    let mut tampered = doc.clone();
    let top = &mut tampered.levels[0];
    top.cut_edges.remove(0);
    top.area = 0.0;
    let mut err = Filtration::from_document(&tampered).unwrap_err();
    if let Error::Malformed(_) = err {
        // Fix the recorded area so only separation can fail.
        let parent = PlComplex::from_base(&t);
        let m = MetricSpace::new(&t).unwrap();
        let s = LevelSearch::new(&m, &parent, 1.1).unwrap();
        tampered.levels[0].area = s.area(&s.cut_from_pairs(&tampered.levels[0].cut_edges).unwrap());
        err = Filtration::from_document(&tampered).unwrap_err();
    }
    assert!(matches!(err, Error::SeparationViolation { level: 1, .. }), "{err}");
}
