use num_rational::Ratio;
use sepfilt::bounds::*;
use sepfilt::complex::{circle, torus, MetricSpace, PlComplex, Point};
use sepfilt::filtration::{build_filtration, Filtration, SeparationConfig};
use sepfilt::rainbow::{color_by_filtration, count_rainbow, refine_with_filtration};
use sepfilt::Error;

fn torus_filtration() -> Filtration {
    let c = torus(4, 1.0).unwrap();
    build_filtration(&c, &SeparationConfig::new(2, 1.0, 1e-3, 7).unwrap()).unwrap()
}

/// Circle of length 2 whose only `Z_0` point is the midpoint of edge 0-1.
fn single_point_circle() -> (Filtration, usize) {
    let c = circle(6, 2.0).unwrap();
    let m = MetricSpace::new(&c).unwrap();
    let base = PlComplex::from_base(&c);
    let (a, b) = (base.point_id(&Point::vertex(0)).unwrap(), base.point_id(&Point::vertex(1)).unwrap());
    let cfg = SeparationConfig::new(1, 1.0, 1e-6, 0).unwrap();
    let f = Filtration::from_cuts(m, &cfg, &[vec![(a, b)]]).unwrap();
    let mid = Point::barycenter([&Point::vertex(0), &Point::vertex(1)]);
    let p = f.metric().node_of(&mid).unwrap();
    (f, p)
}

#[test]
fn lemma5_with_no_zero_points_nearby() {
    let (f, p) = single_point_circle();
    let d = f.metric().distances_from(p);
    let far = (0..d.len()).max_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap();
    let s = lemma5_verify(&f, far, 0.1, 0.5, 0.0).unwrap();
    assert_eq!(s.lhs, 0.0);
    assert!(!s.violation);
    assert!(s.residual >= 0.0);
}

#[test]
fn lemma5_one_point_on_circle() {
    let (f, p) = single_point_circle();
    assert_eq!(f.zero_level().len(), 1);
    let eps = 1e-6;
    let s = lemma5_verify(&f, p, 0.1, 0.9, eps).unwrap();
    assert!((s.lhs - 0.8).abs() < 1e-12);
    let ball = f.metric().ball_volume(p, 0.9);
    assert_eq!(s.rhs, ball.value + eps);
    // the arc of radius 0.9 around p has length 1.8
    assert!((ball.value - 1.8).abs() <= ball.boundary_credit + 1e-12);
    assert!(!s.violation);
}

#[test]
fn lemma5_rejects_bad_radii() {
    let (f, p) = single_point_circle();
    assert!(matches!(lemma5_verify(&f, p, 0.5, 0.5, 0.0), Err(Error::RadiusOrder { .. })));
    assert!(matches!(lemma5_verify(&f, p, 0.6, 0.2, 0.0), Err(Error::RadiusOrder { .. })));
    assert!(lemma5_verify(&f, p, 0.0, 0.5, 0.0).is_err());
    assert!(lemma5_verify(&f, p, 0.2, 1.5, 0.0).is_err());
}

#[test]
fn lemma5_sweep_on_torus() {
    let f = torus_filtration();
    let samples = lemma5_sweep(&f, 500, 1).unwrap();
    assert_eq!(samples.len(), 500);
    let bad: Vec<_> = samples.iter().filter(|s| s.violation).collect();
    assert!(bad.is_empty(), "{bad:?}");
    for s in &samples {
        assert!(s.r1 > 0.0 && s.r1 < s.r2 && s.r2 < 1.0);
        assert_eq!(s.violation, s.residual < -s.tolerance);
    }
}

#[test]
fn sweeps_are_reproducible() {
    let f = torus_filtration();
    let a = lemma5_sweep(&f, 40, 9).unwrap();
    let b = lemma5_sweep(&f, 40, 9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn induction_trace_holds_level_by_level() {
    let f = torus_filtration();
    let measures = LevelMeasures::new(&f).unwrap();
    for (p, r1, r2) in sample_triples(f.metric(), 1.0, 30, 5) {
        let steps = lemma5_trace_with(&f, &measures, p, r1, r2).unwrap();
        assert_eq!(steps.len(), 3);
        assert!(steps[0].integral.is_none());
        assert!(steps.iter().skip(1).all(|s| s.integral.is_some()));
        // level 0 is a point count, credited exactly
        assert_eq!(steps[0].tolerance, 0.0);
        for s in &steps {
            assert!(s.holds, "{p} {r1} {r2} {s:?}");
        }
    }
}

#[test]
fn coarea_on_both_levels() {
    let f = torus_filtration();
    for level in [0, 1] {
        let samples = coarea_sweep(&f, level, 200, 2).unwrap();
        let bad: Vec<_> = samples.iter().filter(|s| s.violation).collect();
        assert!(bad.is_empty(), "level {level}: {bad:?}");
        for s in &samples {
            assert!(s.annulus >= -1e-12);
            assert_eq!(s.epsilon, 2.0 * f.config().epsilon_schedule[level] * 1.0);
        }
    }
    assert!(coarea_check(&f, 2, 0, 0.1, 0.2).is_err());
}

fn circle_metric() -> MetricSpace {
    MetricSpace::with_depth(&circle(24, 12.0).unwrap(), 0).unwrap()
}

#[test]
fn packing_single_and_pair() {
    let m = circle_metric();
    let one = greedy_packing(&m, &[5], 0.25, 0.5).unwrap();
    assert_eq!(one.centers, vec![0]);
    assert_eq!(one.cover, vec![(0, 0.0)]);
    // nodes are half a unit apart, so nodes 0 and 6 are at distance 3
    assert!((m.distances_from(0)[6] - 3.0).abs() < 1e-12);
    let two = greedy_packing(&m, &[0, 6], 0.25, 0.5).unwrap();
    assert_eq!(two.len(), 2);
}

#[test]
fn packing_rejects_bad_radii() {
    let m = circle_metric();
    assert!(matches!(greedy_packing(&m, &[0], 0.5, 0.25), Err(Error::BadParams(_))));
    assert!(greedy_packing(&m, &[], 0.25, 0.5).unwrap().is_empty());
}

/// Independent greedy with a full pairwise distance table.
fn brute_greedy(m: &MetricSpace, nodes: &[usize], r: f64) -> Vec<usize> {
    let table: Vec<Vec<f64>> = nodes.iter().map(|&a| {
        let d = m.distances_from(a);
        nodes.iter().map(|&b| d[b]).collect()
    }).collect();
    let mut chosen = Vec::new();
    for i in 0..nodes.len() {
        if chosen.iter().all(|&c: &usize| table[c][i] > 2.0 * r) {
            chosen.push(i);
        }
    }
    chosen
}

#[test]
fn torus_packing_matches_pairwise_scan() {
    let f = torus_filtration();
    let m = f.metric();
    let nodes: Vec<usize> = f.zero_level().iter().map(|q| m.node_of(q).unwrap()).collect();
    assert!(!nodes.is_empty());
    let packing = zero_packing(&f).unwrap();
    assert_eq!(packing.centers, brute_greedy(m, &nodes, PACKING_SMALL));
    for (x, &a) in packing.centers.iter().enumerate() {
        let d = m.distances_from(nodes[a]);
        for &b in &packing.centers[x + 1..] {
            assert!(d[nodes[b]] > 2.0 * PACKING_SMALL);
        }
    }
    for &q in &nodes {
        let near = packing.centers.iter().any(|&c| m.distances_from(nodes[c])[q] <= 2.0 * PACKING_SMALL);
        assert!(near, "packing is not maximal at node {q}");
    }
    assert!(packing.cover.iter().all(|&(_, d)| d <= PACKING_BIG));
}

fn plain_context(zero_points: usize) -> ReportContext {
    ReportContext {
        zero_points,
        epsilon: 0.0,
        level_slack: Vec::new(),
        slack_assumed: false,
        v1_boundary_credit: 0.0,
        packing: None,
        systole: None,
    }
}

#[test]
fn report_constants() {
    let r = bound_report(2, 0.6, 16.0, &plain_context(0));
    assert!((r.constant_bound - 9830.4).abs() < 1e-9);
    assert_eq!(r.constant_bound_exact.as_deref(), Some("49152/5"));
    assert_eq!(constant_bound_exact(2, Ratio::new(3, 5), Ratio::from_integer(16)), Ratio::new(49152, 5));
    let r = bound_report(1, 1.0, 4.0, &plain_context(3));
    assert_eq!(r.constant_bound, 64.0);
    assert_eq!(r.constant_bound_exact.as_deref(), Some("64"));
    assert_eq!(r.rainbow_bound, 6.0);
    assert!(r.systole_warning.is_some());
}

#[test]
fn report_vanishing_flag() {
    let r = bound_report(2, 0.4, 16.0, &plain_context(0));
    assert!(r.vanishing);
    assert!(r.vanishing_consistent);
    assert!(!bound_report(2, 0.5, 16.0, &plain_context(0)).vanishing);
    assert!(!bound_report(2, 0.4, 16.0, &plain_context(1)).vanishing_consistent);
}

#[test]
fn measured_floats_get_no_exact_constant() {
    assert_eq!(as_rational(0.6), Some(Ratio::new(3, 5)));
    assert_eq!(as_rational(std::f64::consts::PI), None);
    let r = bound_report(2, std::f64::consts::PI, 16.0, &plain_context(0));
    assert!(r.constant_bound_exact.is_none());
}

#[test]
fn torus_report_chain() {
    let f = torus_filtration();
    let t = refine_with_filtration(&f).unwrap();
    let coloring = color_by_filtration(&t, &f).unwrap();
    let census = count_rainbow(&t, &coloring, &f).unwrap();
    let report = filtration_report(&f, &census, Some(4.0)).unwrap();
    assert!(report.systole_warning.is_none());
    assert_eq!(report.rainbow_bound, 4.0 * f.zero_level().len() as f64);
    assert!((report.vol_m - 16.0).abs() < 1e-9);
    let chain = report.packing.unwrap();
    assert!(chain.holds, "{chain:?}");
    assert!(report.vanishing_consistent);
    assert!(!report.vanishing);
}

#[test]
fn small_torus_vanishes() {
    let c = torus(4, 0.15).unwrap();
    let f = build_filtration(&c, &SeparationConfig::new(2, 1.0, 1e-3, 7).unwrap()).unwrap();
    let unit = unit_ball_volume(f.metric());
    assert!(unit.v1 + unit.boundary_credit < 0.5);
    assert!(f.zero_level().is_empty());
    let t = refine_with_filtration(&f).unwrap();
    let coloring = color_by_filtration(&t, &f).unwrap();
    let census = count_rainbow(&t, &coloring, &f).unwrap();
    let report = filtration_report(&f, &census, None).unwrap();
    assert!(report.vanishing);
    assert_eq!(report.rainbow_bound, 0.0);
}
