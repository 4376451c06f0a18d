//! Ball-volume inequalities checked on a built filtration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{BallVolume, MetricSpace, PlComplex};
use crate::error::{Error, Result};
use crate::filtration::Filtration;

/// Points of the trapezoid rule in the coarea check.
pub const COAREA_POINTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma5Sample {
    pub p: usize,
    pub r1: f64,
    pub r2: f64,
    /// `#(Z_0 ∩ B(p, r1)) · (r2 − r1)^n / n!`.
    pub lhs: f64,
    /// `Vol B(p, r2) + ε`.
    pub rhs: f64,
    pub residual: f64,
    /// Boundary credit of the ball volume; violations count only beyond it.
    pub tolerance: f64,
    pub violation: bool,
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn check_radii(r1: f64, r2: f64, radius: f64) -> Result<()> {
    if !(r1 < r2) {
        return Err(Error::RadiusOrder { r1, r2 });
    }
    if !(r1 > 0.0 && r2 <= radius) {
        return Err(Error::BadParams(format!("radii must satisfy 0 < r1 < r2 <= R = {radius}")));
    }
    Ok(())
}

/// Every level subdivided down to the metric depth, so that area within a
/// ball is credited on cells as fine as the metric graph.
pub struct LevelMeasures {
    levels: Vec<(PlComplex, Vec<f64>)>,
}

impl LevelMeasures {
    pub fn new(f: &Filtration) -> Result<Self> {
        let metric = f.metric();
        let n = f.dimension();
        let levels = (0..=n)
            .map(|i| {
                if i == n {
                    return Ok((metric.fine().clone(), metric.cell_volumes().to_vec()));
                }
                let fine = f.level(i).subdivided(metric.depth() - (n - i));
                let volumes = fine.volumes(metric.geometry())?;
                Ok((fine, volumes))
            })
            .collect::<Result<_>>()?;
        Ok(LevelMeasures { levels })
    }

    /// Node-fraction credited `Area_i(Z_i ∩ B)` for the ball with distances
    /// `dist` and radius `r`.
    pub fn area_within(&self, metric: &MetricSpace, level: usize, dist: &[f64], r: f64) -> Result<BallVolume> {
        let (complex, volumes) = &self.levels[level];
        metric.area_within(complex, volumes, dist, r)
    }
}

/// Graph distance from `p` to every point of `Z_0`.
fn zero_distances(f: &Filtration, dist: &[f64]) -> Result<Vec<f64>> {
    f.zero_level().iter().map(|q| Ok(dist[f.metric().node_of(q)?])).collect()
}

/// `Area_0(Z_0 ∩ B(p, r1)) · (r2 − r1)^n / n! ≤ Vol B(p, r2) + ε`.
pub fn lemma5_verify(f: &Filtration, p: usize, r1: f64, r2: f64, epsilon: f64) -> Result<Lemma5Sample> {
    check_radii(r1, r2, f.config().radius)?;
    let dist = f.metric().distances_from(p);
    lemma5_with(f, &dist, p, r1, r2, epsilon)
}

fn lemma5_with(f: &Filtration, dist: &[f64], p: usize, r1: f64, r2: f64, epsilon: f64) -> Result<Lemma5Sample> {
    let n = f.dimension();
    let count = zero_distances(f, dist)?.iter().filter(|&&d| d <= r1).count();
    let lhs = count as f64 * (r2 - r1).powi(n as i32) / factorial(n);
    let ball = f.metric().ball_volume_from(dist, r2);
    let rhs = ball.value + epsilon;
    let residual = rhs - lhs;
    Ok(Lemma5Sample {
        p,
        r1,
        r2,
        lhs,
        rhs,
        residual,
        tolerance: ball.boundary_credit,
        violation: residual < -ball.boundary_credit,
    })
}

/// Random `(p, r1, r2)` with `p` a metric node and `0 < r1 < r2 < R`.
pub fn sample_triples(metric: &MetricSpace, radius: f64, samples: usize, seed: u64) -> Vec<(usize, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let p = rng.gen_range(0..metric.node_count());
            loop {
                let a = rng.gen_range(0.0..radius);
                let b = rng.gen_range(0.0..radius);
                if a > 0.0 && a != b {
                    break (p, a.min(b), a.max(b));
                }
            }
        })
        .collect()
}

/// [`lemma5_verify`] over `samples` random triples, in sample order.
pub fn lemma5_sweep(f: &Filtration, samples: usize, seed: u64) -> Result<Vec<Lemma5Sample>> {
    let epsilon = f.config().total_epsilon();
    sample_triples(f.metric(), f.config().radius, samples, seed)
        .into_par_iter()
        .map(|(p, r1, r2)| lemma5_verify(f, p, r1, r2, epsilon))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub level: usize,
    /// `#(Z_0 ∩ B(p, r1)) · (r2 − r1)^i / i!`.
    pub lhs: f64,
    /// `Area_i(Z_i ∩ B(p, r2))`.
    pub area: f64,
    /// `Σ_{j<i} 2 ε_j R^{i−j}`.
    pub epsilon: f64,
    /// `∫_{r1}^{r2} Area_{i−1}(Z_{i−1} ∩ B(p, ρ)) dρ`, the quantity the
    /// induction step bounds; absent at the base level.
    pub integral: Option<f64>,
    pub tolerance: f64,
    pub holds: bool,
}

/// Level-by-level trace of the induction behind the ball-volume bound.
pub fn lemma5_trace(f: &Filtration, p: usize, r1: f64, r2: f64) -> Result<Vec<TraceStep>> {
    lemma5_trace_with(f, &LevelMeasures::new(f)?, p, r1, r2)
}

pub fn lemma5_trace_with(f: &Filtration, measures: &LevelMeasures, p: usize, r1: f64, r2: f64) -> Result<Vec<TraceStep>> {
    check_radii(r1, r2, f.config().radius)?;
    let metric = f.metric();
    let dist = metric.distances_from(p);
    let count = zero_distances(f, &dist)?.iter().filter(|&&d| d <= r1).count() as f64;
    let radius = f.config().radius;
    let eps = &f.config().epsilon_schedule;
    let mut steps = Vec::new();
    for i in 0..=f.dimension() {
        let b = measures.area_within(metric, i, &dist, r2)?;
        let lhs = count * (r2 - r1).powi(i as i32) / factorial(i);
        let epsilon: f64 = (0..i).map(|j| 2.0 * eps[j] * radius.powi((i - j) as i32)).sum();
        let integral = if i == 0 {
            None
        } else {
            let mut err = None;
            let value = trapezoid(r1, r2, |rho| match measures.area_within(metric, i - 1, &dist, rho) {
                Ok(b) => b.value,
                Err(e) => {
                    err.get_or_insert(e);
                    f64::NAN
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            Some(value)
        };
        steps.push(TraceStep {
            level: i,
            lhs,
            area: b.value,
            epsilon,
            integral,
            tolerance: b.boundary_credit,
            holds: lhs <= b.value + epsilon + b.boundary_credit,
        });
    }
    Ok(steps)
}

fn trapezoid(a: f64, b: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
    let h = (b - a) / (COAREA_POINTS - 1) as f64;
    let vals: Vec<f64> = (0..COAREA_POINTS).map(|k| g(a + h * k as f64)).collect();
    h * (vals.iter().sum::<f64>() - (vals[0] + vals[COAREA_POINTS - 1]) / 2.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoareaSample {
    pub p: usize,
    pub r1: f64,
    pub r2: f64,
    /// Trapezoid value of `∫_{r1}^{r2} Area_{d−1}(Z ∩ B(p, ρ)) dρ`.
    pub integral: f64,
    /// `Area_d(P ∩ B(p, r2) \ B(p, r1))`.
    pub annulus: f64,
    /// `2 ε_i R`.
    pub epsilon: f64,
    /// Quadrature bound plus boundary credits of both sides.
    pub tolerance: f64,
    pub residual: f64,
    pub violation: bool,
}

/// The integrated replacement inequality for `Z_{level}` inside
/// `Z_{level+1}`.
pub fn coarea_check(f: &Filtration, level: usize, p: usize, r1: f64, r2: f64) -> Result<CoareaSample> {
    coarea_check_with(f, &LevelMeasures::new(f)?, level, p, r1, r2)
}

pub fn coarea_check_with(
    f: &Filtration,
    measures: &LevelMeasures,
    level: usize,
    p: usize,
    r1: f64,
    r2: f64,
) -> Result<CoareaSample> {
    check_radii(r1, r2, f.config().radius)?;
    if level >= f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension() - 1,
            got: level,
        });
    }
    let metric = f.metric();
    let dist = metric.distances_from(p);
    let h = (r2 - r1) / (COAREA_POINTS - 1) as f64;
    let mut values = Vec::with_capacity(COAREA_POINTS);
    let mut credit: f64 = 0.0;
    for k in 0..COAREA_POINTS {
        let b = measures.area_within(metric, level, &dist, r1 + h * k as f64)?;
        values.push(b.value);
        credit = credit.max(b.boundary_credit);
    }
    let integral = h * (values.iter().sum::<f64>() - (values[0] + values[COAREA_POINTS - 1]) / 2.0);
    let quadrature = h * (values[COAREA_POINTS - 1] - values[0]).abs() / 2.0;
    let outer = measures.area_within(metric, level + 1, &dist, r2)?;
    let inner = measures.area_within(metric, level + 1, &dist, r1)?;
    let annulus = outer.value - inner.value;
    let epsilon = 2.0 * f.config().epsilon_schedule[level] * f.config().radius;
    let tolerance = quadrature + credit * (r2 - r1) + outer.boundary_credit + inner.boundary_credit;
    let residual = annulus + epsilon - integral;
    Ok(CoareaSample {
        p,
        r1,
        r2,
        integral,
        annulus,
        epsilon,
        tolerance,
        residual,
        violation: residual < -tolerance,
    })
}

/// [`coarea_check`] over random triples, in sample order.
pub fn coarea_sweep(f: &Filtration, level: usize, samples: usize, seed: u64) -> Result<Vec<CoareaSample>> {
    let measures = LevelMeasures::new(f)?;
    sample_triples(f.metric(), f.config().radius, samples, seed)
        .into_par_iter()
        .map(|(p, r1, r2)| coarea_check_with(f, &measures, level, p, r1, r2))
        .collect()
}
