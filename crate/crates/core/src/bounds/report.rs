//! Ball packings of `Z_0` and the assembled simplicial-volume bound.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::inequality::factorial;
use crate::complex::MetricSpace;
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::rainbow::CensusReport;

pub const PACKING_SMALL: f64 = 0.25;
pub const PACKING_BIG: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Packing {
    pub r_small: f64,
    pub r_big: f64,
    /// Indices into `Z_0` of the chosen centers, in choice order.
    pub centers: Vec<usize>,
    /// For every point of `Z_0`, a covering center and its distance.
    pub cover: Vec<(usize, f64)>,
}

impl Packing {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

/// Greedy maximal packing of `Z_0` by disjoint balls of radius `r_small`,
/// scanning points in index order, with the check that the concentric balls
/// of radius `r_big` cover `Z_0`.
pub fn greedy_packing(metric: &MetricSpace, zero_nodes: &[usize], r_small: f64, r_big: f64) -> Result<Packing> {
    if !(r_small > 0.0 && r_small < r_big) {
        return Err(Error::BadParams(format!("need 0 < r_small < r_big, got {r_small}, {r_big}")));
    }
    let rows: Vec<Vec<f64>> = zero_nodes.par_iter().map(|&q| metric.distances_from(q)).collect();
    let mut centers: Vec<usize> = Vec::new();
    for (i, _) in zero_nodes.iter().enumerate() {
        if centers.iter().all(|&c| rows[c][zero_nodes[i]] > 2.0 * r_small) {
            centers.push(i);
        }
    }
    let mut cover = Vec::with_capacity(zero_nodes.len());
    for (i, &q) in zero_nodes.iter().enumerate() {
        let (c, d) = centers
            .iter()
            .map(|&c| (c, rows[c][q]))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
            .ok_or(Error::CoverFailure(i))?;
        if d > r_big {
            return Err(Error::CoverFailure(i));
        }
        cover.push((c, d));
    }
    Ok(Packing {
        r_small,
        r_big,
        centers,
        cover,
    })
}

/// Packing of a filtration's `Z_0` with radii `1/4` and `1/2`.
pub fn zero_packing(f: &Filtration) -> Result<Packing> {
    let nodes: Vec<usize> = f.zero_level().iter().map(|q| f.metric().node_of(q)).collect::<Result<_>>()?;
    greedy_packing(f.metric(), &nodes, PACKING_SMALL, PACKING_BIG)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitBallVolume {
    pub v1: f64,
    /// Node attaining the maximum.
    pub node: usize,
    /// Largest boundary credit among unit balls.
    pub boundary_credit: f64,
}

/// `max_p Vol B(p, 1)` over all metric nodes.
pub fn unit_ball_volume(metric: &MetricSpace) -> UnitBallVolume {
    let vols: Vec<(f64, f64)> = (0..metric.node_count())
        .into_par_iter()
        .map(|p| {
            let b = metric.ball_volume(p, 1.0);
            (b.value, b.boundary_credit)
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, 0);
    for (p, &(v, _)) in vols.iter().enumerate() {
        if v > best.0 {
            best = (v, p);
        }
    }
    UnitBallVolume {
        v1: best.0,
        node: best.1,
        boundary_credit: vols.iter().map(|v| v.1).fold(0.0, f64::max),
    }
}

/// `16^n (n!)^2 · V_1 · Vol M`.
pub fn constant_bound(n: usize, v1: f64, vol_m: f64) -> f64 {
    16f64.powi(n as i32) * factorial(n).powi(2) * v1 * vol_m
}

/// [`constant_bound`] in exact rational arithmetic.
pub fn constant_bound_exact(n: usize, v1: Ratio<i128>, vol_m: Ratio<i128>) -> Ratio<i128> {
    let fact: i128 = (1..=n as i128).product();
    Ratio::from_integer(16i128.pow(n as u32) * fact * fact) * v1 * vol_m
}

/// Largest denominator [`as_rational`] accepts.
pub const MAX_DENOMINATOR: i128 = 1_000_000;

/// The exact rational a float stands for, when one with a small denominator
/// rounds to it.
pub fn as_rational(x: f64) -> Option<Ratio<i128>> {
    let r = Ratio::<i64>::approximate_float(x)?;
    let exact = Ratio::new(*r.numer() as i128, *r.denom() as i128);
    (*exact.denom() <= MAX_DENOMINATOR && exact.to_f64()? == x).then_some(exact)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub epsilon: f64,
    pub level_slack: Vec<f64>,
    pub slack_assumed: bool,
    /// Largest boundary credit of a unit ball.
    pub v1_boundary_credit: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingChain {
    pub k: usize,
    /// `4^n · n! · (V_1 + ε) · k`.
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub v1: f64,
    pub vol_m: f64,
    pub zero_points: usize,
    pub rainbow_bound: f64,
    pub constant_bound: f64,
    /// `constant_bound` as an exact fraction when the inputs are rational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_bound_exact: Option<String>,
    pub vanishing: bool,
    /// False when `V_1` plus tolerance is below `1/n!` yet `Z_0` is not empty.
    pub vanishing_consistent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packing: Option<PackingChain>,
    pub tolerances: Tolerances,
    /// Set when `V_1` measured on `M` may undercount the universal cover.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub systole_warning: Option<String>,
}

/// Inputs to [`bound_report`] beyond the formula.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportContext {
    pub zero_points: usize,
    pub epsilon: f64,
    pub level_slack: Vec<f64>,
    pub slack_assumed: bool,
    pub v1_boundary_credit: f64,
    pub packing: Option<usize>,
    /// Length of the shortest noncontractible loop, when known.
    pub systole: Option<f64>,
}

/// Assembles the rainbow bound, the constant bound and the vanishing test.
pub fn bound_report(n: usize, v1: f64, vol_m: f64, ctx: &ReportContext) -> BoundReport {
    let rainbow_bound = (1u64 << n) as f64 * ctx.zero_points as f64;
    let threshold = 1.0 / factorial(n);
    let vanishing = v1 < threshold;
    let exact = match (as_rational(v1), as_rational(vol_m)) {
        (Some(a), Some(b)) => Some(constant_bound_exact(n, a, b)),
        _ => None,
    };
    let packing = ctx.packing.map(|k| {
        let scale = 4f64.powi(n as i32) * factorial(n) * k as f64;
        let bound = scale * (v1 + ctx.epsilon);
        PackingChain {
            k,
            bound,
            holds: rainbow_bound <= scale * (v1 + ctx.epsilon + ctx.v1_boundary_credit) * (1.0 + 1e-12),
        }
    });
    let systole_warning = match ctx.systole {
        Some(s) if s > 2.0 => None,
        Some(s) => Some(format!("systole {s} <= 2: V1 on M may undercount the universal cover")),
        None => Some("systole unknown: V1 on M equals the universal cover's only when systole > 2".into()),
    };
    BoundReport {
        n,
        v1,
        vol_m,
        zero_points: ctx.zero_points,
        rainbow_bound,
        constant_bound: constant_bound(n, v1, vol_m),
        constant_bound_exact: exact.map(|r| r.to_string()),
        vanishing,
        vanishing_consistent: !(v1 + ctx.v1_boundary_credit < threshold && ctx.zero_points > 0),
        packing,
        tolerances: Tolerances {
            epsilon: ctx.epsilon,
            level_slack: ctx.level_slack.clone(),
            slack_assumed: ctx.slack_assumed,
            v1_boundary_credit: ctx.v1_boundary_credit,
        },
        systole_warning,
    }
}

/// [`bound_report`] for a built filtration and its census.
pub fn filtration_report(f: &Filtration, census: &CensusReport, systole: Option<f64>) -> Result<BoundReport> {
    let unit = unit_ball_volume(f.metric());
    let packing = zero_packing(f)?;
    if census.zero_points != f.zero_level().len() {
        return Err(Error::CensusMismatch("census belongs to another filtration".into()));
    }
    let ctx = ReportContext {
        zero_points: census.zero_points,
        epsilon: f.config().total_epsilon(),
        level_slack: f.records().iter().map(|r| r.slack).collect(),
        slack_assumed: f.records().iter().any(|r| r.slack_assumed),
        v1_boundary_credit: unit.boundary_credit,
        packing: Some(packing.len()),
        systole,
    };
    Ok(bound_report(f.dimension(), unit.v1, f.metric().total_area(), &ctx))
}
