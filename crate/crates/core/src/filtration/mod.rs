//! Area-minimizing `R`-separating filtrations `M = Z_n ⊇ … ⊇ Z_0`.
//!
//! Each level `Z_{i-1}` is a union of cells dual to edges of `Z_i`, placed in
//! the barycentric subdivision of `Z_i`, so level `i` lives in the `(n-i)`-th
//! barycentric subdivision of the base complex.

mod search;
mod separate;

use serde::{Deserialize, Serialize};

use crate::complex::{contains, ComplexFile, MetricSpace, PlComplex, WeightedComplex};
use crate::error::{Error, Result};

pub use search::{minimize_separating, SearchOutcome, SearchParams};
pub use separate::{Certificate, ComponentCertificate, CutSet, LevelSearch, SeparationReport};

pub const DEFAULT_MOVE_BUDGET: usize = 20_000;
pub const DEFAULT_RESTARTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationConfig {
    pub radius: f64,
    /// `ε_0 … ε_{n-1}`; `ε_i` is the slack of the search producing `Z_i`.
    pub epsilon_schedule: Vec<f64>,
    pub move_budget: usize,
    pub rng_seed: u64,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

fn default_restarts() -> usize {
    DEFAULT_RESTARTS
}

impl SeparationConfig {
    /// Schedule `ε_i = ε / (2 n R^{n-i})`, so that `Σ 2 ε_i R^{n-i} = ε`.
    pub fn new(dimension: usize, radius: f64, epsilon: f64, rng_seed: u64) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::BadParams("dimension must be at least 1".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::BadParams(format!("radius must be positive, got {radius}")));
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::BadParams(format!("epsilon must be positive, got {epsilon}")));
        }
        let n = dimension as f64;
        let epsilon_schedule = (0..dimension)
            .map(|i| epsilon / (2.0 * n * radius.powi((dimension - i) as i32)))
            .collect();
        Ok(SeparationConfig {
            radius,
            epsilon_schedule,
            move_budget: DEFAULT_MOVE_BUDGET,
            rng_seed,
            restarts: DEFAULT_RESTARTS,
        })
    }

    pub fn with_move_budget(mut self, budget: usize) -> Self {
        self.move_budget = budget;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    /// The user-level `ε` the schedule was derived from.
    pub fn total_epsilon(&self) -> f64 {
        let n = self.epsilon_schedule.len();
        (0..n)
            .map(|i| 2.0 * self.epsilon_schedule[i] * self.radius.powi((n - i) as i32))
            .sum()
    }

    fn validate(&self, dimension: usize) -> Result<()> {
        if self.epsilon_schedule.len() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: self.epsilon_schedule.len(),
            });
        }
        if !(self.radius.is_finite() && self.radius > 0.0) || self.epsilon_schedule.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::BadParams("radius and every ε_i must be positive".into()));
        }
        Ok(())
    }

    fn params(&self, level: usize) -> SearchParams {
        SearchParams {
            epsilon: self.epsilon_schedule[level],
            move_budget: self.move_budget,
            restarts: self.restarts,
            seed: self.rng_seed.wrapping_add((level as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        }
    }
}

/// How `Z_i` separates `Z_{i+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    /// Dimension `i` of the level produced.
    pub level: usize,
    /// Cut edges of `Z_{i+1}` as pairs of its point ids; `Z_i` is their dual.
    pub cut_edges: Vec<(usize, usize)>,
    pub area: f64,
    pub slack: f64,
    pub slack_assumed: bool,
    pub evaluations: usize,
    pub certificates: SeparationReport,
}

#[derive(Clone, Debug)]
pub struct Filtration {
    metric: MetricSpace,
    config: SeparationConfig,
    /// `levels[i]` is `Z_i`.
    levels: Vec<PlComplex>,
    /// `records[i]` describes `Z_i` inside `Z_{i+1}`.
    records: Vec<LevelRecord>,
}

impl Filtration {
    pub fn metric(&self) -> &MetricSpace {
        &self.metric
    }

    pub fn complex(&self) -> &WeightedComplex {
        self.metric.complex()
    }

    pub fn config(&self) -> &SeparationConfig {
        &self.config
    }

    pub fn dimension(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &PlComplex {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[PlComplex] {
        &self.levels
    }

    pub fn records(&self) -> &[LevelRecord] {
        &self.records
    }

    pub fn level_areas(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.area).collect()
    }

    /// The points of `Z_0`.
    pub fn zero_level(&self) -> &[crate::complex::Point] {
        self.levels[0].points()
    }

    /// Re-checks separation, duality and nesting of every level.
    pub fn verify(&self) -> Result<()> {
        let radius = self.config.radius;
        for rec in &self.records {
            let parent = &self.levels[rec.level + 1];
            let child = &self.levels[rec.level];
            if parent.is_empty() {
                if !child.is_empty() || !rec.cut_edges.is_empty() {
                    return Err(Error::Malformed(format!("level {} is nonempty below an empty level", rec.level)));
                }
                continue;
            }
            let search = LevelSearch::new(&self.metric, parent, radius)?;
            let cut = search.cut_from_pairs(&rec.cut_edges)?;
            let report = search.is_r_separating(&cut);
            if let Some(bad) = report.components.iter().position(|c| !c.certificate.fits()) {
                return Err(Error::SeparationViolation {
                    level: rec.level,
                    component: bad,
                    radius,
                });
            }
            let rebuilt = parent.dual_of_cut(&rec.cut_edges)?;
            if rebuilt.simplices() != child.simplices() || rebuilt.points() != child.points() {
                return Err(Error::Malformed(format!("level {} is not the dual of its cut", rec.level)));
            }
            nested_in(child, parent, self.metric.complex())
                .map_err(|i| Error::Malformed(format!("simplex {i} of level {} escapes level {}", rec.level, rec.level + 1)))?;
        }
        Ok(())
    }

    pub fn to_document(&self) -> FiltrationDocument {
        FiltrationDocument {
            complex: self.metric.complex().to_file(),
            metric_depth: self.metric.depth(),
            config: self.config.clone(),
            levels: self.records.iter().rev().cloned().collect(),
            census: None,
        }
    }

    /// Evaluates a hand-made filtration given the cut of every level, from
    /// the cut of `Z_n` down to the cut of `Z_1`, as point-id pairs of the
    /// parent level. Slack is reported as the configured `ε_i`.
    pub fn from_cuts(metric: MetricSpace, config: &SeparationConfig, cuts: &[Vec<(usize, usize)>]) -> Result<Self> {
        let n = metric.dimension();
        config.validate(n)?;
        if cuts.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: cuts.len() });
        }
        if metric.depth() < n {
            return Err(Error::NotANode { depth: metric.depth() });
        }
        let mut levels = vec![PlComplex::empty(0); n + 1];
        levels[n] = PlComplex::from_base(metric.complex());
        let mut records = Vec::with_capacity(n);
        for (k, cut_edges) in cuts.iter().enumerate() {
            let i = n - 1 - k;
            let parent = &levels[i + 1];
            let record = if parent.is_empty() {
                if !cut_edges.is_empty() {
                    return Err(Error::Malformed(format!("level {i} cuts an empty level")));
                }
                LevelRecord {
                    level: i,
                    cut_edges: Vec::new(),
                    area: 0.0,
                    slack: 0.0,
                    slack_assumed: false,
                    evaluations: 0,
                    certificates: SeparationReport {
                        separating: true,
                        components: Vec::new(),
                    },
                }
            } else {
                let search = LevelSearch::new(&metric, parent, config.radius)?;
                let cut = search.cut_from_pairs(cut_edges)?;
                let certificates = search.is_r_separating(&cut);
                if let Some(bad) = certificates.components.iter().position(|c| !c.certificate.fits()) {
                    return Err(Error::SeparationViolation {
                        level: i,
                        component: bad,
                        radius: config.radius,
                    });
                }
                LevelRecord {
                    level: i,
                    cut_edges: search.pairs(&cut),
                    area: search.area(&cut),
                    slack: config.epsilon_schedule[i],
                    slack_assumed: true,
                    evaluations: 0,
                    certificates,
                }
            };
            levels[i] = if parent.is_empty() {
                PlComplex::empty(i)
            } else {
                parent.dual_of_cut(&record.cut_edges)?
            };
            records.push(record);
        }
        records.reverse();
        let filtration = Filtration {
            metric,
            config: config.clone(),
            levels,
            records,
        };
        filtration.verify()?;
        Ok(filtration)
    }

    /// Rebuilds a filtration from its document and re-verifies it.
    pub fn from_document(doc: &FiltrationDocument) -> Result<Self> {
        let complex = WeightedComplex::from_file(doc.complex.clone())?;
        let n = complex.dimension();
        if doc.levels.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: doc.levels.len(),
            });
        }
        for (k, rec) in doc.levels.iter().enumerate() {
            if rec.level != n - 1 - k {
                return Err(Error::Malformed("level records must run from the top down".into()));
            }
        }
        let metric = MetricSpace::with_depth(&complex, doc.metric_depth.max(n))?;
        let cuts: Vec<Vec<(usize, usize)>> = doc.levels.iter().map(|r| r.cut_edges.clone()).collect();
        let mut filtration = Filtration::from_cuts(metric, &doc.config, &cuts)?;
        for rec in doc.levels.iter() {
            let fresh = &mut filtration.records[rec.level];
            if (fresh.area - rec.area).abs() > 1e-9 * fresh.area.max(1.0) {
                return Err(Error::Malformed(format!(
                    "level {} area {} does not match its cells ({})",
                    rec.level, rec.area, fresh.area
                )));
            }
            if fresh.certificates != rec.certificates {
                return Err(Error::Malformed(format!("level {} certificates do not match", rec.level)));
            }
            fresh.area = rec.area;
            fresh.slack = rec.slack;
            fresh.slack_assumed = rec.slack_assumed;
            fresh.evaluations = rec.evaluations;
        }
        Ok(filtration)
    }
}

/// Index of the first simplex of `child` not inside any simplex of `parent`.
fn nested_in(child: &PlComplex, parent: &PlComplex, base: &WeightedComplex) -> std::result::Result<(), usize> {
    for (i, s) in child.simplices().iter().enumerate() {
        let frame = &base.simplices()[s.host];
        let pts = child.simplex_points(i);
        let inside = parent.simplices().iter().enumerate().any(|(j, t)| {
            t.host == s.host && {
                let hull = parent.simplex_points(j);
                pts.iter().all(|p| contains(p, &hull, frame))
            }
        });
        if !inside {
            return Err(i);
        }
    }
    Ok(())
}

/// On-disk form of a [`Filtration`], levels listed from the top down.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiltrationDocument {
    pub complex: ComplexFile,
    pub metric_depth: usize,
    pub config: SeparationConfig,
    pub levels: Vec<LevelRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<crate::rainbow::CensusReport>,
}

impl FiltrationDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable document")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Minimizes level after level from `Z_n = M` down to `Z_0`.
pub fn build_filtration(complex: &WeightedComplex, config: &SeparationConfig) -> Result<Filtration> {
    let metric = MetricSpace::new(complex)?;
    build_filtration_in(metric, config)
}

/// As [`build_filtration`], on a prepared metric refinement.
pub fn build_filtration_in(metric: MetricSpace, config: &SeparationConfig) -> Result<Filtration> {
    let n = metric.dimension();
    config.validate(n)?;
    if metric.depth() < n {
        return Err(Error::NotANode { depth: metric.depth() });
    }
    if !metric.complex().is_closed() {
        return Err(Error::Malformed("complex is not closed".into()));
    }
    let mut levels = vec![PlComplex::empty(0); n + 1];
    levels[n] = PlComplex::from_base(metric.complex());
    let mut records = vec![None; n];
    for i in (0..n).rev() {
        let parent = &levels[i + 1];
        let (child, record) = if parent.is_empty() {
            (
                PlComplex::empty(i),
                LevelRecord {
                    level: i,
                    cut_edges: Vec::new(),
                    area: 0.0,
                    slack: 0.0,
                    slack_assumed: false,
                    evaluations: 0,
                    certificates: SeparationReport {
                        separating: true,
                        components: Vec::new(),
                    },
                },
            )
        } else {
            let search = LevelSearch::new(&metric, parent, config.radius)?;
            let outcome = minimize_separating(&search, &config.params(i))?;
            let cut_edges = search.pairs(&outcome.cut);
            let child = parent.dual_of_cut(&cut_edges)?;
            let certificates = search.is_r_separating(&outcome.cut);
            (
                child,
                LevelRecord {
                    level: i,
                    cut_edges,
                    area: outcome.area,
                    slack: outcome.slack,
                    slack_assumed: outcome.slack_assumed,
                    evaluations: outcome.evaluations,
                    certificates,
                },
            )
        };
        levels[i] = child;
        records[i] = Some(record);
    }
    let filtration = Filtration {
        metric,
        config: config.clone(),
        levels,
        records: records.into_iter().map(|r| r.expect("every level searched")).collect(),
    };
    filtration.verify()?;
    Ok(filtration)
}
