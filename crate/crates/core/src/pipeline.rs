//! End-to-end runs: filtration, refinement, coloring, census, report and
//! inequality sweeps, all seeded from one configuration.

use serde::{Deserialize, Serialize};

use crate::bounds::{coarea_sweep, filtration_report, lemma5_sweep, BoundReport, CoareaSample, Lemma5Sample};
use crate::complex::{PlComplex, WeightedComplex};
use crate::error::Result;
use crate::filtration::{build_filtration, Filtration, FiltrationDocument, SeparationConfig};
use crate::rainbow::{color_by_filtration, count_rainbow, refine_with_filtration, CensusReport};

/// Seed offsets of the sweeps, so they never share a stream with the search.
const LEMMA5_STREAM: u64 = 0x4C35;
const COAREA_STREAM: u64 = 0xC0A0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub separation: SeparationConfig,
    /// Random triples per inequality sweep.
    pub samples: usize,
    /// Known systole of the input, if any.
    #[serde(default)]
    pub systole: Option<f64>,
}

/// Tally of every check a run performs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub lemma5_samples: usize,
    pub lemma5_violations: usize,
    pub lemma5_min_residual: Option<f64>,
    /// Violations of the integrated inequality, per level `Z_i ⊂ Z_{i+1}`.
    pub coarea_violations: Vec<usize>,
    pub packing_chain: bool,
    pub vanishing_consistent: bool,
    pub passed: bool,
}

pub struct RunOutput {
    pub filtration: Filtration,
    pub refined: PlComplex,
    pub census: CensusReport,
    pub report: BoundReport,
    pub lemma5: Vec<Lemma5Sample>,
    pub coarea: Vec<Vec<CoareaSample>>,
    pub verification: Verification,
}

impl RunOutput {
    /// The filtration document with the census attached.
    pub fn document(&self) -> FiltrationDocument {
        FiltrationDocument {
            census: Some(self.census.clone()),
            ..self.filtration.to_document()
        }
    }
}

/// Lemma 5 sweep seeded from the run seed.
pub fn lemma5_samples(f: &Filtration, samples: usize) -> Result<Vec<Lemma5Sample>> {
    lemma5_sweep(f, samples, f.config().rng_seed ^ LEMMA5_STREAM)
}

pub fn run(complex: &WeightedComplex, config: &RunConfig) -> Result<RunOutput> {
    let filtration = build_filtration(complex, &config.separation)?;
    let refined = refine_with_filtration(&filtration)?;
    let coloring = color_by_filtration(&refined, &filtration)?;
    let census = count_rainbow(&refined, &coloring, &filtration)?;
    let report = filtration_report(&filtration, &census, config.systole)?;
    let lemma5 = lemma5_samples(&filtration, config.samples)?;
    let coarea = (0..filtration.dimension())
        .map(|i| coarea_sweep(&filtration, i, config.samples, config.separation.rng_seed ^ COAREA_STREAM ^ i as u64))
        .collect::<Result<Vec<_>>>()?;
    let lemma5_violations = lemma5.iter().filter(|s| s.violation).count();
    let coarea_violations: Vec<usize> = coarea.iter().map(|c| c.iter().filter(|s| s.violation).count()).collect();
    let packing_chain = report.packing.as_ref().is_none_or(|p| p.holds);
    let verification = Verification {
        lemma5_samples: lemma5.len(),
        lemma5_violations,
        lemma5_min_residual: lemma5.iter().map(|s| s.residual).min_by(f64::total_cmp),
        passed: lemma5_violations == 0
            && coarea_violations.iter().all(|&v| v == 0)
            && packing_chain
            && report.vanishing_consistent,
        coarea_violations,
        packing_chain,
        vanishing_consistent: report.vanishing_consistent,
    };
    Ok(RunOutput {
        filtration,
        refined,
        census,
        report,
        lemma5,
        coarea,
        verification,
    })
}
