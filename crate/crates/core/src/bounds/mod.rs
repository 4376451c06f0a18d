//! Quantitative checks: the ball-volume inequality and its induction, the
//! integrated replacement inequality, packings of `Z_0` and the final bound.

mod inequality;
mod report;

pub use inequality::{
    coarea_check, coarea_check_with, coarea_sweep, lemma5_sweep, lemma5_trace, lemma5_trace_with, lemma5_verify,
    sample_triples, CoareaSample, Lemma5Sample, LevelMeasures, TraceStep, COAREA_POINTS,
};
pub use report::{
    as_rational, bound_report, constant_bound, constant_bound_exact, filtration_report, greedy_packing,
    unit_ball_volume, zero_packing, BoundReport, MAX_DENOMINATOR, Packing, PackingChain, ReportContext, Tolerances, UnitBallVolume,
    PACKING_BIG, PACKING_SMALL,
};
