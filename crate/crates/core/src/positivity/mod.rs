//! Checkers for positivity, monotonicity, duality and integrality claims,
//! producing tri-state evidence records.

mod duality;
mod evidence;
mod integrality;
mod molev;
mod sampler;
mod suites;

pub use duality::{
    classical_taus, powersum_duality, powersum_expansion, DualityChecker, DualityReport,
    SpecializationCheck, TauPoint,
};
pub use evidence::{write_json_lines, EvidenceRecord, Summary};
pub use integrality::{check_int_j, check_int_m, IntegralityVerdict};
pub use molev::{molev_set_compare, molev_set_compare_with, MolevReport, SliceComparison};
pub use sampler::{evaluation_sampler, sample_grid, SampleValue, SamplerClaim, SamplerReport};
pub use suites::{
    run_conjecture, run_suite, Conjecture, Grid, Outcome, RunOptions, Session, Suite,
};
