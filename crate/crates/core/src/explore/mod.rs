//! Empirical side: random classes, extremal search, small-cube sweeps and corpus checks.

mod exhaustive;
mod experiment;
mod predicates;
mod rng;
mod search;
mod verify;

pub use exhaustive::{cube_sweep, CubeSweep, FilteredMax, Monotonicity, SWEEP_MAX_N};
pub use experiment::{rtd_vcd_experiment, ExperimentStats, EXPERIMENT_MAX_N, EXPERIMENT_MAX_SIZE};
pub use predicates::{is_intersection_closed, is_maximal_class};
pub use rng::{random_class, random_class_from, stream, StreamRng};
pub use search::{extremal_search, SearchBudget, SearchResult};
pub use verify::{
    all_pairs, check_class, verify_corpus, ClassCheck, CorpusReport, NamedClass, PairCheck,
    Skipped, VERIFY_MAX_N, VERIFY_MAX_SIZE,
};
