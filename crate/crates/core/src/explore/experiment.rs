use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::explore::rng::{random_class_from, stream};
use crate::measures::{rtd, vc_dimension};

/// Largest instance space the random experiment accepts.
pub const EXPERIMENT_MAX_N: usize = 14;
/// Largest class size the random experiment accepts.
pub const EXPERIMENT_MAX_SIZE: usize = 300;

/// How RTD compares to VCD over random classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentStats {
    pub n: usize,
    pub size: usize,
    pub trials: usize,
    pub seed: u64,
    pub frac_rtd_lt_vcd: f64,
    pub frac_rtd_eq_vcd: f64,
    pub frac_rtd_gt_vcd: f64,
    pub rtd_histogram: BTreeMap<usize, usize>,
    pub vcd_histogram: BTreeMap<usize, usize>,
}

/// Draws `trials` random classes of `size` concepts over `[n]` and tallies RTD against VCD.
///
/// Trial `t` uses generator stream `t` of `seed`, so results do not depend on
/// the number of worker threads.
pub fn rtd_vcd_experiment(
    n: usize,
    size: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentStats> {
    if n == 0 || n > EXPERIMENT_MAX_N || size == 0 || size > EXPERIMENT_MAX_SIZE {
        return Err(Error::Parameter(format!(
            "n = {n}, size = {size} is out of range; exact measures are feasible for \
             1 <= n <= {EXPERIMENT_MAX_N} and 1 <= size <= {EXPERIMENT_MAX_SIZE}"
        )));
    }
    if size > 1usize << n {
        return Err(Error::Parameter(format!("size {size} exceeds 2^{n}")));
    }
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    let outcomes: Vec<(usize, usize)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let class = random_class_from(&mut stream(seed, t as u64), n, size)?;
            Ok((rtd(&class)?, vc_dimension(&class)?))
        })
        .collect::<Result<_>>()?;

    let mut lt = 0;
    let mut eq = 0;
    let mut gt = 0;
    let mut rtd_histogram = BTreeMap::new();
    let mut vcd_histogram = BTreeMap::new();
    for &(r, v) in &outcomes {
        match r.cmp(&v) {
            std::cmp::Ordering::Less => lt += 1,
            std::cmp::Ordering::Equal => eq += 1,
            std::cmp::Ordering::Greater => gt += 1,
        }
        *rtd_histogram.entry(r).or_insert(0) += 1;
        *vcd_histogram.entry(v).or_insert(0) += 1;
    }
    let total = trials as f64;
    Ok(ExperimentStats {
        n,
        size,
        trials,
        seed,
        frac_rtd_lt_vcd: lt as f64 / total,
        frac_rtd_eq_vcd: eq as f64 / total,
        frac_rtd_gt_vcd: gt as f64 / total,
        rtd_histogram,
        vcd_histogram,
    })
}
