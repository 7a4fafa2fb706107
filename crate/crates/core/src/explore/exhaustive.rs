//! Sweeps over every nonempty subclass of a small cube.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{rtd_upper_bound, sauer_bound};
use crate::concept::ConceptClass;
use crate::error::{Error, Result};
use crate::explore::predicates::is_intersection_closed;
use crate::measures::{pattern_profile, recursive_teaching_plan};

/// Largest cube whose subclasses are enumerated (2^16 classes at n = 4).
pub const SWEEP_MAX_N: usize = 4;

const MONOTONICITY_EXAMPLES: usize = 10;

/// The largest value of a measure over the classes matching a filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FilteredMax {
    pub classes: usize,
    pub max: Option<usize>,
}

impl FilteredMax {
    fn add(&mut self, value: usize) {
        self.classes += 1;
        self.max = Some(self.max.map_or(value, |m| m.max(value)));
    }
}

/// Pairs `C' ⊆ C` with `RTD(C') > RTD(C)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Monotonicity {
    pub pairs_checked: u64,
    pub violations: u64,
    /// A few `(subclass, superclass)` witnesses.
    pub examples: Vec<(ConceptClass, ConceptClass)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubeSweep {
    pub n: usize,
    pub classes: usize,
    /// Whether isomorphic classes were collapsed before measuring.
    pub dedup_used: bool,
    /// `TD_min` over (2,3)-classes.
    pub td_min_23: FilteredMax,
    /// `TD_min` over (3,6)-classes.
    pub td_min_36: FilteredMax,
    /// RTD over (3,5)-classes.
    pub rtd_35: FilteredMax,
    /// Number of (3,5)-classes with RTD exactly 2.
    pub rtd_35_attaining_2: usize,
    /// RTD over (3,4)-classes.
    pub rtd_34: FilteredMax,
    /// RTD over classes of VC dimension 2.
    pub rtd_vcd2: FilteredMax,
    pub maximal_classes: usize,
    pub intersection_closed_classes: usize,
    pub sauer_violations: usize,
    pub maximal_violations: usize,
    pub intersection_closed_violations: usize,
    pub bound_violations: usize,
    pub monotonicity: Monotonicity,
}

struct Record {
    profile: Vec<usize>,
    vcd: usize,
    rtd: usize,
    td_min: usize,
    intersection_closed: bool,
}

impl Record {
    fn is_xy(&self, x: usize, y: usize) -> bool {
        self.profile[x.min(self.profile.len()) - 1] <= y
    }
}

fn measure(class: &ConceptClass) -> Result<Record> {
    let n = class.n();
    // Cheap filters first: the profile alone decides every (x,y) predicate and the VC dimension.
    let profile: Vec<usize> = pattern_profile(class, n)?.as_map().into_values().collect();
    let vcd = (1..=n)
        .rev()
        .find(|&x| profile[x - 1] == 1 << x)
        .unwrap_or(0);
    let plan = recursive_teaching_plan(class)?;
    Ok(Record {
        profile,
        vcd,
        rtd: plan.rtd,
        td_min: plan.levels[0].td,
        intersection_closed: is_intersection_closed(class),
    })
}

/// Measures every nonempty subclass of the `n`-cube and tallies the small-case facts.
///
/// Subclass `m` consists of the cube concepts at the set bits of `m`
/// (concepts in lexicographic order).
pub fn cube_sweep(n: usize) -> Result<CubeSweep> {
    if n == 0 || n > SWEEP_MAX_N {
        return Err(Error::Parameter(format!(
            "cube sweeps need 1 <= n <= {SWEEP_MAX_N}, got {n}"
        )));
    }
    let cube = ConceptClass::full_cube(n)?;
    let total: u64 = 1 << (1u64 << n);
    let records: Vec<Record> = (1..total)
        .into_par_iter()
        .map(|m| measure(&cube.subclass_by_mask(m)))
        .collect::<Result<_>>()?;
    let record = |m: u64| &records[(m - 1) as usize];

    let mut sweep = CubeSweep {
        n,
        classes: records.len(),
        dedup_used: false,
        td_min_23: FilteredMax::default(),
        td_min_36: FilteredMax::default(),
        rtd_35: FilteredMax::default(),
        rtd_35_attaining_2: 0,
        rtd_34: FilteredMax::default(),
        rtd_vcd2: FilteredMax::default(),
        maximal_classes: 0,
        intersection_closed_classes: 0,
        sauer_violations: 0,
        maximal_violations: 0,
        intersection_closed_violations: 0,
        bound_violations: 0,
        monotonicity: Monotonicity {
            pairs_checked: 0,
            violations: 0,
            examples: Vec::new(),
        },
    };
    for m in 1..total {
        let r = record(m);
        let size = m.count_ones() as usize;
        if r.is_xy(2, 3) {
            sweep.td_min_23.add(r.td_min);
        }
        if r.is_xy(3, 6) {
            sweep.td_min_36.add(r.td_min);
        }
        if r.is_xy(3, 5) {
            sweep.rtd_35.add(r.rtd);
            sweep.rtd_35_attaining_2 += usize::from(r.rtd == 2);
        }
        if r.is_xy(3, 4) {
            sweep.rtd_34.add(r.rtd);
        }
        if r.vcd == 2 {
            sweep.rtd_vcd2.add(r.rtd);
        }
        if r.profile
            .iter()
            .enumerate()
            .any(|(i, &p)| p as u128 > sauer_bound(i + 1, r.vcd))
        {
            sweep.sauer_violations += 1;
        }
        if size as u128 == sauer_bound(n, r.vcd) {
            sweep.maximal_classes += 1;
            if r.rtd != r.vcd {
                sweep.maximal_violations += 1;
            }
        }
        if r.intersection_closed {
            sweep.intersection_closed_classes += 1;
            if r.rtd > r.vcd {
                sweep.intersection_closed_violations += 1;
            }
        }
        let bound = if r.vcd == 0 {
            0.0
        } else {
            rtd_upper_bound(r.vcd, None)?
        };
        if r.rtd as f64 > bound {
            sweep.bound_violations += 1;
        }
    }

    // Every nonempty proper subclass of every class.
    let mono = &mut sweep.monotonicity;
    for m in 1..total {
        let top = record(m).rtd;
        let mut sub = (m - 1) & m;
        while sub != 0 {
            mono.pairs_checked += 1;
            if record(sub).rtd > top {
                mono.violations += 1;
                if mono.examples.len() < MONOTONICITY_EXAMPLES {
                    mono.examples
                        .push((cube.subclass_by_mask(sub), cube.subclass_by_mask(m)));
                }
            }
            sub = (sub - 1) & m;
        }
    }
    Ok(sweep)
}
