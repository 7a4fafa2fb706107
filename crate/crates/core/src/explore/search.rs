//! Local search for classes whose RTD is large relative to their VC dimension.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::bounds::sauer_bound;
use crate::canonical::canonical_form;
use crate::concept::{Concept, ConceptClass};
use crate::error::{Error, Result};
use crate::explore::rng::{random_class_from, stream, StreamRng};
use crate::measures::{rtd, shattered_count, teaching_dimensions, vc_dimension};

/// Moves per restart, in multiples of the class size.
const STEPS_PER_CONCEPT: usize = 100;
/// Memo entries kept before the cache is flushed.
const CACHE_LIMIT: usize = 1 << 20;

/// When to stop searching. Unset limits are unbounded; at least one must be set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_time: Option<Duration>,
    pub max_evaluations: Option<u64>,
}

impl SearchBudget {
    pub fn evaluations(count: u64) -> Self {
        SearchBudget {
            max_time: None,
            max_evaluations: Some(count),
        }
    }

    pub fn time(limit: Duration) -> Self {
        SearchBudget {
            max_time: Some(limit),
            max_evaluations: None,
        }
    }
}

/// Best class found, with measures recomputed from scratch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub best_class: ConceptClass,
    pub rtd: usize,
    pub vcd: usize,
    pub ratio: f64,
    pub evaluations: u64,
    pub restarts: u64,
    pub seed: u64,
}

/// Ranking of visited classes for the reported result. Any class within the VC
/// cap beats every class above it; infeasible classes are ranked by how many
/// `(cap+1)`-sets they shatter, feasible ones by RTD, then `TD_min`, then the
/// sum of teaching dimensions. (All candidates have the same size, so the
/// smaller-class tiebreak never applies.)
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Rank {
    Infeasible {
        neg_excess: i64,
    },
    Feasible {
        rtd: usize,
        td_min: usize,
        td_sum: usize,
    },
}

/// What the search needs to know about one isomorphism type.
#[derive(Clone, Debug)]
struct Stats {
    /// Number of shattered `(cap+1)`-sets.
    excess: usize,
    /// Teaching dimension of every concept, ascending.
    tds: Vec<u8>,
    /// RTD, computed only for classes within the cap.
    rtd: Option<usize>,
}

impl Stats {
    fn rank(&self) -> Rank {
        match self.rtd {
            Some(rtd) => Rank::Feasible {
                rtd,
                td_min: self.tds[0] as usize,
                td_sum: self.tds.iter().map(|&t| t as usize).sum(),
            },
            None => Rank::Infeasible {
                neg_excess: -(self.excess as i64),
            },
        }
    }

    /// Objective of the walk when aiming for RTD `target`.
    ///
    /// Rewarding each concept's teaching dimension up to `target` gives the
    /// plateaus a slope toward classes where every concept is hard to teach;
    /// the cap is enforced by a penalty rather than a wall, so the walk may
    /// cross briefly over classes that shatter too much. Classes whose
    /// concepts all need `target` examples have `TD_min = target`.
    fn walk_value(&self, target: usize) -> (i64, i64) {
        let capped: i64 = self
            .tds
            .iter()
            .map(|&t| (t as usize).min(target) as i64)
            .sum();
        let penalty = (target + 1) as i64 * self.excess as i64;
        (capped - penalty, -(self.excess as i64))
    }
}

struct Evaluator {
    vcd_cap: usize,
    cache: HashMap<Vec<u32>, Stats>,
}

impl Evaluator {
    fn stats(&mut self, class: &ConceptClass) -> Stats {
        let key: Vec<u32> = canonical_form(class).iter().map(|c| c.word()).collect();
        if let Some(s) = self.cache.get(&key) {
            return s.clone();
        }
        let s = self.compute(class);
        if self.cache.len() >= CACHE_LIMIT {
            self.cache.clear();
        }
        self.cache.insert(key, s.clone());
        s
    }

    fn compute(&self, class: &ConceptClass) -> Stats {
        let excess = shattered_count(class, self.vcd_cap + 1);
        let mut tds: Vec<u8> = teaching_dimensions(class)
            .expect("nonempty class")
            .into_iter()
            .map(|t| t as u8)
            .collect();
        tds.sort_unstable();
        let rtd = (excess == 0).then(|| rtd(class).expect("nonempty class"));
        Stats { excess, tds, rtd }
    }
}

fn consider(rank: Rank, class: &ConceptClass, best: &mut Option<(Rank, ConceptClass)>) {
    if best.as_ref().is_none_or(|(r, _)| rank > *r) {
        *best = Some((rank, class.clone()));
    }
}

fn swap_move(rng: &mut StreamRng, class: &ConceptClass) -> ConceptClass {
    let n = class.n();
    let out_idx = rng.random_range(0..class.len());
    let incoming = loop {
        let w = rng.random_range(0..(1u32 << n));
        if !class.contains(Concept::from_word(w)) {
            break Concept::from_word(w);
        }
    };
    let mut concepts: Vec<Concept> = class.concepts().to_vec();
    concepts[out_idx] = incoming;
    ConceptClass::new(n, concepts).expect("swap keeps concepts distinct")
}

/// Hill climbing with restarts over classes of exactly `size` concepts on `[n]`.
///
/// Each restart starts from a fresh random class and proposes single-concept
/// swaps; improving moves are taken, equal moves with probability 1/2. The walk
/// follows a penalized surrogate (see `Stats::walk_value`) while every visited
/// class is ranked by the true objective. Isomorphic classes share one cached
/// evaluation. Restart `r` draws from stream `r` of
/// `seed`. With an evaluation budget the result is fully deterministic.
pub fn extremal_search(
    n: usize,
    size: usize,
    vcd_cap: usize,
    budget: SearchBudget,
    seed: u64,
) -> Result<SearchResult> {
    if n == 0 || n > 16 {
        return Err(Error::Parameter(format!(
            "n = {n} must lie in 1..=16 for extremal search"
        )));
    }
    if vcd_cap == 0 {
        return Err(Error::Parameter("vcd_cap must be at least 1".into()));
    }
    if size == 0 || size > 1usize << n {
        return Err(Error::Parameter(format!(
            "size {size} must lie in 1..=2^{n}"
        )));
    }
    if size as u128 > sauer_bound(n, vcd_cap) {
        return Err(Error::Parameter(format!(
            "no class of {size} concepts on {n} instances has VC dimension <= {vcd_cap} (Sauer bound {})",
            sauer_bound(n, vcd_cap)
        )));
    }
    if budget.max_time.is_none() && budget.max_evaluations.is_none() {
        return Err(Error::Parameter(
            "search budget needs a time or evaluation limit".into(),
        ));
    }

    let started = Instant::now();
    let exhausted = |evaluations: u64| {
        budget.max_evaluations.is_some_and(|m| evaluations >= m)
            || budget.max_time.is_some_and(|t| started.elapsed() >= t)
    };
    let steps_per_restart = STEPS_PER_CONCEPT * size;
    let mut evaluator = Evaluator {
        vcd_cap,
        cache: HashMap::new(),
    };
    let mut evaluations = 0u64;
    let mut best: Option<(Rank, ConceptClass)> = None;
    let mut restarts = 0u64;

    while !exhausted(evaluations) {
        // Aim one above the best RTD certified so far (and above the cap).
        let target = match best {
            Some((Rank::Feasible { rtd, .. }, _)) => rtd.max(vcd_cap) + 1,
            _ => vcd_cap + 1,
        };
        let mut rng = stream(seed, restarts);
        let mut current = random_class_from(&mut rng, n, size)?;
        restarts += 1;
        let stats = evaluator.stats(&current);
        evaluations += 1;
        let mut value = stats.walk_value(target);
        consider(stats.rank(), &current, &mut best);
        if size == 1usize << n {
            break;
        }
        for _ in 0..steps_per_restart {
            if exhausted(evaluations) {
                break;
            }
            let candidate = swap_move(&mut rng, &current);
            let stats = evaluator.stats(&candidate);
            evaluations += 1;
            consider(stats.rank(), &candidate, &mut best);
            let v = stats.walk_value(target);
            if v > value || (v == value && rng.random_bool(0.5)) {
                current = candidate;
                value = v;
            }
        }
    }

    // With a zero budget nothing was evaluated; report the first restart's start.
    let best_class = match best {
        Some((_, c)) => c,
        None => random_class_from(&mut stream(seed, 0), n, size)?,
    };
    let rtd = rtd(&best_class)?;
    let vcd = vc_dimension(&best_class)?;
    let ratio = if vcd == 0 {
        0.0
    } else {
        rtd as f64 / vcd as f64
    };
    Ok(SearchResult {
        best_class,
        rtd,
        vcd,
        ratio,
        evaluations,
        restarts,
        seed,
    })
}
