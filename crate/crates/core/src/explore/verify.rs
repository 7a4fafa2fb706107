//! Checks the quantitative facts about teaching and VC dimension on a corpus of classes.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{rtd_upper_bound, sauer_bound};
use crate::concept::ConceptClass;
use crate::error::Result;
use crate::explore::predicates::{is_intersection_closed, is_maximal_class};
use crate::measures::{pattern_profile, rtd, vc_dimension};

/// Largest instance space a corpus class (or product) may have.
pub const VERIFY_MAX_N: usize = 14;
/// Largest class a corpus class (or product) may have.
pub const VERIFY_MAX_SIZE: usize = 1024;

/// A corpus member with the name it is reported under.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedClass {
    pub name: String,
    pub class: ConceptClass,
}

impl NamedClass {
    pub fn new(name: impl Into<String>, class: ConceptClass) -> Self {
        NamedClass {
            name: name.into(),
            class,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCheck {
    pub name: String,
    pub n: usize,
    pub size: usize,
    pub vcd: usize,
    pub rtd: usize,
    pub rtd_bound: f64,
    pub maximal: bool,
    pub intersection_closed: bool,
    /// `RTD <= rtd_bound`.
    pub within_bound: bool,
    /// Maximal classes must have `RTD = VCD`; `None` when not maximal.
    pub maximal_equality: Option<bool>,
    /// Intersection-closed classes must have `RTD <= VCD`; `None` otherwise.
    pub intersection_closed_bound: Option<bool>,
    /// Every projection onto `x` instances has at most `sauer_bound(x, vcd)` patterns.
    pub sauer_counts: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub vcd: [usize; 3],
    pub rtd: [usize; 3],
    /// `VCD(C1 x C2) = VCD(C1) + VCD(C2)`.
    pub vcd_additive: bool,
    /// `RTD(C1 x C2) <= RTD(C1) + RTD(C2)`.
    pub rtd_subadditive: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub classes: Vec<ClassCheck>,
    pub pairs: Vec<PairCheck>,
    pub skipped: Vec<Skipped>,
    pub all_passed: bool,
}

fn infeasible(class: &ConceptClass) -> Option<String> {
    if class.is_empty() {
        Some("empty class".into())
    } else if class.n() > VERIFY_MAX_N {
        Some(format!("n = {} exceeds {VERIFY_MAX_N}", class.n()))
    } else if class.len() > VERIFY_MAX_SIZE {
        Some(format!("{} concepts exceed {VERIFY_MAX_SIZE}", class.len()))
    } else {
        None
    }
}

fn bound_for(d: usize) -> Result<f64> {
    // Only a single concept has VC dimension 0, and its RTD is 0.
    if d == 0 {
        Ok(0.0)
    } else {
        rtd_upper_bound(d, None)
    }
}

/// Runs the per-class checks on a nonempty, feasible class.
pub fn check_class(name: &str, class: &ConceptClass) -> Result<ClassCheck> {
    let vcd = vc_dimension(class)?;
    let rtd = rtd(class)?;
    let rtd_bound = bound_for(vcd)?;
    let maximal = is_maximal_class(class);
    let intersection_closed = is_intersection_closed(class);
    let profile = pattern_profile(class, class.n())?;
    let sauer_counts = profile
        .as_map()
        .into_iter()
        .all(|(x, m)| m as u128 <= sauer_bound(x, vcd));

    let within_bound = rtd as f64 <= rtd_bound;
    let maximal_equality = maximal.then_some(rtd == vcd);
    let intersection_closed_bound = intersection_closed.then_some(rtd <= vcd);
    let passed = within_bound
        && sauer_counts
        && maximal_equality.unwrap_or(true)
        && intersection_closed_bound.unwrap_or(true);
    Ok(ClassCheck {
        name: name.to_string(),
        n: class.n(),
        size: class.len(),
        vcd,
        rtd,
        rtd_bound,
        maximal,
        intersection_closed,
        within_bound,
        maximal_equality,
        intersection_closed_bound,
        sauer_counts,
        passed,
    })
}

fn check_pair(
    left: &NamedClass,
    right: &NamedClass,
) -> Result<std::result::Result<PairCheck, Skipped>> {
    let label = format!("{} x {}", left.name, right.name);
    let n = left.class.n() + right.class.n();
    let size = left.class.len().saturating_mul(right.class.len());
    if n > VERIFY_MAX_N || size > VERIFY_MAX_SIZE {
        return Ok(Err(Skipped {
            name: label,
            reason: format!("product has n = {n} and {size} concepts; limits are {VERIFY_MAX_N} and {VERIFY_MAX_SIZE}"),
        }));
    }
    let product = left.class.product(&right.class)?;
    let vcd = [
        vc_dimension(&left.class)?,
        vc_dimension(&right.class)?,
        vc_dimension(&product)?,
    ];
    let rtd = [rtd(&left.class)?, rtd(&right.class)?, rtd(&product)?];
    let vcd_additive = vcd[2] == vcd[0] + vcd[1];
    let rtd_subadditive = rtd[2] <= rtd[0] + rtd[1];
    Ok(Ok(PairCheck {
        left: left.name.clone(),
        right: right.name.clone(),
        vcd,
        rtd,
        vcd_additive,
        rtd_subadditive,
        passed: vcd_additive && rtd_subadditive,
    }))
}

/// Checks every feasible class and, for each index pair in `pairs`, the product laws.
///
/// Empty classes and classes beyond [`VERIFY_MAX_N`] / [`VERIFY_MAX_SIZE`] are
/// listed under `skipped` rather than failing the run; so are products beyond
/// the same limits. Pairs referring to skipped classes are skipped too.
pub fn verify_corpus(classes: &[NamedClass], pairs: &[(usize, usize)]) -> Result<CorpusReport> {
    let mut skipped = Vec::new();
    let mut feasible = vec![false; classes.len()];
    for (i, entry) in classes.iter().enumerate() {
        match infeasible(&entry.class) {
            Some(reason) => skipped.push(Skipped {
                name: entry.name.clone(),
                reason,
            }),
            None => feasible[i] = true,
        }
    }

    let checks: Vec<ClassCheck> = classes
        .par_iter()
        .zip(feasible.par_iter())
        .filter(|(_, &ok)| ok)
        .map(|(entry, _)| check_class(&entry.name, &entry.class))
        .collect::<Result<_>>()?;

    let mut pair_checks = Vec::new();
    for &(i, j) in pairs {
        let (Some(left), Some(right)) = (classes.get(i), classes.get(j)) else {
            return Err(crate::error::Error::Input(format!(
                "pair ({i}, {j}) is out of range"
            )));
        };
        if !feasible[i] || !feasible[j] {
            skipped.push(Skipped {
                name: format!("{} x {}", left.name, right.name),
                reason: "a factor was skipped".into(),
            });
            continue;
        }
        match check_pair(left, right)? {
            Ok(p) => pair_checks.push(p),
            Err(s) => skipped.push(s),
        }
    }

    let all_passed = checks.iter().all(|c| c.passed) && pair_checks.iter().all(|p| p.passed);
    Ok(CorpusReport {
        classes: checks,
        pairs: pair_checks,
        skipped,
        all_passed,
    })
}

/// All index pairs `(i, j)` with `i <= j`.
pub fn all_pairs(count: usize) -> Vec<(usize, usize)> {
    (0..count)
        .flat_map(|i| (i..count).map(move |j| (i, j)))
        .collect()
}
