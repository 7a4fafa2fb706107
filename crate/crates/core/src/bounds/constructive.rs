//! Teaching sets built by repeated minimum restriction.
//!
//! Starting from the threshold level `x`, the class is an `(x, floor(α^x))`-class.
//! Each step fixes the labels on a smallest restriction over `k` fresh
//! instances; the restriction is then an `(x-1, floor(α^(x-1)))`-class. At
//! level 1 the class is a `(1, 1)`-class, i.e. a single concept, and the fixed
//! instances form a teaching set for it in the original class.

use crate::bounds::restriction::find_min_restriction_within;
use crate::bounds::{
    check_alpha, floor_power, lambda_star, quadratic_td_min_bound, recursion_increment,
    rtd_upper_bound, xy_threshold, BoundParams, BoundReport, ChainStep, LAMBDA_TOL,
};
use crate::concept::{Concept, ConceptClass, InstanceSet};
use crate::error::{Error, Result};
use crate::measures::{is_xy_class, vc_dimension, TeachingSet};

fn as_count(y: u64) -> usize {
    usize::try_from(y).unwrap_or(usize::MAX)
}

/// Output of [`constructive_teaching_set`].
#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub concept: Concept,
    pub teaching_set: TeachingSet,
    pub trace: BoundReport,
}

/// Runs the restriction descent on `class` with base `alpha`.
///
/// Fails with [`Error::Internal`] if any intermediate restriction is not the
/// `(x, y)`-class the argument guarantees.
pub fn constructive_teaching_set(class: &ConceptClass, alpha: f64) -> Result<Construction> {
    check_alpha(alpha)?;
    if class.is_empty() {
        return Err(Error::Domain(
            "constructive teaching set of the empty class".into(),
        ));
    }
    let d = vc_dimension(class)?;
    let lambda = lambda_star(alpha, LAMBDA_TOL)?;
    let is_default = (alpha - super::default_alpha()).abs() < 1e-12;

    if d == 0 {
        let concept = class.concepts()[0];
        return Ok(Construction {
            concept,
            teaching_set: TeachingSet::for_concept(concept, InstanceSet::empty()),
            trace: BoundReport {
                d,
                alpha,
                lambda_star: lambda,
                x_start: 0,
                chain: Vec::new(),
                f_bound: 0.0,
                ts_size: Some(0),
                rtd_bound: 0.0,
            },
        });
    }

    let x_start = xy_threshold(d, alpha)?;
    if !is_xy_class(class, x_start, as_count(floor_power(alpha, x_start)?)) {
        return Err(Error::Internal(format!(
            "class of VC dimension {d} is not an ({x_start}, floor(alpha^{x_start}))-class"
        )));
    }

    let all = class.full_instances();
    let mut current = class.clone();
    let mut fixed = InstanceSet::empty();
    let mut level = x_start;
    let mut chain = Vec::new();
    while current.len() > 1 && level >= 2 {
        let y_next = floor_power(alpha, level - 1)?;
        let y = floor_power(alpha, level)?;
        let k = recursion_increment((level - 1) as u64, y_next, y)?;
        let free = all.difference(fixed);
        let take = (k as usize).min(free.len());
        let r = find_min_restriction_within(&current, take, free)?;
        current = current.restrict(r.instances, r.pattern)?;
        fixed = fixed.union(r.instances);
        if !is_xy_class(&current, level - 1, as_count(y_next)) {
            return Err(Error::Internal(format!(
                "restriction of size {} at level {level} is not a ({}, {y_next})-class",
                r.size,
                level - 1
            )));
        }
        chain.push(ChainStep {
            x: level,
            y,
            k,
            added: Some(take),
            restriction_size: Some(r.size),
        });
        level -= 1;
    }
    if current.len() != 1 {
        return Err(Error::Internal(format!(
            "descent stopped at level {level} with {} concepts",
            current.len()
        )));
    }

    let concept = current.concepts()[0];
    let teaching_set = TeachingSet::for_concept(concept, fixed);
    if !teaching_set.teaches(concept, class) {
        return Err(Error::Internal(
            "accumulated instances do not teach the surviving concept".into(),
        ));
    }
    let rtd_bound = if is_default {
        rtd_upper_bound(d, None)?
    } else {
        rtd_upper_bound(
            d,
            Some(&BoundParams {
                alpha,
                lambda_star: lambda,
                d,
                x: x_start,
            }),
        )?
    };
    Ok(Construction {
        concept,
        teaching_set,
        trace: BoundReport {
            d,
            alpha,
            lambda_star: lambda,
            x_start,
            chain,
            f_bound: quadratic_td_min_bound(x_start, alpha)?,
            ts_size: Some(teaching_set.len()),
            rtd_bound,
        },
    })
}
