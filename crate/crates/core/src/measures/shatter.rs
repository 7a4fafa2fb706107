//! Shattering, VC dimension and pattern profiles.

use std::collections::{BTreeMap, HashSet};

use serde::{Serialize, Serializer};

use crate::concept::{ConceptClass, InstanceSet};
use crate::error::{Error, Result};

/// All `k`-element subsets of the low `n` bits, in increasing numeric order.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let end: u64 = 1u64 << n;
    let mut next: Option<u64> = if k > n { None } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let v = next?;
        if v >= end && k > 0 {
            return None;
        }
        next = if v == 0 {
            None
        } else {
            // Gosper's hack.
            let t = v | (v - 1);
            let w = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
            Some(w)
        };
        Some(v as u32)
    })
}

/// Whether projecting the class onto `a` yields all `2^|a|` patterns.
pub fn is_shattered(class: &ConceptClass, a: InstanceSet) -> Result<bool> {
    class.check_instances(a)?;
    Ok(shatters(class, a.mask()))
}

#[inline]
fn shatters(class: &ConceptClass, mask: u32) -> bool {
    let width = mask.count_ones();
    width < 32
        && class.len() >= 1usize << width
        && class.pattern_count(InstanceSet::from_mask(mask)) == 1usize << width
}

/// The size of the largest shattered instance set.
///
/// Sizes are explored level by level; a set is only tested when all of its
/// one-smaller subsets are shattered, and the search stops at the first level
/// with no shattered set.
pub fn vc_dimension(class: &ConceptClass) -> Result<usize> {
    if class.is_empty() {
        return Err(Error::Domain("VC dimension of the empty class".into()));
    }
    let n = class.n();
    let mut level: Vec<u32> = vec![0];
    let mut d = 0;
    for s in 1..=n {
        if class.len() < 1usize << s {
            break;
        }
        let known: HashSet<u32> = level.iter().copied().collect();
        let mut next = Vec::new();
        for &base in &level {
            let start = 32 - base.leading_zeros() as usize;
            for e in start..n {
                let cand = base | 1 << e;
                let mut rest = cand & !(1 << e);
                let mut closed = true;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    if !known.contains(&(cand & !low)) {
                        closed = false;
                        break;
                    }
                    rest &= rest - 1;
                }
                if closed && shatters(class, cand) {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        d = s;
        level = next;
    }
    Ok(d)
}

/// Number of shattered sets of exactly `size` instances.
pub fn shattered_count(class: &ConceptClass, size: usize) -> usize {
    k_subsets(class.n(), size)
        .filter(|&m| shatters(class, m))
        .count()
}

/// For each projection size `x`, the largest number of distinct patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternProfile {
    n: usize,
    max_patterns: Vec<usize>,
}

impl PatternProfile {
    /// Largest projection size covered.
    pub fn x_max(&self) -> usize {
        self.max_patterns.len()
    }

    /// `max |project(C, A)|` over `|A| = x`, for `1 <= x <= x_max`.
    pub fn max_patterns(&self, x: usize) -> Option<usize> {
        x.checked_sub(1)
            .and_then(|i| self.max_patterns.get(i).copied())
    }

    /// The `(x, y)`-class predicate, when the profile covers `min(x, n)`.
    pub fn is_xy_class(&self, x: usize, y: usize) -> Option<bool> {
        self.max_patterns(x.min(self.n)).map(|m| m <= y)
    }

    pub fn as_map(&self) -> BTreeMap<usize, usize> {
        self.max_patterns
            .iter()
            .enumerate()
            .map(|(i, &m)| (i + 1, m))
            .collect()
    }
}

impl Serialize for PatternProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_map().serialize(serializer)
    }
}

fn max_patterns_of_size(class: &ConceptClass, x: usize, floor: usize) -> usize {
    let cap = class.len().min(1usize << x.min(31));
    let mut best = floor;
    for mask in k_subsets(class.n(), x) {
        if best >= cap {
            break;
        }
        best = best.max(class.pattern_count(InstanceSet::from_mask(mask)));
    }
    best
}

/// Pattern profile over sizes `1..=min(x_max, n)`.
pub fn pattern_profile(class: &ConceptClass, x_max: usize) -> Result<PatternProfile> {
    if x_max == 0 {
        return Err(Error::Parameter("x_max must be at least 1".into()));
    }
    let top = x_max.min(class.n());
    let mut max_patterns = Vec::with_capacity(top);
    let mut floor = 0;
    for x in 1..=top {
        // Monotone in x, so the previous maximum is a valid starting point.
        floor = max_patterns_of_size(class, x, floor);
        max_patterns.push(floor);
    }
    Ok(PatternProfile {
        n: class.n(),
        max_patterns,
    })
}

/// Whether every projection onto at most `x` instances has at most `y` patterns.
///
/// Only sets of size `min(x, n)` are examined; smaller sets cannot have more patterns.
pub fn is_xy_class(class: &ConceptClass, x: usize, y: usize) -> bool {
    let size = x.min(class.n());
    if class.len() <= y {
        return true;
    }
    k_subsets(class.n(), size).all(|m| class.pattern_count(InstanceSet::from_mask(m)) <= y)
}
