//! Teaching sets and teaching dimensions.

use rayon::prelude::*;
use serde::Serialize;

use crate::concept::{Concept, ConceptClass, InstanceSet, Pattern};
use crate::error::{Error, Result};
use crate::measures::hitting::min_hitting_set;

/// Instances together with the target concept's labels on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TeachingSet {
    instances: InstanceSet,
    labels: Pattern,
}

impl TeachingSet {
    /// The set `instances` labelled by `target`.
    pub fn for_concept(target: Concept, instances: InstanceSet) -> Self {
        TeachingSet {
            instances,
            labels: target.project(instances),
        }
    }

    pub fn instances(&self) -> InstanceSet {
        self.instances
    }

    pub fn labels(&self) -> Pattern {
        self.labels
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Definitional check: `target` carries these labels and no other concept of
    /// the class agrees with them on every instance.
    pub fn teaches(&self, target: Concept, class: &ConceptClass) -> bool {
        target.project(self.instances) == self.labels
            && class.contains(target)
            && class
                .iter()
                .all(|&c| c == target || c.project(self.instances) != self.labels)
    }
}

fn difference_words(target: Concept, class: &ConceptClass) -> Vec<u32> {
    class
        .iter()
        .filter(|&&c| c != target)
        .map(|c| c.word() ^ target.word())
        .collect()
}

fn check_member(target: Concept, class: &ConceptClass) -> Result<()> {
    if class.contains(target) {
        Ok(())
    } else {
        Err(Error::Input(format!(
            "concept {} is not in the class",
            target.render(class.n())
        )))
    }
}

/// A minimum-size teaching set for `target` within `class`.
pub fn teaching_dimension(target: Concept, class: &ConceptClass) -> Result<TeachingSet> {
    check_member(target, class)?;
    let mask = min_hitting_set(&difference_words(target, class), usize::MAX)
        .ok_or_else(|| Error::Internal("distinct concepts always have a teaching set".into()))?;
    Ok(TeachingSet::for_concept(
        target,
        InstanceSet::from_mask(mask),
    ))
}

/// `TD(target; class)`, or `None` when it exceeds `limit`.
pub(crate) fn td_at_most(target: Concept, class: &ConceptClass, limit: usize) -> Option<usize> {
    min_hitting_set(&difference_words(target, class), limit).map(|m| m.count_ones() as usize)
}

/// `TD(c; class)` for every concept, in class order.
pub fn teaching_dimensions(class: &ConceptClass) -> Result<Vec<usize>> {
    if class.is_empty() {
        return Err(Error::Domain(
            "teaching dimensions of the empty class".into(),
        ));
    }
    Ok(class
        .concepts()
        .par_iter()
        .map(|&c| td_at_most(c, class, usize::MAX).expect("distinct concepts are teachable"))
        .collect())
}

/// The smallest teaching dimension together with every concept attaining it.
pub(crate) fn min_td_concepts(class: &ConceptClass) -> (usize, Vec<Concept>) {
    let mut best = usize::MAX;
    let mut argmin = Vec::new();
    for &c in class {
        if let Some(t) = td_at_most(c, class, best) {
            if t < best {
                best = t;
                argmin.clear();
            }
            argmin.push(c);
        }
    }
    (best, argmin)
}

/// Best-case teaching dimension `min_c TD(c; C)`.
pub fn td_min(class: &ConceptClass) -> Result<usize> {
    if class.is_empty() {
        return Err(Error::Domain("TD_min of the empty class".into()));
    }
    Ok(min_td_concepts(class).0)
}

/// Worst-case teaching dimension `max_c TD(c; C)`.
pub fn td_max(class: &ConceptClass) -> Result<usize> {
    Ok(teaching_dimensions(class)?.into_iter().max().unwrap_or(0))
}
