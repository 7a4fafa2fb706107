//! Recursive teaching plans.

use crate::concept::{Concept, ConceptClass};
use crate::error::{Error, Result};
use crate::measures::teaching::min_td_concepts;

/// One round of the recursive teaching process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanLevel {
    /// Concepts removed in this round, in class order.
    pub removed: Vec<Concept>,
    /// Their common teaching dimension, which is `TD_min` of the remaining class.
    pub td: usize,
}

/// The level structure obtained by repeatedly removing every concept whose
/// teaching dimension equals the current `TD_min`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TeachingPlan {
    pub n: usize,
    pub levels: Vec<PlanLevel>,
    pub rtd: usize,
}

impl TeachingPlan {
    /// Total number of concepts over all levels.
    pub fn concept_count(&self) -> usize {
        self.levels.iter().map(|l| l.removed.len()).sum()
    }
}

/// Runs the recursive removal to exhaustion. All minimizers of a round are
/// removed together, so the plan is unique.
pub fn recursive_teaching_plan(class: &ConceptClass) -> Result<TeachingPlan> {
    if class.is_empty() {
        return Err(Error::Domain("teaching plan of the empty class".into()));
    }
    let mut remaining = class.clone();
    let mut levels = Vec::new();
    let mut rtd = 0;
    while !remaining.is_empty() {
        let (td, removed) = min_td_concepts(&remaining);
        rtd = rtd.max(td);
        remaining = remaining.without(&removed);
        levels.push(PlanLevel { removed, td });
    }
    Ok(TeachingPlan {
        n: class.n(),
        levels,
        rtd,
    })
}

/// Recursive teaching dimension.
pub fn rtd(class: &ConceptClass) -> Result<usize> {
    recursive_teaching_plan(class).map(|p| p.rtd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::teaching::teaching_dimensions;

    fn class(strs: &[&str]) -> ConceptClass {
        ConceptClass::from_strs(strs).unwrap()
    }

    // Direct execution of the removal rule with full TD lists.
    fn reference_plan(c: &ConceptClass) -> Vec<(Vec<Concept>, usize)> {
        let mut rest = c.clone();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let tds = teaching_dimensions(&rest).unwrap();
            let m = *tds.iter().min().unwrap();
            let removed: Vec<Concept> = rest
                .iter()
                .zip(&tds)
                .filter(|(_, &t)| t == m)
                .map(|(c, _)| *c)
                .collect();
            rest = rest.without(&removed);
            out.push((removed, m));
        }
        out
    }

    #[test]
    fn singletons_then_zero() {
        let c = class(&["000", "100", "010", "001"]);
        let plan = recursive_teaching_plan(&c).unwrap();
        assert_eq!(plan.levels.len(), 2);
        let first: Vec<String> = plan.levels[0].removed.iter().map(|x| x.render(3)).collect();
        assert_eq!(first, vec!["001", "010", "100"]);
        assert_eq!(plan.levels[0].td, 1);
        assert_eq!(plan.levels[1].removed[0].render(3), "000");
        assert_eq!(plan.levels[1].td, 0);
        assert_eq!(plan.rtd, 1);
    }

    #[test]
    fn cube_is_one_level() {
        for n in 1..=4 {
            let plan = recursive_teaching_plan(&ConceptClass::full_cube(n).unwrap()).unwrap();
            assert_eq!(plan.levels.len(), 1);
            assert_eq!(plan.rtd, n);
        }
    }

    // Ten concepts around a 5-cycle: every concept needs three examples, while
    // no three instances are shattered. Values confirmed by brute force.
    #[test]
    fn five_cycle_class_has_rtd_above_vcd() {
        let c = class(&[
            "11000", "01100", "00110", "00011", "10001", "11010", "01101", "10110", "01011",
            "10101",
        ]);
        let plan = recursive_teaching_plan(&c).unwrap();
        assert_eq!(plan.levels.len(), 1);
        assert_eq!(plan.rtd, 3);
        assert_eq!(crate::measures::vc_dimension(&c).unwrap(), 2);
    }

    #[test]
    fn singleton_and_chain() {
        let plan = recursive_teaching_plan(&class(&["10"])).unwrap();
        assert_eq!(plan.levels.len(), 1);
        assert_eq!(plan.rtd, 0);
        assert_eq!(rtd(&class(&["000", "001", "011", "111"])).unwrap(), 1);
        assert!(matches!(
            rtd(&ConceptClass::empty(2).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn agrees_with_reference_on_all_three_cube_classes() {
        let cube = ConceptClass::full_cube(3).unwrap();
        for sel in 1u64..256 {
            let c = cube.subclass_by_mask(sel);
            let plan = recursive_teaching_plan(&c).unwrap();
            let reference = reference_plan(&c);
            assert_eq!(plan.levels.len(), reference.len());
            for (level, (removed, td)) in plan.levels.iter().zip(&reference) {
                assert_eq!(&level.removed, removed);
                assert_eq!(level.td, *td);
            }
            assert_eq!(plan.concept_count(), c.len());
            assert_eq!(plan.rtd, plan.levels.iter().map(|l| l.td).max().unwrap());
        }
    }
}
