use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::concept::{ConceptClass, InstanceSet, Pattern};
use crate::error::{Error, Result};

/// A smallest nonempty subclass `C^{Y,b}` with `|Y| = k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Restriction {
    pub instances: InstanceSet,
    pub pattern: Pattern,
    pub size: usize,
}

/// Smallest nonempty restriction over all `k`-subsets of `[n]`.
///
/// Ties go to the lexicographically smallest `(Y, b)`.
pub fn find_min_restriction(class: &ConceptClass, k: usize) -> Result<Restriction> {
    find_min_restriction_within(class, k, class.full_instances())
}

/// As [`find_min_restriction`], with `Y` drawn from `domain` only.
pub fn find_min_restriction_within(
    class: &ConceptClass,
    k: usize,
    domain: InstanceSet,
) -> Result<Restriction> {
    class.check_instances(domain)?;
    if class.is_empty() {
        return Err(Error::Domain(
            "restriction search on the empty class".into(),
        ));
    }
    if k == 0 || k > domain.len() {
        return Err(Error::Parameter(format!(
            "k = {k} must lie in 1..={} (available instances)",
            domain.len()
        )));
    }
    let coords: Vec<usize> = domain.coords().collect();
    // itertools yields combinations of an increasing list in lexicographic order.
    let candidates: Vec<InstanceSet> = coords
        .into_iter()
        .combinations(k)
        .map(|ys| InstanceSet::from_coords(ys).expect("coordinates come from a valid set"))
        .collect();
    let best = candidates
        .par_iter()
        .enumerate()
        .map(|(idx, &y)| {
            let (pattern, size) = smallest_block(class, y);
            (size, idx, pattern)
        })
        .min_by_key(|&(size, idx, _)| (size, idx))
        .expect("at least one candidate");
    let (size, idx, pattern) = best;
    Ok(Restriction {
        instances: candidates[idx],
        pattern,
        size,
    })
}

/// The least-populated realized pattern on `y`, preferring the smallest pattern on ties.
fn smallest_block(class: &ConceptClass, y: InstanceSet) -> (Pattern, usize) {
    let mut patterns: Vec<Pattern> = class.iter().map(|c| c.project(y)).collect();
    patterns.sort_unstable();
    patterns
        .chunk_by(|a, b| a == b)
        .map(|run| (run[0], run.len()))
        .min_by_key(|&(p, count)| (count, p))
        .expect("nonempty class")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> ConceptClass {
        ConceptClass::from_strs(&["000", "001", "011", "111"]).unwrap()
    }

    // Exhaustive scan of all (Y, b) with |Y| = k, in lexicographic order.
    fn brute(class: &ConceptClass, k: usize) -> Restriction {
        let mut best: Option<Restriction> = None;
        let mut ys: Vec<InstanceSet> = (0u32..1 << class.n())
            .filter(|m| m.count_ones() as usize == k)
            .map(InstanceSet::from_mask)
            .collect();
        ys.sort();
        for y in ys {
            for b in 0u32..1 << k {
                let p = Pattern::new(b, k).unwrap();
                let r = class.restrict(y, p).unwrap();
                if r.is_empty() {
                    continue;
                }
                let cand = Restriction {
                    instances: y,
                    pattern: p,
                    size: r.len(),
                };
                let better = match best {
                    None => true,
                    Some(b0) => {
                        (cand.size, cand.instances, cand.pattern)
                            < (b0.size, b0.instances, b0.pattern)
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn chain_tie_resolves_lexicographically() {
        let r = find_min_restriction(&chain(), 1).unwrap();
        assert_eq!(r.instances, InstanceSet::from_coords([1]).unwrap());
        assert_eq!(r.pattern, Pattern::parse("1").unwrap());
        assert_eq!(r.size, 1);
    }

    #[test]
    fn cube_and_singleton() {
        let cube = ConceptClass::full_cube(2).unwrap();
        let r = find_min_restriction(&cube, 1).unwrap();
        assert_eq!(
            (r.instances, r.pattern, r.size),
            (
                InstanceSet::from_coords([1]).unwrap(),
                Pattern::parse("0").unwrap(),
                2
            )
        );
        let single = ConceptClass::from_strs(&["0110"]).unwrap();
        for k in 1..=4 {
            assert_eq!(find_min_restriction(&single, k).unwrap().size, 1);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            find_min_restriction(&chain(), 4),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            find_min_restriction(&chain(), 0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            find_min_restriction(&ConceptClass::empty(3).unwrap(), 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn matches_exhaustive_scan() {
        let cube = ConceptClass::full_cube(4).unwrap();
        let mut sel = 0x2545_F491u64;
        for _ in 0..200 {
            sel = sel
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let c = cube.subclass_by_mask((sel >> 20) & 0xFFFF | 1);
            for k in 1..=4 {
                assert_eq!(
                    find_min_restriction(&c, k).unwrap(),
                    brute(&c, k),
                    "{c} k={k}"
                );
            }
        }
    }

    #[test]
    fn domain_limits_candidates() {
        let domain = InstanceSet::from_coords([2, 3]).unwrap();
        let r = find_min_restriction_within(&chain(), 1, domain).unwrap();
        assert_eq!(r.instances, InstanceSet::from_coords([3]).unwrap());
        assert_eq!(r.size, 1);
    }
}
