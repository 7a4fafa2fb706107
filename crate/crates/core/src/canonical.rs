//! Canonical forms under the hypercube symmetry group.
//!
//! Two classes are isomorphic when one maps to the other by permuting
//! coordinates and flipping labels coordinatewise. For `n <= EXACT_CANONICAL_MAX_N`
//! the canonical form is the lexicographically least image over the whole
//! group. Above that limit a greedy normalization is used; it is stable under
//! many symmetries but is not a true canonical form, so callers must only use
//! it to prune duplicates, never to decide isomorphism.

use itertools::Itertools;

use crate::concept::{Concept, ConceptClass};

/// Largest `n` for which [`canonical_form`] is exact.
pub const EXACT_CANONICAL_MAX_N: usize = 8;

/// Moves coordinate `perm[j]` (0-based) of `word` to position `j`.
#[inline]
fn permute_word(word: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .fold(0, |acc, (j, &src)| acc | ((word >> src & 1) << j))
}

/// Returns the canonical representative of the class's orbit.
pub fn canonical_form(class: &ConceptClass) -> ConceptClass {
    if class.is_empty() {
        return class.clone();
    }
    if class.n() <= EXACT_CANONICAL_MAX_N {
        exact_canonical(class)
    } else {
        greedy_normal_form(class)
    }
}

/// Whether [`canonical_form`] decides isomorphism exactly for this `n`.
pub fn is_exact(n: usize) -> bool {
    n <= EXACT_CANONICAL_MAX_N
}

// The least image starts with the all-zeros concept (any other first element
// could be flipped to zero), so the flip is always the image of some member.
//
// Work happens on sort keys: coordinate 1 in the top bit of an `n`-bit word, so
// that integer order is concept order.
fn exact_canonical(class: &ConceptClass) -> ConceptClass {
    let n = class.n();
    let top = n - 1;
    let mut best: Vec<u32> = Vec::new();
    let mut permuted = Vec::with_capacity(class.len());
    let mut image = Vec::with_capacity(class.len());
    for perm in (0..n).permutations(n) {
        permuted.clear();
        permuted.extend(class.iter().map(|c| {
            let w = c.word();
            perm.iter()
                .enumerate()
                .fold(0u32, |acc, (j, &src)| acc | ((w >> src & 1) << (top - j)))
        }));
        for &anchor in &permuted {
            image.clear();
            image.extend(permuted.iter().map(|&k| k ^ anchor));
            if beats(&mut image, &best) {
                best.clone_from(&image);
            }
        }
    }
    let concepts = best
        .iter()
        .map(|&k| Concept::from_word(k.reverse_bits() >> (32 - n)))
        .collect();
    ConceptClass::from_sorted_unchecked(n, concepts)
}

/// Whether the sorted `image` is less than `best` (empty meaning none yet).
/// Selection-sorts `image` only as far as needed to decide; on success it is fully sorted.
fn beats(image: &mut [u32], best: &[u32]) -> bool {
    if best.is_empty() {
        image.sort_unstable();
        return true;
    }
    for j in 0..image.len() {
        let (offset, _) = image[j..]
            .iter()
            .enumerate()
            .min_by_key(|&(_, &k)| k)
            .expect("nonempty tail");
        image.swap(j, j + offset);
        match image[j].cmp(&best[j]) {
            std::cmp::Ordering::Less => {
                image[j + 1..].sort_unstable();
                return true;
            }
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

fn greedy_normal_form(class: &ConceptClass) -> ConceptClass {
    let n = class.n();
    let size = class.len();
    // Flip each coordinate so that ones are the minority.
    let mut flip = 0u32;
    for j in 0..n {
        let ones = class.iter().filter(|c| c.word() >> j & 1 == 1).count();
        if 2 * ones > size {
            flip |= 1 << j;
        }
    }
    let flipped: Vec<u32> = class.iter().map(|c| c.word() ^ flip).collect();
    // Order coordinates by (ones count, sorted co-occurrence counts with the other columns).
    let column = |j: usize| flipped.iter().map(move |w| w >> j & 1);
    let signature = |j: usize| {
        let ones: u32 = column(j).sum();
        let mut co: Vec<u32> = (0..n)
            .filter(|&k| k != j)
            .map(|k| column(j).zip(column(k)).map(|(a, b)| a & b).sum())
            .collect();
        co.sort_unstable();
        (ones, co)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_cached_key(|&j| signature(j));
    let mut concepts: Vec<Concept> = flipped
        .iter()
        .map(|&w| Concept::from_word(permute_word(w, &order)))
        .collect();
    concepts.sort_unstable();
    ConceptClass::from_sorted_unchecked(n, concepts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(class: &ConceptClass, perm: &[usize], flip: u32) -> ConceptClass {
        ConceptClass::from_words(
            class.n(),
            class.iter().map(|c| permute_word(c.word(), perm) ^ flip),
        )
        .unwrap()
    }

    #[test]
    fn permutation_and_flip_invariance() {
        let c = ConceptClass::from_strs(&["0010", "0111", "1100", "1000", "0101"]).unwrap();
        let canon = canonical_form(&c);
        assert_eq!(canonical_form(&apply(&c, &[2, 0, 3, 1], 0)), canon);
        assert_eq!(canonical_form(&apply(&c, &[0, 1, 2, 3], 0b0001)), canon);
        assert_eq!(canonical_form(&canon), canon);
    }

    #[test]
    fn distinguishes_non_isomorphic_pairs() {
        let a = ConceptClass::from_strs(&["00", "11"]).unwrap();
        let b = ConceptClass::from_strs(&["00", "01"]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    // Orbits of {00,11} and {00,01}, enumerated by hand over all 8 symmetries.
    #[test]
    fn two_point_orbits() {
        let a = ConceptClass::from_strs(&["00", "11"]).unwrap();
        let b = ConceptClass::from_strs(&["00", "01"]).unwrap();
        let mut orbit_a = std::collections::BTreeSet::new();
        let mut orbit_b = std::collections::BTreeSet::new();
        for perm in [[0, 1], [1, 0]] {
            for flip in 0..4 {
                orbit_a.insert(apply(&a, &perm, flip).rendered());
                orbit_b.insert(apply(&b, &perm, flip).rendered());
            }
        }
        assert_eq!(orbit_a.len(), 2);
        assert_eq!(orbit_b.len(), 4);
        assert!(orbit_a.is_disjoint(&orbit_b));
        assert_eq!(canonical_form(&a).rendered(), vec!["00", "11"]);
        assert_eq!(canonical_form(&b).rendered(), vec!["00", "01"]);
    }

    #[test]
    fn invariant_under_all_symmetries_small_n() {
        // Every symmetry of the 3- and 4-cube, on a handful of classes.
        let classes = [
            ConceptClass::from_strs(&["000", "001", "011", "111"]).unwrap(),
            ConceptClass::from_strs(&["000", "100", "010", "001"]).unwrap(),
            ConceptClass::from_strs(&["0000", "0011", "0101", "1110", "1001"]).unwrap(),
        ];
        for c in &classes {
            let n = c.n();
            let canon = canonical_form(c);
            assert_eq!(canonical_form(&canon), canon);
            for perm in (0..n).permutations(n) {
                for flip in 0..(1u32 << n) {
                    assert_eq!(canonical_form(&apply(c, &perm, flip)), canon);
                }
            }
        }
    }

    #[test]
    fn greedy_form_is_stable_for_large_n() {
        let c = ConceptClass::from_words(10, [0b1, 0b110, 0b1111_0000, 0b10_0000_0001]).unwrap();
        let g = canonical_form(&c);
        assert_eq!(g.len(), c.len());
        assert_eq!(canonical_form(&g), g);
        assert!(!is_exact(10));
    }
}
