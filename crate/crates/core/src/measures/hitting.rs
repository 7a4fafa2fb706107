//! Exact minimum hitting set over instance bitmasks.
//!
//! A teaching set for `c` is exactly a set of instances meeting every
//! difference set `c ^ c'`, so the teaching dimension is a minimum hitting
//! set problem over at most 32 elements.

/// Minimum hitting set of `sets`, if one of size at most `limit` exists.
///
/// Returns `None` when the minimum exceeds `limit` or some set is empty.
pub(crate) fn min_hitting_set(sets: &[u32], limit: usize) -> Option<u32> {
    if sets.contains(&0) {
        return None;
    }
    let mut sorted = sets.to_vec();
    sorted.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sorted.dedup();

    let mut search = Search {
        sets: &sorted,
        best: None,
        bound: limit.saturating_add(1),
    };
    let greedy = greedy_cover(&sorted);
    if (greedy.count_ones() as usize) < search.bound {
        search.best = Some(greedy);
        search.bound = greedy.count_ones() as usize;
    }
    search.branch(0, 0);
    search.best
}

/// Picks the element hitting the most uncovered sets until all are hit.
fn greedy_cover(sets: &[u32]) -> u32 {
    let mut chosen = 0u32;
    loop {
        let mut counts = [0u32; 32];
        let mut any = false;
        for &s in sets.iter().filter(|&&s| s & chosen == 0) {
            any = true;
            let mut rest = s;
            while rest != 0 {
                counts[rest.trailing_zeros() as usize] += 1;
                rest &= rest - 1;
            }
        }
        if !any {
            return chosen;
        }
        let (bit, _) = counts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("32 counters");
        chosen |= 1 << bit;
    }
}

struct Search<'a> {
    sets: &'a [u32],
    best: Option<u32>,
    /// Only solutions strictly smaller than this are of interest.
    bound: usize,
}

impl Search<'_> {
    fn branch(&mut self, chosen: u32, forbidden: u32) {
        let depth = chosen.count_ones() as usize;
        if depth >= self.bound {
            return;
        }
        let mut pick = 0u32;
        let mut pick_size = u32::MAX;
        let mut packed = 0u32;
        let mut lower = 0usize;
        for &s in self.sets {
            if s & chosen != 0 {
                continue;
            }
            let open = s & !forbidden;
            if open == 0 {
                return;
            }
            let size = open.count_ones();
            if size < pick_size {
                pick = open;
                pick_size = size;
            }
            // Pairwise disjoint uncovered sets each need their own element.
            if open & packed == 0 {
                packed |= open;
                lower += 1;
            }
        }
        if pick_size == u32::MAX {
            self.best = Some(chosen);
            self.bound = depth;
            return;
        }
        if depth + lower >= self.bound {
            return;
        }
        let mut excluded = forbidden;
        let mut rest = pick;
        while rest != 0 {
            let e = rest & rest.wrapping_neg();
            self.branch(chosen | e, excluded);
            excluded |= e;
            rest &= rest - 1;
        }
    }
}
