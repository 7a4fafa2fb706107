use crate::bounds::sauer_bound;
use crate::concept::ConceptClass;
use crate::measures::vc_dimension;

/// Whether the class size attains the Sauer bound `sum_{k<=d} C(n, k)` for its
/// own VC dimension `d`. The empty class is not maximal.
pub fn is_maximal_class(class: &ConceptClass) -> bool {
    match vc_dimension(class) {
        Ok(d) => class.len() as u128 == sauer_bound(class.n(), d),
        Err(_) => false,
    }
}

/// Whether the coordinatewise AND of any two concepts is again a concept.
pub fn is_intersection_closed(class: &ConceptClass) -> bool {
    let words: Vec<u32> = class.iter().map(|c| c.word()).collect();
    words.iter().enumerate().all(|(i, &a)| {
        words[i + 1..]
            .iter()
            .all(|&b| class.contains(crate::concept::Concept::from_word(a & b)))
    })
}
