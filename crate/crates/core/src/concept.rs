//! Concept-class kernel.
//!
//! A concept over the instance space `[n] = {1, ..., n}` is stored in a single
//! `u32`: coordinate `i` lives in bit `i - 1`. Instance subsets use the same
//! layout, so projections and difference sets are plain bit operations.
//!
//! Concepts are ordered lexicographically by their label strings (coordinate 1
//! first), which is the iteration order of every [`ConceptClass`].

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// Largest supported instance-space size.
pub const MAX_INSTANCES: usize = 30;

/// Extracts the bits of `word` selected by `mask` into the low bits of the result,
/// preserving their order.
#[inline]
pub(crate) fn extract_bits(word: u32, mask: u32) -> u32 {
    let mut out = 0u32;
    let mut rest = mask;
    let mut j = 0;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        if word & low != 0 {
            out |= 1 << j;
        }
        j += 1;
        rest &= rest - 1;
    }
    out
}

/// Inverse of [`extract_bits`]: spreads the low bits of `packed` onto the positions of `mask`.
#[inline]
pub(crate) fn deposit_bits(packed: u32, mask: u32) -> u32 {
    let mut out = 0u32;
    let mut rest = mask;
    let mut j = 0;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        if packed & (1 << j) != 0 {
            out |= low;
        }
        j += 1;
        rest &= rest - 1;
    }
    out
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A single concept: one label per coordinate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Concept(u32);

impl Concept {
    pub const fn from_word(word: u32) -> Self {
        Concept(word)
    }

    pub const fn word(self) -> u32 {
        self.0
    }

    /// Label of 1-based coordinate `i`.
    pub fn label(self, i: usize) -> bool {
        debug_assert!((1..=32).contains(&i));
        self.0 >> (i - 1) & 1 == 1
    }

    /// Parses a string over `{0,1}`; the first character is coordinate 1.
    pub fn parse(s: &str) -> Option<Self> {
        if s.is_empty() || s.len() > MAX_INSTANCES {
            return None;
        }
        let mut word = 0u32;
        for (j, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => word |= 1 << j,
                _ => return None,
            }
        }
        Some(Concept(word))
    }

    /// Renders the first `n` coordinates as a label string.
    pub fn render(self, n: usize) -> String {
        (1..=n)
            .map(|i| if self.label(i) { '1' } else { '0' })
            .collect()
    }

    /// Labels of this concept on `a`, in increasing coordinate order.
    pub fn project(self, a: InstanceSet) -> Pattern {
        Pattern {
            bits: extract_bits(self.0, a.0),
            len: a.len() as u8,
        }
    }

    #[inline]
    fn lex_key(self) -> u32 {
        self.0.reverse_bits()
    }
}

impl Ord for Concept {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_key().cmp(&other.lex_key())
    }
}

impl PartialOrd for Concept {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The coordinates on which two concepts disagree.
///
/// A set of instances distinguishes `c` from `c2` exactly when it intersects this set.
pub fn difference_set(c: Concept, c2: Concept) -> InstanceSet {
    InstanceSet(c.0 ^ c2.0)
}

/// A subset of the instance space `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct InstanceSet(u32);

impl InstanceSet {
    pub const fn empty() -> Self {
        InstanceSet(0)
    }

    pub fn full(n: usize) -> Self {
        InstanceSet(low_mask(n))
    }

    pub const fn from_mask(mask: u32) -> Self {
        InstanceSet(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// Builds a set from 1-based coordinates.
    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> Result<Self> {
        let mut mask = 0u32;
        for i in coords {
            if i == 0 || i > MAX_INSTANCES {
                return Err(Error::Input(format!(
                    "coordinate {i} is outside 1..={MAX_INSTANCES}"
                )));
            }
            mask |= 1 << (i - 1);
        }
        Ok(InstanceSet(mask))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn is_subset(self, other: InstanceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: InstanceSet) -> InstanceSet {
        InstanceSet(self.0 | other.0)
    }

    pub fn intersection(self, other: InstanceSet) -> InstanceSet {
        InstanceSet(self.0 & other.0)
    }

    pub fn difference(self, other: InstanceSet) -> InstanceSet {
        InstanceSet(self.0 & !other.0)
    }

    /// Members in increasing order, 1-based.
    pub fn coords(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Largest member, if any.
    pub fn max_coord(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }
}

/// Lexicographic order of the sorted coordinate lists.
impl Ord for InstanceSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords().cmp(other.coords())
    }
}

impl PartialOrd for InstanceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for InstanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, i) in self.coords().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for InstanceSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coords())
    }
}

/// Labels on a projection set, in increasing coordinate order.
///
/// Bit `j` of `bits` is the label of the `j`-th smallest coordinate of the set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Pattern {
    bits: u32,
    len: u8,
}

impl Pattern {
    pub fn new(bits: u32, len: usize) -> Result<Self> {
        if len > 32 || (len < 32 && bits >> len != 0) {
            return Err(Error::Input(format!(
                "pattern bits {bits:#b} do not fit length {len}"
            )));
        }
        Ok(Pattern {
            bits,
            len: len as u8,
        })
    }

    pub const fn empty() -> Self {
        Pattern { bits: 0, len: 0 }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s.is_empty() {
            return Some(Pattern::empty());
        }
        Concept::parse(s).map(|c| Pattern {
            bits: c.0,
            len: s.len() as u8,
        })
    }

    pub const fn bits(self) -> u32 {
        self.bits
    }

    pub const fn len(self) -> usize {
        self.len as usize
    }

    pub const fn is_empty(self) -> bool {
        self.len == 0
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.bits.reverse_bits().cmp(&other.bits.reverse_bits()))
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "ε");
        }
        for j in 0..self.len {
            write!(f, "{}", self.bits >> j & 1)?;
        }
        Ok(())
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let s: String = (0..self.len)
            .map(|j| if self.bits >> j & 1 == 1 { '1' } else { '0' })
            .collect();
        serializer.serialize_str(&s)
    }
}

/// A finite set of distinct concepts over `[n]`, kept in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConceptClass {
    n: usize,
    concepts: Vec<Concept>,
}

impl ConceptClass {
    /// Builds a class, rejecting duplicates and labels outside `[n]`.
    pub fn new<I: IntoIterator<Item = Concept>>(n: usize, concepts: I) -> Result<Self> {
        check_n(n)?;
        let outside = !low_mask(n);
        let mut concepts: Vec<Concept> = concepts.into_iter().collect();
        if let Some(c) = concepts.iter().find(|c| c.0 & outside != 0) {
            return Err(Error::Input(format!(
                "concept word {:#x} has labels beyond n = {n}",
                c.0
            )));
        }
        concepts.sort_unstable();
        if let Some(w) = concepts.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!(
                "duplicate concept {}",
                w[0].render(n)
            )));
        }
        Ok(ConceptClass { n, concepts })
    }

    pub fn from_words<I: IntoIterator<Item = u32>>(n: usize, words: I) -> Result<Self> {
        Self::new(n, words.into_iter().map(Concept))
    }

    /// Parses label strings; all must have the same length.
    pub fn from_strs<S: AsRef<str>>(strs: &[S]) -> Result<Self> {
        let n = strs
            .first()
            .map(|s| s.as_ref().len())
            .ok_or_else(|| Error::Input("cannot infer n from an empty list".into()))?;
        let mut concepts = Vec::with_capacity(strs.len());
        for s in strs {
            let s = s.as_ref();
            if s.len() != n {
                return Err(Error::Input(format!(
                    "concept {s:?} has length {}, expected {n}",
                    s.len()
                )));
            }
            concepts.push(
                Concept::parse(s).ok_or_else(|| Error::Input(format!("invalid concept {s:?}")))?,
            );
        }
        Self::new(n, concepts)
    }

    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(ConceptClass {
            n,
            concepts: Vec::new(),
        })
    }

    /// All `2^n` concepts.
    pub fn full_cube(n: usize) -> Result<Self> {
        check_n(n)?;
        if n > 20 {
            return Err(Error::Capacity(format!(
                "the {n}-cube is too large to materialize"
            )));
        }
        Self::from_words(n, 0..(1u32 << n))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, concepts: Vec<Concept>) -> Self {
        debug_assert!(concepts.windows(2).all(|w| w[0] < w[1]));
        ConceptClass { n, concepts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Concept> {
        self.concepts.iter()
    }

    pub fn contains(&self, c: Concept) -> bool {
        self.concepts.binary_search(&c).is_ok()
    }

    pub fn full_instances(&self) -> InstanceSet {
        InstanceSet::full(self.n)
    }

    /// A copy of the class with the given concepts removed.
    pub fn without(&self, removed: &[Concept]) -> ConceptClass {
        let concepts = self
            .concepts
            .iter()
            .copied()
            .filter(|c| !removed.contains(c))
            .collect();
        ConceptClass {
            n: self.n,
            concepts,
        }
    }

    /// Subclass selected by a bitmask over concept positions.
    pub fn subclass_by_mask(&self, selection: u64) -> ConceptClass {
        let concepts = self
            .concepts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j < 64 && selection >> j & 1 == 1)
            .map(|(_, c)| *c)
            .collect();
        ConceptClass {
            n: self.n,
            concepts,
        }
    }

    pub fn check_instances(&self, a: InstanceSet) -> Result<()> {
        if a.is_subset(self.full_instances()) {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "instance set {a} is not a subset of [{}]",
                self.n
            )))
        }
    }

    /// The distinct projections `{c|_A : c in C}`, sorted.
    pub fn project(&self, a: InstanceSet) -> Result<Vec<Pattern>> {
        self.check_instances(a)?;
        let mut patterns: Vec<Pattern> = self.concepts.iter().map(|c| c.project(a)).collect();
        patterns.sort_unstable();
        patterns.dedup();
        Ok(patterns)
    }

    /// `|project(C, A)|` without materializing patterns. `a` must be within `[n]`.
    pub fn pattern_count(&self, a: InstanceSet) -> usize {
        let mask = a.mask();
        let width = a.len();
        if width <= 6 {
            let mut seen = 0u64;
            for c in &self.concepts {
                seen |= 1u64 << extract_bits(c.0, mask);
            }
            seen.count_ones() as usize
        } else {
            let mut masked: Vec<u32> = self.concepts.iter().map(|c| c.0 & mask).collect();
            masked.sort_unstable();
            masked.dedup();
            masked.len()
        }
    }

    /// The subclass `C^{Y,b}` of concepts labelled `b` on `Y`. May be empty.
    pub fn restrict(&self, y: InstanceSet, b: Pattern) -> Result<ConceptClass> {
        self.check_instances(y)?;
        if b.len() != y.len() {
            return Err(Error::Input(format!(
                "pattern {b} has length {}, but the instance set {y} has {} members",
                b.len(),
                y.len()
            )));
        }
        let target = deposit_bits(b.bits(), y.mask());
        Ok(self.restrict_word(y.mask(), target))
    }

    /// Restriction by a mask and the required labels already spread onto it.
    pub(crate) fn restrict_word(&self, mask: u32, target: u32) -> ConceptClass {
        let concepts = self
            .concepts
            .iter()
            .copied()
            .filter(|c| c.0 & mask == target)
            .collect();
        ConceptClass {
            n: self.n,
            concepts,
        }
    }

    /// The Cartesian product: concepts of `self` on coordinates `1..=n1`,
    /// concepts of `other` on `n1+1..=n1+n2`.
    pub fn product(&self, other: &ConceptClass) -> Result<ConceptClass> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::Input("product factors must be nonempty".into()));
        }
        let n = self.n + other.n;
        if n > MAX_INSTANCES {
            return Err(Error::Capacity(format!(
                "product needs {n} instances, the limit is {MAX_INSTANCES}"
            )));
        }
        let shift = self.n;
        let concepts = self.concepts.iter().flat_map(|a| {
            other
                .concepts
                .iter()
                .map(move |b| Concept(a.0 | (b.0 << shift)))
        });
        ConceptClass::new(n, concepts)
    }

    /// Renders each concept as a label string.
    pub fn rendered(&self) -> Vec<String> {
        self.concepts.iter().map(|c| c.render(self.n)).collect()
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_INSTANCES).contains(&n) {
        Ok(())
    } else {
        Err(Error::Capacity(format!(
            "n = {n} is outside 1..={MAX_INSTANCES}"
        )))
    }
}

impl<'a> IntoIterator for &'a ConceptClass {
    type Item = &'a Concept;
    type IntoIter = std::slice::Iter<'a, Concept>;

    fn into_iter(self) -> Self::IntoIter {
        self.concepts.iter()
    }
}

impl fmt::Display for ConceptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, c) in self.concepts.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.render(self.n))?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ConceptClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ConceptClass", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("concepts", &self.rendered())?;
        st.end()
    }
}
