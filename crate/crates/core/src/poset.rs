//! Finite labeled posets.
//!
//! A [`Poset`] keeps its atoms sorted by label and stores the strict order as
//! one bitmask row per atom, so posets on at most [`MAX_ATOMS`] atoms are
//! supported. Equality is structural: two posets are equal exactly when they
//! have the same atoms and the same strict relation.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub const MAX_ATOMS: usize = 64;

/// An opaque atom label.
///
/// Labels are compared lexicographically; that order is only used to make
/// every serialized list reproducible.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(label: &str) -> Self {
        Atom(Arc::from(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::new(s)
    }
}

impl From<String> for Atom {
    fn from(s: String) -> Self {
        Atom(Arc::from(s))
    }
}

impl From<&Atom> for Atom {
    fn from(a: &Atom) -> Self {
        a.clone()
    }
}

impl From<u32> for Atom {
    fn from(n: u32) -> Self {
        Atom::from(alloc::format!("{n}"))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type AtomSet = BTreeSet<Atom>;

/// The interval `[lo, hi]` of some poset. Whether it is a (proper) interval
/// is a question for the poset it is used with.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Atom,
    pub hi: Atom,
}

impl Interval {
    pub fn new(lo: impl Into<Atom>, hi: impl Into<Atom>) -> Self {
        Interval {
            lo: lo.into(),
            hi: hi.into(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A finite strict partial order on labeled atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poset {
    atoms: Vec<Atom>,
    // above[i] has bit j set iff atoms[i] ≺ atoms[j]
    above: Vec<u64>,
}

impl Poset {
    pub fn empty() -> Self {
        Poset {
            atoms: Vec::new(),
            above: Vec::new(),
        }
    }

    /// Builds the transitive closure of `pairs` on `atoms`.
    pub fn new<A, I, P>(atoms: I, pairs: P) -> Result<Self>
    where
        A: Into<Atom>,
        I: IntoIterator<Item = A>,
        P: IntoIterator<Item = (A, A)>,
    {
        let mut atoms: Vec<Atom> = atoms.into_iter().map(Into::into).collect();
        atoms.sort();
        for w in atoms.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateAtom(w[0].clone()));
            }
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms(atoms.len(), MAX_ATOMS));
        }
        let mut above = alloc::vec![0u64; atoms.len()];
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            let i = atoms
                .binary_search(&a)
                .map_err(|_| Error::UnknownAtom(a.clone()))?;
            let j = atoms
                .binary_search(&b)
                .map_err(|_| Error::UnknownAtom(b.clone()))?;
            above[i] |= bit(j);
        }
        Self::from_masks(atoms, above)
    }

    /// Alias of [`Poset::new`] matching the relation-list input format.
    pub fn from_relations<A, I, P>(atoms: I, pairs: P) -> Result<Self>
    where
        A: Into<Atom>,
        I: IntoIterator<Item = A>,
        P: IntoIterator<Item = (A, A)>,
    {
        Self::new(atoms, pairs)
    }

    /// Sorted atoms plus generating masks; closes transitively.
    fn from_masks(atoms: Vec<Atom>, mut above: Vec<u64>) -> Result<Self> {
        let n = atoms.len();
        for k in 0..n {
            for i in 0..n {
                if above[i] & bit(k) != 0 {
                    above[i] |= above[k];
                }
            }
        }
        for i in 0..n {
            if above[i] & bit(i) != 0 {
                return Err(Error::Cycle(atoms[i].clone()));
            }
        }
        Ok(Poset { atoms, above })
    }

    /// Total order following the given label sequence.
    pub fn chain<A: Into<Atom>>(labels: impl IntoIterator<Item = A>) -> Result<Self> {
        let labels: Vec<Atom> = labels.into_iter().map(Into::into).collect();
        let pairs: Vec<(Atom, Atom)> = labels
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::new(labels, pairs)
    }

    /// Chain on the labels `1, 2, …, n`.
    pub fn chain_n(n: u32) -> Self {
        Self::chain(1..=n).expect("integer labels are distinct")
    }

    pub fn antichain<A: Into<Atom>>(labels: impl IntoIterator<Item = A>) -> Result<Self> {
        Self::new(labels, core::iter::empty())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_set(&self) -> AtomSet {
        self.atoms.iter().cloned().collect()
    }

    pub fn index_of(&self, a: &Atom) -> Option<usize> {
        self.atoms.binary_search(a).ok()
    }

    pub(crate) fn index(&self, a: &Atom) -> Result<usize> {
        self.index_of(a).ok_or_else(|| Error::UnknownAtom(a.clone()))
    }

    #[inline]
    pub(crate) fn lt_idx(&self, i: usize, j: usize) -> bool {
        self.above[i] & bit(j) != 0
    }

    #[inline]
    pub(crate) fn le_idx(&self, i: usize, j: usize) -> bool {
        i == j || self.lt_idx(i, j)
    }

    #[inline]
    pub(crate) fn above_mask(&self, i: usize) -> u64 {
        self.above[i]
    }

    pub(crate) fn below_mask(&self, j: usize) -> u64 {
        (0..self.len())
            .filter(|&i| self.lt_idx(i, j))
            .fold(0, |m, i| m | bit(i))
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    /// `a ≺ b`; false when either atom is foreign.
    pub fn less(&self, a: &Atom, b: &Atom) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.lt_idx(i, j),
            _ => false,
        }
    }

    pub fn less_eq(&self, a: &Atom, b: &Atom) -> bool {
        a == b && self.index_of(a).is_some() || self.less(a, b)
    }

    /// All strict relations, sorted.
    pub fn relations(&self) -> Vec<(Atom, Atom)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.above[i]) {
                out.push((self.atoms[i].clone(), self.atoms[j].clone()));
            }
        }
        out
    }

    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Covering relations of the Hasse diagram, sorted.
    pub fn covers(&self) -> Vec<(Atom, Atom)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.above[i]) {
                let between = self.above[i] & self.below_mask(j);
                if between == 0 {
                    out.push((self.atoms[i].clone(), self.atoms[j].clone()));
                }
            }
        }
        out
    }

    pub(crate) fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a Atom>) -> Result<u64> {
        let mut m = 0;
        for a in set {
            m |= bit(self.index(a)?);
        }
        Ok(m)
    }

    pub(crate) fn atoms_of_mask(&self, mask: u64) -> AtomSet {
        bits(mask).map(|i| self.atoms[i].clone()).collect()
    }

    /// Induced order on a subset of the atoms.
    pub fn restrict(&self, subset: &AtomSet) -> Result<Poset> {
        let mask = self.mask_of(subset)?;
        Ok(self.restrict_mask(mask))
    }

    pub(crate) fn restrict_mask(&self, mask: u64) -> Poset {
        let keep: Vec<usize> = bits(mask).collect();
        let atoms = keep.iter().map(|&i| self.atoms[i].clone()).collect();
        let above = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.lt_idx(i, j))
                    .fold(0u64, |m, (k, _)| m | bit(k))
            })
            .collect();
        Poset { atoms, above }
    }

    /// `self.other`: every atom of `self` below every atom of `other`.
    pub fn concatenate(&self, other: &Poset) -> Result<Poset> {
        self.merge(other, true)
    }

    /// Disjoint union with no relations between the parts.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        self.merge(other, false)
    }

    fn merge(&self, other: &Poset, stack: bool) -> Result<Poset> {
        let mut atoms: Vec<Atom> = self.atoms.iter().chain(&other.atoms).cloned().collect();
        atoms.sort();
        for w in atoms.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Overlap(w[0].clone()));
            }
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms(atoms.len(), MAX_ATOMS));
        }
        let remap = |p: &Poset| -> Vec<usize> {
            p.atoms
                .iter()
                .map(|a| atoms.binary_search(a).expect("atom present"))
                .collect()
        };
        let (ra, rb) = (remap(self), remap(other));
        let upper: u64 = rb.iter().fold(0, |m, &j| m | bit(j));
        let mut above = alloc::vec![0u64; atoms.len()];
        for (i, &gi) in ra.iter().enumerate() {
            above[gi] = bits(self.above[i]).fold(0, |m, j| m | bit(ra[j]));
            if stack {
                above[gi] |= upper;
            }
        }
        for (i, &gi) in rb.iter().enumerate() {
            above[gi] = bits(other.above[i]).fold(0, |m, j| m | bit(rb[j]));
        }
        Ok(Poset { atoms, above })
    }

    /// Proper intervals `[i, j]` with `i ≺ j`, sorted by `(lo, hi)`.
    pub fn proper_intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.above[i]) {
                out.push(Interval::new(&self.atoms[i], &self.atoms[j]));
            }
        }
        out
    }

    pub fn is_proper_interval(&self, iv: &Interval) -> bool {
        self.less(&iv.lo, &iv.hi)
    }

    pub(crate) fn interval_indices(&self, iv: &Interval) -> Result<(usize, usize)> {
        match (self.index_of(&iv.lo), self.index_of(&iv.hi)) {
            (Some(i), Some(j)) if self.lt_idx(i, j) => Ok((i, j)),
            _ => Err(Error::NotAnInterval {
                lo: iv.lo.clone(),
                hi: iv.hi.clone(),
            }),
        }
    }

    /// Containment `a ⊆ b` of proper intervals: `b.lo ⪯ a.lo` and `a.hi ⪯ b.hi`.
    pub fn interval_leq(&self, a: &Interval, b: &Interval) -> Result<bool> {
        let ((ai, aj), (bi, bj)) = match (self.interval_indices(a), self.interval_indices(b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Err(Error::MixedReference),
        };
        Ok(self.le_idx(bi, ai) && self.le_idx(aj, bj))
    }

    /// Size of a largest antichain, by Dilworth: `n` minus a maximum matching
    /// in the comparability graph.
    pub fn width(&self) -> usize {
        let n = self.len();
        let mut matched_to: Vec<Option<usize>> = alloc::vec![None; n];
        fn augment(
            p: &Poset,
            i: usize,
            seen: &mut u64,
            matched_to: &mut [Option<usize>],
        ) -> bool {
            for j in bits(p.above[i]) {
                if *seen & bit(j) != 0 {
                    continue;
                }
                *seen |= bit(j);
                if matched_to[j].is_none_or(|k| augment(p, k, seen, matched_to)) {
                    matched_to[j] = Some(i);
                    return true;
                }
            }
            false
        }
        let mut matching = 0;
        for i in 0..n {
            let mut seen = 0;
            if augment(self, i, &mut seen, &mut matched_to) {
                matching += 1;
            }
        }
        n - matching
    }

    /// `x, z ∈ S` and `x ⪯ y ⪯ z` imply `y ∈ S`.
    pub fn is_convex(&self, subset: &AtomSet) -> Result<bool> {
        let mask = self.mask_of(subset)?;
        Ok(self.is_convex_mask(mask))
    }

    pub(crate) fn is_convex_mask(&self, mask: u64) -> bool {
        let ups = bits(mask).fold(0, |m, i| m | self.above[i]);
        let downs = bits(mask).fold(0, |m, j| m | self.below_mask(j));
        (ups & downs & !mask) == 0
    }

    /// Atoms of `self` are atoms of `r` and every relation of `self` holds in `r`.
    pub fn is_subposet_of(&self, r: &Poset) -> bool {
        let Ok(map) = self
            .atoms
            .iter()
            .map(|a| r.index(a))
            .collect::<Result<Vec<_>>>()
        else {
            return false;
        };
        (0..self.len()).all(|i| bits(self.above[i]).all(|j| r.lt_idx(map[i], map[j])))
    }

    pub fn minimal_elements(&self) -> Vec<Atom> {
        (0..self.len())
            .filter(|&j| self.below_mask(j) == 0)
            .map(|j| self.atoms[j].clone())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<Atom> {
        (0..self.len())
            .filter(|&i| self.above[i] == 0)
            .map(|i| self.atoms[i].clone())
            .collect()
    }

    /// Down-sets `D` (nonempty, proper) with every atom of `D` below every
    /// atom outside it, as masks of increasing size. These are exactly the
    /// places where the poset splits as a concatenation.
    pub(crate) fn concatenation_cuts(&self) -> Vec<u64> {
        let n = self.len();
        let below_counts: Vec<u32> = (0..n).map(|j| self.below_mask(j).count_ones()).collect();
        let mut cuts = Vec::new();
        for k in 1..n {
            let d = (0..n)
                .filter(|&i| (below_counts[i] as usize) < k)
                .fold(0u64, |m, i| m | bit(i));
            if d.count_ones() as usize != k {
                continue;
            }
            let rest = self.full_mask() & !d;
            if bits(d).all(|i| self.above[i] & rest == rest) {
                cuts.push(d);
            }
        }
        cuts
    }

    /// The finest decomposition `self = P|B1 . … . P|Bk` (ordinal summands).
    pub fn concatenation_blocks(&self) -> Vec<AtomSet> {
        let mut blocks = Vec::new();
        let mut prev = 0u64;
        for cut in self.concatenation_cuts().into_iter().chain([self.full_mask()]) {
            if cut != prev {
                blocks.push(self.atoms_of_mask(cut & !prev));
            }
            prev = cut;
        }
        if self.is_empty() {
            blocks.clear();
        }
        blocks
    }

    /// Every partial order on the given (distinct) labels.
    pub fn enumerate_all<A: Into<Atom>>(labels: impl IntoIterator<Item = A>) -> Result<Vec<Poset>> {
        let base = Poset::antichain(labels)?;
        let n = base.len();
        if n > 8 {
            return Err(Error::TooManyAtoms(n, 8));
        }
        let mut layer: Vec<Vec<u64>> = alloc::vec![Vec::new()];
        for k in 0..n {
            let mut next = Vec::new();
            for above in &layer {
                let lt = |i: usize, j: usize| above[i] & bit(j) != 0;
                let full = bit(k) - 1;
                for down in 0..=full {
                    // down-closed
                    if !bits(down).all(|d| (0..k).all(|x| !lt(x, d) || down & bit(x) != 0)) {
                        continue;
                    }
                    for up in 0..=full {
                        if up & down != 0 {
                            continue;
                        }
                        if !bits(up).all(|u| above[u] & full & !up == 0) {
                            continue;
                        }
                        if !bits(down).all(|d| above[d] & up == up) {
                            continue;
                        }
                        let mut ext = above.clone();
                        for d in bits(down) {
                            ext[d] |= bit(k);
                        }
                        ext.push(up);
                        next.push(ext);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Poset> = layer
            .into_iter()
            .map(|above| Poset {
                atoms: base.atoms.clone(),
                above,
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset{{")?;
        for (k, a) in self.atoms.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " |")?;
        for (a, b) in self.covers() {
            write!(f, " {a}<{b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
