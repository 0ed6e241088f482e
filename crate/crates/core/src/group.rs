//! Concrete pattern groups `UT_R` over a prime field, used as a brute-force
//! oracle for the closed formulas.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::intervals::{ibit, ibits, IntervalIndex, IntervalMask};
use crate::nonnesting::NNPartition;
use crate::poset::{Atom, Interval, Poset};

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    p: u32,
}

impl FieldScalar {
    pub fn new(value: u64, p: u64) -> Result<Self> {
        if !is_prime(p) || p > u64::from(u16::MAX) {
            return Err(Error::NotPrime(p));
        }
        if value >= p {
            return Err(Error::NotAResidue(value));
        }
        Ok(FieldScalar {
            value: value as u32,
            p: p as u32,
        })
    }

    /// Reduces any integer modulo `p`.
    pub fn reduce(value: i64, p: u32) -> Self {
        FieldScalar {
            value: value.rem_euclid(i64::from(p)) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }
}

/// Element of a [`PatternGroup`]: one residue per proper interval, in the
/// group's canonical interval order; the diagonal is implicitly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    entries: Vec<u32>,
}

impl GroupElement {
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub(crate) fn support(&self) -> IntervalMask {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .fold(0, |m, (k, _)| m | ibit(k))
    }
}

#[derive(Debug, Clone)]
pub struct PatternGroup {
    index: IntervalIndex,
    p: u32,
    // for interval k = [i,l], the pairs ([i,j],[j,l]) with i ≺ j ≺ l
    terms: Vec<Vec<(usize, usize)>>,
    // intervals sorted so every proper subinterval comes first
    by_size: Vec<usize>,
}

impl PatternGroup {
    pub fn new(r: &Poset, p: u64) -> Result<Self> {
        let p = FieldScalar::new(0, p)?.modulus();
        let index = IntervalIndex::new(r)?;
        let terms = (0..index.len())
            .map(|k| {
                let (i, l) = index.ends(k);
                (0..r.len())
                    .filter(|&j| r.lt_idx(i, j) && r.lt_idx(j, l))
                    .map(|j| {
                        (
                            index.slot(i, j).expect("interval"),
                            index.slot(j, l).expect("interval"),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut by_size: Vec<usize> = (0..index.len()).collect();
        by_size.sort_by_key(|&k| index.within(k).count_ones());
        Ok(PatternGroup {
            index,
            p,
            terms,
            by_size,
        })
    }

    pub fn poset(&self) -> &Poset {
        self.index.poset()
    }

    pub fn index(&self) -> &IntervalIndex {
        &self.index
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// `log_p |UT_R|`.
    pub fn rank(&self) -> usize {
        self.index.len()
    }

    /// `|UT_R|`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        u64::from(self.p).checked_pow(self.rank() as u32)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            entries: alloc::vec![0; self.rank()],
        }
    }

    /// `e_ab(t)`.
    pub fn generator(&self, a: &Atom, b: &Atom, t: FieldScalar) -> Result<GroupElement> {
        let r = self.poset();
        let (i, j) = (r.index(a)?, r.index(b)?);
        let k = self
            .index
            .slot(i, j)
            .ok_or_else(|| Error::NotComparable(a.clone(), b.clone()))?;
        let mut g = self.identity();
        g.entries[k] = t.value % self.p;
        Ok(g)
    }

    /// Element with the given entries; unlisted intervals are 0.
    pub fn element(&self, entries: &BTreeMap<Interval, u32>) -> Result<GroupElement> {
        let mut g = self.identity();
        for (iv, &v) in entries {
            g.entries[self.index.position(iv)?] = v % self.p;
        }
        Ok(g)
    }

    /// Nonzero entries, keyed by interval.
    pub fn entries_map(&self, g: &GroupElement) -> BTreeMap<Interval, u32> {
        g.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| (self.index.interval(k).clone(), v))
            .collect()
    }

    pub fn multiply(&self, u: &GroupElement, v: &GroupElement) -> GroupElement {
        let p = u64::from(self.p);
        let entries = (0..self.rank())
            .map(|k| {
                let mut acc = u64::from(u.entries[k]) + u64::from(v.entries[k]);
                for &(a, b) in &self.terms[k] {
                    acc += u64::from(u.entries[a]) * u64::from(v.entries[b]);
                }
                (acc % p) as u32
            })
            .collect();
        GroupElement { entries }
    }

    /// Solves `u v = 1` from the shortest intervals up.
    pub fn inverse(&self, u: &GroupElement) -> GroupElement {
        let p = u64::from(self.p);
        let mut v = self.identity();
        for &k in &self.by_size {
            let mut acc = u64::from(u.entries[k]);
            for &(a, b) in &self.terms[k] {
                acc += u64::from(u.entries[a]) * u64::from(v.entries[b]);
            }
            v.entries[k] = ((p - acc % p) % p) as u32;
        }
        v
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, h: &GroupElement, g: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(h, g), &self.inverse(h))
    }

    /// Every element once, in lexicographic entry order.
    pub fn elements(&self, cap: u64) -> Result<Elements> {
        match self.order() {
            Some(n) if n <= cap => Ok(Elements {
                p: self.p,
                next: Some(self.identity()),
            }),
            _ => Err(Error::SizeCap {
                what: "group order",
                cap,
            }),
        }
    }

    /// Elements supported inside `mask`.
    pub(crate) fn elements_within(&self, mask: IntervalMask, cap: u64) -> Result<Vec<GroupElement>> {
        let slots: Vec<usize> = ibits(mask).collect();
        let count = u64::from(self.p).checked_pow(slots.len() as u32);
        if count.is_none_or(|c| c > cap) {
            return Err(Error::SizeCap {
                what: "group order",
                cap,
            });
        }
        let mut out = Vec::new();
        let mut digits = alloc::vec![0u32; slots.len()];
        loop {
            let mut g = self.identity();
            for (d, &k) in digits.iter().zip(&slots) {
                g.entries[k] = *d;
            }
            out.push(g);
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Ok(out);
                }
                digits[pos] += 1;
                if digits[pos] < self.p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Minimal intervals of the support of `g`.
    pub fn superclass_of(&self, g: &GroupElement) -> NNPartition {
        NNPartition::from_mask(&self.index, self.index.minimal(g.support()))
    }

    /// No superclass arc of `g` lies strictly inside an arc of `λ`.
    pub fn in_cover_closure(&self, g: &GroupElement, lambda: &NNPartition) -> Result<bool> {
        let arcs = lambda.mask(&self.index).map_err(|_| Error::MixedReference)?;
        let strictly_inside = self.index.down_closure(arcs) & !arcs;
        Ok(self.index.minimal(g.support()) & strictly_inside == 0)
    }

    /// Direct test of `g ∈ UT_λ · ∏_{a∈λ} {e_a(t)}` by trying every `t`.
    pub fn in_cover_closure_direct(&self, g: &GroupElement, lambda: &NNPartition) -> Result<bool> {
        let arcs: Vec<usize> = ibits(lambda.mask(&self.index).map_err(|_| Error::MixedReference)?).collect();
        let lower = self.index.outside(lambda.mask(&self.index)?);
        let mut digits = alloc::vec![0u32; arcs.len()];
        loop {
            let mut e = self.identity();
            for (d, &k) in digits.iter().zip(&arcs) {
                let mut f = self.identity();
                f.entries[k] = *d;
                e = self.multiply(&e, &f);
            }
            let h = self.multiply(g, &self.inverse(&e));
            if h.support() & !lower == 0 {
                return Ok(true);
            }
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Ok(false);
                }
                digits[pos] += 1;
                if digits[pos] < self.p {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Embeds an element of a pattern subgroup `UT_Q ⊆ UT_R` into `self`.
    pub fn embed(&self, sub: &PatternGroup, g: &GroupElement) -> Result<GroupElement> {
        let mut out = self.identity();
        for (k, &v) in g.entries.iter().enumerate() {
            if v != 0 {
                out.entries[self.index.position(sub.index.interval(k))?] = v;
            }
        }
        Ok(out)
    }
}

/// Iterator over all elements of a [`PatternGroup`].
pub struct Elements {
    p: u32,
    next: Option<GroupElement>,
}

impl Iterator for Elements {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for x in succ.entries.iter_mut() {
            *x += 1;
            if *x < self.p {
                self.next = Some(succ);
                return Some(current);
            }
            *x = 0;
        }
        Some(current)
    }
}

/// Conjugation oracle for normality: is `UT_Q` stable under conjugation by
/// every generator `e_ab(1)` of `UT_R`?
pub fn group_normality_check(r: &Poset, q: &Poset, p: u64, cap: u64) -> Result<bool> {
    if r.atoms() != q.atoms() || !q.is_subposet_of(r) {
        return Err(Error::NotSubposet);
    }
    let g = PatternGroup::new(r, p)?;
    let sub = g.index().mask_of(&q.proper_intervals())?;
    let elements = g.elements_within(sub, cap)?;
    let one = FieldScalar::reduce(1, g.prime());
    for iv in r.proper_intervals() {
        let h = g.generator(&iv.lo, &iv.hi, one)?;
        let h_inv = g.inverse(&h);
        for x in &elements {
            let y = g.multiply(&g.multiply(&h, x), &h_inv);
            if y.support() & !sub != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
