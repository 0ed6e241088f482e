//! Bitset view of the proper-interval poset `Int°(R)`.
//!
//! Intervals are numbered in canonical `(lo, hi)` order and subsets of
//! `Int°(R)` are `u128` masks, which caps a reference poset at
//! [`MAX_INTERVALS`] proper intervals (a 16-element chain has 120).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::{bits, Interval, Poset};

pub const MAX_INTERVALS: usize = 128;

pub type IntervalMask = u128;

#[inline]
pub(crate) fn ibit(k: usize) -> IntervalMask {
    1u128 << k
}

pub(crate) fn ibits(mut mask: IntervalMask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let k = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(k)
        }
    })
}

#[derive(Clone, Debug)]
pub struct IntervalIndex {
    poset: Poset,
    intervals: Vec<Interval>,
    ends: Vec<(usize, usize)>,
    slots: Vec<Option<u8>>,
    // within[k]: intervals contained in interval k (k included)
    within: Vec<IntervalMask>,
    // around[k]: intervals containing interval k (k included)
    around: Vec<IntervalMask>,
}

impl IntervalIndex {
    pub fn new(poset: &Poset) -> Result<Self> {
        let n = poset.len();
        let mut ends = Vec::new();
        for i in 0..n {
            for j in bits(poset.above_mask(i)) {
                ends.push((i, j));
            }
        }
        if ends.len() > MAX_INTERVALS {
            return Err(Error::SizeCap {
                what: "proper interval count",
                cap: MAX_INTERVALS as u64,
            });
        }
        let mut slots = alloc::vec![None; n * n];
        for (k, &(i, j)) in ends.iter().enumerate() {
            slots[i * n + j] = Some(k as u8);
        }
        let m = ends.len();
        let mut within = alloc::vec![0u128; m];
        let mut around = alloc::vec![0u128; m];
        for (a, &(ai, aj)) in ends.iter().enumerate() {
            for (b, &(bi, bj)) in ends.iter().enumerate() {
                if poset.le_idx(bi, ai) && poset.le_idx(aj, bj) {
                    within[b] |= ibit(a);
                    around[a] |= ibit(b);
                }
            }
        }
        let intervals = ends
            .iter()
            .map(|&(i, j)| Interval::new(&poset.atoms()[i], &poset.atoms()[j]))
            .collect();
        Ok(IntervalIndex {
            poset: poset.clone(),
            intervals,
            ends,
            slots,
            within,
            around,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, k: usize) -> &Interval {
        &self.intervals[k]
    }

    /// Atom indices `(lo, hi)` of interval `k`.
    pub fn ends(&self, k: usize) -> (usize, usize) {
        self.ends[k]
    }

    pub fn slot(&self, i: usize, j: usize) -> Option<usize> {
        self.slots[i * self.poset.len() + j].map(usize::from)
    }

    pub fn position(&self, iv: &Interval) -> Result<usize> {
        let (i, j) = self.poset.interval_indices(iv)?;
        Ok(self.slot(i, j).expect("proper interval has a slot"))
    }

    pub fn full(&self) -> IntervalMask {
        if self.len() == 128 {
            u128::MAX
        } else {
            ibit(self.len()) - 1
        }
    }

    pub fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a Interval>) -> Result<IntervalMask> {
        let mut m = 0;
        for iv in set {
            m |= ibit(self.position(iv)?);
        }
        Ok(m)
    }

    /// Members of `mask` in canonical order.
    pub fn intervals_of(&self, mask: IntervalMask) -> Vec<Interval> {
        ibits(mask).map(|k| self.intervals[k].clone()).collect()
    }

    /// Interval `a` is contained in interval `b`.
    pub fn contained(&self, a: usize, b: usize) -> bool {
        self.within[b] & ibit(a) != 0
    }

    pub fn within(&self, k: usize) -> IntervalMask {
        self.within[k]
    }

    pub fn around(&self, k: usize) -> IntervalMask {
        self.around[k]
    }

    pub fn up_closure(&self, mask: IntervalMask) -> IntervalMask {
        ibits(mask).fold(0, |m, k| m | self.around[k])
    }

    pub fn down_closure(&self, mask: IntervalMask) -> IntervalMask {
        ibits(mask).fold(0, |m, k| m | self.within[k])
    }

    pub fn minimal(&self, mask: IntervalMask) -> IntervalMask {
        ibits(mask)
            .filter(|&k| self.within[k] & mask == ibit(k))
            .fold(0, |m, k| m | ibit(k))
    }

    pub fn maximal(&self, mask: IntervalMask) -> IntervalMask {
        ibits(mask)
            .filter(|&k| self.around[k] & mask == ibit(k))
            .fold(0, |m, k| m | ibit(k))
    }

    pub fn is_antichain(&self, mask: IntervalMask) -> bool {
        self.minimal(mask) == mask
    }

    pub fn is_up_closed(&self, mask: IntervalMask) -> bool {
        self.up_closure(mask) == mask
    }

    /// Intervals contained in no member of `arcs`.
    pub fn outside(&self, arcs: IntervalMask) -> IntervalMask {
        self.full() & !self.down_closure(arcs)
    }

    /// All antichains drawn from `candidates`, in discovery order.
    pub fn antichains_within(&self, candidates: IntervalMask, cap: u64) -> Result<Vec<IntervalMask>> {
        let mut out = Vec::new();
        self.collect_antichains(candidates, 0, cap, &mut out)?;
        Ok(out)
    }

    fn collect_antichains(
        &self,
        candidates: IntervalMask,
        chosen: IntervalMask,
        cap: u64,
        out: &mut Vec<IntervalMask>,
    ) -> Result<()> {
        if candidates == 0 {
            if out.len() as u64 >= cap {
                return Err(Error::SizeCap {
                    what: "antichain count",
                    cap,
                });
            }
            out.push(chosen);
            return Ok(());
        }
        let k = candidates.trailing_zeros() as usize;
        let rest = candidates & !ibit(k);
        self.collect_antichains(rest, chosen, cap, out)?;
        let comparable = self.within[k] | self.around[k];
        self.collect_antichains(rest & !comparable, chosen | ibit(k), cap, out)
    }

    /// Number of antichains drawn from `candidates`, without materializing them.
    pub fn count_antichains(&self, candidates: IntervalMask) -> u128 {
        if candidates == 0 {
            return 1;
        }
        let k = candidates.trailing_zeros() as usize;
        let rest = candidates & !ibit(k);
        let comparable = self.within[k] | self.around[k];
        self.count_antichains(rest) + self.count_antichains(rest & !comparable)
    }
}
