//! The lattice of normal pattern subgroups of `UT_R`, as co-ideals of
//! `Int°(R)`.
//!
//! A co-ideal `N` stands for the pattern subgroup `UT_Q` where `i ≺_Q j` iff
//! `[i,j] ∈ N`; meets and joins are intersections and unions.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::intervals::{ibit, ibits, IntervalIndex, IntervalMask};
use crate::nonnesting::NNPartition;
use crate::poset::{Interval, Poset};
use crate::scalar::RationalFunction;

/// `|UT_Q| = q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupOrder {
    pub exponent: usize,
}

impl SubgroupOrder {
    pub fn value(self) -> RationalFunction {
        RationalFunction::q_pow(self.exponent as i64)
    }
}

/// An upward-closed set of proper intervals of `reference`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoIdeal {
    reference: Poset,
    members: Vec<Interval>,
}

impl CoIdeal {
    pub fn new(r: &Poset, members: impl IntoIterator<Item = Interval>) -> Result<Self> {
        let idx = IntervalIndex::new(r)?;
        let members: Vec<Interval> = members.into_iter().collect();
        let mask = idx.mask_of(&members)?;
        if !idx.is_up_closed(mask) {
            return Err(Error::NotUpwardClosed);
        }
        Ok(Self::from_mask(&idx, mask))
    }

    pub(crate) fn from_mask(idx: &IntervalIndex, mask: IntervalMask) -> Self {
        CoIdeal {
            reference: idx.poset().clone(),
            members: idx.intervals_of(mask),
        }
    }

    pub(crate) fn mask(&self, idx: &IntervalIndex) -> IntervalMask {
        idx.mask_of(&self.members).expect("members are intervals of the reference")
    }

    pub fn full(r: &Poset) -> Self {
        CoIdeal {
            reference: r.clone(),
            members: r.proper_intervals(),
        }
    }

    pub fn empty(r: &Poset) -> Self {
        CoIdeal {
            reference: r.clone(),
            members: Vec::new(),
        }
    }

    pub fn reference(&self) -> &Poset {
        &self.reference
    }

    pub fn members(&self) -> &[Interval] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, iv: &Interval) -> bool {
        self.members.binary_search(iv).is_ok()
    }

    pub fn order_exponent(&self) -> usize {
        self.members.len()
    }

    pub fn order(&self) -> SubgroupOrder {
        SubgroupOrder {
            exponent: self.members.len(),
        }
    }

    /// The subgroup's poset: `i ≺ j` iff `[i,j]` is a member.
    pub fn as_poset(&self) -> Poset {
        let pairs = self.members.iter().map(|iv| (iv.lo.clone(), iv.hi.clone()));
        Poset::new(self.reference.atoms().iter().cloned(), pairs)
            .expect("a co-ideal is a transitive relation")
    }
}

impl fmt::Debug for CoIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

fn same_atoms(r: &Poset, q: &Poset) -> bool {
    r.atoms() == q.atoms()
}

/// `UT_Q ⊴ UT_R` for a subposet `Q` of `R` on the same atoms.
pub fn is_normal(r: &Poset, q: &Poset) -> Result<bool> {
    if !same_atoms(r, q) || !q.is_subposet_of(r) {
        return Err(Error::NotSubposet);
    }
    let idx = IntervalIndex::new(r)?;
    let mask = idx.mask_of(&q.proper_intervals())?;
    Ok(idx.is_up_closed(mask))
}

/// The co-ideal of `Q`, if `UT_Q` is normal in `UT_R`.
pub fn coideal_of(r: &Poset, q: &Poset) -> Result<CoIdeal> {
    if !is_normal(r, q)? {
        return Err(Error::NotNormal);
    }
    Ok(CoIdeal {
        reference: r.clone(),
        members: q.proper_intervals(),
    })
}

/// Intervals not contained in `a`.
pub fn meet_irreducible(r: &Poset, a: &Interval) -> Result<CoIdeal> {
    let idx = IntervalIndex::new(r)?;
    let k = idx.position(a)?;
    Ok(CoIdeal::from_mask(&idx, idx.full() & !idx.within(k)))
}

/// Intervals containing `a`.
pub fn join_irreducible(r: &Poset, a: &Interval) -> Result<CoIdeal> {
    let idx = IntervalIndex::new(r)?;
    let k = idx.position(a)?;
    Ok(CoIdeal::from_mask(&idx, idx.around(k)))
}

/// `UT_λ`: intervals contained in no arc of `λ`.
pub fn ut_lower(r: &Poset, lambda: &NNPartition) -> Result<CoIdeal> {
    let idx = IntervalIndex::new(r)?;
    Ok(CoIdeal::from_mask(&idx, idx.outside(lambda.mask(&idx)?)))
}

/// `UT^λ`: the upward closure of `λ`.
pub fn ut_upper(r: &Poset, lambda: &NNPartition) -> Result<CoIdeal> {
    let idx = IntervalIndex::new(r)?;
    Ok(CoIdeal::from_mask(&idx, idx.up_closure(lambda.mask(&idx)?)))
}

/// Minimal members; inverse of [`ut_upper`].
pub fn lbl_cl(n: &CoIdeal) -> NNPartition {
    let idx = IntervalIndex::new(&n.reference).expect("reference was indexed before");
    NNPartition::from_mask(&idx, idx.minimal(n.mask(&idx)))
}

/// Maximal non-members; inverse of [`ut_lower`].
pub fn lbl_ch(n: &CoIdeal) -> NNPartition {
    let idx = IntervalIndex::new(&n.reference).expect("reference was indexed before");
    NNPartition::from_mask(&idx, idx.maximal(idx.full() & !n.mask(&idx)))
}

pub fn meet(m: &CoIdeal, n: &CoIdeal) -> Result<CoIdeal> {
    if m.reference != n.reference {
        return Err(Error::MixedReference);
    }
    Ok(CoIdeal {
        reference: m.reference.clone(),
        members: m.members.iter().filter(|iv| n.contains(iv)).cloned().collect(),
    })
}

pub fn join(m: &CoIdeal, n: &CoIdeal) -> Result<CoIdeal> {
    if m.reference != n.reference {
        return Err(Error::MixedReference);
    }
    let mut members: Vec<Interval> = m.members.iter().chain(&n.members).cloned().collect();
    members.sort();
    members.dedup();
    Ok(CoIdeal {
        reference: m.reference.clone(),
        members,
    })
}

/// `UT_λ^{+a}` for each arc `a` of `λ`.
pub fn covers(r: &Poset, lambda: &NNPartition) -> Result<Vec<(Interval, CoIdeal)>> {
    let idx = IntervalIndex::new(r)?;
    let lower = idx.outside(lambda.mask(&idx)?);
    lambda
        .arcs()
        .iter()
        .map(|a| {
            let k = idx.position(a)?;
            Ok((a.clone(), CoIdeal::from_mask(&idx, lower | ibit(k))))
        })
        .collect()
}

pub fn order_exponent(n: &CoIdeal) -> usize {
    n.order_exponent()
}

/// Upward closure of an arbitrary interval set.
pub fn generated_coideal(r: &Poset, set: &[Interval]) -> Result<CoIdeal> {
    let idx = IntervalIndex::new(r)?;
    Ok(CoIdeal::from_mask(&idx, idx.up_closure(idx.mask_of(set)?)))
}

/// Every co-ideal of `Int°(R)`, ordered by size then members.
pub fn full_lattice(r: &Poset, cap: u64) -> Result<Vec<CoIdeal>> {
    let idx = IntervalIndex::new(r)?;
    let mut masks: Vec<IntervalMask> = idx
        .antichains_within(idx.full(), cap)?
        .into_iter()
        .map(|a| idx.up_closure(a))
        .collect();
    masks.sort_by_key(|&m| (m.count_ones(), ibits(m).collect::<Vec<_>>()));
    Ok(masks.into_iter().map(|m| CoIdeal::from_mask(&idx, m)).collect())
}
