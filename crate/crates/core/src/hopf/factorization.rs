//! Set compositions, `Q`-factorizations and atomic decompositions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::ut_lower;
use crate::nonnesting::NNPartition;
use crate::poset::{bits, Atom, AtomSet, Poset};
use crate::Caps;

/// An ordered sequence of nonempty disjoint blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetComposition(Vec<AtomSet>);

impl SetComposition {
    pub fn new(blocks: Vec<AtomSet>) -> Result<Self> {
        let mut seen = AtomSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::BadSplit);
            }
            for a in b {
                if !seen.insert(a.clone()) {
                    return Err(Error::DuplicateAtom(a.clone()));
                }
            }
        }
        Ok(SetComposition(blocks))
    }

    pub fn blocks(&self) -> &[AtomSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ground(&self) -> AtomSet {
        self.0.iter().flatten().cloned().collect()
    }

    /// `(−1)^{ℓ−1}` as an integer.
    pub fn sign(&self) -> i64 {
        if self.0.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// Block index of `a`.
    pub fn block_of(&self, a: &Atom) -> Option<usize> {
        self.0.iter().position(|b| b.contains(a))
    }

    /// `P|_{I_1} . … . P|_{I_ℓ}`.
    pub fn stack(&self, p: &Poset) -> Result<Poset> {
        self.0
            .iter()
            .try_fold(Poset::empty(), |acc, b| acc.concatenate(&p.restrict(b)?))
    }

    /// `P|_{I_1} ⊔ … ⊔ P|_{I_ℓ}`.
    pub fn split(&self, p: &Poset) -> Result<Poset> {
        self.0
            .iter()
            .try_fold(Poset::empty(), |acc, b| acc.disjoint_union(&p.restrict(b)?))
    }

    /// Arcs of `λ` with both ends in one block.
    pub fn blockwise(&self, lambda: &NNPartition) -> NNPartition {
        NNPartition::from_arcs(
            lambda
                .arcs()
                .iter()
                .filter(|a| matches!(self.block_of(&a.lo), Some(k) if self.0[k].contains(&a.hi)))
                .cloned(),
        )
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (j, a) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ordered set partitions of an `n`-set (Fubini numbers).
fn fubini(n: usize) -> u128 {
    let mut binom = alloc::vec![1u128];
    let mut a = alloc::vec![1u128];
    for m in 1..=n {
        let mut next = alloc::vec![1u128; m + 1];
        for k in 1..m {
            next[k] = binom[k - 1] + binom[k];
        }
        binom = next;
        let v = (1..=m).map(|k| binom[k].saturating_mul(a[m - k])).fold(0u128, u128::saturating_add);
        a.push(v);
    }
    a[n]
}

pub(crate) fn check_composition_cap(n: usize, caps: &Caps) -> Result<()> {
    if fubini(n) > u128::from(caps.compositions) {
        return Err(Error::SizeCap {
            what: "set composition count",
            cap: caps.compositions,
        });
    }
    Ok(())
}

/// All compositions of `ground` into nonempty blocks.
pub fn set_compositions(ground: &AtomSet, caps: &Caps) -> Result<Vec<SetComposition>> {
    check_composition_cap(ground.len(), caps)?;
    let atoms: Vec<Atom> = ground.iter().cloned().collect();
    let full: u64 = if atoms.is_empty() { 0 } else { u64::MAX >> (64 - atoms.len()) };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    walk(full, &atoms, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

fn walk(rest: u64, atoms: &[Atom], stack: &mut Vec<u64>, out: &mut Vec<SetComposition>) {
    if rest == 0 {
        if !stack.is_empty() || atoms.is_empty() {
            let blocks = stack
                .iter()
                .map(|&m| bits(m).map(|i| atoms[i].clone()).collect())
                .collect();
            out.push(SetComposition(blocks));
        }
        return;
    }
    let mut sub = rest;
    while sub != 0 {
        stack.push(sub);
        walk(rest & !sub, atoms, stack, out);
        stack.pop();
        sub = (sub - 1) & rest;
    }
}

/// A composition `I` with `P = Q|_{I_1} . … . Q|_{I_ℓ}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QFactorization {
    composition: SetComposition,
    q_ref: Poset,
    p_ref: Poset,
}

impl QFactorization {
    pub fn composition(&self) -> &SetComposition {
        &self.composition
    }

    pub fn q_ref(&self) -> &Poset {
        &self.q_ref
    }

    pub fn p_ref(&self) -> &Poset {
        &self.p_ref
    }

    pub fn len(&self) -> usize {
        self.composition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.composition.is_empty()
    }
}

/// `Fac_Q(P)`, shortest first.
pub fn fac(q: &Poset, p: &Poset) -> Result<Vec<QFactorization>> {
    if q.atoms() != p.atoms() {
        return Err(Error::AtomMismatch);
    }
    if p.is_empty() {
        return Ok(Vec::new());
    }
    // every factorization coarsens the ordinal-sum blocks of P
    let summands = p.concatenation_blocks();
    let cuts = summands.len() - 1;
    let mut out = Vec::new();
    for chosen in 0u64..(1 << cuts) {
        let mut blocks: Vec<AtomSet> = alloc::vec![summands[0].clone()];
        for (k, s) in summands.iter().enumerate().skip(1) {
            if chosen & (1 << (k - 1)) != 0 {
                blocks.push(s.clone());
            } else {
                blocks.last_mut().expect("nonempty").extend(s.iter().cloned());
            }
        }
        if blocks.iter().all(|b| p.restrict(b).ok() == q.restrict(b).ok()) {
            out.push(QFactorization {
                composition: SetComposition(blocks),
                q_ref: q.clone(),
                p_ref: p.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.composition.cmp(&b.composition)));
    Ok(out)
}

/// Every poset `P` with nonempty `Fac_Q(P)`, mapped to `Fac_Q(P)`.
pub fn factorization_map(q: &Poset, caps: &Caps) -> Result<BTreeMap<Poset, Vec<SetComposition>>> {
    let mut map: BTreeMap<Poset, Vec<SetComposition>> = BTreeMap::new();
    for c in set_compositions(&q.atom_set(), caps)? {
        map.entry(c.stack(q)?).or_default().push(c);
    }
    Ok(map)
}

/// The unique longest element of `Fac_R(P)` has no cut whose max–min
/// pairs all lie in `UT_λ`.
pub fn is_lambda_atomic(r: &Poset, p: &Poset, lambda: &NNPartition) -> Result<bool> {
    let facs = fac(r, p)?;
    let Some(longest) = facs.last() else {
        return Ok(false);
    };
    let lower = ut_lower(r, lambda)?;
    let blocks = longest.composition.blocks();
    for pair in blocks.windows(2) {
        let top = p.restrict(&pair[0])?.maximal_elements();
        let bottom = p.restrict(&pair[1])?.minimal_elements();
        let neutral = top.iter().all(|a| {
            bottom
                .iter()
                .all(|b| lower.contains(&crate::poset::Interval::new(a.clone(), b.clone())))
        });
        if neutral {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The finest composition splitting both `P` and `Q` as concatenations.
pub fn decompose_atomic(p: &Poset, q: &Poset) -> Result<SetComposition> {
    if !q.is_subposet_of(p) || q.atoms() != p.atoms() {
        return Err(Error::NotSubposet);
    }
    let q_cuts = q.concatenation_cuts();
    let mut blocks = Vec::new();
    let mut prev = 0u64;
    let common = p.concatenation_cuts().into_iter().filter(|c| q_cuts.contains(c));
    for cut in common.chain((!p.is_empty()).then(|| p.full_mask())) {
        blocks.push(p.atoms_of_mask(cut & !prev));
        prev = cut;
    }
    Ok(SetComposition(blocks))
}

pub fn is_atomic_pair(p: &Poset, q: &Poset) -> Result<bool> {
    Ok(decompose_atomic(p, q)?.len() == 1)
}

/// `(R, R_λ)` is atomic, where `R_λ` is the poset of `UT_λ`.
pub fn is_atomic_partition(r: &Poset, lambda: &NNPartition) -> Result<bool> {
    is_atomic_pair(r, &ut_lower(r, lambda)?.as_poset())
}
