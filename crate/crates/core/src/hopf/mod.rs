//! The Hopf monoid of class functions on pattern groups.
//!
//! An element over a ground set `A` is a finite combination of basis
//! vectors, each carried by an ambient poset on `A`. The product inflates
//! along the concatenation of ambients and the coproduct restricts to a
//! split `A = S ⊔ T`.

mod antipode;
mod factorization;
mod primitive;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

pub use antipode::{antipode_axiom, antipode_chi, antipode_delta_subgroup, antipode_takeuchi};
pub use factorization::{
    decompose_atomic, fac, factorization_map, is_atomic_pair, is_atomic_partition, is_lambda_atomic,
    set_compositions, QFactorization, SetComposition,
};
pub use primitive::{forget_ambient, is_primitive, primitive_generator, primitive_generator_closed_form};

use crate::error::{Error, Result};
use crate::intervals::{ibit, IntervalIndex, IntervalMask};
use crate::nonnesting::{int_lambda_mu_mask, restrict_nn, NNPartition};
use crate::poset::{AtomSet, Interval, Poset};
use crate::scalar::Rf;
use crate::supercharacter::{Basis, CharacterData, ClassFunction};
use crate::Caps;

/// A basis vector: a label over its ambient poset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey {
    pub ambient: Poset,
    pub label: NNPartition,
}

impl BasisKey {
    pub fn new(ambient: Poset, label: NNPartition) -> Result<Self> {
        let label = NNPartition::new(&ambient, label.arcs().iter().cloned())?;
        Ok(BasisKey { ambient, label })
    }

    pub fn unit() -> Self {
        BasisKey {
            ambient: Poset::empty(),
            label: NNPartition::empty(),
        }
    }

    /// The empty label over `ambient`.
    pub fn unit_on(ambient: Poset) -> Self {
        BasisKey {
            ambient,
            label: NNPartition::empty(),
        }
    }

    pub fn ground(&self) -> AtomSet {
        self.ambient.atom_set()
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.label, self.ambient.relations())
    }
}

fn accumulate<K: Ord + Clone>(terms: &mut BTreeMap<K, Rf>, key: K, c: &Rf) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&key) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                terms.remove(&key);
            }
        }
        None => {
            terms.insert(key, c.clone());
        }
    }
}

/// An element of the species component over `ground`.
#[derive(Clone, PartialEq, Eq)]
pub struct SpeciesElement {
    ground: AtomSet,
    basis: Basis,
    terms: BTreeMap<BasisKey, Rf>,
}

impl SpeciesElement {
    pub fn zero(ground: AtomSet, basis: Basis) -> Self {
        SpeciesElement {
            ground,
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(basis: Basis) -> Self {
        Self::basis_vector(basis, BasisKey::unit())
    }

    pub fn basis_vector(basis: Basis, key: BasisKey) -> Self {
        let mut x = Self::zero(key.ground(), basis);
        x.terms.insert(key, Rf::one());
        x
    }

    pub fn from_terms(
        ground: AtomSet,
        basis: Basis,
        terms: impl IntoIterator<Item = (BasisKey, Rf)>,
    ) -> Result<Self> {
        let mut x = Self::zero(ground, basis);
        for (key, c) in terms {
            if key.ground() != x.ground {
                return Err(Error::AtomMismatch);
            }
            x.add_term(key, &c);
        }
        Ok(x)
    }

    pub fn ground(&self) -> &AtomSet {
        &self.ground
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<BasisKey, Rf> {
        &self.terms
    }

    pub fn coeff(&self, key: &BasisKey) -> Rf {
        self.terms.get(key).cloned().unwrap_or_else(Rf::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: BasisKey, c: &Rf) {
        debug_assert_eq!(key.ground(), self.ground);
        accumulate(&mut self.terms, key, c);
    }

    pub fn add_scaled(&mut self, other: &SpeciesElement, c: &Rf) -> Result<()> {
        if other.basis != self.basis {
            return Err(Error::BasisMismatch);
        }
        if other.ground != self.ground {
            return Err(Error::AtomMismatch);
        }
        for (key, d) in &other.terms {
            accumulate(&mut self.terms, key.clone(), &(c * d));
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Rf) -> SpeciesElement {
        let mut out = Self::zero(self.ground.clone(), self.basis);
        for (key, d) in &self.terms {
            out.add_term(key.clone(), &(c * d));
        }
        out
    }

    pub fn difference(&self, other: &SpeciesElement) -> Result<SpeciesElement> {
        let mut out = self.clone();
        out.add_scaled(other, &-Rf::one())?;
        Ok(out)
    }
}

impl core::ops::Neg for &SpeciesElement {
    type Output = SpeciesElement;
    fn neg(self) -> SpeciesElement {
        self.scaled(&-Rf::one())
    }
}

impl fmt::Debug for SpeciesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.basis)?;
        for (k, (key, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){key:?}")?;
        }
        write!(f, "]")
    }
}

/// A tensor `H[A_1] ⊗ … ⊗ H[A_ℓ]`, keyed by one basis vector per factor.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    blocks: Vec<AtomSet>,
    basis: Basis,
    terms: BTreeMap<Vec<BasisKey>, Rf>,
}

impl TensorElement {
    pub fn from_element(x: &SpeciesElement) -> Self {
        TensorElement {
            blocks: alloc::vec![x.ground.clone()],
            basis: x.basis,
            terms: x.terms.iter().map(|(k, c)| (alloc::vec![k.clone()], c.clone())).collect(),
        }
    }

    pub fn from_terms(
        blocks: Vec<AtomSet>,
        basis: Basis,
        terms: impl IntoIterator<Item = (Vec<BasisKey>, Rf)>,
    ) -> Self {
        let mut out = TensorElement {
            blocks,
            basis,
            terms: BTreeMap::new(),
        };
        for (k, c) in terms {
            accumulate(&mut out.terms, k, &c);
        }
        out
    }

    pub fn sum(&self, other: &TensorElement) -> Result<TensorElement> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        if self.blocks != other.blocks {
            return Err(Error::BadSplit);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c);
        }
        Ok(out)
    }

    pub fn blocks(&self) -> &[AtomSet] {
        &self.blocks
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Vec<BasisKey>, Rf> {
        &self.terms
    }

    pub fn coeff(&self, keys: &[BasisKey]) -> Rf {
        self.terms.get(keys).cloned().unwrap_or_else(Rf::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `Δ_{S,T}` to the factor at `position`.
    pub fn split_factor(&self, position: usize, s: &AtomSet, t: &AtomSet) -> Result<TensorElement> {
        let block = self.blocks.get(position).ok_or(Error::BadSplit)?;
        check_split(block, s, t)?;
        let mut blocks = self.blocks.clone();
        blocks.splice(position..=position, [s.clone(), t.clone()]);
        let mut terms = BTreeMap::new();
        for (keys, c) in &self.terms {
            for (y, z, d) in coproduct_key(self.basis, &keys[position], s, t)? {
                let mut k = keys.clone();
                k.splice(position..=position, [y, z]);
                accumulate(&mut terms, k, &(c * &d));
            }
        }
        Ok(TensorElement {
            blocks,
            basis: self.basis,
            terms,
        })
    }

    /// Factorwise product `(x_1 ⊗ … ⊗ x_ℓ)(y_1 ⊗ … ⊗ y_ℓ) = x_1y_1 ⊗ … ⊗ x_ℓy_ℓ`.
    pub fn multiply(&self, other: &TensorElement, caps: &Caps) -> Result<TensorElement> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::BadSplit);
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            if let Some(x) = a.intersection(b).next() {
                return Err(Error::Overlap(x.clone()));
            }
            blocks.push(a.union(b).cloned().collect());
        }
        let mut terms = BTreeMap::new();
        for (xs, c) in &self.terms {
            for (ys, d) in &other.terms {
                let mut partial: Vec<(Vec<BasisKey>, Rf)> = alloc::vec![(Vec::new(), c * d)];
                for (x, y) in xs.iter().zip(ys) {
                    let products = product_keys(self.basis, x, y, caps)?;
                    let mut next = Vec::new();
                    for (ks, e) in &partial {
                        for (p, f) in &products {
                            let mut k = ks.clone();
                            k.push(p.clone());
                            next.push((k, e * f));
                        }
                    }
                    partial = next;
                }
                for (k, e) in partial {
                    accumulate(&mut terms, k, &e);
                }
            }
        }
        Ok(TensorElement {
            blocks,
            basis: self.basis,
            terms,
        })
    }

    /// `m_{A_1,…,A_ℓ}`: multiplies the factors left to right.
    pub fn contract(&self, caps: &Caps) -> Result<SpeciesElement> {
        let ground: AtomSet = self.blocks.iter().flatten().cloned().collect();
        let mut out = SpeciesElement::zero(ground, self.basis);
        for (keys, c) in &self.terms {
            let mut partial: Vec<(BasisKey, Rf)> = alloc::vec![(BasisKey::unit(), c.clone())];
            for k in keys {
                let mut next = Vec::new();
                for (p, e) in &partial {
                    for (r, f) in product_keys(self.basis, p, k, caps)? {
                        next.push((r, e * &f));
                    }
                }
                partial = next;
            }
            for (k, e) in partial {
                out.add_term(k, &e);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.basis)?;
        for (k, (keys, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, key) in keys.iter().enumerate() {
                if j > 0 {
                    write!(f, "⊗")?;
                }
                write!(f, "{key:?}")?;
            }
        }
        write!(f, "]")
    }
}

fn check_split(ground: &AtomSet, s: &AtomSet, t: &AtomSet) -> Result<()> {
    if s.intersection(t).next().is_some() || s.len() + t.len() != ground.len() {
        return Err(Error::BadSplit);
    }
    if !s.is_subset(ground) || !t.is_subset(ground) {
        return Err(Error::BadSplit);
    }
    Ok(())
}

/// `q^{n − e − |λ|}(q − 1)^{|λ|}` for the arcs `lambda` of `idx`.
pub(crate) fn degree(idx: &IntervalIndex, lambda: IntervalMask) -> Rf {
    let size = lambda.count_ones() as i64;
    let e = idx.outside(lambda).count_ones() as i64;
    Rf::q_pow(idx.len() as i64 - e - size) * Rf::q_minus_one_pow(size)
}

/// `N ∩ Int°(sub)` for a co-ideal `n` of `outer`, as a mask of `sub`.
pub(crate) fn coideal_restricted(outer: &IntervalIndex, n: IntervalMask, sub: &IntervalIndex) -> IntervalMask {
    (0..sub.len())
        .filter(|&k| {
            let pos = outer.position(sub.interval(k)).expect("subposet intervals are intervals");
            n & ibit(pos) != 0
        })
        .fold(0, |m, k| m | ibit(k))
}

pub(crate) fn label_mask(idx: &IntervalIndex, label: &NNPartition) -> Result<IntervalMask> {
    label.mask(idx).map_err(|_| Error::MixedReference)
}

/// Structure constants of `m_{A,B}` on two basis vectors.
pub(crate) fn product_keys(basis: Basis, x: &BasisKey, y: &BasisKey, caps: &Caps) -> Result<Vec<(BasisKey, Rf)>> {
    let ambient = x.ambient.concatenate(&y.ambient)?;
    let union = x.label.union(&y.label);
    if basis != Basis::Delta || x.ambient.is_empty() || y.ambient.is_empty() {
        return Ok(alloc::vec![(BasisKey { ambient, label: union }, Rf::one())]);
    }
    let idx = IntervalIndex::new(&ambient)?;
    let arcs = label_mask(&idx, &union)?;
    let left = x.ambient.atom_set();
    let cross = (0..idx.len())
        .filter(|&k| {
            let iv = idx.interval(k);
            left.contains(&iv.lo) && !left.contains(&iv.hi)
        })
        .fold(0, |m, k| m | ibit(k));
    let candidates = cross & !(idx.up_closure(arcs) | idx.down_closure(arcs));
    Ok(idx
        .antichains_within(candidates, caps.partitions)?
        .into_iter()
        .map(|c| {
            let key = BasisKey {
                ambient: ambient.clone(),
                label: NNPartition::from_mask(&idx, arcs | c),
            };
            (key, Rf::one())
        })
        .collect())
}

/// Structure constants of `Δ_{S,T}` on one basis vector.
pub(crate) fn coproduct_key(
    basis: Basis,
    x: &BasisKey,
    s: &AtomSet,
    t: &AtomSet,
) -> Result<Vec<(BasisKey, BasisKey, Rf)>> {
    let rs = x.ambient.restrict(s)?;
    let rt = x.ambient.restrict(t)?;
    match basis {
        Basis::Delta => {
            let (ls, lt) = (x.label.within(s), x.label.within(t));
            if ls.len() + lt.len() != x.label.len() {
                return Ok(Vec::new());
            }
            // The class of g in R is the set of minimal support intervals, so
            // a factor may also carry intervals strictly containing an arc of
            // the other factor.
            let r = &x.ambient;
            let above = |a: &Interval, b: &Interval| a != b && r.less_eq(&a.lo, &b.lo) && r.less_eq(&b.hi, &a.hi);
            let side = |sub: &Poset, own: &NNPartition, other: &NNPartition| -> Result<Vec<NNPartition>> {
                let si = IntervalIndex::new(sub)?;
                let candidates = (0..si.len())
                    .filter(|&k| {
                        let iv = si.interval(k);
                        other.arcs().iter().any(|b| above(iv, b))
                            && own.arcs().iter().all(|a| a != iv && !above(iv, a) && !above(a, iv))
                    })
                    .fold(0, |m, k| m | ibit(k));
                Ok(si
                    .antichains_within(candidates, u64::MAX)?
                    .into_iter()
                    .map(|m| own.union(&NNPartition::from_mask(&si, m)))
                    .collect())
            };
            let alphas = side(&rs, &ls, &lt)?;
            let betas = side(&rt, &lt, &ls)?;
            let mut out = Vec::with_capacity(alphas.len() * betas.len());
            for a in &alphas {
                for b in &betas {
                    out.push((
                        BasisKey { ambient: rs.clone(), label: a.clone() },
                        BasisKey { ambient: rt.clone(), label: b.clone() },
                        Rf::one(),
                    ));
                }
            }
            Ok(out)
        }
        Basis::SubgroupDelta | Basis::SubgroupChi => {
            let outer = IntervalIndex::new(&x.ambient)?;
            let n = outer.outside(label_mask(&outer, &x.label)?);
            let mut exponent = (outer.len() - n.count_ones() as usize) as i64;
            let mut keys = Vec::with_capacity(2);
            for sub in [rs, rt] {
                let si = IntervalIndex::new(&sub)?;
                let ns = coideal_restricted(&outer, n, &si);
                exponent -= (si.len() - ns.count_ones() as usize) as i64;
                let label = NNPartition::from_mask(&si, si.maximal(si.full() & !ns));
                keys.push(BasisKey { ambient: sub, label });
            }
            let c = if basis == Basis::SubgroupChi {
                Rf::q_pow(exponent)
            } else {
                Rf::one()
            };
            let kt = keys.pop().expect("two factors");
            let ks = keys.pop().expect("two factors");
            Ok(alloc::vec![(ks, kt, c)])
        }
        Basis::Chi => {
            let q = rs.disjoint_union(&rt)?;
            let res = restriction_general(&x.ambient, &q, &x.label)?;
            Ok(res
                .coeffs()
                .iter()
                .map(|(nu, c)| {
                    (
                        BasisKey { ambient: rs.clone(), label: nu.within(s) },
                        BasisKey { ambient: rt.clone(), label: nu.within(t) },
                        c.clone(),
                    )
                })
                .collect())
        }
    }
}

pub fn product(x: &SpeciesElement, y: &SpeciesElement, caps: &Caps) -> Result<SpeciesElement> {
    if x.basis != y.basis {
        return Err(Error::BasisMismatch);
    }
    if let Some(a) = x.ground.intersection(&y.ground).next() {
        return Err(Error::Overlap(a.clone()));
    }
    let ground = x.ground.union(&y.ground).cloned().collect();
    let mut out = SpeciesElement::zero(ground, x.basis);
    for (kx, c) in &x.terms {
        for (ky, d) in &y.terms {
            let cd = c * d;
            for (k, e) in product_keys(x.basis, kx, ky, caps)? {
                out.add_term(k, &(&cd * &e));
            }
        }
    }
    Ok(out)
}

pub fn coproduct(x: &SpeciesElement, s: &AtomSet, t: &AtomSet) -> Result<TensorElement> {
    TensorElement::from_element(x).split_factor(0, s, t)
}

/// `Res^{UT_R}_{UT_Q}(χ^λ)` in the supercharacter basis of `UT_Q`.
pub fn restriction_general(r: &Poset, q: &Poset, lambda: &NNPartition) -> Result<ClassFunction> {
    let lambda_q = restrict_nn(r, lambda, q)?;
    let ri = IntervalIndex::new(r)?;
    let qi = IntervalIndex::new(q)?;
    let lam_r = label_mask(&ri, lambda)?;
    let lam_q = label_mask(&qi, &lambda_q)?;
    let shared = coideal_restricted(&ri, ri.outside(lam_r), &qi).count_ones() as i64;
    let coefficient = Rf::q_pow(shared - qi.outside(lam_q).count_ones() as i64) * degree(&ri, lam_r)
        / degree(&qi, lam_q);
    let (_, int_mask) = int_lambda_mu_mask(r, q, lambda, &lambda_q)?;
    let nus = qi.antichains_within(int_mask, Caps::default().partitions)?;
    Ok(ClassFunction::new(
        q,
        Basis::Chi,
        nus.into_iter()
            .map(|nu| (NNPartition::from_mask(&qi, nu | lam_q), coefficient.clone())),
    ))
}

/// Re-expands every term in `target`, ambient by ambient.
pub fn convert_species(x: &SpeciesElement, target: Basis, caps: &Caps) -> Result<SpeciesElement> {
    let mut by_ambient: BTreeMap<&Poset, ClassFunction> = BTreeMap::new();
    for (key, c) in &x.terms {
        by_ambient
            .entry(&key.ambient)
            .or_insert_with(|| ClassFunction::zero(&key.ambient, x.basis))
            .add_term(key.label.clone(), c);
    }
    let mut out = SpeciesElement::zero(x.ground.clone(), target);
    for (ambient, f) in by_ambient {
        let data = CharacterData::new(ambient, caps.partitions)?;
        for (label, c) in data.convert(&f, target)?.coeffs() {
            out.add_term(
                BasisKey {
                    ambient: ambient.clone(),
                    label: label.clone(),
                },
                c,
            );
        }
    }
    Ok(out)
}

/// Re-expands every tensor factor in `target`.
pub fn convert_tensor(t: &TensorElement, target: Basis, caps: &Caps) -> Result<TensorElement> {
    let mut cache: BTreeMap<&BasisKey, SpeciesElement> = BTreeMap::new();
    let mut out = TensorElement::from_terms(t.blocks.clone(), target, Vec::new());
    for (keys, c) in &t.terms {
        let mut partial: Vec<(Vec<BasisKey>, Rf)> = alloc::vec![(Vec::new(), c.clone())];
        for k in keys {
            if !cache.contains_key(k) {
                let x = SpeciesElement::basis_vector(t.basis, k.clone());
                cache.insert(k, convert_species(&x, target, caps)?);
            }
            let conv = &cache[k];
            let mut next = Vec::with_capacity(partial.len() * conv.len());
            for (ks, e) in &partial {
                for (k2, f) in conv.terms() {
                    let mut ks = ks.clone();
                    ks.push(k2.clone());
                    next.push((ks, e * f));
                }
            }
            partial = next;
        }
        for (k, e) in partial {
            accumulate(&mut out.terms, k, &e);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
