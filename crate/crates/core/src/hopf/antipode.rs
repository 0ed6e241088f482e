//! Takeuchi's formula and the closed-form antipodes.
//!
//! Signs follow `S = Σ_{A⃗ ⊨ A} (−1)^{ℓ−1} m_{A⃗} ∘ Δ_{A⃗}`, so `S(x) = x` on a
//! singleton ground set. The antipode of the Hopf monoid is `−S`; the
//! axiom check in [`antipode_axiom`] uses that sign.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::factorization::{check_composition_cap, factorization_map, is_lambda_atomic};
use super::{coideal_restricted, coproduct_key, degree, label_mask, product_keys, BasisKey, SpeciesElement};
use crate::error::Result;
use crate::intervals::IntervalIndex;
use crate::nonnesting::NNPartition;
use crate::poset::{Atom, AtomSet, Poset};
use crate::scalar::Rf;
use crate::supercharacter::Basis;
use crate::Caps;

/// Memoized Takeuchi sums over basis vectors of one basis.
pub(crate) struct Engine<'a> {
    basis: Basis,
    caps: &'a Caps,
    memo: BTreeMap<BasisKey, SpeciesElement>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(basis: Basis, caps: &'a Caps) -> Self {
        Engine {
            basis,
            caps,
            memo: BTreeMap::new(),
        }
    }

    pub(crate) fn antipode(&mut self, key: &BasisKey) -> Result<SpeciesElement> {
        if let Some(s) = self.memo.get(key) {
            return Ok(s.clone());
        }
        let s = self.restricted(key, None)?;
        self.memo.insert(key.clone(), s.clone());
        Ok(s)
    }

    /// The Takeuchi sum over compositions whose first block contains `first`
    /// (all compositions when `None`). Splitting off the first block leaves
    /// a full Takeuchi sum on the remaining factor.
    pub(crate) fn restricted(&mut self, key: &BasisKey, first: Option<&Atom>) -> Result<SpeciesElement> {
        let mut out = SpeciesElement::basis_vector(self.basis, key.clone());
        let atoms: Vec<Atom> = key.ambient.atoms().to_vec();
        let n = atoms.len();
        if n <= 1 {
            return Ok(out);
        }
        for mask in 1u64..(1u64 << n) - 1 {
            let s: AtomSet = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| atoms[i].clone()).collect();
            if first.is_some_and(|a| !s.contains(a)) {
                continue;
            }
            let t: AtomSet = atoms.iter().filter(|a| !s.contains(*a)).cloned().collect();
            for (y, z, c) in coproduct_key(self.basis, key, &s, &t)? {
                let tail = self.antipode(&z)?;
                for (w, d) in tail.terms() {
                    let cd = &c * d;
                    for (p, e) in product_keys(self.basis, &y, w, self.caps)? {
                        out.add_term(p, &-(&cd * &e));
                    }
                }
            }
        }
        Ok(out)
    }
}

pub fn antipode_takeuchi(x: &SpeciesElement, caps: &Caps) -> Result<SpeciesElement> {
    check_composition_cap(x.ground().len(), caps)?;
    let mut engine = Engine::new(x.basis(), caps);
    let mut out = SpeciesElement::zero(x.ground().clone(), x.basis());
    for (key, c) in x.terms() {
        out.add_scaled(&engine.antipode(key)?, c)?;
    }
    Ok(out)
}

/// `Σ_{A = S ⊔ T} m_{S,T}((−S)(x|_S) ⊗ x|_T)`, which vanishes for a nonempty
/// ground set.
pub fn antipode_axiom(x: &SpeciesElement, caps: &Caps) -> Result<SpeciesElement> {
    check_composition_cap(x.ground().len(), caps)?;
    let mut engine = Engine::new(x.basis(), caps);
    let atoms: Vec<Atom> = x.ground().iter().cloned().collect();
    let n = atoms.len();
    let mut out = SpeciesElement::zero(x.ground().clone(), x.basis());
    for mask in 0u64..(1u64 << n) {
        let s: AtomSet = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| atoms[i].clone()).collect();
        let t: AtomSet = atoms.iter().filter(|a| !s.contains(*a)).cloned().collect();
        for (key, c) in x.terms() {
            for (y, z, d) in coproduct_key(x.basis(), key, &s, &t)? {
                let left = if s.is_empty() {
                    SpeciesElement::basis_vector(x.basis(), y)
                } else {
                    -&engine.antipode(&y)?
                };
                let cd = c * &d;
                for (w, e) in left.terms() {
                    for (p, f) in product_keys(x.basis(), w, &z, caps)? {
                        out.add_term(p, &(&(&cd * e) * &f));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `S(δ_{UT_Q}) = Σ_{Fac_Q(P) = {I⃗}} (−1)^{ℓ(I⃗)−1} δ_{UT_P}`, each term
/// carried by the ambient `P`.
pub fn antipode_delta_subgroup(q: &Poset, caps: &Caps) -> Result<SpeciesElement> {
    let mut out = SpeciesElement::zero(q.atom_set(), Basis::SubgroupDelta);
    for (p, facs) in factorization_map(q, caps)? {
        if let [only] = facs.as_slice() {
            let key = BasisKey {
                ambient: p,
                label: NNPartition::empty(),
            };
            out.add_term(key, &Rf::integer(only.sign()));
        }
    }
    Ok(out)
}

/// Closed form of `S(χ^λ)` over λ-atomic `Fac_R(P)`.
pub fn antipode_chi(r: &Poset, lambda: &NNPartition, caps: &Caps) -> Result<SpeciesElement> {
    let ri = IntervalIndex::new(r)?;
    let lam = label_mask(&ri, lambda)?;
    let lower = ri.outside(lam);
    let deg = degree(&ri, lam);
    let ratio = Rf::q() / (Rf::q() - Rf::one());
    let mut out = SpeciesElement::zero(r.atom_set(), Basis::Chi);
    for (p, facs) in factorization_map(r, caps)? {
        if !is_lambda_atomic(r, &p, lambda)? {
            continue;
        }
        // per composition: λ_I and q^{e(UT_λ ∩ UT_{R|I}) − e(UT_{R|I})}
        let mut weights = Vec::with_capacity(facs.len());
        for c in &facs {
            let si = IntervalIndex::new(&c.split(r)?)?;
            let shared = coideal_restricted(&ri, lower, &si).count_ones() as i64;
            let w = Rf::q_pow(shared - si.len() as i64) * Rf::integer(c.sign());
            weights.push((c, c.blockwise(lambda), w));
        }
        let pi = IntervalIndex::new(&p)?;
        let candidates = (0..pi.len())
            .filter(|&k| {
                let iv = pi.interval(k);
                lambda.arcs().iter().any(|l| r.less_eq(&l.lo, &iv.lo) && r.less_eq(&iv.hi, &l.hi))
            })
            .fold(0, |m, k| m | crate::intervals::ibit(k));
        for nu_mask in pi.antichains_within(candidates, caps.partitions)? {
            let nu = NNPartition::from_mask(&pi, nu_mask);
            let shared = lambda.intersection(&nu);
            let inner: Rf = weights
                .iter()
                .filter(|(c, lam_i, _)| *lam_i == shared && c.blockwise(&nu).len() == nu.len())
                .map(|(_, _, w)| w.clone())
                .sum();
            if inner.is_zero() {
                continue;
            }
            let coeff = &deg * &ratio.pow(shared.len() as i64) * inner;
            out.add_term(
                BasisKey {
                    ambient: p.clone(),
                    label: nu,
                },
                &coeff,
            );
        }
    }
    Ok(out)
}
