//! Primitive generators attached to atomic pairs.

use alloc::vec::Vec;

use super::antipode::Engine;
use super::factorization::{check_composition_cap, factorization_map, is_atomic_pair};
use super::{coproduct, BasisKey, SpeciesElement};
use crate::error::{Error, Result};
use crate::lattice::{coideal_of, lbl_ch, ut_lower};
use crate::nonnesting::NNPartition;
use crate::poset::{Atom, AtomSet, Poset};
use crate::scalar::Rf;
use crate::supercharacter::Basis;
use crate::Caps;

/// `S^{(a)}(δ_{UT_Q})` over ambient `R`: the Takeuchi sum restricted to
/// compositions whose first block contains `a`.
pub fn primitive_generator(a: &Atom, r: &Poset, q: &Poset, caps: &Caps) -> Result<SpeciesElement> {
    if r.index_of(a).is_none() {
        return Err(Error::UnknownAtom(a.clone()));
    }
    let n = coideal_of(r, q)?;
    if !is_atomic_pair(r, q)? {
        return Err(Error::NotAtomic);
    }
    check_composition_cap(r.len(), caps)?;
    let key = BasisKey {
        ambient: r.clone(),
        label: lbl_ch(&n),
    };
    Engine::new(Basis::SubgroupDelta, caps).restricted(&key, Some(a))
}

/// `Σ_{Fac_Q(P) = {I⃗}, a ∈ I_1} (−1)^{ℓ(I⃗)−1} δ_{UT_P}` with ambient `P`.
pub fn primitive_generator_closed_form(a: &Atom, q: &Poset, caps: &Caps) -> Result<SpeciesElement> {
    if q.index_of(a).is_none() {
        return Err(Error::UnknownAtom(a.clone()));
    }
    let mut out = SpeciesElement::zero(q.atom_set(), Basis::SubgroupDelta);
    for (p, facs) in factorization_map(q, caps)? {
        if let [only] = facs.as_slice() {
            if only.blocks()[0].contains(a) {
                let key = BasisKey {
                    ambient: p,
                    label: NNPartition::empty(),
                };
                out.add_term(key, &Rf::integer(only.sign()));
            }
        }
    }
    Ok(out)
}

/// Sums coefficients over ambients with the same subgroup poset, keeping
/// each term as `δ_{UT_P}` on ambient `P`.
pub fn forget_ambient(x: &SpeciesElement) -> Result<SpeciesElement> {
    if x.basis() != Basis::SubgroupDelta {
        return Err(Error::BasisMismatch);
    }
    let mut out = SpeciesElement::zero(x.ground().clone(), Basis::SubgroupDelta);
    for (key, c) in x.terms() {
        let key = BasisKey {
            ambient: ut_lower(&key.ambient, &key.label)?.as_poset(),
            label: NNPartition::empty(),
        };
        out.add_term(key, c);
    }
    Ok(out)
}

/// `Δ_{S,T}(x) = 0` for every split with both blocks nonempty.
pub fn is_primitive(x: &SpeciesElement) -> Result<bool> {
    let atoms: Vec<Atom> = x.ground().iter().cloned().collect();
    let n = atoms.len();
    if n <= 1 {
        return Ok(true);
    }
    for mask in 1u64..(1u64 << n) - 1 {
        let s: AtomSet = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| atoms[i].clone()).collect();
        let t: AtomSet = atoms.iter().filter(|a| !s.contains(*a)).cloned().collect();
        if !coproduct(x, &s, &t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
