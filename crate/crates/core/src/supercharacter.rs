//! Supercharacters and superclasses of `UT_R` for the normal-lattice theory.
//!
//! Class functions are stored as coefficient maps in one of four bases:
//! superclass indicators `δ_μ`, supercharacters `χ^λ`, subgroup permutation
//! characters `χ^{UT_λ}`, and subgroup indicators `δ_{UT_λ}`. Here `UT_λ` is
//! the normal pattern subgroup of [`ut_lower`](crate::lattice::ut_lower).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupElement, PatternGroup};
use crate::intervals::{ibits, IntervalIndex, IntervalMask};
use crate::matrix::{self, Matrix};
use crate::nonnesting::NNPartition;
use crate::poset::Poset;
use crate::scalar::Rf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Delta,
    Chi,
    SubgroupChi,
    SubgroupDelta,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::Delta, Basis::Chi, Basis::SubgroupChi, Basis::SubgroupDelta];

    pub fn name(self) -> &'static str {
        match self {
            Basis::Delta => "delta",
            Basis::Chi => "chi",
            Basis::SubgroupChi => "chi-subgroup",
            Basis::SubgroupDelta => "delta-subgroup",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        Basis::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(s.into()))
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-poset tables shared by every supercharacter computation on `R`.
#[derive(Clone, Debug)]
pub struct CharacterData {
    index: IntervalIndex,
    labels: Vec<NNPartition>,
    arcs: Vec<IntervalMask>,
    lower: Vec<IntervalMask>,
    upper: Vec<IntervalMask>,
    by_label: BTreeMap<NNPartition, usize>,
    by_upper: BTreeMap<IntervalMask, usize>,
}

impl CharacterData {
    pub fn new(r: &Poset, cap: u64) -> Result<Self> {
        let index = IntervalIndex::new(r)?;
        let mut labels: Vec<NNPartition> = index
            .antichains_within(index.full(), cap)?
            .into_iter()
            .map(|m| NNPartition::from_mask(&index, m))
            .collect();
        labels.sort();
        let arcs: Vec<IntervalMask> = labels
            .iter()
            .map(|l| l.mask(&index).expect("enumerated labels are valid"))
            .collect();
        let lower = arcs.iter().map(|&a| index.outside(a)).collect();
        let upper: Vec<IntervalMask> = arcs.iter().map(|&a| index.up_closure(a)).collect();
        let by_label = labels.iter().cloned().enumerate().map(|(k, l)| (l, k)).collect();
        let by_upper = upper.iter().enumerate().map(|(k, &u)| (u, k)).collect();
        Ok(CharacterData {
            index,
            labels,
            arcs,
            lower,
            upper,
            by_label,
            by_upper,
        })
    }

    pub fn poset(&self) -> &Poset {
        self.index.poset()
    }

    pub fn index(&self) -> &IntervalIndex {
        &self.index
    }

    pub fn labels(&self) -> &[NNPartition] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn position(&self, lambda: &NNPartition) -> Result<usize> {
        self.by_label.get(lambda).copied().ok_or(Error::MixedReference)
    }

    /// `log_q |UT_R|`.
    pub fn rank(&self) -> usize {
        self.index.len()
    }

    /// `log_q |UT_λ|` for the label at position `l`.
    pub fn lower_exponent(&self, l: usize) -> usize {
        self.lower[l].count_ones() as usize
    }

    pub fn lower_mask(&self, l: usize) -> IntervalMask {
        self.lower[l]
    }

    pub fn upper_mask(&self, l: usize) -> IntervalMask {
        self.upper[l]
    }

    /// Position of the label whose `UT^μ` is the co-ideal `mask`.
    pub fn label_of_upper(&self, mask: IntervalMask) -> usize {
        self.by_upper[&mask]
    }

    pub fn chi_value_at(&self, l: usize, m: usize) -> Rf {
        let (la, ma) = (self.arcs[l], self.arcs[m]);
        let strictly_inside = self.index.down_closure(la) & !la;
        if ma & strictly_inside != 0 {
            return Rf::zero();
        }
        let size = la.count_ones() as i64;
        let shared = (la & ma).count_ones() as i64;
        let e = self.lower_exponent(l) as i64;
        let v = Rf::q_pow(self.rank() as i64 - e - size) * Rf::q_minus_one_pow(size - shared);
        if shared % 2 == 1 {
            -v
        } else {
            v
        }
    }

    pub fn chi_degree_at(&self, l: usize) -> Rf {
        let size = self.arcs[l].count_ones() as i64;
        Rf::q_pow(self.rank() as i64 - self.lower_exponent(l) as i64 - size) * Rf::q_minus_one_pow(size)
    }

    /// `|UT^μ_∘| = q^{e(UT^μ) − |μ|} (q − 1)^{|μ|}`.
    pub fn superclass_size_at(&self, m: usize) -> Rf {
        let size = self.arcs[m].count_ones() as i64;
        Rf::q_pow(self.upper[m].count_ones() as i64 - size) * Rf::q_minus_one_pow(size)
    }

    /// `|UT_R| / |UT_λ|`, the index of `UT_λ`.
    pub fn index_of_lower(&self, l: usize) -> Rf {
        Rf::q_pow((self.rank() - self.lower_exponent(l)) as i64)
    }

    /// `δ_{UT_λ}(μ)`: whether `UT^μ ⊆ UT_λ`.
    pub fn in_lower(&self, l: usize, m: usize) -> bool {
        self.arcs[m] & !self.lower[l] == 0
    }

    pub fn table(&self) -> Matrix<Rf> {
        (0..self.len())
            .map(|l| (0..self.len()).map(|m| self.chi_value_at(l, m)).collect())
            .collect()
    }

    /// Values of `f` on each superclass, in label order.
    pub fn values(&self, f: &ClassFunction) -> Result<Vec<Rf>> {
        if f.reference != *self.poset() {
            return Err(Error::MixedReference);
        }
        let mut v = alloc::vec![Rf::zero(); self.len()];
        for (lambda, c) in &f.coeffs {
            let l = self.position(lambda)?;
            match f.basis {
                Basis::Delta => v[l] += c,
                Basis::Chi => {
                    for (m, slot) in v.iter_mut().enumerate() {
                        let x = self.chi_value_at(l, m);
                        if !x.is_zero() {
                            *slot += &(c * &x);
                        }
                    }
                }
                Basis::SubgroupDelta | Basis::SubgroupChi => {
                    let scale = if f.basis == Basis::SubgroupChi {
                        c * &self.index_of_lower(l)
                    } else {
                        c.clone()
                    };
                    for (m, slot) in v.iter_mut().enumerate() {
                        if self.in_lower(l, m) {
                            *slot += &scale;
                        }
                    }
                }
            }
        }
        Ok(v)
    }

    /// Re-expands a superclass value vector in `target`.
    pub fn from_values(&self, values: &[Rf], target: Basis) -> ClassFunction {
        let n = self.len();
        let coeffs: Vec<Rf> = match target {
            Basis::Delta => values.to_vec(),
            Basis::Chi => (0..n)
                .map(|l| self.inner_values_chi(values, l) / self.chi_degree_at(l))
                .collect(),
            Basis::SubgroupDelta | Basis::SubgroupChi => (0..n)
                .map(|l| {
                    // Möbius inversion over the co-ideals between UT_λ and UT_λ ∪ λ
                    let arcs: Vec<usize> = ibits(self.arcs[l]).collect();
                    let mut c = Rf::zero();
                    for subset in 0u32..(1 << arcs.len()) {
                        let added = arcs
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| subset & (1 << k) != 0)
                            .fold(0u128, |m, (_, &a)| m | (1u128 << a));
                        let m = self.label_of_upper(self.lower[l] | added);
                        if subset.count_ones() % 2 == 1 {
                            c -= &values[m];
                        } else {
                            c += &values[m];
                        }
                    }
                    if target == Basis::SubgroupChi {
                        c / self.index_of_lower(l)
                    } else {
                        c
                    }
                })
                .collect(),
        };
        let mut f = ClassFunction::zero(self.poset(), target);
        for (l, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                f.coeffs.insert(self.labels[l].clone(), c);
            }
        }
        f
    }

    /// `⟨f, χ^λ⟩` for `f` given by its superclass values.
    fn inner_values_chi(&self, values: &[Rf], l: usize) -> Rf {
        let total: Rf = (0..self.len())
            .filter(|&m| !values[m].is_zero())
            .map(|m| {
                let x = self.chi_value_at(l, m);
                if x.is_zero() {
                    Rf::zero()
                } else {
                    &(&self.superclass_size_at(m) * &values[m]) * &x
                }
            })
            .sum();
        total * Rf::q_pow(-(self.rank() as i64))
    }

    pub fn convert(&self, f: &ClassFunction, target: Basis) -> Result<ClassFunction> {
        if f.basis == target {
            return Ok(f.clone());
        }
        Ok(self.from_values(&self.values(f)?, target))
    }

    /// `(1/|UT_R|) Σ_g f(g) g'(g)`; all values are real.
    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Result<Rf> {
        let (vf, vg) = (self.values(f)?, self.values(g)?);
        let total: Rf = (0..self.len())
            .filter(|&m| !vf[m].is_zero() && !vg[m].is_zero())
            .map(|m| &(&self.superclass_size_at(m) * &vf[m]) * &vg[m])
            .sum();
        Ok(total * Rf::q_pow(-(self.rank() as i64)))
    }
}

/// A class function on `UT_R` expanded in one basis.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    reference: Poset,
    basis: Basis,
    coeffs: BTreeMap<NNPartition, Rf>,
}

impl ClassFunction {
    pub fn zero(r: &Poset, basis: Basis) -> Self {
        ClassFunction {
            reference: r.clone(),
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn new(r: &Poset, basis: Basis, coeffs: impl IntoIterator<Item = (NNPartition, Rf)>) -> Self {
        let mut f = Self::zero(r, basis);
        for (l, c) in coeffs {
            f.add_term(l, &c);
        }
        f
    }

    pub fn basis_vector(r: &Poset, basis: Basis, lambda: NNPartition) -> Self {
        Self::new(r, basis, [(lambda, Rf::one())])
    }

    pub fn add_term(&mut self, lambda: NNPartition, c: &Rf) {
        let slot = self.coeffs.entry(lambda.clone()).or_insert_with(Rf::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn reference(&self) -> &Poset {
        &self.reference
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<NNPartition, Rf> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &NNPartition) -> Rf {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rf::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.basis)?;
        for (k, (l, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){l}")?;
        }
        write!(f, "]")
    }
}

fn data(r: &Poset) -> Result<CharacterData> {
    CharacterData::new(r, crate::Caps::default().partitions)
}

pub fn chi_value(r: &Poset, lambda: &NNPartition, mu: &NNPartition) -> Result<Rf> {
    let d = data(r)?;
    let l = d.position(lambda)?;
    let m = d.position(mu)?;
    Ok(d.chi_value_at(l, m))
}

pub fn chi_degree(r: &Poset, lambda: &NNPartition) -> Result<Rf> {
    let d = data(r)?;
    Ok(d.chi_degree_at(d.position(lambda)?))
}

pub fn superclass_size(r: &Poset, mu: &NNPartition) -> Result<Rf> {
    let d = data(r)?;
    Ok(d.superclass_size_at(d.position(mu)?))
}

/// Supercharacter table with its row/column labels.
pub fn table(r: &Poset, cap: u64) -> Result<(Vec<NNPartition>, Matrix<Rf>)> {
    let d = CharacterData::new(r, cap)?;
    Ok((d.labels.clone(), d.table()))
}

/// `∏_λ |UT_R| / |UT_λ|`.
pub fn table_determinant(r: &Poset, cap: u64) -> Result<Rf> {
    let d = CharacterData::new(r, cap)?;
    Ok((0..d.len()).map(|l| d.index_of_lower(l)).product())
}

/// Determinant of the table in canonical order next to the product formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantReport {
    pub formula: Rf,
    pub direct: Rf,
}

impl DeterminantReport {
    /// `+1` or `−1` when the two agree up to sign.
    pub fn sign(&self) -> Option<i8> {
        if self.direct == self.formula {
            Some(1)
        } else if self.direct == -self.formula.clone() {
            Some(-1)
        } else {
            None
        }
    }
}

pub fn determinant_report(r: &Poset, cap: u64) -> Result<DeterminantReport> {
    let d = CharacterData::new(r, cap)?;
    Ok(DeterminantReport {
        formula: (0..d.len()).map(|l| d.index_of_lower(l)).product(),
        direct: matrix::determinant(&d.table()),
    })
}

pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rf> {
    if f.reference != g.reference {
        return Err(Error::MixedReference);
    }
    data(&f.reference)?.inner_product(f, g)
}

pub fn convert(f: &ClassFunction, target: Basis) -> Result<ClassFunction> {
    data(&f.reference)?.convert(f, target)
}

/// `f(g)` at `q = p`.
pub fn evaluate_at_element(f: &ClassFunction, group: &PatternGroup, g: &GroupElement) -> Result<BigRational> {
    if f.reference != *group.poset() {
        return Err(Error::MixedReference);
    }
    let d = data(&f.reference)?;
    let values = d.values(f)?;
    let m = d.position(&group.superclass_of(g))?;
    values[m].evaluate_int(i64::from(group.prime()))
}

/// Sum of all supercharacters at the identity class, as a sanity helper.
pub fn regular_character(d: &CharacterData) -> Vec<Rf> {
    (0..d.len())
        .map(|m| (0..d.len()).map(|l| d.chi_value_at(l, m)).sum())
        .collect()
}
