//! Non-nesting poset partitions: antichains of `Int°(R)`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::intervals::{ibit, ibits, IntervalIndex, IntervalMask};
use crate::poset::{Interval, Poset};

/// A set of pairwise non-nested proper intervals ("arcs") of some reference
/// poset, which is supplied alongside.
///
/// Ordered by arc count, then lexicographically by the sorted arc list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NNPartition {
    arcs: Vec<Interval>,
}

impl NNPartition {
    pub fn empty() -> Self {
        NNPartition::default()
    }

    /// Validates the arcs against `r`.
    pub fn new(r: &Poset, arcs: impl IntoIterator<Item = Interval>) -> Result<Self> {
        let lambda = Self::from_arcs(arcs);
        let idx = IntervalIndex::new(r)?;
        let ks: Vec<usize> = lambda
            .arcs
            .iter()
            .map(|a| idx.position(a))
            .collect::<Result<_>>()?;
        for (x, &a) in ks.iter().enumerate() {
            for &b in &ks[x + 1..] {
                if idx.contained(a, b) || idx.contained(b, a) {
                    return Err(Error::Nesting(
                        idx.interval(a).to_string(),
                        idx.interval(b).to_string(),
                    ));
                }
            }
        }
        Ok(lambda)
    }

    /// Builds without validation; arcs are sorted and deduplicated.
    pub fn from_arcs(arcs: impl IntoIterator<Item = Interval>) -> Self {
        let mut arcs: Vec<Interval> = arcs.into_iter().collect();
        arcs.sort();
        arcs.dedup();
        NNPartition { arcs }
    }

    pub(crate) fn from_mask(idx: &IntervalIndex, mask: IntervalMask) -> Self {
        NNPartition {
            arcs: idx.intervals_of(mask),
        }
    }

    pub(crate) fn mask(&self, idx: &IntervalIndex) -> Result<IntervalMask> {
        idx.mask_of(&self.arcs)
    }

    pub fn arcs(&self) -> &[Interval] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: &Interval) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    pub fn union(&self, other: &NNPartition) -> NNPartition {
        Self::from_arcs(self.arcs.iter().chain(&other.arcs).cloned())
    }

    pub fn intersection(&self, other: &NNPartition) -> NNPartition {
        NNPartition {
            arcs: self.arcs.iter().filter(|a| other.contains(a)).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &NNPartition) -> NNPartition {
        NNPartition {
            arcs: self.arcs.iter().filter(|a| !other.contains(a)).cloned().collect(),
        }
    }

    /// Arcs with both ends in `atoms`.
    pub fn within(&self, atoms: &crate::poset::AtomSet) -> NNPartition {
        NNPartition {
            arcs: self
                .arcs
                .iter()
                .filter(|a| atoms.contains(&a.lo) && atoms.contains(&a.hi))
                .cloned()
                .collect(),
        }
    }
}

impl Ord for NNPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arcs
            .len()
            .cmp(&other.arcs.len())
            .then_with(|| self.arcs.cmp(&other.arcs))
    }
}

impl PartialOrd for NNPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NNPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, a) in self.arcs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for NNPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `pp_nn(R)` in canonical order.
pub fn enumerate_nn(r: &Poset, cap: u64) -> Result<Vec<NNPartition>> {
    let idx = IntervalIndex::new(r)?;
    let mut out: Vec<NNPartition> = idx
        .antichains_within(idx.full(), cap)?
        .into_iter()
        .map(|m| NNPartition::from_mask(&idx, m))
        .collect();
    out.sort();
    Ok(out)
}

/// `|pp_nn(R)|` without materializing the partitions.
pub fn count_nn(r: &Poset) -> Result<u128> {
    let idx = IntervalIndex::new(r)?;
    Ok(idx.count_antichains(idx.full()))
}

pub fn is_nn(r: &Poset, arcs: &[Interval]) -> Result<bool> {
    let idx = IntervalIndex::new(r)?;
    let mask = idx.mask_of(arcs)?;
    Ok(idx.is_antichain(mask))
}

/// `λ_Q`: the arcs of `λ` whose ends are comparable in `Q`.
pub fn restrict_nn(r: &Poset, lambda: &NNPartition, q: &Poset) -> Result<NNPartition> {
    if !q.is_subposet_of(r) {
        return Err(Error::NotSubposet);
    }
    Ok(NNPartition {
        arcs: lambda
            .arcs
            .iter()
            .filter(|a| q.is_proper_interval(a))
            .cloned()
            .collect(),
    })
}

/// `Int^λ_μ`: intervals of `Q` contained (in `Q`) in no arc of `μ` but
/// contained (in `R`) in some arc of `λ`. Ordered by inclusion in `Q`.
pub fn int_lambda_mu(
    r: &Poset,
    q: &Poset,
    lambda: &NNPartition,
    mu: &NNPartition,
) -> Result<Vec<Interval>> {
    let (qi, mask) = int_lambda_mu_mask(r, q, lambda, mu)?;
    Ok(qi.intervals_of(mask))
}

pub(crate) fn int_lambda_mu_mask(
    r: &Poset,
    q: &Poset,
    lambda: &NNPartition,
    mu: &NNPartition,
) -> Result<(IntervalIndex, IntervalMask)> {
    if !q.is_subposet_of(r) {
        return Err(Error::NotSubposet);
    }
    let ri = IntervalIndex::new(r)?;
    let qi = IntervalIndex::new(q)?;
    let lambda_r = lambda.mask(&ri)?;
    let under_lambda = ri.down_closure(lambda_r);
    let under_mu = qi.down_closure(mu.mask(&qi)?);
    let mut mask = 0;
    for k in 0..qi.len() {
        if under_mu & ibit(k) != 0 {
            continue;
        }
        let rk = ri.position(qi.interval(k)).expect("Q-intervals are R-intervals");
        if under_lambda & ibit(rk) != 0 {
            mask |= ibit(k);
        }
    }
    Ok((qi, mask))
}

/// Every arc of `ν − λ` lies in some arc of `λ − ν`.
pub fn res_compatible(r: &Poset, lambda: &NNPartition, nu: &NNPartition) -> Result<bool> {
    let idx = IntervalIndex::new(r)?;
    let (l, n) = match (lambda.mask(&idx), nu.mask(&idx)) {
        (Ok(l), Ok(n)) => (l, n),
        _ => return Err(Error::MixedReference),
    };
    let cover = idx.down_closure(l & !n);
    Ok(ibits(n & !l).all(|k| cover & ibit(k) != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn iv(a: &str, b: &str) -> Interval {
        Interval::new(a, b)
    }

    fn part(r: &Poset, arcs: &[(&str, &str)]) -> NNPartition {
        NNPartition::new(r, arcs.iter().map(|&(a, b)| iv(a, b))).unwrap()
    }

    /// The six-element poset 1<2<3<6, 2<4<5<6 style figure: ranks chosen so
    /// that [3,6] and [4,5] are not nested.
    fn six() -> Poset {
        Poset::new(
            ["1", "2", "3", "4", "5", "6"],
            [("1", "2"), ("2", "3"), ("3", "6"), ("2", "4"), ("4", "5"), ("5", "6")],
        )
        .unwrap()
    }

    #[test]
    fn chain_three_partitions() {
        let c = Poset::chain_n(3);
        let all = enumerate_nn(&c, 1000).unwrap();
        assert_eq!(
            all,
            vec![
                NNPartition::empty(),
                part(&c, &[("1", "2")]),
                part(&c, &[("1", "3")]),
                part(&c, &[("2", "3")]),
                part(&c, &[("1", "2"), ("2", "3")]),
            ]
        );
    }

    #[test]
    fn catalan_counts() {
        let catalan = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 1..=8 {
            assert_eq!(count_nn(&Poset::chain_n(n)).unwrap(), catalan[n as usize]);
        }
        let anti = Poset::antichain(["a", "b", "c"]).unwrap();
        assert_eq!(enumerate_nn(&anti, 10).unwrap(), vec![NNPartition::empty()]);
    }

    #[test]
    fn nesting_examples() {
        let arcs = [iv("3", "6"), iv("4", "5")];
        assert!(is_nn(&six(), &arcs).unwrap());
        assert!(!is_nn(&Poset::chain_n(6), &arcs).unwrap());
        assert!(is_nn(&six(), &[]).unwrap());
        assert!(matches!(
            is_nn(&six(), &[iv("3", "4")]),
            Err(Error::NotAnInterval { .. })
        ));
        assert!(matches!(
            NNPartition::new(&Poset::chain_n(6), arcs),
            Err(Error::Nesting(_, _))
        ));
    }

    #[test]
    fn restriction_to_shorter_chain() {
        let r = Poset::chain_n(8);
        let lambda = part(&r, &[("2", "4"), ("4", "7"), ("7", "8")]);
        let q = Poset::chain_n(6).disjoint_union(&Poset::antichain(["7", "8"]).unwrap()).unwrap();
        assert_eq!(restrict_nn(&r, &lambda, &q).unwrap(), part(&r, &[("2", "4")]));
        assert_eq!(restrict_nn(&r, &lambda, &r).unwrap(), lambda);
        assert_eq!(
            restrict_nn(&r, &NNPartition::empty(), &q).unwrap(),
            NNPartition::empty()
        );
        assert_eq!(
            restrict_nn(&Poset::chain_n(3), &NNPartition::empty(), &Poset::chain_n(4)),
            Err(Error::NotSubposet)
        );
    }

    #[test]
    fn int_lambda_mu_examples() {
        let r = Poset::chain_n(8);
        let lambda = part(&r, &[("2", "4"), ("4", "7"), ("7", "8")]);
        let q = Poset::chain_n(6);
        let mu = restrict_nn(&r, &lambda, &q).unwrap();
        assert_eq!(
            int_lambda_mu(&r, &q, &lambda, &mu).unwrap(),
            vec![iv("4", "5"), iv("4", "6"), iv("5", "6")]
        );

        let c3 = Poset::chain_n(3);
        let c12 = Poset::new(["1", "2", "3"], [("1", "2")]).unwrap();
        let l13 = part(&c3, &[("1", "3")]);
        assert_eq!(
            int_lambda_mu(&c3, &c12, &l13, &NNPartition::empty()).unwrap(),
            vec![iv("1", "2")]
        );
        assert!(int_lambda_mu(&c3, &c12, &NNPartition::empty(), &NNPartition::empty())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn res_compatible_examples() {
        let c = Poset::chain_n(3);
        let l13 = part(&c, &[("1", "3")]);
        let l12 = part(&c, &[("1", "2")]);
        let l23 = part(&c, &[("2", "3")]);
        assert!(res_compatible(&c, &l13, &l13).unwrap());
        assert!(res_compatible(&c, &l13, &l12).unwrap());
        assert!(!res_compatible(&c, &l12, &l23).unwrap());
        let foreign = NNPartition::from_arcs([iv("3", "1")]);
        assert_eq!(res_compatible(&c, &foreign, &l12), Err(Error::MixedReference));
    }

    #[test]
    fn enumeration_matches_is_nn_on_small_posets() {
        for r in Poset::enumerate_all(1..=4u32).unwrap() {
            let all = enumerate_nn(&r, 10_000).unwrap();
            let ints = r.proper_intervals();
            let mut accepted = Vec::new();
            for bitset in 0u32..(1 << ints.len()) {
                let arcs: Vec<Interval> = (0..ints.len())
                    .filter(|&k| bitset & (1 << k) != 0)
                    .map(|k| ints[k].clone())
                    .collect();
                if is_nn(&r, &arcs).unwrap() {
                    accepted.push(NNPartition::from_arcs(arcs));
                }
            }
            accepted.sort();
            assert_eq!(all, accepted);
        }
    }

    #[test]
    fn int_lambda_mu_clauses_hold() {
        let mut cases: Vec<(Poset, Poset)> = Vec::new();
        for n in 1..=4u32 {
            let all = Poset::enumerate_all(1..=n).unwrap();
            for r in all.iter().filter(|r| n < 4 || r.relation_count() == 6) {
                for q in all.iter().filter(|q| q.is_subposet_of(r)) {
                    cases.push((r.clone(), q.clone()));
                }
            }
        }
        for (r, q) in cases {
            let ri = IntervalIndex::new(&r).unwrap();
            for lambda in enumerate_nn(&r, 10_000).unwrap() {
                let mu = restrict_nn(&r, &lambda, &q).unwrap();
                for iv in int_lambda_mu(&r, &q, &lambda, &mu).unwrap() {
                    assert!(!mu.contains(&iv));
                    let k = ri.position(&iv).unwrap();
                    assert!(lambda
                        .arcs()
                        .iter()
                        .any(|a| ri.contained(k, ri.position(a).unwrap())));
                }
            }
        }
    }
}
