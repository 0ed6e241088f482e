use super::*;
use crate::group::PatternGroup;
use crate::lattice::{coideal_of, is_normal, lbl_ch};
use crate::nonnesting::enumerate_nn;
use crate::poset::{Atom, Interval};
use alloc::vec;
use num_bigint::BigInt;
use num_rational::BigRational;

fn caps() -> Caps {
    Caps::default()
}

fn rf(s: &str) -> Rf {
    s.parse().unwrap()
}

fn set(atoms: &[&str]) -> AtomSet {
    atoms.iter().map(|a| Atom::from(*a)).collect()
}

fn part(r: &Poset, pairs: &[(&str, &str)]) -> NNPartition {
    NNPartition::new(r, pairs.iter().map(|&(a, b)| Interval::new(a, b))).unwrap()
}

fn key(r: &Poset, pairs: &[(&str, &str)]) -> BasisKey {
    BasisKey::new(r.clone(), part(r, pairs)).unwrap()
}

fn vector(basis: Basis, r: &Poset, pairs: &[(&str, &str)]) -> SpeciesElement {
    SpeciesElement::basis_vector(basis, key(r, pairs))
}

fn diamond() -> Poset {
    Poset::new(["♥", "♦", "♣", "♠"], [("♥", "♦"), ("♥", "♣"), ("♦", "♠"), ("♣", "♠")]).unwrap()
}

fn posets(n: u32) -> Vec<Poset> {
    Poset::enumerate_all(1..=n).unwrap()
}

fn keys_of(r: &Poset) -> Vec<BasisKey> {
    enumerate_nn(r, 10_000)
        .unwrap()
        .into_iter()
        .map(|l| BasisKey {
            ambient: r.clone(),
            label: l,
        })
        .collect()
}

fn subsets(ground: &AtomSet) -> Vec<(AtomSet, AtomSet)> {
    let atoms: Vec<Atom> = ground.iter().cloned().collect();
    (0u32..(1 << atoms.len()))
        .map(|m| {
            let (mut s, mut t) = (AtomSet::new(), AtomSet::new());
            for (i, a) in atoms.iter().enumerate() {
                if m & (1 << i) != 0 {
                    s.insert(a.clone());
                } else {
                    t.insert(a.clone());
                }
            }
            (s, t)
        })
        .collect()
}

#[test]
fn product_examples() {
    let c2 = Poset::chain_n(2);
    let three = Poset::antichain(["3"]).unwrap();
    let c3 = Poset::chain_n(3);
    let x = vector(Basis::Chi, &c2, &[("1", "2")]);
    let y = vector(Basis::Chi, &three, &[]);
    assert_eq!(product(&x, &y, &caps()).unwrap(), vector(Basis::Chi, &c3, &[("1", "2")]));

    let x = vector(Basis::Delta, &c2, &[("1", "2")]);
    let y = vector(Basis::Delta, &three, &[]);
    let expected = SpeciesElement::from_terms(
        c3.atom_set(),
        Basis::Delta,
        [(key(&c3, &[("1", "2")]), Rf::one()), (key(&c3, &[("1", "2"), ("2", "3")]), Rf::one())],
    )
    .unwrap();
    assert_eq!(product(&x, &y, &caps()).unwrap(), expected);

    let x = vector(Basis::SubgroupChi, &c2, &[]);
    let y = vector(Basis::SubgroupChi, &three, &[]);
    assert_eq!(product(&x, &y, &caps()).unwrap(), vector(Basis::SubgroupChi, &c3, &[]));

    assert!(matches!(product(&x, &x, &caps()), Err(Error::Overlap(_))));
}

#[test]
fn coproduct_examples() {
    let c3 = Poset::chain_n(3);
    let (s, t) = (set(&["1", "2"]), set(&["3"]));
    let x = vector(Basis::Delta, &c3, &[("1", "3")]);
    assert!(coproduct(&x, &s, &t).unwrap().is_zero());

    let x = vector(Basis::Chi, &c3, &[("1", "3")]);
    let d = coproduct(&x, &s, &t).unwrap();
    let c2 = Poset::chain_n(2);
    let three = Poset::antichain(["3"]).unwrap();
    assert_eq!(d.terms().len(), 2);
    assert_eq!(d.coeff(&[key(&c2, &[]), key(&three, &[])]), rf("q*(q-1)"));
    assert_eq!(d.coeff(&[key(&c2, &[("1", "2")]), key(&three, &[])]), rf("q*(q-1)"));

    for basis in Basis::ALL {
        let x = vector(basis, &c3, &[("1", "3")]);
        let d = coproduct(&x, &c3.atom_set(), &AtomSet::new()).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.coeff(&[key(&c3, &[("1", "3")]), BasisKey::unit()]), Rf::one());
    }
    assert!(matches!(coproduct(&x, &s, &AtomSet::new()), Err(Error::BadSplit)));
}

#[test]
fn restriction_examples() {
    let c3 = Poset::chain_n(3);
    let l13 = part(&c3, &[("1", "3")]);
    let same = restriction_general(&c3, &c3, &l13).unwrap();
    assert_eq!(same, ClassFunction::basis_vector(&c3, Basis::Chi, l13.clone()));

    let q = Poset::new(["1", "2", "3"], [("1", "2")]).unwrap();
    let res = restriction_general(&c3, &q, &l13).unwrap();
    assert_eq!(res.coeffs().len(), 2);
    assert_eq!(res.coeff(&NNPartition::empty()), rf("q*(q-1)"));
    assert_eq!(res.coeff(&part(&q, &[("1", "2")])), rf("q*(q-1)"));

    let c8 = Poset::chain_n(8);
    let q = c8.restrict(&set(&["1", "2", "3", "4", "5", "6"])).unwrap();
    let q = q.disjoint_union(&Poset::antichain(["7", "8"]).unwrap()).unwrap();
    let lambda = part(&c8, &[("2", "4"), ("4", "7"), ("7", "8")]);
    let res = restriction_general(&c8, &q, &lambda).unwrap();
    // ν ranges over the antichains of {[4,5],[4,6],[5,6]}
    assert_eq!(res.coeffs().len(), 5);
    for nu in res.coeffs().keys() {
        assert!(nu.contains(&Interval::new("2", "4")));
    }
    assert!(matches!(
        restriction_general(&q, &c8, &part(&q, &[])),
        Err(Error::NotSubposet)
    ));
}

/// Evaluates `χ^λ_R` on every element of `UT_Q` and compares with the
/// expansion over `Q`.
fn restriction_matches_oracle(r: &Poset, q: &Poset, p: u64) {
    let big = PatternGroup::new(r, p).unwrap();
    let small = PatternGroup::new(q, p).unwrap();
    let rd = CharacterData::new(r, 10_000).unwrap();
    let qd = CharacterData::new(q, 10_000).unwrap();
    let elements: Vec<_> = small.elements(1 << 20).unwrap().collect();
    for (l, lambda) in rd.labels().iter().enumerate() {
        let res = restriction_general(r, q, lambda).unwrap();
        let values = qd.values(&res).unwrap();
        for g in &elements {
            let big_g = big.embed(&small, g).unwrap();
            let m = rd.position(&big.superclass_of(&big_g)).unwrap();
            let direct = rd.chi_value_at(l, m).evaluate_int(p as i64).unwrap();
            let mq = qd.position(&small.superclass_of(g)).unwrap();
            let formula = values[mq].evaluate_int(p as i64).unwrap();
            assert_eq!(direct, formula, "{r:?} {q:?} {lambda} at p={p}");
        }
    }
}

#[test]
fn restriction_matches_group_oracle() {
    for n in 1..=3 {
        for r in posets(n) {
            for q in posets(n).into_iter().filter(|q| q.is_subposet_of(&r)) {
                for p in [2, 3] {
                    restriction_matches_oracle(&r, &q, p);
                }
            }
        }
    }
}

#[test]
fn fac_examples() {
    let d = diamond();
    let p = Poset::chain(["♥", "♦", "♣", "♠"]).unwrap();
    let facs: Vec<SetComposition> = fac(&d, &p).unwrap().iter().map(|f| f.composition().clone()).collect();
    let comp = |blocks: &[&[&str]]| SetComposition::new(blocks.iter().map(|b| set(b)).collect()).unwrap();
    let expected = [
        comp(&[&["♥", "♦"], &["♣", "♠"]]),
        comp(&[&["♥"], &["♦"], &["♣", "♠"]]),
        comp(&[&["♥", "♦"], &["♣"], &["♠"]]),
        comp(&[&["♥"], &["♦"], &["♣"], &["♠"]]),
    ];
    assert_eq!(facs, expected);
    for q in posets(3) {
        assert!(fac(&q, &q).unwrap().iter().any(|f| f.len() == 1));
    }
    for n in 1..=5 {
        let c = Poset::chain_n(n);
        assert_eq!(fac(&c, &c).unwrap().len(), 1 << (n - 1));
    }
    assert!(matches!(fac(&Poset::chain_n(2), &Poset::chain_n(3)), Err(Error::AtomMismatch)));
}

#[test]
fn fac_agrees_with_stacking() {
    for q in posets(4) {
        let map = factorization_map(&q, &caps()).unwrap();
        for (p, comps) in &map {
            let direct: Vec<SetComposition> = fac(&q, p).unwrap().iter().map(|f| f.composition().clone()).collect();
            let mut comps = comps.clone();
            comps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            assert_eq!(direct, comps);
        }
    }
}

#[test]
fn takeuchi_examples() {
    let one = Poset::antichain(["x"]).unwrap();
    for basis in Basis::ALL {
        let x = vector(basis, &one, &[]);
        assert_eq!(antipode_takeuchi(&x, &caps()).unwrap(), x);
    }
    let c2 = Poset::chain_n(2);
    let x = vector(Basis::SubgroupDelta, &c2, &[]);
    let down = Poset::chain(["2", "1"]).unwrap();
    assert_eq!(antipode_takeuchi(&x, &caps()).unwrap(), -&vector(Basis::SubgroupDelta, &down, &[]));
}

/// The alternating sum over all compositions, term by term.
fn takeuchi_by_compositions(x: &SpeciesElement) -> SpeciesElement {
    let mut out = SpeciesElement::zero(x.ground().clone(), x.basis());
    for comp in set_compositions(x.ground(), &caps()).unwrap() {
        let mut t = TensorElement::from_element(x);
        let blocks = comp.blocks();
        for (j, b) in blocks.iter().enumerate().take(blocks.len() - 1) {
            let rest: AtomSet = blocks[j + 1..].iter().flatten().cloned().collect();
            t = t.split_factor(j, b, &rest).unwrap();
        }
        out.add_scaled(&t.contract(&caps()).unwrap(), &Rf::integer(comp.sign())).unwrap();
    }
    out
}

#[test]
fn takeuchi_recursion_matches_composition_sum() {
    for n in 1..=3 {
        for r in posets(n) {
            for k in keys_of(&r) {
                for basis in Basis::ALL {
                    let x = SpeciesElement::basis_vector(basis, k.clone());
                    assert_eq!(antipode_takeuchi(&x, &caps()).unwrap(), takeuchi_by_compositions(&x));
                }
            }
        }
    }
}

#[test]
fn antipode_axiom_holds() {
    for n in 1..=3 {
        for r in posets(n) {
            for k in keys_of(&r) {
                for basis in Basis::ALL {
                    let x = SpeciesElement::basis_vector(basis, k.clone());
                    assert!(antipode_axiom(&x, &caps()).unwrap().is_zero(), "{basis} {k:?}");
                }
            }
        }
    }
}

#[test]
fn antipode_is_an_involution_on_two_atoms() {
    for r in posets(2) {
        for k in keys_of(&r) {
            for basis in Basis::ALL {
                let x = SpeciesElement::basis_vector(basis, k.clone());
                let s = antipode_takeuchi(&x, &caps()).unwrap();
                assert_eq!(antipode_takeuchi(&s, &caps()).unwrap(), x);
            }
        }
    }
}

#[test]
fn delta_subgroup_examples() {
    let one = Poset::antichain(["x"]).unwrap();
    assert_eq!(
        antipode_delta_subgroup(&one, &caps()).unwrap(),
        vector(Basis::SubgroupDelta, &one, &[])
    );
    let c2 = Poset::chain_n(2);
    let down = Poset::chain(["2", "1"]).unwrap();
    assert_eq!(
        antipode_delta_subgroup(&c2, &caps()).unwrap(),
        -&vector(Basis::SubgroupDelta, &down, &[])
    );
    let d = diamond();
    let p = Poset::chain(["♥", "♦", "♣", "♠"]).unwrap();
    let s = antipode_delta_subgroup(&d, &caps()).unwrap();
    assert!(s.coeff(&BasisKey::unit_on(p)).is_zero());
}

#[test]
fn delta_subgroup_closed_form_matches_takeuchi() {
    for n in 1..=4 {
        for q in posets(n) {
            let x = vector(Basis::SubgroupDelta, &q, &[]);
            assert_eq!(
                antipode_delta_subgroup(&q, &caps()).unwrap(),
                antipode_takeuchi(&x, &caps()).unwrap(),
                "{q:?}"
            );
        }
    }
}

#[test]
fn delta_subgroup_independent_of_ambient_after_forgetting() {
    for n in 1..=3 {
        for r in posets(n) {
            for q in posets(n).into_iter().filter(|q| q.is_subposet_of(&r)) {
                if !is_normal(&r, &q).unwrap() {
                    continue;
                }
                let x = SpeciesElement::basis_vector(
                    Basis::SubgroupDelta,
                    BasisKey {
                        ambient: r.clone(),
                        label: lbl_ch(&coideal_of(&r, &q).unwrap()),
                    },
                );
                let s = antipode_takeuchi(&x, &caps()).unwrap();
                assert_eq!(forget_ambient(&s).unwrap(), antipode_delta_subgroup(&q, &caps()).unwrap());
            }
        }
    }
}

#[test]
fn lambda_atomic_examples() {
    let c3 = Poset::chain_n(3);
    assert!(is_lambda_atomic(&c3, &c3, &part(&c3, &[("1", "3")])).unwrap());
    // the chain splits at every cut, and each cut pair is in UT_∅
    assert!(!is_lambda_atomic(&c3, &c3, &NNPartition::empty()).unwrap());
    // 3 ≺ 2 ≺ 1 stacks R|3.R|2.R|1 and no cut pair is an interval of R
    let down = Poset::chain(["3", "2", "1"]).unwrap();
    assert!(is_lambda_atomic(&c3, &down, &NNPartition::empty()).unwrap());
    let flat = Poset::antichain(["1", "2", "3"]).unwrap();
    assert!(!is_lambda_atomic(&c3, &flat, &NNPartition::empty()).unwrap());
}

#[test]
fn chi_closed_form_matches_takeuchi() {
    let mut cases: Vec<Poset> = (1..=3).flat_map(posets).collect();
    cases.push(Poset::chain_n(4));
    for r in cases {
        for k in keys_of(&r) {
            let x = SpeciesElement::basis_vector(Basis::Chi, k.clone());
            assert_eq!(
                antipode_chi(&r, &k.label, &caps()).unwrap(),
                antipode_takeuchi(&x, &caps()).unwrap(),
                "{k:?}"
            );
        }
    }
}

#[test]
fn chi_trivial_character_corollary() {
    for r in posets(3) {
        let s = antipode_chi(&r, &NNPartition::empty(), &caps()).unwrap();
        let mut expected = SpeciesElement::zero(r.atom_set(), Basis::Chi);
        for (p, facs) in factorization_map(&r, &caps()).unwrap() {
            if let [only] = facs.as_slice() {
                expected.add_term(BasisKey::unit_on(p), &Rf::integer(only.sign()));
            }
        }
        assert_eq!(s, expected, "{r:?}");
    }
}

#[test]
fn chi_remark_coefficient() {
    let c3 = Poset::chain_n(3);
    let s = antipode_chi(&c3, &part(&c3, &[("1", "3")]), &caps()).unwrap();
    let c = s.coeff(&BasisKey::unit_on(c3.clone()));
    assert_eq!(c, rf("q*(q-1)*(q-2)"));
    assert!(c.evaluate_int(2).unwrap().is_zero());
    let one = Poset::antichain(["x"]).unwrap();
    assert_eq!(
        antipode_chi(&one, &NNPartition::empty(), &caps()).unwrap(),
        vector(Basis::Chi, &one, &[])
    );
}

#[test]
fn structure_laws_on_small_posets() {
    for n in 0..=3 {
        for r in posets(n) {
            for k in keys_of(&r) {
                for basis in Basis::ALL {
                    let x = SpeciesElement::basis_vector(basis, k.clone());
                    let ground = x.ground().clone();
                    for (s, t) in subsets(&ground) {
                        let d = coproduct(&x, &s, &t).unwrap();
                        // coassociativity over every three-block split of the ground set
                        for (s1, s2) in subsets(&s) {
                            let left = d.split_factor(0, &s1, &s2).unwrap();
                            let st: AtomSet = s2.union(&t).cloned().collect();
                            let right = coproduct(&x, &s1, &st).unwrap().split_factor(1, &s2, &t).unwrap();
                            assert_eq!(left, right);
                        }
                        // counit
                        if t.is_empty() {
                            assert_eq!(d.terms().len(), 1);
                            assert_eq!(d.coeff(&[k.clone(), BasisKey::unit()]), Rf::one());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn bialgebra_compatibility() {
    let caps = caps();
    let lefts: Vec<Poset> = (0..=2).flat_map(|n| Poset::enumerate_all(1..=n).unwrap()).collect();
    for a in &lefts {
        let others: Vec<Poset> = if a.len() < 2 {
            Poset::enumerate_all(["x"]).unwrap()
        } else {
            vec![Poset::empty(), Poset::antichain(["x"]).unwrap()]
        };
        for b in &others {
            for ka in keys_of(a) {
                for kb in keys_of(b) {
                    for basis in Basis::ALL {
                        let x = SpeciesElement::basis_vector(basis, ka.clone());
                        let y = SpeciesElement::basis_vector(basis, kb.clone());
                        let xy = product(&x, &y, &caps).unwrap();
                        for (s, t) in subsets(xy.ground()) {
                            let lhs = coproduct(&xy, &s, &t).unwrap();
                            let sa: AtomSet = s.intersection(x.ground()).cloned().collect();
                            let ta: AtomSet = t.intersection(x.ground()).cloned().collect();
                            let sb: AtomSet = s.intersection(y.ground()).cloned().collect();
                            let tb: AtomSet = t.intersection(y.ground()).cloned().collect();
                            let dx = coproduct(&x, &sa, &ta).unwrap();
                            let dy = coproduct(&y, &sb, &tb).unwrap();
                            assert_eq!(lhs, dx.multiply(&dy, &caps).unwrap(), "{basis} {ka:?} {kb:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn bases_agree_through_conversion() {
    let caps = caps();
    for n in 1..=3 {
        for r in posets(n) {
            for k in keys_of(&r) {
                let chi = SpeciesElement::basis_vector(Basis::Chi, k.clone());
                let delta = convert_species(&chi, Basis::Delta, &caps).unwrap();
                for (s, t) in subsets(chi.ground()) {
                    let via_chi = coproduct(&chi, &s, &t).unwrap();
                    let via_delta = coproduct(&delta, &s, &t).unwrap();
                    assert_eq!(convert_tensor(&via_chi, Basis::Delta, &caps).unwrap(), via_delta);
                }
            }
        }
    }
    let three = Poset::antichain(["3"]).unwrap();
    for r in (0..=2).flat_map(posets) {
        for ka in keys_of(&r) {
            for kb in keys_of(&three) {
                let x = SpeciesElement::basis_vector(Basis::Chi, ka.clone());
                let y = SpeciesElement::basis_vector(Basis::Chi, kb.clone());
                let via_chi = convert_species(&product(&x, &y, &caps).unwrap(), Basis::Delta, &caps).unwrap();
                let xd = convert_species(&x, Basis::Delta, &caps).unwrap();
                let yd = convert_species(&y, Basis::Delta, &caps).unwrap();
                assert_eq!(via_chi, product(&xd, &yd, &caps).unwrap(), "{ka:?}");
            }
        }
    }
}

#[test]
fn delta_coproduct_keeps_intervals_above_the_other_factor() {
    // [1,4] contains [2,3], so g with support {[1,4],[2,3]} lies in the class
    // {[2,3]} of UT_4 while its {1,4}-part is nontrivial
    let c4 = Poset::chain_n(4);
    let x = vector(Basis::Delta, &c4, &[("2", "3")]);
    let d = coproduct(&x, &set(&["1", "4"]), &set(&["2", "3"])).unwrap();
    let (a, b) = (c4.restrict(&set(&["1", "4"])).unwrap(), c4.restrict(&set(&["2", "3"])).unwrap());
    let expected = TensorElement::from_terms(
        vec![set(&["1", "4"]), set(&["2", "3"])],
        Basis::Delta,
        [
            (vec![key(&a, &[]), key(&b, &[("2", "3")])], Rf::one()),
            (vec![key(&a, &[("1", "4")]), key(&b, &[("2", "3")])], Rf::one()),
        ],
    );
    assert_eq!(d, expected);
    let chi = convert_species(&x, Basis::Chi, &caps()).unwrap();
    let via_chi = coproduct(&chi, &set(&["1", "4"]), &set(&["2", "3"])).unwrap();
    assert_eq!(convert_tensor(&via_chi, Basis::Delta, &caps()).unwrap(), d);
}

#[test]
fn coproduct_degree_count() {
    for n in 2..=4 {
        let r = Poset::chain_n(n);
        let ri = IntervalIndex::new(&r).unwrap();
        for k in keys_of(&r) {
            let lam = k.label.mask(&ri).unwrap();
            let total_degree = degree(&ri, lam);
            for (s, t) in subsets(&r.atom_set()) {
                let x = SpeciesElement::basis_vector(Basis::Chi, k.clone());
                let d = coproduct(&x, &s, &t).unwrap();
                let sum: Rf = d
                    .terms()
                    .iter()
                    .map(|(keys, c)| {
                        let f: Rf = keys
                            .iter()
                            .map(|kk| {
                                let idx = IntervalIndex::new(&kk.ambient).unwrap();
                                degree(&idx, kk.label.mask(&idx).unwrap())
                            })
                            .product();
                        c * &f
                    })
                    .sum();
                assert_eq!(sum, total_degree);
            }
        }
    }
}

#[test]
fn atomic_pair_examples() {
    let one = Poset::antichain(["1"]).unwrap();
    assert!(is_atomic_pair(&one, &one).unwrap());
    let c2 = Poset::chain_n(2);
    let flat = Poset::antichain(["1", "2"]).unwrap();
    assert!(is_atomic_pair(&c2, &flat).unwrap());
    assert!(!is_atomic_pair(&c2, &c2).unwrap());
    assert_eq!(
        decompose_atomic(&c2, &c2).unwrap(),
        SetComposition::new(vec![set(&["1"]), set(&["2"])]).unwrap()
    );
    assert!(matches!(is_atomic_pair(&flat, &c2), Err(Error::NotSubposet)));
}

#[test]
fn atomic_partitions_of_chains_are_catalan() {
    let catalan = [1u32, 1, 2, 5, 14, 42, 132];
    for n in 2..=7u32 {
        let r = Poset::chain_n(n);
        let count = enumerate_nn(&r, 10_000)
            .unwrap()
            .iter()
            .filter(|l| is_atomic_partition(&r, l).unwrap())
            .count();
        assert_eq!(count as u32, catalan[n as usize - 1], "n = {n}");
    }
}

fn atomic_normal_pairs(n: u32) -> Vec<(Poset, Poset)> {
    let mut out = Vec::new();
    for r in posets(n) {
        for q in posets(n).into_iter().filter(|q| q.is_subposet_of(&r)) {
            if is_normal(&r, &q).unwrap() && is_atomic_pair(&r, &q).unwrap() {
                out.push((r.clone(), q));
            }
        }
    }
    out
}

#[test]
fn primitive_generators_are_primitive() {
    for n in 1..=3 {
        for (r, q) in atomic_normal_pairs(n) {
            for a in r.atoms() {
                let g = primitive_generator(a, &r, &q, &caps()).unwrap();
                assert!(is_primitive(&g).unwrap(), "{r:?} {q:?} {a}");
                let lead = BasisKey {
                    ambient: r.clone(),
                    label: lbl_ch(&coideal_of(&r, &q).unwrap()),
                };
                assert_eq!(g.coeff(&lead), Rf::one());
            }
        }
    }
}

#[test]
fn primitive_generator_errors_and_examples() {
    let c2 = Poset::chain_n(2);
    let one = Poset::antichain(["1"]).unwrap();
    let a = Atom::from("1");
    assert_eq!(
        primitive_generator(&a, &one, &one, &caps()).unwrap(),
        vector(Basis::SubgroupDelta, &one, &[])
    );
    assert!(matches!(primitive_generator(&a, &c2, &c2, &caps()), Err(Error::NotAtomic)));
    let mid = Poset::new(["1", "2", "3"], [("1", "2")]).unwrap();
    assert!(matches!(
        primitive_generator(&a, &Poset::chain_n(3), &mid, &caps()),
        Err(Error::NotNormal)
    ));
    let down = Poset::chain(["2", "1"]).unwrap();
    let g = primitive_generator_closed_form(&a, &down, &caps()).unwrap();
    assert_eq!(g, -&vector(Basis::SubgroupDelta, &c2, &[]));
    assert!(!is_primitive(&vector(Basis::SubgroupDelta, &c2, &[])).unwrap());
}

#[test]
fn closed_form_generator_drops_uncancelled_terms() {
    // Q = 3 ≺ 1 beside 2: P = 3 ≺ 1 ≺ 2 has Fac_Q(P) = {(13|2), (3|1|2)}, and only
    // the first composition puts 1 in the first block
    let q = Poset::new(["1", "2", "3"], [("3", "1")]).unwrap();
    let a = Atom::from("1");
    let g = primitive_generator(&a, &q, &q, &caps()).unwrap();
    let closed = primitive_generator_closed_form(&a, &q, &caps()).unwrap();
    let p = Poset::chain(["3", "1", "2"]).unwrap();
    assert_eq!(forget_ambient(&g).unwrap().coeff(&BasisKey::unit_on(p.clone())), -Rf::one());
    assert!(closed.coeff(&BasisKey::unit_on(p)).is_zero());
    assert!(is_primitive(&g).unwrap());
    assert!(!is_primitive(&closed).unwrap());
}

#[test]
fn closed_form_generator_agrees_on_chains_of_atoms() {
    for (r, q) in atomic_normal_pairs(2) {
        for a in r.atoms() {
            let g = primitive_generator(a, &r, &q, &caps()).unwrap();
            let closed = primitive_generator_closed_form(a, &q, &caps()).unwrap();
            assert_eq!(forget_ambient(&g).unwrap(), closed);
        }
    }
}

#[test]
fn reconstruction_from_atomic_factors() {
    let caps = caps();
    for n in 1..=3 {
        for r in posets(n) {
            for q in posets(n).into_iter().filter(|q| q.is_subposet_of(&r)) {
                if !is_normal(&r, &q).unwrap() {
                    continue;
                }
                let blocks = decompose_atomic(&r, &q).unwrap();
                let mut acc = SpeciesElement::unit(Basis::SubgroupDelta);
                for b in blocks.blocks() {
                    let (rb, qb) = (r.restrict(b).unwrap(), q.restrict(b).unwrap());
                    let a = b.iter().next().unwrap();
                    let g = primitive_generator(a, &rb, &qb, &caps).unwrap();
                    acc = product(&acc, &g, &caps).unwrap();
                }
                let lead = BasisKey {
                    ambient: r.clone(),
                    label: lbl_ch(&coideal_of(&r, &q).unwrap()),
                };
                assert_eq!(acc.coeff(&lead), Rf::one());
                let base = longest_factorization(&q, &ut(&lead));
                for (k, _) in acc.terms().iter().filter(|(k, _)| **k != lead) {
                    assert!(longest_factorization(&q, &ut(k)) > base, "{r:?} {q:?} {k:?}");
                }
            }
        }
    }
}

fn ut(k: &BasisKey) -> Poset {
    crate::lattice::ut_lower(&k.ambient, &k.label).unwrap().as_poset()
}

fn longest_factorization(q: &Poset, p: &Poset) -> usize {
    fac(q, p).unwrap().last().map_or(0, QFactorization::len)
}

#[test]
fn caps_are_enforced() {
    let tight = Caps {
        compositions: 10,
        ..Caps::default()
    };
    let x = vector(Basis::Chi, &Poset::chain_n(3), &[]);
    assert!(matches!(antipode_takeuchi(&x, &tight), Err(Error::SizeCap { .. })));
}

#[test]
fn evaluation_at_two_of_remark() {
    let c = rf("q*(q-1)*(q-2)");
    assert_eq!(c.evaluate_int(3).unwrap(), BigRational::from_integer(BigInt::from(6)));
}

