mod common;

use std::collections::BTreeMap;

use common::*;
use ndpl_core::duality::modal_complex_algebra;
use ndpl_core::semantics::{eval_in_modal_lattice, eval_model, is_bounded_l_morphism, Model, ModalLFrame, ValuationClass};
use ndpl_core::{Filter, MeetSemilattice, Subset};
use proptest::prelude::*;

fn subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u64 << n).map(Subset)
}

#[test]
fn generated_filters_are_closures() {
    for sl in semilattices_upto(5, false) {
        let n = sl.len();
        for s in subsets(n) {
            let g = sl.generated_filter(s);
            assert!(sl.is_filter(g.members()));
            assert!(s.is_subset(g.members()));
            assert_eq!(sl.generated_filter(g.members()), g);
            for t in subsets(n).filter(|t| s.is_subset(*t)) {
                assert!(g.members().is_subset(sl.generated_filter(t).members()));
            }
        }
    }
}

#[test]
fn filter_join_is_least_upper_bound() {
    for sl in semilattices_upto(5, false) {
        let all = sl.all_filters();
        let empty = sl.empty_filter();
        for &a in &all {
            assert_eq!(sl.join_pair(a, a), a);
            assert_eq!(sl.join_pair(a, empty), a);
            for &b in &all {
                let j = sl.join_pair(a, b);
                assert_eq!(j, sl.join_pair(b, a));
                let least = all
                    .iter()
                    .filter(|g| a.members().is_subset(g.members()) && b.members().is_subset(g.members()))
                    .min_by_key(|g| g.members().len())
                    .unwrap();
                assert_eq!(j, *least);
                // absorption with intersection
                assert_eq!(sl.filter(a.members().intersection(j.members())).unwrap(), a);
                for &c in &all {
                    assert_eq!(sl.join_pair(j, c), sl.join_pair(a, sl.join_pair(b, c)));
                }
            }
        }
        assert_eq!(sl.filter_join(&[]), empty);
    }
}

#[test]
fn principal_filters_form_a_sublattice_of_lattices() {
    for sl in semilattices_upto(5, false) {
        let n = sl.len();
        let is_lattice = (0..n).all(|i| (0..n).all(|j| (0..n).any(|k| sl.leq(i, k) && sl.leq(j, k))));
        if !is_lattice {
            continue;
        }
        let ups: Vec<Filter> = (0..n).map(|x| sl.principal_filter(x)).collect();
        for &a in &ups {
            for &b in &ups {
                let meet = a.members().intersection(b.members());
                assert!(meet.is_empty() || ups.iter().any(|u| u.members() == meet));
                let join = sl.join_pair(a, b);
                assert!(ups.contains(&join));
            }
        }
    }
}

#[test]
fn complex_algebras_are_lattices_with_matching_order() {
    for sl in semilattices_upto(5, false) {
        let ca = sl.complex_algebra();
        let k = ca.filters.len();
        for i in 0..k {
            for j in 0..k {
                let (a, b) = (ca.filters[i].members(), ca.filters[j].members());
                assert_eq!(ca.lattice.leq(i, j), a.is_subset(b));
                assert_eq!(ca.filters[ca.lattice.meet(i, j)].members(), a.intersection(b));
            }
        }
        assert!(ca.filters[ca.lattice.bottom()].is_empty());
        assert_eq!(ca.filters[ca.lattice.top()].members(), sl.carrier());
    }
}

/// Both Egli-Milner halves, from the raw relation.
#[test]
fn order_moves_successor_sets_in_both_directions() {
    for f in modal_upto(4) {
        let sl = f.semilattice();
        let r = f.relation();
        for x in 0..f.len() {
            for y in 0..f.len() {
                if !sl.leq(x, y) {
                    continue;
                }
                for z in r.successors(y) {
                    assert!(r.successors(x).iter().any(|w| sl.leq(w, z)));
                }
                for w in r.successors(x) {
                    assert!(r.successors(y).iter().any(|z| sl.leq(w, z)));
                }
            }
        }
    }
}

fn valuation(sl: &MeetSemilattice, picks: &[usize; 2], principal: bool) -> BTreeMap<String, Subset> {
    let fam = if principal { sl.principal_filters() } else { sl.all_filters() };
    LETTERS[..2]
        .iter()
        .zip(picks)
        .map(|(p, &k)| (p.to_string(), fam[k % fam.len()].members()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn truth_sets_persist(f in formula(3, 2, true), k in 0usize..10_000, picks in any::<[usize; 2]>()) {
        let frames = modal_upto(4);
        let frame = &frames[k % frames.len()];
        let sl = frame.semilattice();
        let m = Model::new(frame.clone(), valuation(sl, &picks, false)).unwrap();
        let t = eval_model(&m, &f).unwrap();
        prop_assert!(sl.is_filter(t));
        if frame.report().is_principal() {
            let m = Model::new(frame.clone(), valuation(sl, &picks, true)).unwrap();
            let t = eval_model(&m, &f).unwrap();
            prop_assert!(sl.filter(t).unwrap().is_principal(sl));
        }
    }

    #[test]
    fn models_evaluate_through_the_complex_algebra(f in formula(3, 2, true), k in 0usize..10_000, picks in any::<[usize; 2]>()) {
        let frames = modal_upto(4);
        let frame = &frames[k % frames.len()];
        let sl = frame.semilattice();
        let v = valuation(sl, &picks, false);
        let m = Model::new(frame.clone(), v.clone()).unwrap();
        let ca = modal_complex_algebra(frame, ValuationClass::AllFilters).unwrap();
        let sigma = |p: &str| v.get(p).and_then(|s| ca.index_of(*s));
        let e = eval_in_modal_lattice(&ca.algebra, &sigma, &f).unwrap();
        prop_assert_eq!(ca.filters[e].members(), eval_model(&m, &f).unwrap());
    }

    #[test]
    fn larger_valuations_give_larger_truth_sets(f in formula(3, 2, true), k in 0usize..10_000, a in any::<[usize; 2]>(), b in any::<[usize; 2]>()) {
        let frames = modal_upto(4);
        let frame = &frames[k % frames.len()];
        let sl = frame.semilattice();
        let u = valuation(sl, &a, false);
        let w = valuation(sl, &b, false);
        let joined: BTreeMap<String, Subset> = u
            .iter()
            .map(|(p, s)| (p.clone(), sl.generated_filter(s.union(w[p])).members()))
            .collect();
        let met: BTreeMap<String, Subset> = u.iter().map(|(p, s)| (p.clone(), s.intersection(w[p]))).collect();
        let t = |v: &BTreeMap<String, Subset>| eval_model(&Model::new(frame.clone(), v.clone()).unwrap(), &f).unwrap();
        let (tu, tw) = (t(&u), t(&w));
        prop_assert!(tu.is_subset(t(&joined)));
        prop_assert!(t(&met).is_subset(tu.intersection(tw)));
    }
}

fn maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let total = to.pow(from as u32);
    (0..total)
        .map(|mut c| {
            (0..from)
                .map(|_| {
                    let d = c % to;
                    c /= to;
                    d
                })
                .collect()
        })
        .collect()
}

#[test]
fn bounded_morphisms_preserve_truth() {
    let frames = modal_upto(3);
    let formulas: Vec<_> = ["p", "box p", "dia p", "p | q", "box (p | dia q)", "dia (box p & q) | p", "box dia p & dia top"]
        .iter()
        .map(|s| ndpl_core::syntax::parse_formula(s).unwrap())
        .collect();
    let mut seen = 0;
    for a in &frames {
        for b in &frames {
            for f in maps(a.len(), b.len()) {
                if !is_bounded_l_morphism(&f, a, b).unwrap() {
                    continue;
                }
                seen += 1;
                let filters = b.semilattice().all_filters();
                for &fp in &filters {
                    for &fq in &filters {
                        let vb: BTreeMap<String, Subset> =
                            [("p".to_string(), fp.members()), ("q".to_string(), fq.members())].into();
                        let va: BTreeMap<String, Subset> =
                            vb.iter().map(|(k, s)| (k.clone(), MeetSemilattice::preimage(&f, *s))).collect();
                        let ma = Model::new(a.clone(), va).unwrap();
                        let mb = Model::new(b.clone(), vb).unwrap();
                        for g in &formulas {
                            let ta = eval_model(&ma, g).unwrap();
                            let tb = eval_model(&mb, g).unwrap();
                            assert_eq!(ta, MeetSemilattice::preimage(&f, tb), "{g}");
                        }
                    }
                }
            }
        }
    }
    assert!(seen > frames.len(), "only identities found");
}

#[test]
fn frames_are_checked_as_stated() {
    for f in modal_upto(3) {
        let again = ModalLFrame::new(f.semilattice().clone(), f.relation().clone()).unwrap();
        assert_eq!(again.report(), f.report());
    }
}
