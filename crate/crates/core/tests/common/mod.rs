#![allow(dead_code)]

use ndpl_core::enumerate::{modal_frames, semilattices, Bounds};
use ndpl_core::fo::FoFormula;
use ndpl_core::semantics::ModalLFrame;
use ndpl_core::{Formula, MeetSemilattice};
use proptest::prelude::*;
use std::sync::OnceLock;

pub const LETTERS: [&str; 3] = ["p", "q", "r"];

fn letter(k: usize) -> BoxedStrategy<Formula> {
    proptest::sample::select(&LETTERS[..k]).prop_map(Formula::prop).boxed()
}

/// Formulas over the first `k` letters.
pub fn formula(depth: u32, k: usize, modal: bool) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![4 => letter(k), 1 => Just(Formula::Top), 1 => Just(Formula::Bot)];
    leaf.prop_recursive(depth, 16, 2, move |inner| {
        let bin = prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
        ];
        if modal {
            prop_oneof![
                2 => bin,
                1 => inner.clone().prop_map(Formula::boxed),
                1 => inner.prop_map(Formula::diamond),
            ]
            .boxed()
        } else {
            bin.boxed()
        }
    })
    .boxed()
}

/// Antecedents built from boxed atoms, ⊤ and ⊥ with ∧, ∨ and ◇.
pub fn sahlqvist_antecedent(depth: u32, k: usize) -> BoxedStrategy<Formula> {
    let atom = (letter(k), 0usize..3).prop_map(|(p, n)| (0..n).fold(p, |f, _| Formula::boxed(f)));
    let leaf = prop_oneof![6 => atom, 1 => Just(Formula::Top), 1 => Just(Formula::Bot)];
    leaf.prop_recursive(depth, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.prop_map(Formula::diamond),
        ]
    })
    .boxed()
}

pub const VARS: [&str; 3] = ["a", "b", "c"];

/// First-order frame formulas over three variables.
pub fn fo_formula(depth: u32) -> BoxedStrategy<FoFormula> {
    let var = || proptest::sample::select(&VARS[..]).prop_map(str::to_string);
    let leaf = prop_oneof![
        (var(), var()).prop_map(|(a, b)| FoFormula::Leq(a, b)),
        (var(), var()).prop_map(|(a, b)| FoFormula::Rel(a, b)),
        (var(), var()).prop_map(|(a, b)| FoFormula::Eq(a, b)),
        Just(FoFormula::True),
        Just(FoFormula::False),
    ];
    leaf.prop_recursive(depth, 24, 3, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| FoFormula::Not(Box::new(a))),
            proptest::collection::vec(inner.clone(), 0..3).prop_map(FoFormula::And),
            proptest::collection::vec(inner.clone(), 0..3).prop_map(FoFormula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| FoFormula::Implies(Box::new(a), Box::new(b))),
            (var(), inner.clone()).prop_map(|(x, a)| FoFormula::Forall(x, Box::new(a))),
            (var(), inner).prop_map(|(x, a)| FoFormula::Exists(x, Box::new(a))),
        ]
    })
    .boxed()
}

/// Unlabeled modal frames with at most `n ≤ 4` states, computed once.
pub fn modal_upto(n: usize) -> Vec<ModalLFrame> {
    static ALL: OnceLock<Vec<ModalLFrame>> = OnceLock::new();
    let all = ALL.get_or_init(|| {
        let b = Bounds::default();
        (1..=4).flat_map(|k| modal_frames(k, false, &b).unwrap()).collect()
    });
    all.iter().filter(|f| f.len() <= n).cloned().collect()
}

pub fn semilattices_upto(n: usize, labeled: bool) -> Vec<MeetSemilattice> {
    let b = Bounds::default();
    (1..=n).flat_map(|k| semilattices(k, labeled, &b).unwrap()).collect()
}
