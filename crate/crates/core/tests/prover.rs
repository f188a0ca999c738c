use ndpl_core::enumerate::{lattices, Bounds};
use ndpl_core::prover::{countermodel_search, whitman_decide, CounterFrame};
use ndpl_core::semantics::{eval_in_lattice, witness_holds, DEFAULT_BUDGET};
use ndpl_core::syntax::parse_pair;
use ndpl_core::{BoundedLattice, ConsequencePair};
use proptest::prelude::*;

fn lattice_valid(l: &BoundedLattice, pair: &ConsequencePair) -> bool {
    let letters: Vec<String> = pair.letters().into_iter().collect();
    let n = l.len();
    let total = n.pow(letters.len() as u32);
    (0..total).all(|mut code| {
        let mut assign = Vec::new();
        for _ in &letters {
            assign.push(code % n);
            code /= n;
        }
        let sigma = |p: &str| letters.iter().position(|q| q == p).map(|i| assign[i]);
        let a = eval_in_lattice(l, &sigma, &pair.lhs).unwrap();
        let b = eval_in_lattice(l, &sigma, &pair.rhs).unwrap();
        l.leq(a, b)
    })
}

fn small_lattices(max: usize) -> Vec<BoundedLattice> {
    let b = Bounds::default();
    (1..=max).flat_map(|n| lattices(n, false, &b).unwrap()).collect()
}

#[test]
fn distributivity_countermodel_is_the_three_atom_claw() {
    let pair = parse_pair("p & (q|q2) <= (p&q)|(p&q2)").unwrap();
    let c = countermodel_search(&pair, 5, false, &Bounds::default(), DEFAULT_BUDGET).unwrap().unwrap();
    let CounterFrame::Plain(sl) = &c.frame else { panic!("plain search") };
    // Bottom with three incomparable elements above it.
    assert_eq!(sl.len(), 4);
    assert_eq!((1..4).filter(|&i| (1..4).all(|j| i == j || !sl.leq(i, j))).count(), 3);
    assert!(witness_holds(sl, &pair, &c.witness).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn whitman_agrees_with_small_lattices_and_search(
        lhs in ndpl_strategies::formula(3),
        rhs in ndpl_strategies::formula(3),
    ) {
        let pair = ConsequencePair::new(lhs, rhs);
        let decided = whitman_decide(&pair).unwrap();
        let lats = small_lattices(5);
        if decided {
            for l in &lats {
                prop_assert!(lattice_valid(l, &pair), "{}", pair);
            }
        } else {
            // A refutation must show up in a small lattice or a small frame.
            let in_lattice = lats.iter().any(|l| !lattice_valid(l, &pair));
            let in_frame = countermodel_search(&pair, 4, false, &Bounds::default(), DEFAULT_BUDGET).unwrap().is_some();
            prop_assert!(in_lattice || in_frame, "{}", pair);
        }
    }
}

mod ndpl_strategies {
    use ndpl_core::Formula;
    use proptest::prelude::*;

    pub fn formula(depth: u32) -> BoxedStrategy<Formula> {
        let leaf = prop_oneof![
            6 => proptest::sample::select(&["p", "q", "r"][..]).prop_map(Formula::prop),
            1 => Just(Formula::Top),
            1 => Just(Formula::Bot),
        ];
        leaf.prop_recursive(depth, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
            ]
        })
        .boxed()
    }
}
