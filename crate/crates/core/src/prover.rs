//! Entailment in the base logic, derivation checking, and finite
//! countermodel search.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::enumerate::{modal_frames, semilattices, BoundExceeded, Bounds};
use crate::semantics::{frame_validity, witness_holds, Frame, ModalLFrame, SemanticsError, ValuationClass, Witness};
use crate::syntax::{ConsequencePair, Formula};
use crate::MeetSemilattice;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProverError {
    #[error("modal operators are outside the decision procedure")]
    ModalNotSupported,
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("node {path:?} does not instantiate `{rule}`")]
    ShapeMismatch { path: Vec<usize>, rule: String },
    #[error(transparent)]
    Bound(#[from] BoundExceeded),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

struct Whitman {
    memo: BTreeMap<(Formula, Formula), bool>,
}

impl Whitman {
    fn leq(&mut self, s: &Formula, t: &Formula) -> bool {
        let key = (s.clone(), t.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.compute(s, t);
        self.memo.insert(key, v);
        v
    }

    fn compute(&mut self, s: &Formula, t: &Formula) -> bool {
        use Formula::*;
        match (s, t) {
            (Bot, _) | (_, Top) => true,
            (Or(a, b), _) => self.leq(a, t) && self.leq(b, t),
            (_, And(a, b)) => self.leq(s, a) && self.leq(s, b),
            (Prop(p), Prop(q)) => p == q,
            // Remaining cases: s is a letter, ⊤ or a meet; t is a letter, ⊥
            // or a join. ⊤ is the empty meet and ⊥ the empty join.
            _ => {
                let lower: Vec<&Formula> = match s {
                    And(a, b) => alloc::vec![&**a, &**b],
                    _ => Vec::new(),
                };
                let upper: Vec<&Formula> = match t {
                    Or(a, b) => alloc::vec![&**a, &**b],
                    _ => Vec::new(),
                };
                lower.iter().any(|si| self.leq(si, t)) || upper.iter().any(|tj| self.leq(s, tj))
            }
        }
    }
}

/// Whether `lhs ≤ rhs` holds in the free bounded lattice on the letters,
/// i.e. in every lattice under every assignment.
pub fn whitman_decide(pair: &ConsequencePair) -> Result<bool, ProverError> {
    if !pair.is_positive() {
        return Err(ProverError::ModalNotSupported);
    }
    Ok(Whitman { memo: BTreeMap::new() }.leq(&pair.lhs, &pair.rhs))
}

pub const RULES: [&str; 17] = [
    "top",
    "bot",
    "refl",
    "trans",
    "conj-elim-left",
    "conj-elim-right",
    "conj-intro",
    "disj-intro-left",
    "disj-intro-right",
    "disj-elim",
    "box-top",
    "dia-top",
    "dia-bot",
    "becker-box",
    "becker-dia",
    "box-linearity",
    "duality",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: ConsequencePair,
    pub rule: String,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn axiom(rule: &str, conclusion: ConsequencePair) -> Derivation {
        Derivation {
            conclusion,
            rule: rule.to_string(),
            premises: Vec::new(),
        }
    }

    pub fn rule(rule: &str, conclusion: ConsequencePair, premises: Vec<Derivation>) -> Derivation {
        Derivation {
            conclusion,
            rule: rule.to_string(),
            premises,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }
}

fn instantiates(rule: &str, c: &ConsequencePair, prem: &[&ConsequencePair]) -> bool {
    use Formula::*;
    let (l, r) = (&c.lhs, &c.rhs);
    match (rule, prem) {
        ("top", []) => *r == Top,
        ("bot", []) => *l == Bot,
        ("refl", []) => l == r,
        ("trans", [a, b]) => a.lhs == *l && a.rhs == b.lhs && b.rhs == *r,
        ("conj-elim-left", []) => matches!(l, And(a, _) if **a == *r),
        ("conj-elim-right", []) => matches!(l, And(_, b) if **b == *r),
        ("conj-intro", [a, b]) => matches!(r, And(x, y) if a.lhs == *l && b.lhs == *l && a.rhs == **x && b.rhs == **y),
        ("disj-intro-left", []) => matches!(r, Or(a, _) if **a == *l),
        ("disj-intro-right", []) => matches!(r, Or(_, b) if **b == *l),
        ("disj-elim", [a, b]) => matches!(l, Or(x, y) if a.rhs == *r && b.rhs == *r && a.lhs == **x && b.lhs == **y),
        ("box-top", []) => *l == Top && matches!(r, Box(a) if **a == Top),
        ("dia-top", []) => *l == Top && matches!(r, Dia(a) if **a == Top),
        ("dia-bot", []) => *r == Bot && matches!(l, Dia(a) if **a == Bot),
        ("becker-box", [a]) => matches!((l, r), (Box(x), Box(y)) if a.lhs == **x && a.rhs == **y),
        ("becker-dia", [a]) => matches!((l, r), (Dia(x), Dia(y)) if a.lhs == **x && a.rhs == **y),
        ("box-linearity", []) => match (l, r) {
            (And(bx, by), Box(inner)) => match (&**bx, &**by, &**inner) {
                (Box(x), Box(y), And(p, q)) => x == p && y == q,
                _ => false,
            },
            _ => false,
        },
        ("duality", []) => match (l, r) {
            (And(dx, by), Dia(inner)) => match (&**dx, &**by, &**inner) {
                (Dia(x), Box(y), And(p, q)) => x == p && y == q,
                _ => false,
            },
            _ => false,
        },
        _ => false,
    }
}

fn check_at(d: &Derivation, path: &mut Vec<usize>) -> Result<(), ProverError> {
    if !RULES.contains(&d.rule.as_str()) {
        return Err(ProverError::UnknownRule(d.rule.clone()));
    }
    let prem: Vec<&ConsequencePair> = d.premises.iter().map(|p| &p.conclusion).collect();
    if !instantiates(&d.rule, &d.conclusion, &prem) {
        return Err(ProverError::ShapeMismatch {
            path: path.clone(),
            rule: d.rule.clone(),
        });
    }
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_at(p, path)?;
        path.pop();
    }
    Ok(())
}

/// Verifies every node against its rule; the error names the first bad
/// node by its child-index path from the root.
pub fn check_derivation(d: &Derivation) -> Result<(), ProverError> {
    check_at(d, &mut Vec::new())
}

fn cp(l: Formula, r: Formula) -> ConsequencePair {
    ConsequencePair::new(l, r)
}

/// Derivations of the modal validities that hold on every modal L-frame,
/// instantiated at `phi`, `psi`.
pub fn some_val_derivations(phi: &Formula, psi: &Formula) -> Vec<Derivation> {
    use Formula as F;
    let (p, q) = (phi.clone(), psi.clone());
    let pq = F::and(p.clone(), q.clone());
    let box_mono = Derivation::rule(
        "conj-intro",
        cp(F::boxed(pq.clone()), F::and(F::boxed(p.clone()), F::boxed(q.clone()))),
        alloc::vec![
            Derivation::rule(
                "becker-box",
                cp(F::boxed(pq.clone()), F::boxed(p.clone())),
                alloc::vec![Derivation::axiom("conj-elim-left", cp(pq.clone(), p.clone()))],
            ),
            Derivation::rule(
                "becker-box",
                cp(F::boxed(pq.clone()), F::boxed(q.clone())),
                alloc::vec![Derivation::axiom("conj-elim-right", cp(pq.clone(), q.clone()))],
            ),
        ],
    );
    let porq = F::or(p.clone(), q.clone());
    let dia_mono = Derivation::rule(
        "becker-dia",
        cp(F::diamond(p.clone()), F::diamond(porq.clone())),
        alloc::vec![Derivation::axiom("disj-intro-left", cp(p.clone(), porq))],
    );
    alloc::vec![
        Derivation::axiom("box-top", cp(F::Top, F::boxed(F::Top))),
        Derivation::axiom("dia-top", cp(F::Top, F::diamond(F::Top))),
        Derivation::axiom("dia-bot", cp(F::diamond(F::Bot), F::Bot)),
        box_mono,
        dia_mono,
        Derivation::axiom(
            "box-linearity",
            cp(F::and(F::boxed(p.clone()), F::boxed(q.clone())), F::boxed(pq.clone())),
        ),
        Derivation::axiom("duality", cp(F::and(F::diamond(p), F::boxed(q)), F::diamond(pq))),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterFrame {
    Plain(MeetSemilattice),
    Modal(ModalLFrame),
}

impl CounterFrame {
    pub fn as_frame(&self) -> &dyn Frame {
        match self {
            CounterFrame::Plain(sl) => sl,
            CounterFrame::Modal(f) => f,
        }
    }

    pub fn len(&self) -> usize {
        self.as_frame().semilattice().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub frame: CounterFrame,
    pub witness: Witness,
}

/// Candidate frames for a search: sizes ascending, canonical representatives
/// within each size.
pub fn search_frames(max_n: usize, modal: bool, bounds: &Bounds) -> Result<Vec<CounterFrame>, ProverError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        if modal {
            out.extend(modal_frames(n, false, bounds)?.into_iter().map(CounterFrame::Modal));
        } else {
            out.extend(semilattices(n, false, bounds)?.into_iter().map(CounterFrame::Plain));
        }
    }
    Ok(out)
}

/// Refutation of `pair` on one frame, re-verified before it is returned.
pub fn refute_on(frame: &CounterFrame, pair: &ConsequencePair, budget: u64) -> Result<Option<Witness>, ProverError> {
    let verdict = frame_validity(frame.as_frame(), pair, ValuationClass::AllFilters, budget)?;
    match verdict.witness {
        Some(w) => {
            assert!(witness_holds(frame.as_frame(), pair, &w)?, "witness does not re-verify");
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

/// First frame (size, then canonical order) with at most `max_n` states on
/// which `pair` fails, with its first witness.
pub fn countermodel_search(
    pair: &ConsequencePair,
    max_n: usize,
    modal: bool,
    bounds: &Bounds,
    budget: u64,
) -> Result<Option<Countermodel>, ProverError> {
    if !modal && !pair.is_positive() {
        return Err(ProverError::ModalNotSupported);
    }
    for frame in search_frames(max_n, modal, bounds)? {
        if let Some(witness) = refute_on(&frame, pair, budget)? {
            return Ok(Some(Countermodel { frame, witness }));
        }
    }
    Ok(None)
}
