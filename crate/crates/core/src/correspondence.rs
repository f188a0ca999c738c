//! Standard and second-order translations, and the minimal-valuation
//! algorithm producing first-order frame correspondents for consequence
//! pairs with Sahlqvist antecedents.
//!
//! Binders come out canonically named: `x` is the evaluation point,
//! `w0, w1, ..` are the bound variables of `abovemeet` macros and
//! `y0, y1, ..` are all other bound variables, numbered in pre-order.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::fo::{eq, exists_many, fo_eval, forall, forall_many, implies, leq, not, pred, rel, FoError, FoFormula, FoStructure, Var};
use crate::semantics::{frame_validity, Frame, SemanticsError, ValuationClass};
use crate::syntax::{as_boxed_atom, classify_antecedent, AntecedentTag, ConsequencePair, Formula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorrespondenceError {
    #[error("abovemeet needs at least one lower variable")]
    EmptyBound,
    #[error("`{0}` is not a Sahlqvist antecedent")]
    NotSahlqvist(Formula),
    #[error(transparent)]
    Fo(#[from] FoError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

const ABOVEMEET_BINDER: char = 'w';
const OTHER_BINDER: char = 'y';

/// Supplies never-repeating internal variable names.
struct Fresh {
    next: usize,
}

impl Fresh {
    fn new() -> Fresh {
        Fresh { next: 0 }
    }

    fn var(&mut self, category: char) -> Var {
        self.next += 1;
        format!("{category}#{}", self.next)
    }
}

fn abovemeet_with(x: &str, ys: &[Var], fresh: &mut Fresh) -> FoFormula {
    let w = fresh.var(ABOVEMEET_BINDER);
    let lower = FoFormula::And(ys.iter().map(|y| leq(&w, y)).collect());
    forall(&w, implies(lower, leq(&w, x)))
}

/// `∀w((w ≤ y₁ ∧ ⋯ ∧ w ≤ yₖ) → w ≤ x)`: `x` lies above the meet of the `ys`.
pub fn abovemeet(x: &str, ys: &[&str]) -> Result<FoFormula, CorrespondenceError> {
    if ys.is_empty() {
        return Err(CorrespondenceError::EmptyBound);
    }
    let ys: Vec<Var> = ys.iter().map(|s| s.to_string()).collect();
    Ok(canonical_names(&abovemeet_with(x, &ys, &mut Fresh::new())))
}

fn st(f: &Formula, x: &str, fresh: &mut Fresh) -> FoFormula {
    match f {
        Formula::Prop(p) => pred(p, x),
        Formula::Top => eq(x, x),
        Formula::Bot => not(eq(x, x)),
        Formula::And(a, b) => FoFormula::And(alloc::vec![st(a, x, fresh), st(b, x, fresh)]),
        Formula::Or(a, b) => {
            let left = st(a, x, fresh);
            let right = st(b, x, fresh);
            let y = fresh.var(OTHER_BINDER);
            let z = fresh.var(OTHER_BINDER);
            let mixed = FoFormula::And(alloc::vec![
                abovemeet_with(x, &[y.clone(), z.clone()], fresh),
                st(a, &y, fresh),
                st(b, &z, fresh),
            ]);
            FoFormula::Or(alloc::vec![left, right, exists_many(&[&y, &z], mixed)])
        }
        Formula::Box(a) => {
            let y = fresh.var(OTHER_BINDER);
            forall(&y, implies(rel(x, &y), st(a, &y, fresh)))
        }
        Formula::Dia(a) => {
            let y = fresh.var(OTHER_BINDER);
            exists_many(&[&y], FoFormula::And(alloc::vec![rel(x, &y), st(a, &y, fresh)]))
        }
    }
}

/// `st_x(f)`, with canonical binder names.
pub fn standard_translation(f: &Formula, x: &str) -> FoFormula {
    canonical_names(&st(f, x, &mut Fresh::new()))
}

fn isfil(p: &str, fresh: &mut Fresh) -> FoFormula {
    let a = fresh.var(OTHER_BINDER);
    let b = fresh.var(OTHER_BINDER);
    let c = fresh.var(OTHER_BINDER);
    let body = implies(
        FoFormula::And(alloc::vec![pred(p, &b), pred(p, &c), abovemeet_with(&a, &[b.clone(), c.clone()], fresh)]),
        pred(p, &a),
    );
    forall_many(&[&a, &b, &c], body)
}

/// `∀P₁⋯∀Pₙ ∀x((isfil(P₁) ∧ ⋯ ∧ isfil(Pₙ) ∧ st_x(lhs)) → st_x(rhs))`.
pub fn second_order_translation(pair: &ConsequencePair) -> FoFormula {
    let mut fresh = Fresh::new();
    let letters: Vec<String> = pair.letters().into_iter().collect();
    let mut ante: Vec<FoFormula> = letters.iter().map(|p| isfil(p, &mut fresh)).collect();
    ante.push(st(&pair.lhs, "x", &mut fresh));
    let body = forall("x", implies(FoFormula::And(ante), st(&pair.rhs, "x", &mut fresh)));
    let f = letters
        .iter()
        .rev()
        .fold(body, |acc, p| FoFormula::ForallPred(p.clone(), Box::new(acc)));
    canonical_names(&f)
}

/// Rewrites the antecedent with `φ∧⊤ = φ`, `φ∨⊥ = φ`, `φ∧⊥ = ⊥`,
/// `φ∨⊤ = ⊤` and `◇⊥ = ⊥`, to a constant or a ⊤/⊥-free formula outside
/// `◇⊤`.
pub fn normalize_constants(f: &Formula) -> Formula {
    match f {
        Formula::And(a, b) => match (normalize_constants(a), normalize_constants(b)) {
            (Formula::Bot, _) | (_, Formula::Bot) => Formula::Bot,
            (Formula::Top, g) | (g, Formula::Top) => g,
            (g, h) => Formula::and(g, h),
        },
        Formula::Or(a, b) => match (normalize_constants(a), normalize_constants(b)) {
            (Formula::Top, _) | (_, Formula::Top) => Formula::Top,
            (Formula::Bot, g) | (g, Formula::Bot) => g,
            (g, h) => Formula::or(g, h),
        },
        Formula::Dia(a) => match normalize_constants(a) {
            Formula::Bot => Formula::Bot,
            g => Formula::diamond(g),
        },
        Formula::Box(a) => Formula::boxed(normalize_constants(a)),
        _ => f.clone(),
    }
}

/// A disjunct of the processed antecedent: fresh variables, boxed atoms
/// `∀w(z Rⁿ w → P w)` as `(p, z, n)`, and relational side conditions.
#[derive(Debug, Clone, Default)]
struct Block {
    vars: Vec<Var>,
    atoms: Vec<(String, Var, usize)>,
    rel: Vec<FoFormula>,
}

impl Block {
    fn join(mut self, other: &Block) -> Block {
        self.vars.extend(other.vars.iter().cloned());
        self.atoms.extend(other.atoms.iter().cloned());
        self.rel.extend(other.rel.iter().cloned());
        self
    }
}

fn blocks(f: &Formula, x: &str, fresh: &mut Fresh) -> Vec<Block> {
    if let Some((p, n)) = as_boxed_atom(f) {
        return alloc::vec![Block {
            atoms: alloc::vec![(p.to_string(), x.to_string(), n)],
            ..Block::default()
        }];
    }
    match f {
        Formula::Top => alloc::vec![Block::default()],
        Formula::Bot => Vec::new(),
        Formula::And(a, b) => {
            let left = blocks(a, x, fresh);
            let right = blocks(b, x, fresh);
            left.iter()
                .flat_map(|l| right.iter().map(move |r| l.clone().join(r)))
                .collect()
        }
        Formula::Or(a, b) => {
            let mut out = blocks(a, x, fresh);
            out.extend(blocks(b, x, fresh));
            let y = fresh.var(OTHER_BINDER);
            let z = fresh.var(OTHER_BINDER);
            let meet = abovemeet_with(x, &[y.clone(), z.clone()], fresh);
            let left = blocks(a, &y, fresh);
            let right = blocks(b, &z, fresh);
            for l in &left {
                for r in &right {
                    let base = Block {
                        vars: alloc::vec![y.clone(), z.clone()],
                        atoms: Vec::new(),
                        rel: alloc::vec![meet.clone()],
                    };
                    out.push(base.join(l).join(r));
                }
            }
            out
        }
        Formula::Dia(a) => {
            let y = fresh.var(OTHER_BINDER);
            blocks(a, &y, fresh)
                .into_iter()
                .map(|b| {
                    Block {
                        vars: alloc::vec![y.clone()],
                        atoms: Vec::new(),
                        rel: alloc::vec![rel(x, &y)],
                    }
                    .join(&b)
                })
                .collect()
        }
        Formula::Prop(_) | Formula::Box(_) => unreachable!("rejected by the antecedent classification"),
    }
}

/// `z Rⁿ w` for `n ≥ 1`, through fresh intermediate points.
fn rel_chain(z: &str, w: &str, n: usize, fresh: &mut Fresh) -> (Vec<Var>, Vec<FoFormula>) {
    let mut mids = Vec::new();
    let mut steps = Vec::new();
    let mut cur = z.to_string();
    for k in 1..n {
        let v = fresh.var(OTHER_BINDER);
        steps.push(rel(&cur, &v));
        mids.push(v.clone());
        cur = v;
        let _ = k;
    }
    steps.push(rel(&cur, w));
    (mids, steps)
}

/// Minimal instance of `P` at point `u` given its boxed-atom occurrences.
///
/// Depth-0 occurrences always have their point as a witness, so they go
/// into every disjunct; the disjunction ranges over subsets of the boxed
/// occurrences only.
fn sigma_at(occ: &[(Var, usize)], u: &str, fresh: &mut Fresh) -> FoFormula {
    if occ.is_empty() {
        return not(eq(u, u));
    }
    let plain: Vec<Var> = occ.iter().filter(|(_, n)| *n == 0).map(|(z, _)| z.clone()).collect();
    let boxed: Vec<(Var, usize)> = occ.iter().filter(|(_, n)| *n > 0).cloned().collect();
    let mut disjuncts = Vec::new();
    for mask in 0u32..(1u32 << boxed.len()) {
        if mask == 0 && plain.is_empty() {
            continue;
        }
        let mut bound = Vec::new();
        let mut conj = Vec::new();
        let mut lower = plain.clone();
        for (j, (z, n)) in boxed.iter().enumerate() {
            if mask >> j & 1 == 0 {
                continue;
            }
            let w = fresh.var(OTHER_BINDER);
            let (mids, steps) = rel_chain(z, &w, *n, fresh);
            bound.push(w.clone());
            bound.extend(mids);
            conj.extend(steps);
            lower.push(w);
        }
        conj.push(abovemeet_with(u, &lower, fresh));
        let names: Vec<&str> = bound.iter().map(String::as_str).collect();
        disjuncts.push(exists_many(&names, FoFormula::And(conj)));
    }
    FoFormula::Or(disjuncts)
}

fn substitute_sigma(f: &FoFormula, occ: &BTreeMap<String, Vec<(Var, usize)>>, fresh: &mut Fresh) -> FoFormula {
    let mut go = |g: &FoFormula| substitute_sigma(g, occ, fresh);
    match f {
        FoFormula::Pred(p, v) => {
            let o = occ.get(p).map(Vec::as_slice).unwrap_or(&[]);
            sigma_at(o, v, fresh)
        }
        FoFormula::Not(a) => not(go(a)),
        FoFormula::And(xs) => FoFormula::And(xs.iter().map(go).collect()),
        FoFormula::Or(xs) => FoFormula::Or(xs.iter().map(go).collect()),
        FoFormula::Implies(a, b) => {
            let a = go(a);
            implies(a, go(b))
        }
        FoFormula::Forall(x, a) => FoFormula::Forall(x.clone(), Box::new(go(a))),
        FoFormula::Exists(x, a) => FoFormula::Exists(x.clone(), Box::new(go(a))),
        FoFormula::ForallPred(p, a) => FoFormula::ForallPred(p.clone(), Box::new(go(a))),
        _ => f.clone(),
    }
}

/// Correspondent with `x` free: it holds at `x` exactly when the pair holds
/// at `x` under every filter valuation.
pub fn local_correspondent(pair: &ConsequencePair) -> Result<FoFormula, CorrespondenceError> {
    if classify_antecedent(&pair.lhs).tag == AntecedentTag::NotSahlqvist {
        return Err(CorrespondenceError::NotSahlqvist(pair.lhs.clone()));
    }
    let lhs = normalize_constants(&pair.lhs);
    let lhs_letters = lhs.letters();
    // Letters only in the consequent take their least value.
    let rhs = pair
        .rhs
        .substitute(&|p| (!lhs_letters.contains(p)).then_some(Formula::Bot));
    let mut fresh = Fresh::new();
    let raw = match lhs {
        Formula::Bot => FoFormula::True,
        Formula::Top => {
            let all_bot = rhs.substitute(&|_| Some(Formula::Bot));
            st(&all_bot, "x", &mut fresh)
        }
        _ => {
            let bs = blocks(&lhs, "x", &mut fresh);
            let chi = st(&rhs, "x", &mut fresh);
            let mut conjuncts = Vec::new();
            for b in bs {
                let mut occ: BTreeMap<String, Vec<(Var, usize)>> = BTreeMap::new();
                for (p, z, n) in &b.atoms {
                    occ.entry(p.clone()).or_default().push((z.clone(), *n));
                }
                let body = implies(FoFormula::And(b.rel.clone()), substitute_sigma(&chi, &occ, &mut fresh));
                let names: Vec<&str> = b.vars.iter().map(String::as_str).collect();
                conjuncts.push(forall_many(&names, body));
            }
            FoFormula::And(conjuncts)
        }
    };
    Ok(canonical_names(&simplify(&raw)))
}

/// `∀x` closure of [`local_correspondent`].
pub fn sahlqvist_correspondent(pair: &ConsequencePair) -> Result<FoFormula, CorrespondenceError> {
    let local = local_correspondent(pair)?;
    Ok(canonical_names(&simplify(&forall("x", local))))
}

fn flatten(xs: &[FoFormula], and: bool) -> Vec<FoFormula> {
    let mut out: Vec<FoFormula> = Vec::new();
    for f in xs {
        match (f, and) {
            (FoFormula::And(inner), true) | (FoFormula::Or(inner), false) => {
                for g in flatten(inner, and) {
                    if !out.contains(&g) {
                        out.push(g);
                    }
                }
            }
            _ => {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
    }
    out
}

fn conjuncts(f: &FoFormula) -> Vec<FoFormula> {
    match f {
        FoFormula::And(xs) => xs.clone(),
        other => alloc::vec![other.clone()],
    }
}

fn simplify_once(f: &FoFormula) -> FoFormula {
    match f {
        FoFormula::Leq(a, b) | FoFormula::Eq(a, b) if a == b => FoFormula::True,
        FoFormula::Not(a) => match simplify_once(a) {
            FoFormula::True => FoFormula::False,
            FoFormula::False => FoFormula::True,
            g => not(g),
        },
        FoFormula::And(xs) => {
            let parts: Vec<FoFormula> = xs.iter().map(simplify_once).collect();
            if parts.contains(&FoFormula::False) {
                return FoFormula::False;
            }
            let mut parts = flatten(&parts, true);
            parts.retain(|g| *g != FoFormula::True);
            match parts.len() {
                0 => FoFormula::True,
                1 => parts.pop().expect("one conjunct"),
                _ => FoFormula::And(parts),
            }
        }
        FoFormula::Or(xs) => {
            let parts: Vec<FoFormula> = xs.iter().map(simplify_once).collect();
            if parts.contains(&FoFormula::True) {
                return FoFormula::True;
            }
            let mut parts = flatten(&parts, false);
            parts.retain(|g| *g != FoFormula::False);
            match parts.len() {
                0 => FoFormula::False,
                1 => parts.pop().expect("one disjunct"),
                _ => FoFormula::Or(parts),
            }
        }
        FoFormula::Implies(a, b) => {
            let a = simplify_once(a);
            let b = simplify_once(b);
            match (&a, &b) {
                (FoFormula::False, _) | (_, FoFormula::True) => FoFormula::True,
                (FoFormula::True, _) => b,
                (_, FoFormula::False) => not(a),
                _ if conjuncts(&a).contains(&b) => FoFormula::True,
                _ => implies(a, b),
            }
        }
        FoFormula::Forall(x, a) => {
            let body = simplify_once(a);
            // ∀w(w ≤ y → w ≤ u) is y ≤ u.
            if let FoFormula::Implies(lo, hi) = &body {
                if let (FoFormula::Leq(w1, y), FoFormula::Leq(w2, u)) = (&**lo, &**hi) {
                    if w1 == x && w2 == x && y != x && u != x {
                        return leq(y, u);
                    }
                }
            }
            if !body.free_vars().contains(x) {
                return body;
            }
            FoFormula::Forall(x.clone(), Box::new(body))
        }
        FoFormula::Exists(x, a) => {
            let body = simplify_once(a);
            if !body.free_vars().contains(x) {
                return body;
            }
            FoFormula::Exists(x.clone(), Box::new(body))
        }
        FoFormula::ForallPred(p, a) => FoFormula::ForallPred(p.clone(), Box::new(simplify_once(a))),
        _ => f.clone(),
    }
}

/// Constant folding under reflexivity, unit/absorbing elements of the
/// connectives, vacuous quantifiers (domains are nonempty) and single-bound
/// `abovemeet`; repeated until nothing changes.
pub fn simplify(f: &FoFormula) -> FoFormula {
    let mut cur = f.clone();
    loop {
        let next = simplify_once(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Gives every binder occurrence its own name, respecting scope.
fn uniquify(f: &FoFormula, env: &BTreeMap<Var, Var>, counter: &mut usize) -> FoFormula {
    let lookup = |v: &Var| env.get(v).cloned().unwrap_or_else(|| v.clone());
    let mut go = |g: &FoFormula| uniquify(g, env, counter);
    match f {
        FoFormula::Leq(a, b) => leq(&lookup(a), &lookup(b)),
        FoFormula::Rel(a, b) => rel(&lookup(a), &lookup(b)),
        FoFormula::Eq(a, b) => eq(&lookup(a), &lookup(b)),
        FoFormula::Pred(p, a) => pred(p, &lookup(a)),
        FoFormula::Not(a) => not(go(a)),
        FoFormula::And(xs) => FoFormula::And(xs.iter().map(go).collect()),
        FoFormula::Or(xs) => FoFormula::Or(xs.iter().map(go).collect()),
        FoFormula::Implies(a, b) => {
            let a = go(a);
            implies(a, go(b))
        }
        FoFormula::Forall(x, a) | FoFormula::Exists(x, a) => {
            *counter += 1;
            let category = if x.starts_with(ABOVEMEET_BINDER) { ABOVEMEET_BINDER } else { OTHER_BINDER };
            // The evaluation point keeps its name.
            let name = if x == "x" { x.clone() } else { format!("{category}${counter}") };
            let mut inner = env.clone();
            inner.insert(x.clone(), name.clone());
            let body = Box::new(uniquify(a, &inner, counter));
            match f {
                FoFormula::Forall(..) => FoFormula::Forall(name, body),
                _ => FoFormula::Exists(name, body),
            }
        }
        FoFormula::ForallPred(p, a) => FoFormula::ForallPred(p.clone(), Box::new(go(a))),
        FoFormula::True | FoFormula::False => f.clone(),
    }
}

/// Renames every binder to `y<k>` or `w<k>` by category, in pre-order,
/// making binders pairwise distinct. `x` keeps its name.
pub fn canonical_names(f: &FoFormula) -> FoFormula {
    let f = &uniquify(f, &BTreeMap::new(), &mut 0);
    let free = f.free_vars();
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    let (mut ny, mut nw) = (0, 0);
    for b in f.binders() {
        if b == "x" || map.contains_key(&b) {
            continue;
        }
        let (category, counter) = if b.starts_with(ABOVEMEET_BINDER) {
            (ABOVEMEET_BINDER, &mut nw)
        } else {
            (OTHER_BINDER, &mut ny)
        };
        let name = loop {
            let candidate = format!("{category}{counter}");
            *counter += 1;
            if !free.contains(&candidate) {
                break candidate;
            }
        };
        map.insert(b, name);
    }
    f.rename(&|v| map.get(v).cloned())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Discrepancy {
    /// Index into the checked frame list.
    pub frame: usize,
    pub pair_valid: bool,
    pub correspondent_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    pub pair: ConsequencePair,
    pub correspondent: FoFormula,
    pub frames_checked: usize,
    pub equivalent: bool,
    pub discrepancy: Option<Discrepancy>,
}

/// `(pair valid on frame, closed correspondent true on frame)`.
pub fn frame_agreement<F: Frame + ?Sized>(
    pair: &ConsequencePair,
    correspondent: &FoFormula,
    frame: &F,
    budget: u64,
) -> Result<(bool, bool), CorrespondenceError> {
    let valid = frame_validity(frame, pair, ValuationClass::AllFilters, budget)?.valid;
    let s = FoStructure::frame(frame.semilattice(), frame.relation());
    let holds = fo_eval(&s, correspondent, &[])?;
    Ok((valid, holds))
}

/// Frame validity of `pair` agrees with its correspondent on every frame.
pub fn correspondence_check<F: Frame>(
    pair: &ConsequencePair,
    frames: &[F],
    budget: u64,
) -> Result<CorrespondenceReport, CorrespondenceError> {
    let correspondent = sahlqvist_correspondent(pair)?;
    let mut discrepancy = None;
    let mut checked = 0;
    for (i, f) in frames.iter().enumerate() {
        let (valid, holds) = frame_agreement(pair, &correspondent, f, budget)?;
        checked += 1;
        if valid != holds {
            discrepancy = Some(Discrepancy {
                frame: i,
                pair_valid: valid,
                correspondent_holds: holds,
            });
            break;
        }
    }
    Ok(CorrespondenceReport {
        pair: pair.clone(),
        correspondent,
        frames_checked: checked,
        equivalent: discrepancy.is_none(),
        discrepancy,
    })
}
