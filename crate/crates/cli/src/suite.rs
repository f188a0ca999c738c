//! The acceptance suite: twelve criteria, each a deterministic pass/fail
//! verdict with a one-line detail. Work is spread over a rayon pool, but
//! every result is merged in enumeration order, so the rendered report is
//! independent of the thread count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ndpl_core::correspondence::{abovemeet, sahlqvist_correspondent};
use ndpl_core::duality::{
    double_dual_check, dual_frame, f2_completion, filter_completion, frame_double_dual_check, modal_complex_algebra,
    modal_dual, modal_round_trip,
};
use ndpl_core::enumerate::{lattices, modal_frames, semilattices, Bounds};
use ndpl_core::fo::{exists_many, fo_eval, forall_many, implies, leq, rel, FoFormula, FoStructure};
use ndpl_core::order::lattice_props;
use ndpl_core::prover::{countermodel_search, whitman_decide, CounterFrame};
use ndpl_core::semantics::{
    eval_in_lattice, eval_in_modal_lattice, eval_model, eval_or, frame_validity, render_valuation, witness_holds, Frame,
    Model, ModalLFrame, ValuationClass,
};
use ndpl_core::syntax::{parse_formula, parse_pair, render_formula};
use ndpl_core::{BoundedLattice, ConsequencePair, Formula, MeetSemilattice, Poset, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::census;

pub const DEFAULT_SEED: u64 = 0x5eed_1a77;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub threads: usize,
    pub budget: u64,
    /// Criteria to run; all when `None`.
    pub only: Option<Vec<usize>>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            seed: DEFAULT_SEED,
            threads: 0,
            budget: ndpl_core::semantics::DEFAULT_BUDGET,
            only: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            let _ = writeln!(s, "{}", o.line());
        }
        let passed = self.outcomes.iter().filter(|o| o.pass).count();
        let _ = writeln!(s, "{passed}/{} criteria pass (seed {:#x})", self.outcomes.len(), self.seed);
        s
    }
}

pub const TITLES: [&str; 12] = [
    "lattice duality round trip",
    "frame duality round trip",
    "non-distributivity countermodel",
    "base correspondence",
    "modal correspondence",
    "soundness of the axioms",
    "persistence",
    "complex algebra evaluation",
    "modal duality",
    "finite completions",
    "Whitman coupling",
    "round trip and determinism",
];

fn outcome(id: usize, pass: bool, detail: String) -> Outcome {
    Outcome {
        id,
        title: TITLES[id - 1],
        pass,
        detail,
    }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let wanted = |id: usize| cfg.only.as_ref().map_or(true, |o| o.contains(&id));
    let ids: Vec<usize> = (1..=11).filter(|&i| wanted(i)).collect();
    let mut outcomes = pool(cfg.threads).install(|| run_criteria(&ids, cfg));
    if wanted(12) {
        outcomes.push(criterion_12(cfg, &ids, &outcomes));
    }
    SuiteReport {
        seed: cfg.seed,
        outcomes,
    }
}

fn run_criteria(ids: &[usize], cfg: &SuiteConfig) -> Vec<Outcome> {
    ids.iter()
        .map(|&id| {
            let started = std::time::Instant::now();
            let o = run_one(id, cfg);
            eprintln!("criterion {id} done in {:.1?}", started.elapsed());
            o
        })
        .collect()
}

pub fn run_one(id: usize, cfg: &SuiteConfig) -> Outcome {
    match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(cfg),
        12 => criterion_12(cfg, &[], &[]),
        _ => outcome(12, false, format!("no criterion {id}")),
    }
}

fn all_lattices(max: usize) -> Vec<BoundedLattice> {
    let b = Bounds::default();
    (1..=max).flat_map(|n| lattices(n, false, &b).expect("within bounds")).collect()
}

fn all_semilattices(max: usize, labeled: bool) -> Vec<MeetSemilattice> {
    let b = Bounds::default();
    (1..=max)
        .flat_map(|n| semilattices(n, labeled, &b).expect("within bounds"))
        .collect()
}

fn all_modal(max: usize) -> Vec<ModalLFrame> {
    let b = Bounds::default();
    (1..=max).flat_map(|n| modal_frames(n, false, &b).expect("within bounds")).collect()
}

fn first_failure<T: Send, E: Send>(items: Vec<T>, check: impl Fn(&T) -> Result<(), E> + Sync + Send) -> Option<(usize, E)>
where
    T: Sync,
{
    let results: Vec<Result<(), E>> = items.par_iter().map(|t| check(t)).collect();
    results.into_iter().enumerate().find_map(|(i, r)| r.err().map(|e| (i, e)))
}

fn criterion_1() -> Outcome {
    let lats = all_lattices(6);
    let counts: Vec<usize> = (1..=6).map(|n| lats.iter().filter(|l| l.len() == n).count()).collect();
    let oracle = census(6).lattices;
    if counts != oracle {
        return outcome(1, false, format!("enumerated lattice counts {counts:?}, census {oracle:?}"));
    }
    let n = lats.len();
    let fail = first_failure(lats, |a| {
        let rep = double_dual_check(a);
        if !rep.is_iso {
            return Err(format!("theta is not an isomorphism: {:?}", rep.failure));
        }
        let d = dual_frame(a);
        let sl = &d.dual;
        for x in 0..a.len() {
            for y in 0..a.len() {
                let fx = sl.filter(d.theta[x]).expect("theta is a filter");
                let fy = sl.filter(d.theta[y]).expect("theta is a filter");
                if sl.join_pair(fx, fy).members() != d.theta[a.join(x, y)] {
                    return Err(format!("theta({0} v {1}) differs from theta({0}) join theta({1})", a.label(x), a.label(y)));
                }
                if d.theta[x].intersection(d.theta[y]) != d.theta[a.meet(x, y)] {
                    return Err(format!("theta({0} & {1}) differs from the intersection", a.label(x), a.label(y)));
                }
            }
        }
        Ok(())
    });
    match fail {
        None => outcome(1, true, format!("{n} lattices on <= 6 elements, counts {counts:?} match the census; theta iso on all")),
        Some((i, e)) => outcome(1, false, format!("lattice #{i}: {e}")),
    }
}

fn criterion_2() -> Outcome {
    let sls = all_semilattices(5, false);
    let counts: Vec<usize> = (1..=5).map(|n| sls.iter().filter(|s| s.len() == n).count()).collect();
    let oracle = census(5).semilattices;
    if counts != oracle {
        return outcome(2, false, format!("enumerated semilattice counts {counts:?}, census {oracle:?}"));
    }
    let n = sls.len();
    match first_failure(sls, |sl| {
        let r = frame_double_dual_check(sl);
        if r.is_iso {
            Ok(())
        } else {
            Err(format!("{:?}", r.failure))
        }
    }) {
        None => outcome(2, true, format!("{n} semilattices on <= 5 elements, eta iso on all")),
        Some((i, e)) => outcome(2, false, format!("semilattice #{i}: {e}")),
    }
}

fn labeled_poset(labels: &[&str], pairs: &[(&str, &str)]) -> Poset {
    Poset::from_pairs(labels, pairs).expect("well-formed fixture")
}

pub fn m3_frame() -> MeetSemilattice {
    let p = labeled_poset(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    );
    MeetSemilattice::new(p).expect("M3 is a semilattice")
}

fn chain_frame(n: usize) -> MeetSemilattice {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    MeetSemilattice::new(Poset::from_index_pairs(labels, &pairs).expect("chain")).expect("chain")
}

pub const DISTRIBUTIVITY: &str = "p & (q|q2) <= (p&q)|(p&q2)";
pub const MODULARITY: &str = "((p1 & p3) | p2) & p3 <= (p1&p3)|(p2&p3)";
pub const NORMAL_DIAMOND: &str = "dia(p|q) <= dia p | dia q";

fn criterion_3(cfg: &SuiteConfig) -> Outcome {
    let pair = parse_pair(DISTRIBUTIVITY).expect("fixture parses");
    let m3 = m3_frame();
    let verdict = match frame_validity(&m3, &pair, ValuationClass::AllFilters, cfg.budget) {
        Ok(v) => v,
        Err(e) => return outcome(3, false, format!("M3: {e}")),
    };
    let Some(w) = verdict.witness else {
        return outcome(3, false, "M3 validates the distributivity pair".into());
    };
    let p = m3.poset();
    let up = |l: &str| m3.principal_filter(p.index_of(l).expect("label"));
    let expected: BTreeMap<String, _> = [("p", up("a")), ("q", up("b")), ("q2", up("c"))]
        .into_iter()
        .map(|(k, f)| (k.to_string(), f))
        .collect();
    let shown = format!("{} at {}", render_valuation(&m3, &w.valuation), p.label(w.state));
    if w.valuation != expected || p.label(w.state) != "a" {
        return outcome(3, false, format!("M3 witness {shown}, expected p=^a, q=^b, q2=^c at a"));
    }
    for n in 1..=6 {
        let c = chain_frame(n);
        match frame_validity(&c, &pair, ValuationClass::AllFilters, cfg.budget) {
            Ok(v) if v.valid => {}
            Ok(_) => return outcome(3, false, format!("chain of {n} refutes the pair")),
            Err(e) => return outcome(3, false, format!("chain of {n}: {e}")),
        }
    }
    outcome(3, true, format!("M3 witness {shown}; chains of 1..6 validate"))
}

/// `x = a ∧ b`.
fn is_meet(x: &str, a: &str, b: &str) -> FoFormula {
    FoFormula::And(vec![leq(x, a), leq(x, b), am(x, &[a, b])])
}

fn am(x: &str, ys: &[&str]) -> FoFormula {
    abovemeet(x, ys).expect("nonempty")
}

/// Hand-simplified frame conditions from the worked examples.
pub fn reference_distributivity() -> FoFormula {
    forall_many(
        &["x", "y", "y'"],
        implies(
            am("x", &["y", "y'"]),
            FoFormula::Or(vec![
                leq("y", "x"),
                leq("y'", "x"),
                exists_many(
                    &["z", "z'"],
                    FoFormula::And(vec![is_meet("x", "z", "z'"), leq("y", "z"), leq("y'", "z'")]),
                ),
            ]),
        ),
    )
}

pub fn reference_modularity() -> FoFormula {
    forall_many(
        &["x", "y", "z"],
        implies(
            am("x", &["y", "z"]),
            FoFormula::Or(vec![
                leq("y", "x"),
                leq("z", "x"),
                exists_many(
                    &["s", "t"],
                    FoFormula::And(vec![am("x", &["s", "t"]), leq("y", "s"), leq("z", "t"), am("t", &["x", "y"])]),
                ),
            ]),
        ),
    )
}

pub fn reference_reflexive_below() -> FoFormula {
    forall_many(&["x"], exists_many(&["y"], FoFormula::And(vec![rel("x", "y"), leq("x", "y")])))
}

pub fn reference_reflexive_above() -> FoFormula {
    forall_many(&["x"], exists_many(&["y"], FoFormula::And(vec![rel("x", "y"), leq("y", "x")])))
}

pub fn reference_normal_diamond() -> FoFormula {
    forall_many(
        &["x", "y", "z", "z'"],
        implies(
            FoFormula::And(vec![rel("x", "y"), am("y", &["z", "z'"])]),
            FoFormula::Or(vec![
                exists_many(&["v"], FoFormula::And(vec![rel("x", "v"), leq("z", "v")])),
                exists_many(&["v'"], FoFormula::And(vec![rel("x", "v'"), leq("z'", "v'")])),
                exists_many(
                    &["v", "v'", "w", "w'"],
                    FoFormula::And(vec![
                        leq("z", "v"),
                        leq("z'", "v'"),
                        am("x", &["w", "w'"]),
                        rel("w", "v"),
                        rel("w'", "v'"),
                    ]),
                ),
            ]),
        ),
    )
}

/// Per frame: pair validity, engine output, reference form; all three must agree.
fn agreement<F: Frame + Sync>(
    frames: &[F],
    pair: &ConsequencePair,
    engine: &FoFormula,
    reference: &FoFormula,
    with_validity: bool,
    budget: u64,
) -> Result<usize, String> {
    let rows: Vec<Result<bool, String>> = frames
        .par_iter()
        .map(|f| {
            let s = FoStructure::frame(f.semilattice(), f.relation());
            let e = fo_eval(&s, engine, &[]).map_err(|e| e.to_string())?;
            let r = fo_eval(&s, reference, &[]).map_err(|e| e.to_string())?;
            if e != r {
                return Err(format!("engine output {e} but reference form {r}"));
            }
            if with_validity {
                let v = frame_validity(f, pair, ValuationClass::AllFilters, budget).map_err(|e| e.to_string())?;
                if v.valid != e {
                    return Err(format!("pair valid = {} but correspondent = {e}", v.valid));
                }
            }
            Ok(e)
        })
        .collect();
    let mut valid = 0;
    for (i, r) in rows.into_iter().enumerate() {
        match r {
            Ok(true) => valid += 1,
            Ok(false) => {}
            Err(e) => return Err(format!("frame #{i}: {e}")),
        }
    }
    Ok(valid)
}

fn criterion_4(cfg: &SuiteConfig) -> Outcome {
    let frames = all_semilattices(4, true);
    let mut parts = Vec::new();
    for (src, reference) in [(DISTRIBUTIVITY, reference_distributivity()), (MODULARITY, reference_modularity())] {
        let pair = parse_pair(src).expect("fixture parses");
        let engine = match sahlqvist_correspondent(&pair) {
            Ok(c) => c,
            Err(e) => return outcome(4, false, format!("{src}: {e}")),
        };
        match agreement(&frames, &pair, &engine, &reference, true, cfg.budget) {
            Ok(valid) => parts.push(format!("{src}: valid on {valid}")),
            Err(e) => return outcome(4, false, format!("{src}: {e}")),
        }
    }
    outcome(4, true, format!("{} labeled semilattices <= 4; {}", frames.len(), parts.join("; ")))
}

fn criterion_5(cfg: &SuiteConfig) -> Outcome {
    let four = all_modal(4);
    let three: Vec<ModalLFrame> = four.iter().filter(|f| f.len() <= 3).cloned().collect();
    let cases = [
        ("p <= dia p", reference_reflexive_below(), &four),
        ("box p <= p", reference_reflexive_above(), &four),
        (NORMAL_DIAMOND, reference_normal_diamond(), &three),
    ];
    let mut parts = Vec::new();
    for (src, reference, frames) in cases {
        let pair = parse_pair(src).expect("fixture parses");
        let engine = match sahlqvist_correspondent(&pair) {
            Ok(c) => c,
            Err(e) => return outcome(5, false, format!("{src}: {e}")),
        };
        match agreement(frames, &pair, &engine, &reference, true, cfg.budget) {
            Ok(valid) => parts.push(format!("{src}: {valid}/{}", frames.len())),
            Err(e) => return outcome(5, false, format!("{src}: {e}")),
        }
    }
    outcome(5, true, format!("valid frames {}", parts.join("; ")))
}

/// Instances for the metavariables of the axiom schemes.
fn instances() -> Vec<Formula> {
    ["p", "q", "p & q", "p | q", "box p", "dia q", "top", "bot"]
        .iter()
        .map(|s| parse_formula(s).expect("fixture parses"))
        .collect()
}

fn axiom_instances() -> Vec<(&'static str, ConsequencePair)> {
    use Formula as F;
    let ins = instances();
    let mut out = Vec::new();
    let cp = ConsequencePair::new;
    out.push(("box-top", cp(F::Top, F::boxed(F::Top))));
    out.push(("dia-top", cp(F::Top, F::diamond(F::Top))));
    out.push(("dia-bot", cp(F::diamond(F::Bot), F::Bot)));
    for a in &ins {
        out.push(("top", cp(a.clone(), F::Top)));
        out.push(("bot", cp(F::Bot, a.clone())));
        out.push(("refl", cp(a.clone(), a.clone())));
        for b in &ins {
            let (a, b) = (a.clone(), b.clone());
            let ab = F::and(a.clone(), b.clone());
            let aorb = F::or(a.clone(), b.clone());
            out.push(("conj-elim-left", cp(ab.clone(), a.clone())));
            out.push(("conj-elim-right", cp(ab.clone(), b.clone())));
            out.push(("disj-intro-left", cp(a.clone(), aorb.clone())));
            out.push(("disj-intro-right", cp(b.clone(), aorb.clone())));
            out.push(("box-linearity", cp(F::and(F::boxed(a.clone()), F::boxed(b.clone())), F::boxed(ab.clone()))));
            out.push(("box-monotone", cp(F::boxed(ab.clone()), F::and(F::boxed(a.clone()), F::boxed(b.clone())))));
            out.push(("dia-monotone", cp(F::diamond(a.clone()), F::diamond(aorb))));
            out.push(("duality", cp(F::and(F::diamond(a), F::boxed(b)), F::diamond(ab))));
        }
    }
    out
}

/// Rule instances as `(rule, premises, conclusion)` over the instance list.
fn rule_instances() -> Vec<(&'static str, Vec<ConsequencePair>, ConsequencePair)> {
    use Formula as F;
    let ins = instances();
    let cp = |a: &F, b: &F| ConsequencePair::new(a.clone(), b.clone());
    let mut out = Vec::new();
    for a in &ins {
        for b in &ins {
            out.push(("becker-box", vec![cp(a, b)], cp(&F::boxed(a.clone()), &F::boxed(b.clone()))));
            out.push(("becker-dia", vec![cp(a, b)], cp(&F::diamond(a.clone()), &F::diamond(b.clone()))));
            for c in &ins {
                out.push(("trans", vec![cp(a, b), cp(b, c)], cp(a, c)));
                out.push(("conj-intro", vec![cp(c, a), cp(c, b)], cp(c, &F::and(a.clone(), b.clone()))));
                out.push(("disj-elim", vec![cp(a, c), cp(b, c)], cp(&F::or(a.clone(), b.clone()), c)));
            }
        }
    }
    out
}

fn criterion_6(cfg: &SuiteConfig) -> Outcome {
    let frames = all_modal(4);
    let axioms = axiom_instances();
    let rules = rule_instances();
    let classes = [ValuationClass::AllFilters, ValuationClass::PrincipalFilters];
    let jobs: Vec<(usize, ValuationClass)> = (0..frames.len())
        .flat_map(|i| classes.iter().map(move |&c| (i, c)))
        .filter(|&(i, c)| c == ValuationClass::AllFilters || frames[i].report().is_principal())
        .collect();
    let results: Vec<Result<(), String>> = jobs
        .par_iter()
        .map(|&(i, vclass)| {
            let f = &frames[i];
            let mut memo: BTreeMap<ConsequencePair, bool> = BTreeMap::new();
            let mut valid = |pair: &ConsequencePair| -> Result<bool, String> {
                if let Some(&v) = memo.get(pair) {
                    return Ok(v);
                }
                let v = frame_validity(f, pair, vclass, cfg.budget).map_err(|e| e.to_string())?.valid;
                memo.insert(pair.clone(), v);
                Ok(v)
            };
            for (name, pair) in &axioms {
                if !valid(pair)? {
                    return Err(format!("{name} instance `{pair}` fails under {vclass:?}"));
                }
            }
            for (name, prem, concl) in &rules {
                let mut all = true;
                for p in prem {
                    all &= valid(p)?;
                }
                if all && !valid(concl)? {
                    return Err(format!("{name} does not preserve validity at `{concl}` under {vclass:?}"));
                }
            }
            Ok(())
        })
        .collect();
    for (k, r) in results.into_iter().enumerate() {
        if let Err(e) = r {
            return outcome(6, false, format!("frame #{}: {e}", jobs[k].0));
        }
    }
    let principal = jobs.len() - frames.len();
    outcome(
        6,
        true,
        format!(
            "{} axiom and {} rule instances on {} modal frames <= 4 ({} principal)",
            axioms.len(),
            rules.len(),
            frames.len(),
            principal
        ),
    )
}

/// Truth sets reachable from the letter values by formulas of depth ≤ 3,
/// each paired with a value computed in parallel by `lift`.
fn reachable<T: Copy + Ord>(
    frame: &ModalLFrame,
    seeds: &[(Subset, T)],
    lift: &dyn Fn(Op, T, T) -> T,
) -> Vec<(Subset, T)> {
    let sl = frame.semilattice();
    let mut cur: Vec<(Subset, T)> = seeds.to_vec();
    cur.sort();
    cur.dedup();
    for _ in 0..3 {
        let mut next = cur.clone();
        for &(a, x) in &cur {
            let (b, d) = frame.box_dia(a);
            next.push((b, lift(Op::Box, x, x)));
            next.push((d, lift(Op::Dia, x, x)));
            for &(c, y) in &cur {
                next.push((a.intersection(c), lift(Op::And, x, y)));
                next.push((eval_or(sl, a, c), lift(Op::Or, x, y)));
            }
        }
        next.sort();
        next.dedup();
        cur = next;
    }
    cur
}

#[derive(Debug, Clone, Copy)]
enum Op {
    And,
    Or,
    Box,
    Dia,
}

fn random_formula(rng: &mut ChaCha8Rng, depth: u32, letters: &[&str], modal: bool) -> Formula {
    let choices = if modal { 6 } else { 4 };
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..8) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::prop(letters[rng.gen_range(0..letters.len())]),
        };
    }
    match rng.gen_range(0..choices) {
        0 | 1 => Formula::and(random_formula(rng, depth - 1, letters, modal), random_formula(rng, depth - 1, letters, modal)),
        2 | 3 => Formula::or(random_formula(rng, depth - 1, letters, modal), random_formula(rng, depth - 1, letters, modal)),
        4 => Formula::boxed(random_formula(rng, depth - 1, letters, modal)),
        _ => Formula::diamond(random_formula(rng, depth - 1, letters, modal)),
    }
}

fn sample_formulas(seed: u64, count: usize, depth: u32, letters: &[&str], modal: bool) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, depth, letters, modal)).collect()
}

/// Every model on the frames with letters `p`, `q` valued in `vclass`.
fn models(frames: &[ModalLFrame], vclass: ValuationClass) -> Vec<(usize, Subset, Subset)> {
    let mut out = Vec::new();
    for (i, f) in frames.iter().enumerate() {
        if vclass == ValuationClass::PrincipalFilters && !f.report().is_principal() {
            continue;
        }
        let fs = vclass.filters(f.semilattice());
        for a in &fs {
            for b in &fs {
                out.push((i, a.members(), b.members()));
            }
        }
    }
    out
}

const SAMPLE: usize = 48;

fn criterion_7(cfg: &SuiteConfig) -> Outcome {
    let frames = all_modal(4);
    let sample = sample_formulas(cfg.seed ^ 7, SAMPLE, 3, &["p", "q"], true);
    let mut total = 0;
    for vclass in [ValuationClass::AllFilters, ValuationClass::PrincipalFilters] {
        let ms = models(&frames, vclass);
        total += ms.len();
        let fail = first_failure(ms, |&(i, a, b)| {
            let f = &frames[i];
            let sl = f.semilattice();
            let ok = |s: Subset| match vclass {
                ValuationClass::AllFilters => sl.is_filter(s),
                ValuationClass::PrincipalFilters => sl.filter(s).is_some_and(|g| g.is_principal(sl)),
            };
            let seeds = [(a, ()), (b, ()), (Subset::EMPTY, ()), (sl.carrier(), ())];
            for (s, _) in reachable(f, &seeds, &|_, _, _| ()) {
                if !ok(s) {
                    return Err(format!("truth set {} under {vclass:?}", sl.poset().subset_label(s)));
                }
            }
            let v: BTreeMap<String, Subset> = [("p".to_string(), a), ("q".to_string(), b)].into();
            let m = Model::new(f.clone(), v).map_err(|e| e.to_string())?;
            for g in &sample {
                let s = eval_model(&m, g).map_err(|e| e.to_string())?;
                if !ok(s) {
                    return Err(format!("`{g}` has truth set {}", sl.poset().subset_label(s)));
                }
            }
            Ok(())
        });
        if let Some((k, e)) = fail {
            return outcome(7, false, format!("model #{k}: {e}"));
        }
    }
    outcome(
        7,
        true,
        format!("{total} models on {} modal frames <= 4, all depth-3 truth sets plus {SAMPLE} sampled formulas", frames.len()),
    )
}

fn criterion_8(cfg: &SuiteConfig) -> Outcome {
    let frames = all_modal(4);
    let algebras: Vec<_> = frames
        .par_iter()
        .map(|f| modal_complex_algebra(f, ValuationClass::AllFilters).map_err(|e| e.to_string()))
        .collect();
    let sample = sample_formulas(cfg.seed ^ 8, SAMPLE, 3, &["p", "q"], true);
    let ms = models(&frames, ValuationClass::AllFilters);
    let n = ms.len();
    let fail = first_failure(ms, |&(i, a, b)| {
        let f = &frames[i];
        let ca = algebras[i].as_ref().map_err(Clone::clone)?;
        let m = &ca.algebra;
        let idx = |s: Subset| ca.index_of(s).ok_or_else(|| "value is not a filter".to_string());
        let sl = f.semilattice();
        let seeds = [
            (a, idx(a)?),
            (b, idx(b)?),
            (Subset::EMPTY, m.lat.bottom()),
            (sl.carrier(), m.lat.top()),
        ];
        let lift = |op: Op, x: usize, y: usize| match op {
            Op::And => m.lat.meet(x, y),
            Op::Or => m.lat.join(x, y),
            Op::Box => m.boxed(x),
            Op::Dia => m.dia(x),
        };
        for (s, e) in reachable(f, &seeds, &lift) {
            if ca.filters[e].members() != s {
                return Err(format!("truth set {} but algebra value {}", sl.poset().subset_label(s), m.lat.label(e)));
            }
        }
        let v: BTreeMap<String, Subset> = [("p".to_string(), a), ("q".to_string(), b)].into();
        let model = Model::new(f.clone(), v.clone()).map_err(|e| e.to_string())?;
        let sigma = |p: &str| v.get(p).and_then(|s| ca.index_of(*s));
        for g in &sample {
            let s = eval_model(&model, g).map_err(|e| e.to_string())?;
            let e = eval_in_modal_lattice(m, &sigma, g).map_err(|e| e.to_string())?;
            if ca.filters[e].members() != s {
                return Err(format!("`{g}` evaluates differently"));
            }
        }
        Ok(())
    });
    match fail {
        None => outcome(8, true, format!("{n} models on {} modal frames <= 4, all depth-3 formulas plus {SAMPLE} sampled", frames.len())),
        Some((k, e)) => outcome(8, false, format!("model #{k}: {e}")),
    }
}

fn criterion_9() -> Outcome {
    let frames = all_modal(3);
    let rows: Vec<Result<Option<(usize, usize)>, String>> = frames
        .par_iter()
        .map(|f| {
            let mca = modal_complex_algebra(f, ValuationClass::AllFilters).map_err(|e| e.to_string())?;
            modal_dual(&mca.algebra).map_err(|e| e.to_string())?;
            let rt = modal_round_trip(f).map_err(|e| e.to_string())?;
            if !rt.order.is_iso {
                return Err("eta is not an order isomorphism".into());
            }
            Ok(rt.relation_mismatch)
        })
        .collect();
    let mut mismatched = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        match r {
            Err(e) => return outcome(9, false, format!("frame #{i}: {e}")),
            Ok(Some(at)) => mismatched.push((i, at)),
            Ok(None) => {}
        }
    }
    let n = frames.len();
    match mismatched.first() {
        None => outcome(9, true, format!("{n} modal frames <= 3: box/dia equations and relation round trip hold")),
        Some(&(i, (x, y))) => {
            let f = &frames[i];
            let p = f.semilattice().poset();
            let pairs: Vec<String> = f
                .relation()
                .pairs()
                .iter()
                .map(|&(a, b)| format!("{}{}", p.label(a), p.label(b)))
                .collect();
            outcome(
                9,
                false,
                format!(
                    "box/dia equations hold on all {n} frames <= 3, but the relation comes back changed on {} of them; first: frame #{i} (R = {{{}}}) differs at ({}, {})",
                    mismatched.len(),
                    pairs.join(","),
                    p.label(x),
                    p.label(y)
                ),
            )
        }
    }
}

fn criterion_10() -> Outcome {
    let lats = all_lattices(6);
    let n = lats.len();
    let fail = first_failure(lats, |a| {
        let props = lattice_props(a);
        for c in [filter_completion(a), f2_completion(a)] {
            let rep = c.iso_report(a);
            if !rep.is_iso {
                return Err(format!("{:?} is not isomorphic: {:?}", c.kind, rep.failure));
            }
            if lattice_props(&c.lattice) != props {
                return Err(format!("{:?} changes the distributive/modular flags", c.kind));
            }
        }
        Ok(())
    });
    match fail {
        None => outcome(10, true, format!("{n} lattices <= 6: both completions isomorphic with equal flags")),
        Some((i, e)) => outcome(10, false, format!("lattice #{i}: {e}")),
    }
}

pub const CURATED: [&str; 22] = [
    "p & q <= p",
    "p & q <= q",
    "p <= p | q",
    "q <= p | q",
    "p & q <= q & p",
    "p | q <= q | p",
    "p & (q & r) <= (p & q) & r",
    "p | (q | r) <= (p | q) | r",
    "p & p <= p",
    "p <= p | p",
    "p & (p | q) <= p",
    "p <= p & (p | q)",
    "p | (p & q) <= p",
    "p <= p | (p & q)",
    "p & (q|r) <= (p&q)|(p&r)",
    "(p&q)|(p&r) <= p & (q|r)",
    "p | (q & r) <= (p|q) & (p|r)",
    "(p|q) & (p|r) <= p | (q & r)",
    "(p & r) | (q & r) <= ((p & r) | q) & r",
    "((p & r) | q) & r <= (p & r) | (q & r)",
    DISTRIBUTIVITY,
    MODULARITY,
];

fn lattice_valid(l: &BoundedLattice, pair: &ConsequencePair) -> bool {
    let letters: Vec<String> = pair.letters().into_iter().collect();
    let n = l.len();
    let total = n.pow(letters.len() as u32);
    (0..total).all(|code| {
        let mut c = code;
        let assign: Vec<usize> = letters
            .iter()
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect();
        let sigma = |p: &str| letters.iter().position(|q| q == p).map(|i| assign[i]);
        let a = eval_in_lattice(l, &sigma, &pair.lhs).expect("letters assigned");
        let b = eval_in_lattice(l, &sigma, &pair.rhs).expect("letters assigned");
        l.leq(a, b)
    })
}

fn criterion_11(cfg: &SuiteConfig) -> Outcome {
    let lats = all_lattices(6);
    let bounds = Bounds {
        semilattice: 6,
        ..Bounds::default()
    };
    let rows: Vec<Result<Option<usize>, String>> = CURATED
        .par_iter()
        .map(|src| {
            let pair = parse_pair(src).map_err(|e| e.to_string())?;
            let decided = whitman_decide(&pair).map_err(|e| e.to_string())?;
            let valid = lats.iter().all(|l| lattice_valid(l, &pair));
            if decided != valid {
                return Err(format!("`{src}`: whitman {decided}, lattices <= 6 say {valid}"));
            }
            if decided {
                return Ok(None);
            }
            let found = countermodel_search(&pair, 6, false, &bounds, cfg.budget).map_err(|e| e.to_string())?;
            let Some(c) = found else {
                return Err(format!("`{src}`: no countermodel on <= 6 elements"));
            };
            let CounterFrame::Plain(sl) = &c.frame else {
                return Err("plain search returned a modal frame".into());
            };
            if !witness_holds(sl, &pair, &c.witness).map_err(|e| e.to_string())? {
                return Err(format!("`{src}`: witness does not verify"));
            }
            Ok(Some(sl.len()))
        })
        .collect();
    let mut sizes = Vec::new();
    for r in rows {
        match r {
            Ok(Some(n)) => sizes.push(n),
            Ok(None) => {}
            Err(e) => return outcome(11, false, e),
        }
    }
    outcome(
        11,
        true,
        format!(
            "{} pairs, {} derivable; countermodel sizes {:?} for the rest",
            CURATED.len(),
            CURATED.len() - sizes.len(),
            sizes
        ),
    )
}

/// Every formula over `letters` with depth at most `depth`.
fn all_formulas(depth: u32, letters: &[&str]) -> Vec<Formula> {
    let mut cur: Vec<Formula> = letters.iter().map(|p| Formula::prop(p)).collect();
    cur.push(Formula::Top);
    cur.push(Formula::Bot);
    for _ in 0..depth {
        let mut next = cur.clone();
        for a in &cur {
            next.push(Formula::boxed(a.clone()));
            next.push(Formula::diamond(a.clone()));
            for b in &cur {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
            }
        }
        next.sort();
        next.dedup();
        cur = next;
    }
    cur
}

fn criterion_12(cfg: &SuiteConfig, ids: &[usize], first: &[Outcome]) -> Outcome {
    let mut formulas = all_formulas(2, &["p", "q"]);
    let exhaustive = formulas.len();
    formulas.extend(sample_formulas(cfg.seed ^ 12, 2000, 6, &["p", "q", "r", "s"], true));
    for f in &formulas {
        let text = render_formula(f);
        match parse_formula(&text) {
            Ok(g) if &g == f => {}
            _ => return outcome(12, false, format!("`{text}` does not parse back")),
        }
    }
    for pair in formulas.chunks(2).filter(|c| c.len() == 2) {
        let p = ConsequencePair::new(pair[0].clone(), pair[1].clone());
        if parse_pair(&p.to_string()).ok().as_ref() != Some(&p) {
            return outcome(12, false, format!("pair `{p}` does not parse back"));
        }
    }
    let mut detail = format!("{} formulas round-trip ({exhaustive} exhaustive to depth 2)", formulas.len());
    if !ids.is_empty() {
        let other = if cfg.threads == 1 { 3 } else { 1 };
        let again = pool(other).install(|| run_criteria(ids, cfg));
        if again != first {
            let diff = again
                .iter()
                .zip(first)
                .find(|(a, b)| a != b)
                .map(|(a, _)| a.id)
                .unwrap_or(0);
            return outcome(12, false, format!("{detail}; criterion {diff} differs on {other} thread(s)"));
        }
        let _ = write!(detail, "; criteria {ids:?} identical on a rerun with {other} thread(s)");
    }
    outcome(12, true, detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_census() {
        // 4 atoms, then 4 + 2*4 + 2*16 = 44 at depth one.
        assert_eq!(all_formulas(1, &["p", "q"]).len(), 44);
    }

    #[test]
    fn reference_forms_are_closed_frame_formulas() {
        for f in [
            reference_distributivity(),
            reference_modularity(),
            reference_reflexive_below(),
            reference_reflexive_above(),
            reference_normal_diamond(),
        ] {
            assert!(f.free_vars().is_empty(), "{f}");
            assert!(f.is_frame_formula());
        }
    }

    #[test]
    fn samples_are_seeded() {
        let a = sample_formulas(1, 10, 4, &["p"], true);
        assert_eq!(a, sample_formulas(1, 10, 4, &["p"], true));
        assert_ne!(a, sample_formulas(2, 10, 4, &["p"], true));
    }
}
