//! First-order (and printable second-order) formulas over the signature
//! `leq`, `r`, `=`, unary `P_p`, with Tarski evaluation on finite frames
//! and plain-text / SMT-LIB2 output.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::order::MeetSemilattice;
use crate::semantics::Relation;
use crate::subset::Subset;

pub type Var = String;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FoFormula {
    True,
    False,
    Leq(Var, Var),
    Rel(Var, Var),
    Eq(Var, Var),
    /// `P_p(x)` for proposition letter `p`.
    Pred(String, Var),
    Not(Box<FoFormula>),
    And(Vec<FoFormula>),
    Or(Vec<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Forall(Var, Box<FoFormula>),
    Exists(Var, Box<FoFormula>),
    /// Quantifies `P_p` over subsets of the carrier.
    ForallPred(String, Box<FoFormula>),
}

pub fn leq(a: &str, b: &str) -> FoFormula {
    FoFormula::Leq(a.to_string(), b.to_string())
}

pub fn rel(a: &str, b: &str) -> FoFormula {
    FoFormula::Rel(a.to_string(), b.to_string())
}

pub fn eq(a: &str, b: &str) -> FoFormula {
    FoFormula::Eq(a.to_string(), b.to_string())
}

pub fn pred(p: &str, x: &str) -> FoFormula {
    FoFormula::Pred(p.to_string(), x.to_string())
}

pub fn not(a: FoFormula) -> FoFormula {
    FoFormula::Not(Box::new(a))
}

pub fn implies(a: FoFormula, b: FoFormula) -> FoFormula {
    FoFormula::Implies(Box::new(a), Box::new(b))
}

pub fn forall(x: &str, body: FoFormula) -> FoFormula {
    FoFormula::Forall(x.to_string(), Box::new(body))
}

pub fn exists(x: &str, body: FoFormula) -> FoFormula {
    FoFormula::Exists(x.to_string(), Box::new(body))
}

pub fn forall_many(xs: &[&str], body: FoFormula) -> FoFormula {
    xs.iter().rev().fold(body, |acc, x| forall(x, acc))
}

pub fn exists_many(xs: &[&str], body: FoFormula) -> FoFormula {
    xs.iter().rev().fold(body, |acc, x| exists(x, acc))
}

impl FoFormula {
    pub fn is_first_order(&self) -> bool {
        match self {
            FoFormula::ForallPred(..) => false,
            FoFormula::Not(a) | FoFormula::Forall(_, a) | FoFormula::Exists(_, a) => a.is_first_order(),
            FoFormula::Implies(a, b) => a.is_first_order() && b.is_first_order(),
            FoFormula::And(v) | FoFormula::Or(v) => v.iter().all(|f| f.is_first_order()),
            _ => true,
        }
    }

    /// No `Pred` and no `ForallPred` anywhere.
    pub fn is_frame_formula(&self) -> bool {
        match self {
            FoFormula::Pred(..) | FoFormula::ForallPred(..) => false,
            FoFormula::Not(a) | FoFormula::Forall(_, a) | FoFormula::Exists(_, a) => a.is_frame_formula(),
            FoFormula::Implies(a, b) => a.is_frame_formula() && b.is_frame_formula(),
            FoFormula::And(v) | FoFormula::Or(v) => v.iter().all(|f| f.is_frame_formula()),
            _ => true,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Var>) {
        let mut see = |v: &'a str, bound: &Vec<&'a str>| {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        };
        match self {
            FoFormula::True | FoFormula::False => {}
            FoFormula::Leq(a, b) | FoFormula::Rel(a, b) | FoFormula::Eq(a, b) => {
                see(a, bound);
                see(b, bound);
            }
            FoFormula::Pred(_, a) => see(a, bound),
            FoFormula::Not(a) | FoFormula::ForallPred(_, a) => a.collect_free(bound, out),
            FoFormula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            FoFormula::And(v) | FoFormula::Or(v) => v.iter().for_each(|f| f.collect_free(bound, out)),
            FoFormula::Forall(x, a) | FoFormula::Exists(x, a) => {
                bound.push(x);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Bound variable names in pre-order.
    pub fn binders(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut Vec<Var>) {
        match self {
            FoFormula::Forall(x, a) | FoFormula::Exists(x, a) => {
                out.push(x.clone());
                a.collect_binders(out);
            }
            FoFormula::Not(a) | FoFormula::ForallPred(_, a) => a.collect_binders(out),
            FoFormula::Implies(a, b) => {
                a.collect_binders(out);
                b.collect_binders(out);
            }
            FoFormula::And(v) | FoFormula::Or(v) => v.iter().for_each(|f| f.collect_binders(out)),
            _ => {}
        }
    }

    /// No name is bound twice and no binder reuses a free variable.
    pub fn binders_are_fresh(&self) -> bool {
        let b = self.binders();
        let set: BTreeSet<&Var> = b.iter().collect();
        set.len() == b.len() && self.free_vars().iter().all(|v| !set.contains(v))
    }

    pub fn predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_preds(&mut out);
        out
    }

    fn collect_preds(&self, out: &mut BTreeSet<String>) {
        match self {
            FoFormula::Pred(p, _) | FoFormula::ForallPred(p, _) => {
                out.insert(p.clone());
                if let FoFormula::ForallPred(_, a) = self {
                    a.collect_preds(out);
                }
            }
            FoFormula::Not(a) | FoFormula::Forall(_, a) | FoFormula::Exists(_, a) => a.collect_preds(out),
            FoFormula::Implies(a, b) => {
                a.collect_preds(out);
                b.collect_preds(out);
            }
            FoFormula::And(v) | FoFormula::Or(v) => v.iter().for_each(|f| f.collect_preds(out)),
            _ => {}
        }
    }

    pub fn mentions_relation(&self) -> bool {
        match self {
            FoFormula::Rel(..) => true,
            FoFormula::Not(a) | FoFormula::Forall(_, a) | FoFormula::Exists(_, a) | FoFormula::ForallPred(_, a) => {
                a.mentions_relation()
            }
            FoFormula::Implies(a, b) => a.mentions_relation() || b.mentions_relation(),
            FoFormula::And(v) | FoFormula::Or(v) => v.iter().any(|f| f.mentions_relation()),
            _ => false,
        }
    }

    /// Renames variables by `map`, leaving others alone. The caller keeps
    /// the result capture-free.
    pub fn rename(&self, map: &dyn Fn(&str) -> Option<Var>) -> FoFormula {
        let v = |x: &Var| map(x).unwrap_or_else(|| x.clone());
        match self {
            FoFormula::True | FoFormula::False => self.clone(),
            FoFormula::Leq(a, b) => FoFormula::Leq(v(a), v(b)),
            FoFormula::Rel(a, b) => FoFormula::Rel(v(a), v(b)),
            FoFormula::Eq(a, b) => FoFormula::Eq(v(a), v(b)),
            FoFormula::Pred(p, a) => FoFormula::Pred(p.clone(), v(a)),
            FoFormula::Not(a) => not(a.rename(map)),
            FoFormula::And(xs) => FoFormula::And(xs.iter().map(|f| f.rename(map)).collect()),
            FoFormula::Or(xs) => FoFormula::Or(xs.iter().map(|f| f.rename(map)).collect()),
            FoFormula::Implies(a, b) => implies(a.rename(map), b.rename(map)),
            FoFormula::Forall(x, a) => FoFormula::Forall(v(x), Box::new(a.rename(map))),
            FoFormula::Exists(x, a) => FoFormula::Exists(v(x), Box::new(a.rename(map))),
            FoFormula::ForallPred(p, a) => FoFormula::ForallPred(p.clone(), Box::new(a.rename(map))),
        }
    }

    /// Unicode rendering, e.g. `∀x ∃y0 (xRy0 ∧ x ≤ y0)`.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, Style::Unicode, false);
        s
    }

    fn write(&self, out: &mut String, st: Style, nested: bool) {
        let u = st == Style::Unicode;
        match self {
            FoFormula::True => out.push_str(if u { "⊤" } else { "true" }),
            FoFormula::False => out.push_str(if u { "⊥" } else { "false" }),
            FoFormula::Leq(a, b) => out.push_str(&if u { format!("{a} ≤ {b}") } else { format!("leq({a},{b})") }),
            FoFormula::Rel(a, b) => out.push_str(&if u { format!("{a}R{b}") } else { format!("r({a},{b})") }),
            FoFormula::Eq(a, b) => out.push_str(&format!("{a} = {b}")),
            FoFormula::Pred(p, a) => out.push_str(&format!("P_{p}({a})")),
            FoFormula::Not(a) => {
                out.push_str(if u { "¬" } else { "~" });
                a.write(out, st, true);
            }
            FoFormula::And(xs) | FoFormula::Or(xs) => {
                let op = match (self, u) {
                    (FoFormula::And(_), true) => " ∧ ",
                    (FoFormula::And(_), false) => " & ",
                    (_, true) => " ∨ ",
                    (_, false) => " | ",
                };
                if xs.is_empty() {
                    let unit = if matches!(self, FoFormula::And(_)) { FoFormula::True } else { FoFormula::False };
                    return unit.write(out, st, nested);
                }
                out.push('(');
                for (i, f) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(op);
                    }
                    f.write(out, st, true);
                }
                out.push(')');
            }
            FoFormula::Implies(a, b) => {
                out.push('(');
                a.write(out, st, true);
                out.push_str(if u { " → " } else { " -> " });
                b.write(out, st, true);
                out.push(')');
            }
            FoFormula::Forall(..) | FoFormula::Exists(..) | FoFormula::ForallPred(..) => {
                if nested {
                    out.push('(');
                }
                let mut cur = self;
                let mut first = true;
                loop {
                    let (q, name, body) = match cur {
                        FoFormula::Forall(x, a) => (if u { "∀" } else { "forall " }, x.clone(), a),
                        FoFormula::Exists(x, a) => (if u { "∃" } else { "exists " }, x.clone(), a),
                        FoFormula::ForallPred(p, a) => (if u { "∀" } else { "forall " }, format!("P_{p}"), a),
                        _ => break,
                    };
                    if !first {
                        out.push(' ');
                    }
                    first = false;
                    out.push_str(q);
                    out.push_str(&name);
                    if !u {
                        out.push('.');
                    }
                    cur = body;
                }
                out.push(' ');
                cur.write(out, st, false);
                if nested {
                    out.push(')');
                }
            }
        }
    }

    /// SMT-LIB2 script declaring the signature and asserting the formula;
    /// free variables become constants.
    pub fn to_smtlib(&self) -> Result<String, FoError> {
        if !self.is_first_order() {
            return Err(FoError::SecondOrder);
        }
        let mut out = String::from("(set-logic UF)\n(declare-sort S 0)\n(declare-fun leq (S S) Bool)\n");
        if self.mentions_relation() {
            out.push_str("(declare-fun r (S S) Bool)\n");
        }
        for p in self.predicates() {
            out.push_str(&format!("(declare-fun P_{p} (S) Bool)\n"));
        }
        for v in self.free_vars() {
            out.push_str(&format!("(declare-const {v} S)\n"));
        }
        out.push_str("(assert ");
        self.write_smt(&mut out);
        out.push_str(")\n(check-sat)\n");
        Ok(out)
    }

    fn write_smt(&self, out: &mut String) {
        match self {
            FoFormula::True => out.push_str("true"),
            FoFormula::False => out.push_str("false"),
            FoFormula::Leq(a, b) => out.push_str(&format!("(leq {a} {b})")),
            FoFormula::Rel(a, b) => out.push_str(&format!("(r {a} {b})")),
            FoFormula::Eq(a, b) => out.push_str(&format!("(= {a} {b})")),
            FoFormula::Pred(p, a) => out.push_str(&format!("(P_{p} {a})")),
            FoFormula::Not(a) => {
                out.push_str("(not ");
                a.write_smt(out);
                out.push(')');
            }
            FoFormula::And(xs) | FoFormula::Or(xs) => {
                let (op, unit) = if matches!(self, FoFormula::And(_)) { ("and", "true") } else { ("or", "false") };
                match xs.len() {
                    0 => out.push_str(unit),
                    1 => xs[0].write_smt(out),
                    _ => {
                        out.push('(');
                        out.push_str(op);
                        for f in xs {
                            out.push(' ');
                            f.write_smt(out);
                        }
                        out.push(')');
                    }
                }
            }
            FoFormula::Implies(a, b) => {
                out.push_str("(=> ");
                a.write_smt(out);
                out.push(' ');
                b.write_smt(out);
                out.push(')');
            }
            FoFormula::Forall(x, a) | FoFormula::Exists(x, a) => {
                let q = if matches!(self, FoFormula::Forall(..)) { "forall" } else { "exists" };
                out.push_str(&format!("({q} (({x} S)) "));
                a.write_smt(out);
                out.push(')');
            }
            FoFormula::ForallPred(..) => unreachable!("rejected before writing"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Plain,
    Unicode,
}

/// Plain ASCII rendering, e.g. `forall x. exists y0. (r(x,y0) & leq(x,y0))`.
impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, Style::Plain, false);
        f.write_str(&s)
    }
}

impl fmt::Debug for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoError {
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("predicate `P_{0}` has no valuation")]
    PredWithoutValuation(String),
    #[error("formula mentions r but the structure has no relation")]
    RelWithoutRelation,
    #[error("second-order quantifiers have no SMT-LIB2 form")]
    SecondOrder,
}

/// A finite frame with optional relation and predicate interpretation.
#[derive(Debug, Clone, Copy)]
pub struct FoStructure<'a> {
    pub sl: &'a MeetSemilattice,
    pub rel: Option<&'a Relation>,
    pub preds: Option<&'a BTreeMap<String, Subset>>,
}

impl<'a> FoStructure<'a> {
    pub fn frame(sl: &'a MeetSemilattice, rel: Option<&'a Relation>) -> FoStructure<'a> {
        FoStructure { sl, rel, preds: None }
    }
}

/// Formula with variables resolved to slots and predicates to indices.
enum Compiled {
    Const(bool),
    Leq(usize, usize),
    Rel(usize, usize),
    Eq(usize, usize),
    Pred(usize, usize),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Forall(usize, Box<Compiled>),
    Exists(usize, Box<Compiled>),
    ForallPred(usize, Box<Compiled>),
}

struct Compiler<'s> {
    scope: Vec<(Var, usize)>,
    slots: usize,
    preds: Vec<String>,
    pred_scope: Vec<(String, usize)>,
    structure: &'s FoStructure<'s>,
}

impl Compiler<'_> {
    fn var(&self, x: &str) -> Result<usize, FoError> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|&(_, s)| s)
            .ok_or_else(|| FoError::UnboundVariable(x.to_string()))
    }

    fn pred(&mut self, p: &str) -> Result<usize, FoError> {
        if let Some(&(_, i)) = self.pred_scope.iter().rev().find(|(n, _)| n == p) {
            return Ok(i);
        }
        let has = self.structure.preds.is_some_and(|m| m.contains_key(p));
        if !has {
            return Err(FoError::PredWithoutValuation(p.to_string()));
        }
        Ok(self.fixed_pred(p))
    }

    fn fixed_pred(&mut self, p: &str) -> usize {
        match self.preds.iter().position(|q| q == p) {
            Some(i) => i,
            None => {
                self.preds.push(p.to_string());
                self.preds.len() - 1
            }
        }
    }

    fn bind(&mut self, x: &str) -> usize {
        let s = self.slots;
        self.slots += 1;
        self.scope.push((x.to_string(), s));
        s
    }

    fn compile(&mut self, f: &FoFormula) -> Result<Compiled, FoError> {
        Ok(match f {
            FoFormula::True => Compiled::Const(true),
            FoFormula::False => Compiled::Const(false),
            FoFormula::Leq(a, b) => Compiled::Leq(self.var(a)?, self.var(b)?),
            FoFormula::Rel(a, b) => {
                self.structure.rel.ok_or(FoError::RelWithoutRelation)?;
                Compiled::Rel(self.var(a)?, self.var(b)?)
            }
            FoFormula::Eq(a, b) => Compiled::Eq(self.var(a)?, self.var(b)?),
            FoFormula::Pred(p, a) => Compiled::Pred(self.pred(p)?, self.var(a)?),
            FoFormula::Not(a) => Compiled::Not(Box::new(self.compile(a)?)),
            FoFormula::And(xs) => Compiled::And(xs.iter().map(|g| self.compile(g)).collect::<Result<_, _>>()?),
            FoFormula::Or(xs) => Compiled::Or(xs.iter().map(|g| self.compile(g)).collect::<Result<_, _>>()?),
            FoFormula::Implies(a, b) => Compiled::Implies(Box::new(self.compile(a)?), Box::new(self.compile(b)?)),
            FoFormula::Forall(x, a) | FoFormula::Exists(x, a) => {
                let s = self.bind(x);
                let body = Box::new(self.compile(a)?);
                self.scope.pop();
                if matches!(f, FoFormula::Forall(..)) {
                    Compiled::Forall(s, body)
                } else {
                    Compiled::Exists(s, body)
                }
            }
            FoFormula::ForallPred(p, a) => {
                let i = self.preds.len();
                self.preds.push(format!("{p}#bound"));
                self.pred_scope.push((p.clone(), i));
                let body = Box::new(self.compile(a)?);
                self.pred_scope.pop();
                Compiled::ForallPred(i, body)
            }
        })
    }
}

struct Machine<'a> {
    sl: &'a MeetSemilattice,
    rel: Option<&'a Relation>,
    slots: Vec<usize>,
    preds: Vec<Subset>,
}

impl Machine<'_> {
    fn run(&mut self, c: &Compiled) -> bool {
        match c {
            Compiled::Const(b) => *b,
            Compiled::Leq(a, b) => self.sl.leq(self.slots[*a], self.slots[*b]),
            Compiled::Rel(a, b) => self.rel.expect("checked at compile time").contains(self.slots[*a], self.slots[*b]),
            Compiled::Eq(a, b) => self.slots[*a] == self.slots[*b],
            Compiled::Pred(p, a) => self.preds[*p].contains(self.slots[*a]),
            Compiled::Not(a) => !self.run(a),
            Compiled::And(xs) => xs.iter().all(|g| self.run(g)),
            Compiled::Or(xs) => xs.iter().any(|g| self.run(g)),
            Compiled::Implies(a, b) => !self.run(a) || self.run(b),
            Compiled::Forall(s, a) => (0..self.sl.len()).all(|v| {
                self.slots[*s] = v;
                self.run(a)
            }),
            Compiled::Exists(s, a) => (0..self.sl.len()).any(|v| {
                self.slots[*s] = v;
                self.run(a)
            }),
            Compiled::ForallPred(i, a) => (0u64..(1u64 << self.sl.len())).all(|m| {
                self.preds[*i] = Subset(m);
                self.run(a)
            }),
        }
    }
}

/// Tarski evaluation; `env` assigns the free variables.
pub fn fo_eval(structure: &FoStructure<'_>, f: &FoFormula, env: &[(&str, usize)]) -> Result<bool, FoError> {
    let mut c = Compiler {
        scope: Vec::new(),
        slots: 0,
        preds: Vec::new(),
        pred_scope: Vec::new(),
        structure,
    };
    let mut init = Vec::new();
    for &(x, v) in env {
        c.bind(x);
        init.push(v);
    }
    let compiled = c.compile(f)?;
    let mut slots = alloc::vec![0usize; c.slots];
    slots[..init.len()].copy_from_slice(&init);
    let preds = c
        .preds
        .iter()
        .map(|p| structure.preds.and_then(|m| m.get(p).copied()).unwrap_or(Subset::EMPTY))
        .collect();
    let mut m = Machine {
        sl: structure.sl,
        rel: structure.rel,
        slots,
        preds,
    };
    Ok(m.run(&compiled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::fixtures::*;
    use alloc::vec;

    fn sl(p: crate::order::Poset) -> MeetSemilattice {
        MeetSemilattice::new(p).unwrap()
    }

    #[test]
    fn eval_examples() {
        let c2 = sl(chain(2));
        let s = FoStructure::frame(&c2, None);
        assert!(fo_eval(&s, &forall("x", exists("y", leq("x", "y"))), &[]).unwrap());

        let r = Relation::from_pairs(2, &[(0, 1), (1, 1)]);
        let s = FoStructure::frame(&c2, Some(&r));
        let f = forall("x", exists("y", FoFormula::And(vec![rel("x", "y"), leq("y", "x")])));
        assert!(!fo_eval(&s, &f, &[]).unwrap());

        let v = sl(vee());
        let preds: BTreeMap<String, Subset> = [("p".to_string(), set(&[1]))].into_iter().collect();
        let s = FoStructure { sl: &v, rel: None, preds: Some(&preds) };
        assert!(fo_eval(&s, &pred("p", "x"), &[("x", 1)]).unwrap());
        assert!(!fo_eval(&s, &pred("p", "x"), &[("x", 0)]).unwrap());
    }

    #[test]
    fn eval_errors() {
        let c2 = sl(chain(2));
        let s = FoStructure::frame(&c2, None);
        assert_eq!(fo_eval(&s, &leq("x", "y"), &[("x", 0)]), Err(FoError::UnboundVariable("y".into())));
        assert_eq!(fo_eval(&s, &pred("p", "x"), &[("x", 0)]), Err(FoError::PredWithoutValuation("p".into())));
        assert_eq!(fo_eval(&s, &rel("x", "x"), &[("x", 0)]), Err(FoError::RelWithoutRelation));
    }

    #[test]
    fn second_order_quantifier_ranges_over_subsets() {
        let c2 = sl(chain(2));
        let s = FoStructure::frame(&c2, None);
        // some subset is not up-closed
        let up_closed = forall_many(&["a", "b"], implies(FoFormula::And(vec![pred("p", "a"), leq("a", "b")]), pred("p", "b")));
        let f = FoFormula::ForallPred("p".into(), Box::new(up_closed));
        assert!(!fo_eval(&s, &f, &[]).unwrap());
    }

    #[test]
    fn plain_and_unicode_rendering() {
        let f = forall("x", exists("y0", FoFormula::And(vec![rel("x", "y0"), leq("x", "y0")])));
        assert_eq!(f.to_string(), "forall x. exists y0. (r(x,y0) & leq(x,y0))");
        assert_eq!(f.to_unicode(), "∀x ∃y0 (xRy0 ∧ x ≤ y0)");
        let g = FoFormula::And(vec![forall("a", FoFormula::True), not(eq("a", "b"))]);
        assert_eq!(g.to_string(), "((forall a. true) & ~a = b)");
    }

    #[test]
    fn smtlib_export() {
        let f = forall("x", exists("y0", FoFormula::And(vec![rel("x", "y0"), leq("x", "y0")])));
        let s = f.to_smtlib().unwrap();
        assert!(s.contains("(declare-fun r (S S) Bool)"));
        assert!(s.contains("(assert (forall ((x S)) (exists ((y0 S)) (and (r x y0) (leq x y0)))))"));
        let so = FoFormula::ForallPred("p".into(), Box::new(FoFormula::True));
        assert_eq!(so.to_smtlib(), Err(FoError::SecondOrder));
    }

    #[test]
    fn freshness_and_free_vars() {
        let f = forall("y", exists("z", FoFormula::And(vec![leq("x", "y"), leq("y", "z")])));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), ["x"]);
        assert!(f.binders_are_fresh());
        let g = FoFormula::And(vec![forall("y", FoFormula::True), exists("y", FoFormula::True)]);
        assert!(!g.binders_are_fresh());
    }
}
