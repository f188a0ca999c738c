//! Truth sets in (modal) L-models, evaluation in (modal) lattices, frame
//! validity by valuation enumeration, and the modal frame conditions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::order::{is_l_morphism, BoundedLattice, Filter, MeetSemilattice, OrderError};
use crate::subset::Subset;
use crate::syntax::{ConsequencePair, Formula};

/// Default cap on `filters^letters × states` in [`frame_validity`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Carriers up to this size get the family conditions of principal frames
/// checked over every nonempty subset.
const FAMILY_CHECK_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("no value for proposition letter `{0}`")]
    MissingLetter(String),
    #[error("frame violates the modal frame conditions: {0}")]
    FrameConditionViolated(String),
    #[error("modal formula evaluated in a lattice without modal operators")]
    ModalOnPlainLattice,
    #[error("modal formula evaluated on a frame without a relation")]
    ModalOnPlainFrame,
    #[error("valuation enumeration needs {required} evaluations, budget is {budget}")]
    Infeasible { required: u128, budget: u64 },
    #[error("value of `{0}` is not a filter")]
    InvalidValuation(String),
    #[error("modal lattice axiom fails: {0}")]
    ModalAxiom(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A binary relation on `0..n` stored as successor sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    succ: Vec<Subset>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            succ: alloc::vec![Subset::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation {
            succ: (0..n).map(Subset::singleton).collect(),
        }
    }

    pub fn from_successors(succ: Vec<Subset>) -> Relation {
        Relation { succ }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Relation {
        let mut r = Relation::empty(n);
        for &(x, y) in pairs {
            r.succ[x] = r.succ[x].with(y);
        }
        r
    }

    /// Relation whose pair `(x, y)` is bit `x * n + y` of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Relation {
        Relation {
            succ: (0..n).map(|x| Subset((mask >> (x * n)) & Subset::full(n).bits())).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        let n = self.len();
        self.succ
            .iter()
            .enumerate()
            .fold(0, |acc, (x, s)| acc | (s.bits() << (x * n)))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(y)
    }

    /// `R[x]`
    #[inline]
    pub fn successors(&self, x: usize) -> Subset {
        self.succ[x]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.succ[x].iter().map(move |y| (x, y)))
            .collect()
    }

    /// `([R]a, ⟨R⟩a)`
    pub fn box_dia(&self, a: Subset) -> (Subset, Subset) {
        let mut b = Subset::EMPTY;
        let mut d = Subset::EMPTY;
        for (x, s) in self.succ.iter().enumerate() {
            if s.is_subset(a) {
                b = b.with(x);
            }
            if s.intersects(a) {
                d = d.with(x);
            }
        }
        (b, d)
    }
}

/// One failed condition, with the states that witness the failure in the
/// order they appear in the condition. Family conditions also name the
/// index family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub states: Vec<usize>,
    pub family: Option<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub holds: bool,
    pub counterexample: Option<Violation>,
}

impl ConditionResult {
    fn ok() -> ConditionResult {
        ConditionResult {
            holds: true,
            counterexample: None,
        }
    }

    fn from(v: Option<Violation>) -> ConditionResult {
        ConditionResult {
            holds: v.is_none(),
            counterexample: v,
        }
    }
}

/// Outcome of [`modal_frame_check`].
///
/// `conditions[k]` is condition `k + 1` of modal L-frames; `principal[k]`
/// is condition `k` of principal modal L-frames. Condition (0) of the
/// latter is read as "all nonempty meets exist, and every pair with an
/// upper bound has a join"; `binary_joins` reports the stricter reading
/// that every pair has a join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub conditions: [ConditionResult; 5],
    pub principal: [ConditionResult; 6],
    pub binary_joins: bool,
}

impl ConditionReport {
    pub fn is_modal_l_frame(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn is_principal(&self) -> bool {
        self.principal.iter().all(|c| c.holds)
    }

    pub fn failed(&self) -> Vec<usize> {
        (0..5).filter(|&k| !self.conditions[k].holds).map(|k| k + 1).collect()
    }

    fn summary(&self) -> String {
        let failed = self.failed();
        if failed.is_empty() {
            let p: Vec<usize> = (0..6).filter(|&k| !self.principal[k].holds).collect();
            format!("principal conditions {p:?} fail")
        } else {
            format!("conditions {failed:?} fail")
        }
    }
}

fn cond1(sl: &MeetSemilattice, r: &Relation) -> Option<Violation> {
    let p = sl.poset();
    for x in 0..sl.len() {
        for y in p.up(x) {
            for z in r.successors(y) {
                if !r.successors(x).intersects(p.down(z)) {
                    return Some(Violation { states: alloc::vec![x, y, z], family: None });
                }
            }
        }
    }
    None
}

fn cond2(sl: &MeetSemilattice, r: &Relation) -> Option<Violation> {
    let p = sl.poset();
    for x in 0..sl.len() {
        for y in p.up(x) {
            for w in r.successors(x) {
                if !r.successors(y).intersects(p.up(w)) {
                    return Some(Violation { states: alloc::vec![x, y, w], family: None });
                }
            }
        }
    }
    None
}

fn cond3(sl: &MeetSemilattice, r: &Relation) -> Option<Violation> {
    let n = sl.len();
    for x in 0..n {
        for y in 0..n {
            for z in r.successors(sl.meet(x, y)) {
                let ok = r.successors(x).iter().any(|v| {
                    r.successors(y).iter().any(|w| sl.leq(sl.meet(v, w), z))
                });
                if !ok {
                    return Some(Violation { states: alloc::vec![x, y, z], family: None });
                }
            }
        }
    }
    None
}

fn cond4(sl: &MeetSemilattice, r: &Relation) -> Option<Violation> {
    let n = sl.len();
    for x in 0..n {
        for y in 0..n {
            let m = sl.meet(x, y);
            for v in r.successors(x) {
                for w in r.successors(y) {
                    if !r.contains(m, sl.meet(v, w)) {
                        return Some(Violation { states: alloc::vec![x, y, v, w], family: None });
                    }
                }
            }
        }
    }
    None
}

fn cond5(r: &Relation) -> Option<Violation> {
    (0..r.len())
        .find(|&x| r.successors(x).is_empty())
        .map(|x| Violation { states: alloc::vec![x], family: None })
}

/// Meets reachable by choosing one successor for each member of a family,
/// for every nonempty family; indexed by the family mask.
fn family_successor_meets(sl: &MeetSemilattice, r: &Relation) -> Vec<Subset> {
    let n = sl.len();
    let mut out = alloc::vec![Subset::EMPTY; 1usize << n];
    for mask in 1u64..(1u64 << n) {
        let s = Subset(mask);
        let last = 63 - mask.leading_zeros() as usize;
        let rest = s.without(last);
        out[mask as usize] = if rest.is_empty() {
            r.successors(last)
        } else {
            let mut acc = Subset::EMPTY;
            for m in out[rest.bits() as usize] {
                for y in r.successors(last) {
                    acc = acc.with(sl.meet(m, y));
                }
            }
            acc
        };
    }
    out
}

fn principal_family_conditions(
    sl: &MeetSemilattice,
    r: &Relation,
    binary: (&ConditionResult, &ConditionResult),
) -> (ConditionResult, ConditionResult) {
    let n = sl.len();
    if n > FAMILY_CHECK_LIMIT {
        // Finite families reduce to the binary conditions by induction on size.
        return (binary.0.clone(), binary.1.clone());
    }
    let reach = family_successor_meets(sl, r);
    let mut c3 = None;
    let mut c4 = None;
    for mask in 1u64..(1u64 << n) {
        let s = Subset(mask);
        let m = sl.meet_of(s).expect("nonempty family");
        let reachable = reach[mask as usize];
        if c3.is_none() {
            if let Some(z) = r
                .successors(m)
                .iter()
                .find(|&z| !reachable.iter().any(|v| sl.leq(v, z)))
            {
                c3 = Some(Violation { states: alloc::vec![m, z], family: Some(s) });
            }
        }
        if c4.is_none() {
            if let Some(v) = reachable.difference(r.successors(m)).first() {
                c4 = Some(Violation { states: alloc::vec![m, v], family: Some(s) });
            }
        }
        if c3.is_some() && c4.is_some() {
            break;
        }
    }
    (ConditionResult::from(c3), ConditionResult::from(c4))
}

/// Every pair of elements has a join (least upper bound).
pub fn has_binary_joins(sl: &MeetSemilattice) -> bool {
    let p = sl.poset();
    (0..sl.len()).all(|i| (0..sl.len()).all(|j| p.minimum_of(p.up(i).intersection(p.up(j))).is_some()))
}

/// Every pair with a common upper bound has a join.
fn has_bounded_joins(sl: &MeetSemilattice) -> bool {
    let p = sl.poset();
    (0..sl.len()).all(|i| {
        (0..sl.len()).all(|j| {
            let ub = p.up(i).intersection(p.up(j));
            ub.is_empty() || p.minimum_of(ub).is_some()
        })
    })
}

pub fn modal_frame_check(sl: &MeetSemilattice, r: &Relation) -> ConditionReport {
    assert_eq!(sl.len(), r.len(), "relation must live on the semilattice carrier");
    let conditions = [
        ConditionResult::from(cond1(sl, r)),
        ConditionResult::from(cond2(sl, r)),
        ConditionResult::from(cond3(sl, r)),
        ConditionResult::from(cond4(sl, r)),
        ConditionResult::from(cond5(r)),
    ];
    let c0 = if has_bounded_joins(sl) {
        ConditionResult::ok()
    } else {
        ConditionResult::from(Some(Violation { states: Vec::new(), family: None }))
    };
    let (p3, p4) = principal_family_conditions(sl, r, (&conditions[2], &conditions[3]));
    let principal = [
        c0,
        conditions[0].clone(),
        conditions[1].clone(),
        p3,
        p4,
        conditions[4].clone(),
    ];
    ConditionReport {
        conditions,
        principal,
        binary_joins: has_binary_joins(sl),
    }
}

/// Early-exit test of conditions (1)–(5).
pub fn satisfies_frame_conditions(sl: &MeetSemilattice, r: &Relation) -> bool {
    cond5(r).is_none()
        && cond4(sl, r).is_none()
        && cond1(sl, r).is_none()
        && cond2(sl, r).is_none()
        && cond3(sl, r).is_none()
}

/// A semilattice with a relation; the condition report is computed once
/// at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalLFrame {
    sl: MeetSemilattice,
    r: Relation,
    report: ConditionReport,
}

impl ModalLFrame {
    /// Fails unless conditions (1)–(5) hold.
    pub fn new(sl: MeetSemilattice, r: Relation) -> Result<ModalLFrame, SemanticsError> {
        let f = ModalLFrame::new_unchecked(sl, r);
        if !f.report.is_modal_l_frame() {
            return Err(SemanticsError::FrameConditionViolated(f.report.summary()));
        }
        Ok(f)
    }

    /// Keeps the frame even if conditions fail; evaluation of modal
    /// formulas on such a frame is refused.
    pub fn new_unchecked(sl: MeetSemilattice, r: Relation) -> ModalLFrame {
        let report = modal_frame_check(&sl, &r);
        ModalLFrame { sl, r, report }
    }

    pub fn semilattice(&self) -> &MeetSemilattice {
        &self.sl
    }

    pub fn relation(&self) -> &Relation {
        &self.r
    }

    pub fn report(&self) -> &ConditionReport {
        &self.report
    }

    pub fn len(&self) -> usize {
        self.sl.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sl.is_empty()
    }

    pub fn box_dia(&self, a: Subset) -> (Subset, Subset) {
        self.r.box_dia(a)
    }
}

/// Anything formulas can be evaluated on.
pub trait Frame {
    fn semilattice(&self) -> &MeetSemilattice;
    fn relation(&self) -> Option<&Relation>;
    /// Refuses frames that fail the conditions the valuation class needs.
    fn require(&self, vclass: ValuationClass) -> Result<(), SemanticsError>;
}

impl Frame for MeetSemilattice {
    fn semilattice(&self) -> &MeetSemilattice {
        self
    }

    fn relation(&self) -> Option<&Relation> {
        None
    }

    fn require(&self, _: ValuationClass) -> Result<(), SemanticsError> {
        Ok(())
    }
}

impl Frame for ModalLFrame {
    fn semilattice(&self) -> &MeetSemilattice {
        &self.sl
    }

    fn relation(&self) -> Option<&Relation> {
        Some(&self.r)
    }

    fn require(&self, vclass: ValuationClass) -> Result<(), SemanticsError> {
        let ok = match vclass {
            ValuationClass::AllFilters => self.report.is_modal_l_frame(),
            ValuationClass::PrincipalFilters => self.report.is_principal(),
        };
        if ok {
            Ok(())
        } else {
            Err(SemanticsError::FrameConditionViolated(self.report.summary()))
        }
    }
}

/// `x ⊩ φ∨ψ` iff `x ⊩ φ`, `x ⊩ ψ`, or `y ∧ z ≤ x` for some `y ⊩ φ`, `z ⊩ ψ`.
pub fn eval_or(sl: &MeetSemilattice, a: Subset, b: Subset) -> Subset {
    let mut out = a.union(b);
    for y in a {
        for z in b {
            out = out.union(sl.poset().up(sl.meet(y, z)));
        }
    }
    out
}

/// Truth set of `f` with letters looked up through `val`.
pub fn truth_set<F: Frame + ?Sized>(
    frame: &F,
    val: &dyn Fn(&str) -> Option<Subset>,
    f: &Formula,
) -> Result<Subset, SemanticsError> {
    let sl = frame.semilattice();
    Ok(match f {
        Formula::Prop(p) => val(p).ok_or_else(|| SemanticsError::MissingLetter(p.clone()))?,
        Formula::Top => sl.carrier(),
        Formula::Bot => Subset::EMPTY,
        Formula::And(a, b) => truth_set(frame, val, a)?.intersection(truth_set(frame, val, b)?),
        Formula::Or(a, b) => eval_or(sl, truth_set(frame, val, a)?, truth_set(frame, val, b)?),
        Formula::Box(a) | Formula::Dia(a) => {
            let r = frame.relation().ok_or(SemanticsError::ModalOnPlainFrame)?;
            let (b, d) = r.box_dia(truth_set(frame, val, a)?);
            if matches!(f, Formula::Box(_)) {
                b
            } else {
                d
            }
        }
    })
}

pub type Valuation = BTreeMap<String, Filter>;

/// A frame with a filter valuation.
#[derive(Debug, Clone)]
pub struct Model<F> {
    pub frame: F,
    valuation: Valuation,
}

pub type LModel = Model<MeetSemilattice>;
pub type ModalLModel = Model<ModalLFrame>;

impl<F: Frame> Model<F> {
    /// Fails if some value is not a filter.
    pub fn new(frame: F, valuation: BTreeMap<String, Subset>) -> Result<Model<F>, SemanticsError> {
        let mut v = Valuation::new();
        for (k, s) in valuation {
            let f = frame
                .semilattice()
                .filter(s)
                .ok_or_else(|| SemanticsError::InvalidValuation(k.clone()))?;
            v.insert(k, f);
        }
        Ok(Model { frame, valuation: v })
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn value(&self, letter: &str) -> Option<Subset> {
        self.valuation.get(letter).map(|f| f.members())
    }
}

/// `⟦f⟧` in a model; modal formulas need a frame passing (1)–(5).
pub fn eval_model<F: Frame>(m: &Model<F>, f: &Formula) -> Result<Subset, SemanticsError> {
    if !f.is_positive() {
        m.frame.relation().ok_or(SemanticsError::ModalOnPlainFrame)?;
        m.frame.require(ValuationClass::AllFilters)?;
    }
    truth_set(&m.frame, &|p| m.value(p), f)
}

/// A bounded lattice with `□` and `◇` tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalLattice {
    pub lat: BoundedLattice,
    pub boxt: Vec<usize>,
    pub diat: Vec<usize>,
}

impl ModalLattice {
    pub fn new(lat: BoundedLattice, boxt: Vec<usize>, diat: Vec<usize>) -> Result<ModalLattice, SemanticsError> {
        let m = ModalLattice::new_unchecked(lat, boxt, diat);
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(lat: BoundedLattice, boxt: Vec<usize>, diat: Vec<usize>) -> ModalLattice {
        ModalLattice { lat, boxt, diat }
    }

    #[inline]
    pub fn boxed(&self, a: usize) -> usize {
        self.boxt[a]
    }

    #[inline]
    pub fn dia(&self, a: usize) -> usize {
        self.diat[a]
    }

    /// Checks the modal lattice axioms, naming the first failure.
    pub fn check(&self) -> Result<(), SemanticsError> {
        let l = &self.lat;
        let n = l.len();
        let fail = |s: String| Err(SemanticsError::ModalAxiom(s));
        if self.boxt.len() != n || self.diat.len() != n || self.boxt.iter().chain(&self.diat).any(|&v| v >= n) {
            return fail("operator tables do not match the carrier".into());
        }
        let (top, bot) = (l.top(), l.bottom());
        if self.boxed(top) != top {
            return fail("box top = top".into());
        }
        if self.dia(top) != top {
            return fail("dia top = top".into());
        }
        if self.dia(bot) != bot {
            return fail("dia bot = bot".into());
        }
        for a in 0..n {
            for b in 0..n {
                let (la, lb) = (l.label(a), l.label(b));
                if self.boxed(l.meet(a, b)) != l.meet(self.boxed(a), self.boxed(b)) {
                    return fail(format!("box({la} & {lb}) = box {la} & box {lb}"));
                }
                if !l.leq(self.dia(a), self.dia(l.join(a, b))) {
                    return fail(format!("dia {la} <= dia({la} | {lb})"));
                }
                if !l.leq(l.meet(self.dia(a), self.boxed(b)), self.dia(l.meet(a, b))) {
                    return fail(format!("dia {la} & box {lb} <= dia({la} & {lb})"));
                }
            }
        }
        Ok(())
    }
}

fn eval_lattice_inner(
    lat: &BoundedLattice,
    ops: Option<&ModalLattice>,
    sigma: &dyn Fn(&str) -> Option<usize>,
    f: &Formula,
) -> Result<usize, SemanticsError> {
    let go = |g: &Formula| eval_lattice_inner(lat, ops, sigma, g);
    Ok(match f {
        Formula::Prop(p) => sigma(p).ok_or_else(|| SemanticsError::MissingLetter(p.clone()))?,
        Formula::Top => lat.top(),
        Formula::Bot => lat.bottom(),
        Formula::And(a, b) => lat.meet(go(a)?, go(b)?),
        Formula::Or(a, b) => lat.join(go(a)?, go(b)?),
        Formula::Box(a) => ops.ok_or(SemanticsError::ModalOnPlainLattice)?.boxed(go(a)?),
        Formula::Dia(a) => ops.ok_or(SemanticsError::ModalOnPlainLattice)?.dia(go(a)?),
    })
}

/// Homomorphic evaluation in a plain lattice.
pub fn eval_in_lattice(
    lat: &BoundedLattice,
    sigma: &dyn Fn(&str) -> Option<usize>,
    f: &Formula,
) -> Result<usize, SemanticsError> {
    eval_lattice_inner(lat, None, sigma, f)
}

pub fn eval_in_modal_lattice(
    m: &ModalLattice,
    sigma: &dyn Fn(&str) -> Option<usize>,
    f: &Formula,
) -> Result<usize, SemanticsError> {
    eval_lattice_inner(&m.lat, Some(m), sigma, f)
}

/// Which filters valuations may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValuationClass {
    AllFilters,
    /// `∅` and the `↑x`.
    PrincipalFilters,
}

impl ValuationClass {
    pub fn filters(self, sl: &MeetSemilattice) -> Vec<Filter> {
        match self {
            ValuationClass::AllFilters => sl.all_filters(),
            ValuationClass::PrincipalFilters => sl.principal_filters(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub valuation: Valuation,
    /// A state in `⟦lhs⟧` but not in `⟦rhs⟧`.
    pub state: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub witness: Option<Witness>,
}

/// Checks `⟦lhs⟧ ⊆ ⟦rhs⟧` under every valuation of the pair's letters.
///
/// Valuations are visited lexicographically, letters sorted by name with the
/// first letter most significant, filters in mask order; the first failure
/// is reported at its least state.
pub fn frame_validity<F: Frame + ?Sized>(
    frame: &F,
    pair: &ConsequencePair,
    vclass: ValuationClass,
    budget: u64,
) -> Result<Verdict, SemanticsError> {
    if !pair.is_positive() {
        frame.relation().ok_or(SemanticsError::ModalOnPlainFrame)?;
        frame.require(vclass)?;
    }
    let sl = frame.semilattice();
    let letters: Vec<String> = pair.letters().into_iter().collect();
    let filters = vclass.filters(sl);
    let required = (filters.len() as u128)
        .checked_pow(letters.len() as u32)
        .and_then(|v| v.checked_mul(sl.len().max(1) as u128))
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(SemanticsError::Infeasible { required, budget });
    }
    let k = letters.len();
    let mut choice = alloc::vec![0usize; k];
    loop {
        let lookup = |p: &str| {
            letters
                .iter()
                .position(|l| l == p)
                .map(|i| filters[choice[i]].members())
        };
        let l = truth_set(frame, &lookup, &pair.lhs)?;
        let r = truth_set(frame, &lookup, &pair.rhs)?;
        if let Some(state) = l.difference(r).first() {
            let valuation = letters
                .iter()
                .zip(&choice)
                .map(|(name, &c)| (name.clone(), filters[c]))
                .collect();
            return Ok(Verdict {
                valid: false,
                witness: Some(Witness { valuation, state }),
            });
        }
        // Odometer with the last letter fastest.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(Verdict { valid: true, witness: None });
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < filters.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Re-evaluates a witness: `state ∈ ⟦lhs⟧ \ ⟦rhs⟧`.
pub fn witness_holds<F: Frame + ?Sized>(frame: &F, pair: &ConsequencePair, w: &Witness) -> Result<bool, SemanticsError> {
    let lookup = |p: &str| w.valuation.get(p).map(|f| f.members());
    let l = truth_set(frame, &lookup, &pair.lhs)?;
    let r = truth_set(frame, &lookup, &pair.rhs)?;
    Ok(l.contains(w.state) && !r.contains(w.state))
}

/// L-morphism of the underlying semilattices that also satisfies forth
/// (`xRy ⇒ f(x)R'f(y)`) and the two back conditions
/// (`f(x)R'z' ⇒ ∃z. xRz ∧ f(z) ≤ z'` and `f(x)R'z' ⇒ ∃w. xRw ∧ z' ≤ f(w)`).
pub fn is_bounded_l_morphism(f: &[usize], a: &ModalLFrame, b: &ModalLFrame) -> Result<bool, SemanticsError> {
    if !is_l_morphism(f, &a.sl, &b.sl)? {
        return Ok(false);
    }
    let (ra, rb) = (&a.r, &b.r);
    for x in 0..a.len() {
        if ra.successors(x).iter().any(|y| !rb.contains(f[x], f[y])) {
            return Ok(false);
        }
        for zp in rb.successors(f[x]) {
            let below = ra.successors(x).iter().any(|z| b.sl.leq(f[z], zp));
            let above = ra.successors(x).iter().any(|w| b.sl.leq(zp, f[w]));
            if !below || !above {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Renders a valuation as `p={a,1}, q={b,1}`.
pub fn render_valuation(sl: &MeetSemilattice, v: &Valuation) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|(k, f)| format!("{k}={}", sl.poset().subset_label(f.members())))
        .collect();
    parts.join(", ")
}

#[cfg(test)]
fn label_state(sl: &MeetSemilattice, s: usize) -> String {
    String::from(sl.poset().label(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::fixtures::*;
    use crate::syntax::{parse_formula, parse_pair};
    use alloc::string::ToString;
    use alloc::vec;

    fn sl(p: crate::order::Poset) -> MeetSemilattice {
        MeetSemilattice::new(p).unwrap()
    }

    fn c2_frame() -> ModalLFrame {
        ModalLFrame::new(sl(chain(2)), Relation::from_pairs(2, &[(0, 1), (1, 1)])).unwrap()
    }

    fn model<F: Frame>(frame: F, v: &[(&str, &[usize])]) -> Model<F> {
        Model::new(frame, v.iter().map(|(k, s)| (k.to_string(), set(s))).collect()).unwrap()
    }

    #[test]
    fn disjunction_clause_on_vee() {
        let m = model(sl(vee()), &[("p", &[1]), ("q", &[2])]);
        assert_eq!(eval_model(&m, &parse_formula("p | q").unwrap()).unwrap(), set(&[0, 1, 2]));
        assert_eq!(eval_model(&m, &Formula::Top).unwrap(), set(&[0, 1, 2]));
        assert_eq!(eval_model(&m, &Formula::Bot).unwrap(), Subset::EMPTY);
        assert_eq!(
            eval_model(&m, &parse_formula("r").unwrap()),
            Err(SemanticsError::MissingLetter("r".into()))
        );
        assert_eq!(
            eval_model(&m, &parse_formula("box p").unwrap()),
            Err(SemanticsError::ModalOnPlainFrame)
        );
    }

    #[test]
    fn modal_clauses() {
        let m = model(c2_frame(), &[("p", &[1])]);
        assert_eq!(eval_model(&m, &parse_formula("box p").unwrap()).unwrap(), set(&[0, 1]));
        assert_eq!(eval_model(&m, &parse_formula("dia p").unwrap()).unwrap(), set(&[0, 1]));
        let bad = ModalLFrame::new_unchecked(sl(chain(2)), Relation::from_pairs(2, &[(1, 0)]));
        let m = model(bad, &[("p", &[1])]);
        assert!(matches!(
            eval_model(&m, &parse_formula("dia p").unwrap()),
            Err(SemanticsError::FrameConditionViolated(_))
        ));
    }

    #[test]
    fn invalid_valuation_rejected() {
        let r = Model::new(sl(vee()), [("p".to_string(), set(&[1, 2]))].into_iter().collect());
        assert_eq!(r.err(), Some(SemanticsError::InvalidValuation("p".into())));
    }

    #[test]
    fn lattice_evaluation() {
        let two = BoundedLattice::new(chain(2)).unwrap();
        let sigma = |p: &str| (p == "p").then_some(1);
        assert_eq!(eval_in_lattice(&two, &sigma, &parse_formula("p & bot").unwrap()).unwrap(), 0);
        assert_eq!(
            eval_in_lattice(&two, &sigma, &parse_formula("dia p").unwrap()),
            Err(SemanticsError::ModalOnPlainLattice)
        );

        let ca = sl(m3()).complex_algebra();
        let idx = |s: &[usize]| ca.index_of(set(s)).unwrap();
        let (ua, ub, uc) = (idx(&[1, 4]), idx(&[2, 4]), idx(&[3, 4]));
        let sigma = |p: &str| match p {
            "p" => Some(ua),
            "q" => Some(ub),
            "q2" => Some(uc),
            _ => None,
        };
        let l = eval_in_lattice(&ca.lattice, &sigma, &parse_formula("p & (q|q2)").unwrap()).unwrap();
        let r = eval_in_lattice(&ca.lattice, &sigma, &parse_formula("(p&q)|(p&q2)").unwrap()).unwrap();
        assert_eq!((l, ca.filter(r).members()), (ua, set(&[4])));

        let m = ModalLattice::new(two.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(eval_in_modal_lattice(&m, &|_| Some(1), &parse_formula("dia p").unwrap()).unwrap(), 1);
        assert!(ModalLattice::new(two, vec![0, 1], vec![1, 1]).is_err());
    }

    #[test]
    fn validity_examples() {
        let pair = parse_pair("p & (q|q2) <= (p&q)|(p&q2)").unwrap();
        let m3 = sl(m3());
        let v = frame_validity(&m3, &pair, ValuationClass::AllFilters, DEFAULT_BUDGET).unwrap();
        assert!(!v.valid);
        let w = v.witness.unwrap();
        assert_eq!(render_valuation(&m3, &w.valuation), "p={a,1}, q={b,1}, q2={c,1}");
        assert_eq!(label_state(&m3, w.state), "a");
        assert!(witness_holds(&m3, &pair, &w).unwrap());

        let c3 = sl(chain(3));
        assert!(frame_validity(&c3, &pair, ValuationClass::AllFilters, DEFAULT_BUDGET).unwrap().valid);

        let ax = parse_pair("p <= p | q").unwrap();
        for p in all() {
            assert!(frame_validity(&sl(p), &ax, ValuationClass::AllFilters, DEFAULT_BUDGET).unwrap().valid);
        }
        assert!(matches!(
            frame_validity(&m3, &pair, ValuationClass::AllFilters, 10),
            Err(SemanticsError::Infeasible { .. })
        ));
    }

    #[test]
    fn frame_check_examples() {
        for p in all() {
            let s = sl(p);
            let rep = modal_frame_check(&s, &Relation::identity(s.len()));
            assert!(rep.is_modal_l_frame());
        }
        assert!(modal_frame_check(&sl(chain(2)), &Relation::from_pairs(2, &[(0, 1), (1, 1)])).is_modal_l_frame());

        let rep = modal_frame_check(&sl(chain(2)), &Relation::from_pairs(2, &[(1, 0)]));
        assert_eq!(rep.failed(), vec![1, 5]);
        assert_eq!(rep.conditions[4].counterexample.as_ref().unwrap().states, vec![0]);
        assert_eq!(rep.conditions[0].counterexample.as_ref().unwrap().states, vec![0, 1, 0]);
        assert!(rep.conditions[1].holds);
    }

    #[test]
    fn principal_conditions_on_lattice_duals() {
        // The claw 0 < a, b, c has no join for a, b but all bounded joins.
        let claw = crate::order::Poset::from_pairs(&["0", "a", "b", "c"], &[("0", "a"), ("0", "b"), ("0", "c")]).unwrap();
        let rep = modal_frame_check(&sl(claw), &Relation::identity(4));
        assert!(rep.is_principal());
        assert!(!rep.binary_joins);
    }

    #[test]
    fn box_dia_examples() {
        let id = Relation::identity(3);
        assert_eq!(id.box_dia(set(&[1, 2])), (set(&[1, 2]), set(&[1, 2])));
        let f = c2_frame();
        assert_eq!(f.box_dia(set(&[1])), (set(&[0, 1]), set(&[0, 1])));
        assert_eq!(f.box_dia(Subset::EMPTY), (Subset::EMPTY, Subset::EMPTY));
    }

    #[test]
    fn relation_mask_round_trip() {
        let r = Relation::from_pairs(3, &[(0, 1), (2, 2), (1, 0)]);
        assert_eq!(Relation::from_mask(3, r.to_mask()), r);
        assert_eq!(r.pairs(), vec![(0, 1), (1, 0), (2, 2)]);
    }

    #[test]
    fn bounded_morphism_examples() {
        let f = c2_frame();
        assert!(is_bounded_l_morphism(&[0, 1], &f, &f).unwrap());
        let point = ModalLFrame::new(sl(singleton()), Relation::identity(1)).unwrap();
        assert!(is_bounded_l_morphism(&[0, 0], &f, &point).unwrap());
        // {1} as a subframe of the 2-chain
        assert!(is_bounded_l_morphism(&[1], &point, &f).unwrap());
        assert!(is_bounded_l_morphism(&[0], &point, &f).is_ok());
        assert!(!is_bounded_l_morphism(&[0], &point, &f).unwrap());
    }
}
