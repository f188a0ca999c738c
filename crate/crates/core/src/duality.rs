//! Dual frames of finite (modal) lattices, the unit maps `θ` and `η`,
//! and the filter and double-filter completions.
//!
//! On a finite carrier every filter is principal and the discrete topology
//! makes every filter clopen, so the open, closed, saturated and clopen
//! filter families all coincide with [`MeetSemilattice::all_filters`]. The
//! canonical extension is therefore the same lattice as
//! [`f2_completion`], and the closed-filter completion is the same as
//! [`filter_completion`]; neither is built separately.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::order::{BoundedLattice, ComplexAlgebra, Filter, MeetSemilattice, Poset};
use crate::semantics::{Frame, ModalLFrame, ModalLattice, Relation, SemanticsError, ValuationClass};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// The dual frame of a finite lattice `A`: its nonempty proper filters
/// ordered by inclusion, with `θ(a) = {p : a ∈ p}`.
#[derive(Debug, Clone)]
pub struct DualityResult {
    pub dual: MeetSemilattice,
    /// `points[i]` is dual point `i`, as a filter of `A`; ascending by mask.
    pub points: Vec<Subset>,
    /// `theta[a]` is `θ(a)`, a filter of the dual.
    pub theta: Vec<Subset>,
    pub modal: Option<Relation>,
}

impl DualityResult {
    pub fn point_of(&self, filter: Subset) -> Option<usize> {
        self.points.binary_search(&filter).ok()
    }
}

pub fn dual_frame(a: &BoundedLattice) -> DualityResult {
    let full = a.semilattice().carrier();
    let points: Vec<Subset> = a
        .semilattice()
        .all_filters()
        .into_iter()
        .map(|f| f.members())
        .filter(|&s| !s.is_empty() && s != full)
        .collect();
    let labels: Vec<String> = points
        .iter()
        .map(|&s| match a.poset().minimum_of(s) {
            Some(g) => format!("^{}", a.label(g)),
            None => a.poset().subset_label(s),
        })
        .collect();
    let poset = Poset::from_relation(labels, |i, j| points[i].is_subset(points[j])).expect("inclusion order");
    let dual = MeetSemilattice::new(poset).expect("nonempty proper filters are closed under intersection");
    let theta = (0..a.len())
        .map(|x| (0..points.len()).filter(|&i| points[i].contains(x)).collect())
        .collect();
    DualityResult {
        dual,
        points,
        theta,
        modal: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoFailure {
    /// Source element whose image is not in the target.
    NotInTarget(usize),
    Collision(usize, usize),
    /// Target element with no preimage.
    Missed(usize),
    NotHomomorphic { op: &'static str, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub is_iso: bool,
    pub map: Vec<usize>,
    pub failure: Option<IsoFailure>,
}

impl IsoReport {
    fn fail(map: Vec<usize>, failure: IsoFailure) -> IsoReport {
        IsoReport {
            is_iso: false,
            map,
            failure: Some(failure),
        }
    }
}

fn bijection_failure(map: &[usize], target_len: usize) -> Option<IsoFailure> {
    let mut pre = alloc::vec![usize::MAX; target_len];
    for (x, &y) in map.iter().enumerate() {
        if pre[y] != usize::MAX {
            return Some(IsoFailure::Collision(pre[y], x));
        }
        pre[y] = x;
    }
    pre.iter().position(|&x| x == usize::MAX).map(IsoFailure::Missed)
}

/// Whether `map : src → dst` is a bijective bounded-lattice homomorphism.
pub fn lattice_iso(map: Vec<usize>, src: &BoundedLattice, dst: &BoundedLattice) -> IsoReport {
    if let Some(f) = bijection_failure(&map, dst.len()) {
        return IsoReport::fail(map, f);
    }
    let n = src.len();
    for x in 0..n {
        for y in 0..n {
            if map[src.meet(x, y)] != dst.meet(map[x], map[y]) {
                return IsoReport::fail(map, IsoFailure::NotHomomorphic { op: "meet", left: x, right: y });
            }
            if map[src.join(x, y)] != dst.join(map[x], map[y]) {
                return IsoReport::fail(map, IsoFailure::NotHomomorphic { op: "join", left: x, right: y });
            }
        }
    }
    let (t, b) = (src.top(), src.bottom());
    if map[t] != dst.top() {
        return IsoReport::fail(map, IsoFailure::NotHomomorphic { op: "top", left: t, right: t });
    }
    if map[b] != dst.bottom() {
        return IsoReport::fail(map, IsoFailure::NotHomomorphic { op: "bottom", left: b, right: b });
    }
    IsoReport {
        is_iso: true,
        map,
        failure: None,
    }
}

/// Whether `map : src → dst` is a bijection preserving and reflecting the
/// order and preserving meets.
pub fn semilattice_iso(map: Vec<usize>, src: &MeetSemilattice, dst: &MeetSemilattice) -> IsoReport {
    if let Some(f) = bijection_failure(&map, dst.len()) {
        return IsoReport::fail(map, f);
    }
    let n = src.len();
    for x in 0..n {
        for y in 0..n {
            if src.leq(x, y) != dst.leq(map[x], map[y]) {
                return IsoReport::fail(map, IsoFailure::NotHomomorphic { op: "order", left: x, right: y });
            }
            if map[src.meet(x, y)] != dst.meet(map[x], map[y]) {
                return IsoReport::fail(map, IsoFailure::NotHomomorphic { op: "meet", left: x, right: y });
            }
        }
    }
    IsoReport {
        is_iso: true,
        map,
        failure: None,
    }
}

/// `θ : A → 𝔽(dual A)` is a bounded-lattice isomorphism; joins go to `⋎`.
pub fn double_dual_check(a: &BoundedLattice) -> IsoReport {
    let d = dual_frame(a);
    let ca = d.dual.complex_algebra();
    let mut map = Vec::with_capacity(a.len());
    for (x, &t) in d.theta.iter().enumerate() {
        match ca.index_of(t) {
            Some(k) => map.push(k),
            None => return IsoReport::fail(map, IsoFailure::NotInTarget(x)),
        }
    }
    // The complex algebra's join is ⋎, so this checks θ(a∨b) = θ(a) ⋎ θ(b).
    lattice_iso(map, a, &ca.lattice)
}

/// `η : X → nonempty proper filters of 𝔽X`, `η(x) = {a : x ∈ a}`, is an
/// order and meet isomorphism.
pub fn frame_double_dual_check(sl: &MeetSemilattice) -> IsoReport {
    let ca = sl.complex_algebra();
    let d = dual_frame(&ca.lattice);
    let mut map = Vec::with_capacity(sl.len());
    for x in 0..sl.len() {
        let eta: Subset = (0..ca.filters.len()).filter(|&k| ca.filters[k].contains(x)).collect();
        match d.point_of(eta) {
            Some(i) => map.push(i),
            None => return IsoReport::fail(map, IsoFailure::NotInTarget(x)),
        }
    }
    semilattice_iso(map, sl, &d.dual)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionKind {
    FilterCompletion,
    F2Completion,
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub lattice: BoundedLattice,
    pub embed: Vec<usize>,
    pub kind: CompletionKind,
}

impl Completion {
    /// Checks that the embedding is onto, i.e. an isomorphism.
    pub fn iso_report(&self, a: &BoundedLattice) -> IsoReport {
        lattice_iso(self.embed.clone(), a, &self.lattice)
    }
}

/// Nonempty filters under reverse inclusion, meet `⋎`, join `∩`, with
/// `x ↦ ↑x`.
pub fn filter_completion(a: &BoundedLattice) -> Completion {
    let sl = a.semilattice();
    let fs: Vec<Filter> = sl.all_filters().into_iter().filter(|f| !f.is_empty()).collect();
    let masks: Vec<Subset> = fs.iter().map(|f| f.members()).collect();
    let index = |s: Subset| masks.binary_search(&s).expect("closed under ⋎ and ∩");
    let labels: Vec<String> = masks.iter().map(|&s| a.poset().subset_label(s)).collect();
    let poset = Poset::from_relation(labels, |i, j| masks[j].is_subset(masks[i])).expect("reverse inclusion");
    let lattice = BoundedLattice::from_tables(
        poset,
        |i, j| index(sl.join_pair(fs[i], fs[j]).members()),
        |i, j| index(masks[i].intersection(masks[j])),
    )
    .expect("nonempty filters form a lattice under ⋎ and ∩");
    let embed = (0..a.len()).map(|x| index(a.poset().up(x))).collect();
    Completion {
        lattice,
        embed,
        kind: CompletionKind::FilterCompletion,
    }
}

/// Filters of the dual frame, with `θ` as embedding.
pub fn f2_completion(a: &BoundedLattice) -> Completion {
    let d = dual_frame(a);
    let ca = d.dual.complex_algebra();
    let embed = d
        .theta
        .iter()
        .map(|&t| ca.index_of(t).expect("θ(a) is a filter of the dual"))
        .collect();
    Completion {
        lattice: ca.lattice,
        embed,
        kind: CompletionKind::F2Completion,
    }
}

/// The lattice of (principal) filters of a modal frame with `[R]`, `⟨R⟩`.
#[derive(Debug, Clone)]
pub struct ModalComplexAlgebra {
    pub algebra: ModalLattice,
    /// `filters[k]` is element `k`.
    pub filters: Vec<Filter>,
}

impl ModalComplexAlgebra {
    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.filters.binary_search_by(|f| f.members().cmp(&s)).ok()
    }
}

pub fn modal_complex_algebra(f: &ModalLFrame, vclass: ValuationClass) -> Result<ModalComplexAlgebra, DualityError> {
    f.require(vclass)?;
    let sl = f.semilattice();
    let ComplexAlgebra { lattice, filters } = match vclass {
        ValuationClass::AllFilters => sl.complex_algebra(),
        ValuationClass::PrincipalFilters => sl.principal_complex_algebra(),
    };
    let index = |s: Subset| {
        filters
            .binary_search_by(|g| g.members().cmp(&s))
            .map_err(|_| DualityError::InvariantViolation(format!("{} is not in the filter family", sl.poset().subset_label(s))))
    };
    let mut boxt = Vec::with_capacity(filters.len());
    let mut diat = Vec::with_capacity(filters.len());
    for g in &filters {
        let (b, d) = f.box_dia(g.members());
        boxt.push(index(b)?);
        diat.push(index(d)?);
    }
    let algebra = ModalLattice::new(lattice, boxt, diat)?;
    Ok(ModalComplexAlgebra { algebra, filters })
}

/// `p R_A q` iff `□⁻¹(p) ⊆ q ⊆ ◇⁻¹(p)`.
pub fn dual_relation(m: &ModalLattice, points: &[Subset]) -> Relation {
    let preimage = |table: &[usize], p: Subset| -> Subset { (0..table.len()).filter(|&a| p.contains(table[a])).collect() };
    let succ = points
        .iter()
        .map(|&p| {
            let lo = preimage(&m.boxt, p);
            let hi = preimage(&m.diat, p);
            (0..points.len())
                .filter(|&j| lo.is_subset(points[j]) && points[j].is_subset(hi))
                .collect()
        })
        .collect();
    Relation::from_successors(succ)
}

/// Dual frame of a modal lattice with `R_A`; verifies the frame conditions,
/// the principal conditions and `[R_A]θ(a) = θ(□a)`, `⟨R_A⟩θ(a) = θ(◇a)`.
pub fn modal_dual(m: &ModalLattice) -> Result<(ModalLFrame, DualityResult), DualityError> {
    m.check().map_err(|e| DualityError::InvariantViolation(format!("{e}")))?;
    let mut d = dual_frame(&m.lat);
    let r = dual_relation(m, &d.points);
    let frame = ModalLFrame::new_unchecked(d.dual.clone(), r.clone());
    let rep = frame.report();
    if !rep.is_modal_l_frame() || !rep.is_principal() {
        return Err(DualityError::InvariantViolation(format!(
            "dual relation fails frame conditions {:?}",
            rep.failed()
        )));
    }
    for a in 0..m.lat.len() {
        let (b, dia) = r.box_dia(d.theta[a]);
        if b != d.theta[m.boxed(a)] {
            return Err(DualityError::InvariantViolation(format!("[R]θ({0}) = θ(box {0})", m.lat.label(a))));
        }
        if dia != d.theta[m.dia(a)] {
            return Err(DualityError::InvariantViolation(format!("<R>θ({0}) = θ(dia {0})", m.lat.label(a))));
        }
    }
    d.modal = Some(r);
    Ok((frame, d))
}

/// Outcome of taking a modal frame to its complex algebra and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    /// `eta[x]` is the dual point `η(x)`.
    pub eta: Vec<usize>,
    pub order: IsoReport,
    /// First `(x, y)` where `xRy` and `η(x) R_A η(y)` disagree.
    pub relation_mismatch: Option<(usize, usize)>,
}

impl RoundTrip {
    pub fn recovers(&self) -> bool {
        self.order.is_iso && self.relation_mismatch.is_none()
    }
}

pub fn modal_round_trip(f: &ModalLFrame) -> Result<RoundTrip, DualityError> {
    let mca = modal_complex_algebra(f, ValuationClass::AllFilters)?;
    let (g, d) = modal_dual(&mca.algebra)?;
    let sl = f.semilattice();
    let mut eta = Vec::with_capacity(sl.len());
    for x in 0..sl.len() {
        let e: Subset = (0..mca.filters.len()).filter(|&k| mca.filters[k].contains(x)).collect();
        eta.push(d.point_of(e).ok_or_else(|| DualityError::InvariantViolation(format!("η({}) is not a dual point", sl.poset().label(x))))?);
    }
    let order = semilattice_iso(eta.clone(), sl, g.semilattice());
    let mut relation_mismatch = None;
    'outer: for x in 0..sl.len() {
        for y in 0..sl.len() {
            if f.relation().contains(x, y) != g.relation().contains(eta[x], eta[y]) {
                relation_mismatch = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(RoundTrip {
        eta,
        order,
        relation_mismatch,
    })
}

/// `x R' y` iff `⋀R[x] ≤ y` and `y ≤ z` for some `z ∈ R[x]`: the relation a
/// frame gets back from the dual of its complex algebra.
pub fn tight_closure(f: &ModalLFrame) -> Relation {
    let sl = f.semilattice();
    let p = sl.poset();
    let succ = (0..sl.len())
        .map(|x| {
            let rx = f.relation().successors(x);
            match sl.meet_of(rx) {
                Some(m) => p.up(m).intersection(p.down_closure(rx)),
                None => Subset::EMPTY,
            }
        })
        .collect();
    Relation::from_successors(succ)
}

/// Every successor set equals its tight closure.
pub fn is_tight(f: &ModalLFrame) -> bool {
    &tight_closure(f) == f.relation()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::fixtures::*;
    use alloc::vec;

    fn lat(p: Poset) -> BoundedLattice {
        BoundedLattice::new(p).unwrap()
    }

    #[test]
    fn dual_frame_examples() {
        let two = lat(chain(2));
        let d = dual_frame(&two);
        assert_eq!(d.dual.len(), 1);
        assert_eq!(d.theta, vec![Subset::EMPTY, set(&[0])]);

        let d = dual_frame(&lat(chain(3)));
        assert_eq!(d.points, vec![set(&[2]), set(&[1, 2])]);
        assert!(d.dual.leq(0, 1) && !d.dual.leq(1, 0));

        let m3 = lat(m3());
        let d = dual_frame(&m3);
        assert_eq!(d.dual.len(), 4);
        let one = d.point_of(set(&[4])).unwrap();
        // ↑1 = {1} sits below the other three points under inclusion
        for i in 0..4 {
            assert!(d.dual.leq(one, i));
        }
        assert_eq!(d.dual.poset().label(one), "^1");
        assert_eq!(d.theta[m3.top()], Subset::full(4));
        assert_eq!(d.theta[m3.bottom()], Subset::EMPTY);
    }

    #[test]
    fn double_dual_examples() {
        for p in [chain(2), chain(3), m3(), n5()] {
            let r = double_dual_check(&lat(p));
            assert!(r.is_iso, "{r:?}");
        }
    }

    #[test]
    fn frame_double_dual_examples() {
        for p in [singleton(), vee(), chain(3), m3()] {
            let r = frame_double_dual_check(&MeetSemilattice::new(p).unwrap());
            assert!(r.is_iso, "{r:?}");
        }
    }

    #[test]
    fn completions_coincide_with_the_lattice() {
        for p in [chain(2), chain(3), m3(), n5()] {
            let a = lat(p);
            for c in [filter_completion(&a), f2_completion(&a)] {
                assert!(c.iso_report(&a).is_iso);
                assert_eq!(c.lattice.props(), a.props());
            }
        }
    }

    #[test]
    fn iso_failures_are_named() {
        let c3 = lat(chain(3));
        let r = lattice_iso(vec![0, 0, 2], &c3, &c3);
        assert_eq!(r.failure, Some(IsoFailure::Collision(0, 1)));
        let r = lattice_iso(vec![0, 2, 1], &c3, &c3);
        assert!(matches!(r.failure, Some(IsoFailure::NotHomomorphic { .. })));
    }

    #[test]
    fn modal_dual_examples() {
        let two = lat(chain(2));
        let m = ModalLattice::new(two.clone(), vec![0, 1], vec![0, 1]).unwrap();
        let (f, _) = modal_dual(&m).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.relation().contains(0, 0));

        let bad = ModalLattice::new_unchecked(two, vec![0, 1], vec![1, 1]);
        assert!(matches!(modal_dual(&bad), Err(DualityError::InvariantViolation(_))));

        let f = ModalLFrame::new(MeetSemilattice::new(chain(2)).unwrap(), Relation::from_pairs(2, &[(0, 1), (1, 1)])).unwrap();
        let rt = modal_round_trip(&f).unwrap();
        assert!(rt.recovers(), "{rt:?}");
    }

    #[test]
    fn modal_complex_algebra_examples() {
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        let f = ModalLFrame::new(c3, Relation::identity(3)).unwrap();
        let m = modal_complex_algebra(&f, ValuationClass::AllFilters).unwrap();
        assert_eq!(m.algebra.lat.len(), 4);
        assert_eq!(m.algebra.boxt, vec![0, 1, 2, 3]);
        assert_eq!(m.algebra.diat, vec![0, 1, 2, 3]);

        let point = ModalLFrame::new(MeetSemilattice::new(singleton()).unwrap(), Relation::identity(1)).unwrap();
        let m = modal_complex_algebra(&point, ValuationClass::PrincipalFilters).unwrap();
        assert_eq!((m.algebra.boxt.clone(), m.algebra.diat.clone()), (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn loose_successor_sets_come_back_tightened() {
        // 0 < 1 < 2 with R[x] = {0, 2}: the dual adds 0 R 1.
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        let r = Relation::from_successors(vec![set(&[0, 2]); 3]);
        let f = ModalLFrame::new(c3.clone(), r).unwrap();
        assert!(!is_tight(&f));
        let rt = modal_round_trip(&f).unwrap();
        assert!(rt.order.is_iso);
        assert_eq!(rt.relation_mismatch, Some((0, 1)));
        let tight = ModalLFrame::new(c3, tight_closure(&f)).unwrap();
        assert!(modal_round_trip(&tight).unwrap().recovers());
    }
}
