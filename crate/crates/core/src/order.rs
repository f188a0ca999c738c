//! Finite posets, meet-semilattices, bounded lattices and their filters.
//!
//! Elements are dense indices `0..n`; labels are kept only for I/O and
//! error messages. Every structure is immutable once built.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::subset::{Subset, MAX_CARRIER};

/// Carriers at or below this size get their filters by testing every subset.
pub const BRUTE_FORCE_FILTER_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    AntisymmetryViolation(String, String),
    #[error("`{left}` and `{right}` have no meet ({reason})")]
    NoMeet {
        left: String,
        right: String,
        reason: BoundFailure,
    },
    #[error("`{left}` and `{right}` have no join ({reason})")]
    NoJoin {
        left: String,
        right: String,
        reason: BoundFailure,
    },
    #[error("poset has no top element")]
    NoTop,
    #[error("poset has no bottom element")]
    NoBottom,
    #[error("map is not total on the source carrier")]
    NotTotal,
    #[error("carrier of {0} elements exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("operation table is inconsistent with the order: {0}")]
    InvalidTable(String),
}

/// Why a pair of elements lacks a meet (or, dually, a join).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFailure {
    NoBound,
    IncomparableExtremalBounds,
}

impl fmt::Display for BoundFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFailure::NoBound => f.write_str("no common bound"),
            BoundFailure::IncomparableExtremalBounds => {
                f.write_str("incomparable extremal common bounds")
            }
        }
    }
}

/// A finite partial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<Subset>,
    down: Vec<Subset>,
}

impl Poset {
    /// Reflexive-transitive closure of `pairs` over `labels`.
    pub fn from_pairs<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Poset, OrderError> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        let find = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| OrderError::UnknownLabel(s.to_string()))
        };
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx.push((find(a.as_ref())?, find(b.as_ref())?));
        }
        Poset::from_index_pairs(labels, &idx)
    }

    /// Same as [`Poset::from_pairs`] with pairs given as indices.
    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, OrderError> {
        let n = labels.len();
        if n > MAX_CARRIER {
            return Err(OrderError::TooLarge(n));
        }
        let mut up: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(OrderError::UnknownLabel(format!("#{}", a.max(b))));
            }
            up[a] = up[a].with(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i].union(up[k]);
                }
            }
        }
        Poset::from_up_sets(labels, up)
    }

    /// Builds a poset from `leq(i, j)`; the relation must already be a partial order.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset, OrderError> {
        let n = labels.len();
        if n > MAX_CARRIER {
            return Err(OrderError::TooLarge(n));
        }
        let up: Vec<Subset> = (0..n)
            .map(|i| (0..n).filter(|&j| leq(i, j)).collect())
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(OrderError::InvalidTable(format!("`{}` is not <= itself", labels[i])));
            }
            for j in up[i] {
                if !up[j].is_subset(up[i]) {
                    return Err(OrderError::InvalidTable(format!(
                        "order is not transitive at `{}` <= `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Poset::from_up_sets(labels, up)
    }

    fn from_up_sets(labels: Vec<String>, up: Vec<Subset>) -> Result<Poset, OrderError> {
        let n = labels.len();
        let mut down = alloc::vec![Subset::EMPTY; n];
        for i in 0..n {
            for j in up[i] {
                if i != j && up[j].contains(i) {
                    return Err(OrderError::AntisymmetryViolation(labels[i].clone(), labels[j].clone()));
                }
                down[j] = down[j].with(i);
            }
        }
        Ok(Poset { labels, up, down })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `↑i`
    #[inline]
    pub fn up(&self, i: usize) -> Subset {
        self.up[i]
    }

    /// `↓i`
    #[inline]
    pub fn down(&self, i: usize) -> Subset {
        self.down[i]
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn down_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    pub fn is_up_set(&self, s: Subset) -> bool {
        s.iter().all(|i| self.up[i].is_subset(s))
    }

    /// The least element of `s`, if `s` has one.
    pub fn minimum_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.up[m]))
    }

    pub fn maximum_of(&self, s: Subset) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.down[m]))
    }

    /// Renders a subset as `{a,b,c}` using element labels.
    pub fn subset_label(&self, s: Subset) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.labels[i]);
        }
        out.push('}');
        out
    }

    fn greatest_lower_bound(&self, i: usize, j: usize) -> Result<usize, BoundFailure> {
        let lower = self.down[i].intersection(self.down[j]);
        if lower.is_empty() {
            return Err(BoundFailure::NoBound);
        }
        self.maximum_of(lower).ok_or(BoundFailure::IncomparableExtremalBounds)
    }

    fn least_upper_bound(&self, i: usize, j: usize) -> Result<usize, BoundFailure> {
        let upper = self.up[i].intersection(self.up[j]);
        if upper.is_empty() {
            return Err(BoundFailure::NoBound);
        }
        self.minimum_of(upper).ok_or(BoundFailure::IncomparableExtremalBounds)
    }
}

/// A filter: an up-closed, meet-closed subset of a semilattice carrier.
///
/// `generator` caches the minimum `x` with `members = ↑x`; it is `None`
/// exactly for the empty filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    members: Subset,
    generator: Option<usize>,
}

impl Filter {
    #[inline]
    pub fn members(&self) -> Subset {
        self.members
    }

    #[inline]
    pub fn generator(&self) -> Option<usize> {
        self.generator
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    /// Empty, or of the form `↑x`.
    pub fn is_principal(&self, sl: &MeetSemilattice) -> bool {
        match self.generator {
            None => self.members.is_empty(),
            Some(x) => sl.poset().up(x) == self.members,
        }
    }
}

/// A finite meet-semilattice with its meet table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeetSemilattice {
    poset: Poset,
    meet: Vec<u8>,
}

impl MeetSemilattice {
    /// Fills in the meet table, failing on the first pair without a glb.
    pub fn new(poset: Poset) -> Result<MeetSemilattice, OrderError> {
        let n = poset.len();
        let mut meet = alloc::vec![0u8; n * n];
        for i in 0..n {
            for j in i..n {
                let m = poset.greatest_lower_bound(i, j).map_err(|reason| OrderError::NoMeet {
                    left: poset.label(i).to_string(),
                    right: poset.label(j).to_string(),
                    reason,
                })?;
                meet[i * n + j] = m as u8;
                meet[j * n + i] = m as u8;
            }
        }
        Ok(MeetSemilattice { poset, meet })
    }

    #[inline]
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn carrier(&self) -> Subset {
        self.poset.carrier()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.poset.leq(i, j)
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    /// Meet of a nonempty subset.
    pub fn meet_of(&self, s: Subset) -> Option<usize> {
        let mut it = s.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, i| self.meet(acc, i)))
    }

    pub fn is_filter(&self, s: Subset) -> bool {
        if !self.poset.is_up_set(s) {
            return false;
        }
        s.iter().all(|i| s.iter().all(|j| s.contains(self.meet(i, j))))
    }

    /// Wraps `s` as a [`Filter`] if it is one.
    pub fn filter(&self, s: Subset) -> Option<Filter> {
        self.is_filter(s).then(|| self.filter_unchecked(s))
    }

    pub(crate) fn filter_unchecked(&self, s: Subset) -> Filter {
        Filter {
            members: s,
            generator: self.poset.minimum_of(s),
        }
    }

    pub fn principal_filter(&self, x: usize) -> Filter {
        Filter {
            members: self.poset.up(x),
            generator: Some(x),
        }
    }

    pub fn empty_filter(&self) -> Filter {
        Filter {
            members: Subset::EMPTY,
            generator: None,
        }
    }

    /// Least filter containing `seed`: alternate ∧-closure and ↑-closure until stable.
    pub fn generated_filter(&self, seed: Subset) -> Filter {
        let mut cur = seed;
        loop {
            let mut next = self.poset.up_closure(cur);
            for i in cur {
                for j in cur {
                    next = next.with(self.meet(i, j));
                }
            }
            if next == cur {
                return self.filter_unchecked(cur);
            }
            cur = next;
        }
    }

    /// `⋎`: least filter containing every filter in `fs`; `∅` is its identity.
    pub fn filter_join(&self, fs: &[Filter]) -> Filter {
        let union = fs.iter().fold(Subset::EMPTY, |acc, f| acc.union(f.members));
        self.generated_filter(union)
    }

    pub fn join_pair(&self, a: Filter, b: Filter) -> Filter {
        self.filter_join(&[a, b])
    }

    /// Every filter exactly once, ascending by mask.
    pub fn all_filters(&self) -> Vec<Filter> {
        let n = self.len();
        if n <= BRUTE_FORCE_FILTER_LIMIT {
            (0..1u64 << n)
                .map(Subset)
                .filter(|&s| self.is_filter(s))
                .map(|s| self.filter_unchecked(s))
                .collect()
        } else {
            // Nonempty filters of a finite semilattice are exactly the ↑x.
            let mut fs: Vec<Filter> = core::iter::once(self.empty_filter())
                .chain((0..n).map(|x| self.principal_filter(x)))
                .collect();
            fs.sort();
            fs
        }
    }

    /// `∅` together with every `↑x`, ascending by mask.
    pub fn principal_filters(&self) -> Vec<Filter> {
        let mut fs: Vec<Filter> = core::iter::once(self.empty_filter())
            .chain((0..self.len()).map(|x| self.principal_filter(x)))
            .collect();
        fs.sort();
        fs.dedup();
        fs
    }

    /// Lattice of all filters under `∩` and `⋎`.
    pub fn complex_algebra(&self) -> ComplexAlgebra {
        ComplexAlgebra::over(self, self.all_filters())
    }

    /// Sublattice of principal filters; the result is a lattice because
    /// finite carriers have all nonempty meets.
    pub fn principal_complex_algebra(&self) -> ComplexAlgebra {
        ComplexAlgebra::over(self, self.principal_filters())
    }

    /// Inverse image of `s` under `f`.
    pub fn preimage(f: &[usize], s: Subset) -> Subset {
        f.iter()
            .enumerate()
            .filter(|(_, &y)| s.contains(y))
            .map(|(x, _)| x)
            .collect()
    }
}

/// A bounded lattice: semilattice plus join table, top and bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedLattice {
    sl: MeetSemilattice,
    join: Vec<u8>,
    top: usize,
    bottom: usize,
}

impl BoundedLattice {
    /// Meet and join tables read off the order.
    pub fn new(poset: Poset) -> Result<BoundedLattice, OrderError> {
        let n = poset.len();
        let all = poset.carrier();
        let top = poset.maximum_of(all).ok_or(OrderError::NoTop)?;
        let bottom = poset.minimum_of(all).ok_or(OrderError::NoBottom)?;
        let mut join = alloc::vec![0u8; n * n];
        for i in 0..n {
            for j in i..n {
                let m = poset.least_upper_bound(i, j).map_err(|reason| OrderError::NoJoin {
                    left: poset.label(i).to_string(),
                    right: poset.label(j).to_string(),
                    reason,
                })?;
                join[i * n + j] = m as u8;
                join[j * n + i] = m as u8;
            }
        }
        let sl = MeetSemilattice::new(poset)?;
        Ok(BoundedLattice { sl, join, top, bottom })
    }

    /// Builds a lattice from explicit operation tables, checking that they
    /// are the glb and lub of the given order.
    pub fn from_tables(
        poset: Poset,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<BoundedLattice, OrderError> {
        let lat = BoundedLattice::new(poset)?;
        let n = lat.len();
        for i in 0..n {
            for j in 0..n {
                if meet(i, j) != lat.meet(i, j) {
                    return Err(OrderError::InvalidTable(format!(
                        "meet of `{}` and `{}` is not their glb",
                        lat.label(i),
                        lat.label(j)
                    )));
                }
                if join(i, j) != lat.join(i, j) {
                    return Err(OrderError::InvalidTable(format!(
                        "join of `{}` and `{}` is not their lub",
                        lat.label(i),
                        lat.label(j)
                    )));
                }
            }
        }
        Ok(lat)
    }

    #[inline]
    pub fn semilattice(&self) -> &MeetSemilattice {
        &self.sl
    }

    #[inline]
    pub fn poset(&self) -> &Poset {
        self.sl.poset()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sl.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sl.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset().label(i)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.sl.leq(i, j)
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.sl.meet(i, j)
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn props(&self) -> LatticeProps {
        lattice_props(self)
    }
}

/// The lattice of (a family of) filters of a semilattice, together with the
/// correspondence between filters and lattice elements.
#[derive(Debug, Clone)]
pub struct ComplexAlgebra {
    pub lattice: BoundedLattice,
    /// `filters[k]` is lattice element `k`; ascending by mask.
    pub filters: Vec<Filter>,
}

impl ComplexAlgebra {
    fn over(sl: &MeetSemilattice, filters: Vec<Filter>) -> ComplexAlgebra {
        let labels: Vec<String> = filters.iter().map(|f| sl.poset().subset_label(f.members)).collect();
        let masks: Vec<Subset> = filters.iter().map(|f| f.members).collect();
        let poset = Poset::from_relation(labels, |i, j| masks[i].is_subset(masks[j]))
            .expect("inclusion is a partial order");
        let index = |s: Subset| masks.binary_search(&s).expect("family closed under ∩ and ⋎");
        let lattice = BoundedLattice::from_tables(
            poset,
            |i, j| index(masks[i].intersection(masks[j])),
            |i, j| index(sl.join_pair(filters[i], filters[j]).members),
        )
        .expect("filters form a lattice under ∩ and ⋎");
        ComplexAlgebra { lattice, filters }
    }

    /// Lattice element for a filter given by its members.
    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.filters.binary_search_by(|f| f.members.cmp(&s)).ok()
    }

    pub fn filter(&self, k: usize) -> Filter {
        self.filters[k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeProps {
    pub distributive: bool,
    pub modular: bool,
}

pub fn lattice_props(l: &BoundedLattice) -> LatticeProps {
    let n = l.len();
    let mut distributive = true;
    let mut modular = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    distributive = false;
                }
                if l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z) {
                    modular = false;
                }
            }
        }
    }
    LatticeProps { distributive, modular }
}

fn check_total(f: &[usize], x: &MeetSemilattice, y: &MeetSemilattice) -> Result<(), OrderError> {
    if f.len() != x.len() || f.iter().any(|&v| v >= y.len()) {
        return Err(OrderError::NotTotal);
    }
    Ok(())
}

/// Semilattice homomorphism `f : X → Y` satisfying the L-morphism
/// back-condition: `y' ∧ z' ≤ f(x)` implies some `y, z` with
/// `y' ≤ f(y)`, `z' ≤ f(z)` and `y ∧ z ≤ x`.
pub fn is_l_morphism(f: &[usize], x: &MeetSemilattice, y: &MeetSemilattice) -> Result<bool, OrderError> {
    check_total(f, x, y)?;
    let n = x.len();
    let m = y.len();
    for a in 0..n {
        for b in 0..n {
            if f[x.meet(a, b)] != y.meet(f[a], f[b]) {
                return Ok(false);
            }
        }
    }
    for s in 0..n {
        for yp in 0..m {
            for zp in 0..m {
                if !y.leq(y.meet(yp, zp), f[s]) {
                    continue;
                }
                let witnessed = (0..n).any(|a| {
                    y.leq(yp, f[a]) && (0..n).any(|b| y.leq(zp, f[b]) && x.leq(x.meet(a, b), s))
                });
                if !witnessed {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `f⁻¹` maps filters of `Y` to filters of `X` and is a bounded
/// lattice homomorphism between the complex algebras.
pub fn inverse_image_is_lattice_hom(
    f: &[usize],
    x: &MeetSemilattice,
    y: &MeetSemilattice,
) -> Result<bool, OrderError> {
    check_total(f, x, y)?;
    let fy = y.all_filters();
    let mut pre = Vec::with_capacity(fy.len());
    for b in &fy {
        match x.filter(MeetSemilattice::preimage(f, b.members())) {
            Some(a) => pre.push(a),
            None => return Ok(false),
        }
    }
    if MeetSemilattice::preimage(f, y.carrier()) != x.carrier() {
        return Ok(false);
    }
    for (i, a) in fy.iter().enumerate() {
        for (j, b) in fy.iter().enumerate() {
            let joined = MeetSemilattice::preimage(f, y.join_pair(*a, *b).members());
            if joined != x.join_pair(pre[i], pre[j]).members() {
                return Ok(false);
            }
            let met = MeetSemilattice::preimage(f, a.members().intersection(b.members()));
            if met != pre[i].members().intersection(pre[j].members()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::vec;

    #[test]
    fn validate_poset_examples() {
        let p = Poset::from_pairs(&["0", "1"], &[("0", "1")]).unwrap();
        assert!(p.leq(0, 0) && p.leq(0, 1) && p.leq(1, 1) && !p.leq(1, 0));
        assert_eq!(singleton().len(), 1);
        assert_eq!(
            Poset::from_pairs(&["x", "y"], &[("x", "y"), ("y", "x")]),
            Err(OrderError::AntisymmetryViolation("x".into(), "y".into()))
        );
        assert_eq!(
            Poset::from_pairs::<&str>(&["x", "x"], &[]),
            Err(OrderError::DuplicateLabel("x".into()))
        );
    }

    #[test]
    fn transitive_closure_is_taken() {
        let p = chain(4);
        assert!(p.leq(0, 3));
        assert_eq!(p.up(1), set(&[1, 2, 3]));
        assert_eq!(p.down(2), set(&[0, 1, 2]));
    }

    #[test]
    fn meet_structure_examples() {
        let c2 = MeetSemilattice::new(chain(2)).unwrap();
        assert_eq!(c2.meet(0, 1), 0);
        let anti = Poset::from_pairs::<&str>(&["a", "b"], &[]).unwrap();
        match MeetSemilattice::new(anti) {
            Err(OrderError::NoMeet { reason, .. }) => assert_eq!(reason, BoundFailure::NoBound),
            other => panic!("{other:?}"),
        }
        let m3 = MeetSemilattice::new(m3()).unwrap();
        assert_eq!(m3.meet(1, 2), 0);
        assert_eq!(m3.meet(1, 4), 1);
        // two incomparable maximal lower bounds
        let bowtie = Poset::from_pairs(
            &["0", "a", "b", "c", "d"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        match MeetSemilattice::new(bowtie) {
            Err(OrderError::NoMeet { reason, .. }) => {
                assert_eq!(reason, BoundFailure::IncomparableExtremalBounds)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lattice_structure_examples() {
        let c3 = BoundedLattice::new(chain(3)).unwrap();
        assert_eq!((c3.top(), c3.bottom(), c3.join(0, 1)), (2, 0, 1));
        let m3 = BoundedLattice::new(m3()).unwrap();
        assert_eq!((m3.join(1, 2), m3.bottom()), (4, 0));
        assert!(matches!(BoundedLattice::new(vee()), Err(OrderError::NoTop)));
        // a top-only failure of binary joins
        let two_tops_below = Poset::from_pairs(
            &["0", "a", "b", "c", "d", "1"],
            &[("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
        )
        .unwrap();
        assert!(matches!(BoundedLattice::new(two_tops_below), Err(OrderError::NoJoin { .. })));
    }

    #[test]
    fn generated_filter_examples() {
        let m3 = MeetSemilattice::new(m3()).unwrap();
        assert_eq!(m3.generated_filter(set(&[1, 2])).members(), Subset::full(5));
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        assert_eq!(c3.generated_filter(set(&[1])).members(), set(&[1, 2]));
        assert!(c3.generated_filter(Subset::EMPTY).is_empty());
    }

    #[test]
    fn is_filter_examples() {
        let v = MeetSemilattice::new(vee()).unwrap();
        assert!(v.is_filter(set(&[1])));
        assert!(!v.is_filter(set(&[1, 2])));
        assert!(v.is_filter(Subset::EMPTY));
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        assert!(!c3.is_filter(set(&[0, 2])));
    }

    #[test]
    fn filter_join_examples() {
        let v = MeetSemilattice::new(vee()).unwrap();
        let j = v.join_pair(v.principal_filter(1), v.principal_filter(2));
        assert_eq!(j.members(), set(&[0, 1, 2]));
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        let j = c3.join_pair(c3.principal_filter(2), c3.principal_filter(1));
        assert_eq!(j.members(), set(&[1, 2]));
        let m3 = MeetSemilattice::new(m3()).unwrap();
        let j = m3.join_pair(m3.principal_filter(1), m3.principal_filter(2));
        assert_eq!(j.members(), Subset::full(5));
        assert!(m3.filter_join(&[m3.empty_filter(), m3.empty_filter()]).is_empty());
        assert!(m3.filter_join(&[]).is_empty());
    }

    #[test]
    fn all_filters_examples() {
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        let fs: Vec<Subset> = c3.all_filters().iter().map(|f| f.members()).collect();
        assert_eq!(fs, vec![Subset::EMPTY, set(&[2]), set(&[1, 2]), set(&[0, 1, 2])]);
        let m3 = MeetSemilattice::new(m3()).unwrap();
        let fs: Vec<Subset> = m3.all_filters().iter().map(|f| f.members()).collect();
        assert_eq!(
            fs,
            vec![Subset::EMPTY, set(&[4]), set(&[1, 4]), set(&[2, 4]), set(&[3, 4]), Subset::full(5)]
        );
        assert_eq!(MeetSemilattice::new(singleton()).unwrap().all_filters().len(), 2);
    }

    #[test]
    fn filters_are_principal_on_finite_carriers() {
        let m3 = MeetSemilattice::new(m3()).unwrap();
        for f in m3.all_filters() {
            assert!(f.is_principal(&m3));
        }
        assert_eq!(m3.principal_filters(), m3.all_filters());
    }

    #[test]
    fn complex_algebra_examples() {
        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        let ca = c3.complex_algebra();
        assert_eq!(ca.lattice.len(), 4);
        assert!(ca.lattice.props().distributive);
        for i in 0..4 {
            for j in 0..4 {
                assert!(ca.lattice.leq(i, j) || ca.lattice.leq(j, i));
            }
        }

        let m3 = MeetSemilattice::new(m3()).unwrap();
        let ca = m3.complex_algebra();
        let l = &ca.lattice;
        let ua = ca.index_of(set(&[1, 4])).unwrap();
        let ub = ca.index_of(set(&[2, 4])).unwrap();
        let uc = ca.index_of(set(&[3, 4])).unwrap();
        assert_eq!(l.meet(ua, l.join(ub, uc)), ua);
        let rhs = l.join(l.meet(ua, ub), l.meet(ua, uc));
        assert_eq!(ca.filter(rhs).members(), set(&[4]));
        assert!(!l.props().distributive);

        let one = MeetSemilattice::new(singleton()).unwrap().complex_algebra();
        assert_eq!(one.lattice.len(), 2);
        assert_eq!(ca.filter(l.bottom()).members(), Subset::EMPTY);
        assert_eq!(ca.filter(l.top()).members(), Subset::full(5));
    }

    #[test]
    fn lattice_props_examples() {
        let c4 = BoundedLattice::new(chain(4)).unwrap();
        assert_eq!(c4.props(), LatticeProps { distributive: true, modular: true });
        let m3 = BoundedLattice::new(m3()).unwrap();
        assert_eq!(m3.props(), LatticeProps { distributive: false, modular: true });
        let n5 = BoundedLattice::new(n5()).unwrap();
        assert_eq!(n5.props(), LatticeProps { distributive: false, modular: false });
    }

    #[test]
    fn l_morphism_examples() {
        for p in all() {
            let sl = MeetSemilattice::new(p).unwrap();
            let id: Vec<usize> = (0..sl.len()).collect();
            assert!(is_l_morphism(&id, &sl, &sl).unwrap());
            assert!(inverse_image_is_lattice_hom(&id, &sl, &sl).unwrap());
        }

        let c3 = MeetSemilattice::new(chain(3)).unwrap();
        let one = MeetSemilattice::new(singleton()).unwrap();
        assert!(is_l_morphism(&[0, 0, 0], &c3, &one).unwrap());
        assert!(inverse_image_is_lattice_hom(&[0, 0, 0], &c3, &one).unwrap());

        let v = MeetSemilattice::new(vee()).unwrap();
        let c2 = MeetSemilattice::new(chain(2)).unwrap();
        let f = [0, 1, 1];
        assert_eq!(
            is_l_morphism(&f, &v, &c2).unwrap(),
            inverse_image_is_lattice_hom(&f, &v, &c2).unwrap()
        );
        assert!(!is_l_morphism(&f, &v, &c2).unwrap());

        assert_eq!(is_l_morphism(&[0, 0], &c3, &one), Err(OrderError::NotTotal));
        assert_eq!(is_l_morphism(&[0, 0, 5], &c3, &one), Err(OrderError::NotTotal));
    }
}
