//! Exhaustive enumeration of small semilattices, lattices and modal frames.
//!
//! Unlabeled structures are produced as canonical representatives: the
//! natural labeling (`i ≤ j ⇒ i ≤ j` as integers) whose strict upper
//! triangle, read as a bit string, is least. Streams are ordered by that
//! code, so the order is the same on every run.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use itertools::Itertools;

use crate::order::{BoundedLattice, MeetSemilattice, Poset};
use crate::semantics::{satisfies_frame_conditions, ModalLFrame, Relation};
use crate::subset::Subset;

/// Hard ceiling: structure codes are packed into 64 bits.
pub const HARD_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("size {n} exceeds the enumeration bound {bound}")]
pub struct BoundExceeded {
    pub n: usize,
    pub bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameKind {
    Semilattice,
    Lattice,
    Modal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub semilattice: usize,
    pub lattice: usize,
    pub modal: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            semilattice: 5,
            lattice: 6,
            modal: 4,
        }
    }
}

impl Bounds {
    pub fn for_kind(&self, kind: FrameKind) -> usize {
        match kind {
            FrameKind::Semilattice => self.semilattice,
            FrameKind::Lattice => self.lattice,
            FrameKind::Modal => self.modal,
        }
        .min(HARD_LIMIT)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Semilattice(MeetSemilattice),
    Lattice(BoundedLattice),
    Modal(ModalLFrame),
}

fn digit_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// All naturally labeled posets on `n` points, as up-set rows.
fn natural_posets(n: usize) -> Vec<Vec<Subset>> {
    let pairs = upper_pairs(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut up: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[i] = up[i].with(j);
            }
        }
        let transitive = (0..n).all(|i| up[i].iter().all(|j| up[j].is_subset(up[i])));
        if transitive {
            out.push(up);
        }
    }
    out
}

fn triangle_code(up: &[Subset], perm: &[usize]) -> u64 {
    let n = up.len();
    let mut code = 0u64;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if up[perm[i]].contains(perm[j]) {
                code |= 1 << k;
            }
            k += 1;
        }
    }
    code
}

fn is_natural(up: &[Subset], perm: &[usize]) -> bool {
    let n = up.len();
    (0..n).all(|i| (0..i).all(|j| !up[perm[i]].contains(perm[j])))
}

/// Least triangle code over natural relabelings.
fn canonical_code(up: &[Subset]) -> u64 {
    let n = up.len();
    (0..n)
        .permutations(n)
        .filter(|p| is_natural(up, p))
        .map(|p| triangle_code(up, &p))
        .min()
        .unwrap_or(0)
}

fn relabel(up: &[Subset], perm: &[usize]) -> Vec<Subset> {
    // new index i stands for old element perm[i]
    let n = up.len();
    let mut inv = alloc::vec![0; n];
    for (i, &o) in perm.iter().enumerate() {
        inv[o] = i;
    }
    (0..n)
        .map(|i| up[perm[i]].iter().map(|o| inv[o]).collect())
        .collect()
}

fn poset_of(up: &[Subset]) -> Poset {
    let n = up.len();
    Poset::from_relation(digit_labels(n), |i, j| up[i].contains(j)).expect("enumerated order is a partial order")
}

/// One representative per isomorphism class of posets accepted by `build`.
fn representatives<T>(n: usize, build: impl Fn(Poset) -> Option<T>) -> Vec<T> {
    let mut reps: Vec<(u64, Vec<Subset>)> = Vec::new();
    for up in natural_posets(n) {
        if build(poset_of(&up)).is_none() {
            continue;
        }
        let identity: Vec<usize> = (0..n).collect();
        let code = canonical_code(&up);
        if code == triangle_code(&up, &identity) {
            reps.push((code, up));
        }
    }
    reps.sort();
    reps.dedup();
    reps.into_iter().filter_map(|(_, up)| build(poset_of(&up))).collect()
}

fn full_code(up: &[Subset]) -> u64 {
    let n = up.len();
    up.iter().enumerate().fold(0, |acc, (i, s)| acc | s.bits() << (i * n))
}

/// Every labeling of every representative, ordered by the full order matrix.
fn all_labelings<T>(n: usize, build: impl Fn(Poset) -> Option<T>) -> Vec<T> {
    let mut all: Vec<(u64, Vec<Subset>)> = Vec::new();
    for up in natural_posets(n) {
        if build(poset_of(&up)).is_none() {
            continue;
        }
        for p in (0..n).permutations(n) {
            let r = relabel(&up, &p);
            all.push((full_code(&r), r));
        }
    }
    all.sort();
    all.dedup_by_key(|(c, _)| *c);
    all.into_iter().filter_map(|(_, up)| build(poset_of(&up))).collect()
}

fn check(n: usize, bound: usize) -> Result<(), BoundExceeded> {
    if n > bound.min(HARD_LIMIT) {
        return Err(BoundExceeded { n, bound: bound.min(HARD_LIMIT) });
    }
    Ok(())
}

pub fn semilattices(n: usize, labeled: bool, bounds: &Bounds) -> Result<Vec<MeetSemilattice>, BoundExceeded> {
    check(n, bounds.semilattice)?;
    let build = |p: Poset| MeetSemilattice::new(p).ok();
    Ok(if labeled { all_labelings(n, build) } else { representatives(n, build) })
}

pub fn lattices(n: usize, labeled: bool, bounds: &Bounds) -> Result<Vec<BoundedLattice>, BoundExceeded> {
    check(n, bounds.lattice)?;
    let build = |p: Poset| BoundedLattice::new(p).ok();
    Ok(if labeled { all_labelings(n, build) } else { representatives(n, build) })
}

/// Permutations of the carrier that preserve the order.
pub fn automorphisms(sl: &MeetSemilattice) -> Vec<Vec<usize>> {
    let n = sl.len();
    (0..n)
        .permutations(n)
        .filter(|p| (0..n).all(|i| (0..n).all(|j| sl.leq(i, j) == sl.leq(p[i], p[j]))))
        .collect()
}

fn permute_relation(n: usize, mask: u64, p: &[usize]) -> u64 {
    let mut out = 0;
    for x in 0..n {
        for y in 0..n {
            if mask >> (x * n + y) & 1 == 1 {
                out |= 1 << (p[x] * n + p[y]);
            }
        }
    }
    out
}

/// Relations (as masks, ascending) on `sl` passing conditions (1)–(5);
/// with `up_to_iso`, only the least mask of each orbit under order
/// automorphisms is kept.
pub fn frame_relations(sl: &MeetSemilattice, up_to_iso: bool) -> Vec<u64> {
    let n = sl.len();
    let autos = if up_to_iso { automorphisms(sl) } else { Vec::new() };
    let total = n * n;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << total) {
        let r = Relation::from_mask(n, mask);
        if !satisfies_frame_conditions(sl, &r) {
            continue;
        }
        if autos.iter().any(|p| permute_relation(n, mask, p) < mask) {
            continue;
        }
        out.push(mask);
    }
    out
}

/// Modal frames on `n` states. Unlabeled: each unlabeled semilattice with
/// one relation per automorphism orbit. Labeled: every labeled semilattice
/// with every relation.
pub fn modal_frames(n: usize, labeled: bool, bounds: &Bounds) -> Result<Vec<ModalLFrame>, BoundExceeded> {
    check(n, bounds.modal)?;
    let sls = if labeled {
        all_labelings(n, |p| MeetSemilattice::new(p).ok())
    } else {
        representatives(n, |p| MeetSemilattice::new(p).ok())
    };
    let mut out = Vec::new();
    for sl in sls {
        for mask in frame_relations(&sl, !labeled) {
            out.push(ModalLFrame::new_unchecked(sl.clone(), Relation::from_mask(n, mask)));
        }
    }
    Ok(out)
}

pub fn enumerate_frames(n: usize, kind: FrameKind, labeled: bool, bounds: &Bounds) -> Result<Vec<Structure>, BoundExceeded> {
    Ok(match kind {
        FrameKind::Semilattice => semilattices(n, labeled, bounds)?.into_iter().map(Structure::Semilattice).collect(),
        FrameKind::Lattice => lattices(n, labeled, bounds)?.into_iter().map(Structure::Lattice).collect(),
        FrameKind::Modal => modal_frames(n, labeled, bounds)?.into_iter().map(Structure::Modal).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::fixtures::chain;
    use crate::semantics::modal_frame_check;

    #[test]
    fn small_counts() {
        let b = Bounds::default();
        let sl: Vec<usize> = (1..=5).map(|n| semilattices(n, false, &b).unwrap().len()).collect();
        assert_eq!(sl, [1, 1, 2, 5, 15]);
        let lat: Vec<usize> = (1..=6).map(|n| lattices(n, false, &b).unwrap().len()).collect();
        assert_eq!(lat, [1, 1, 1, 2, 5, 15]);
        assert_eq!(semilattices(1, true, &b).unwrap().len(), 1);
        // labeled 3-element semilattices: 6 chains + 3 vees
        assert_eq!(semilattices(3, true, &b).unwrap().len(), 9);
    }

    #[test]
    fn representatives_are_naturally_labeled() {
        let b = Bounds::default();
        for l in lattices(5, false, &b).unwrap() {
            assert_eq!(l.bottom(), 0);
            assert_eq!(l.top(), 4);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let b = Bounds::default();
        assert_eq!(
            modal_frames(5, false, &b).unwrap_err(),
            BoundExceeded { n: 5, bound: 4 }
        );
        assert!(semilattices(6, false, &b).is_err());
    }

    #[test]
    fn two_chain_relations_match_brute_force() {
        let sl = MeetSemilattice::new(chain(2)).unwrap();
        let expected: Vec<u64> = (0..16u64)
            .filter(|&m| modal_frame_check(&sl, &Relation::from_mask(2, m)).is_modal_l_frame())
            .collect();
        assert_eq!(frame_relations(&sl, false), expected);
        assert!(expected.contains(&Relation::from_pairs(2, &[(0, 1), (1, 1)]).to_mask()));
    }

    #[test]
    fn orbit_representatives_cover_labeled_frames() {
        let b = Bounds { modal: 3, ..Bounds::default() };
        for n in 1..=3 {
            let reps = modal_frames(n, false, &b).unwrap();
            for f in &reps {
                assert!(f.report().is_modal_l_frame());
            }
            let labeled = modal_frames(n, true, &b).unwrap();
            assert!(labeled.len() >= reps.len());
        }
    }
}
