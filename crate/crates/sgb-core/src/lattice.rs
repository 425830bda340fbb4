//! Complete subgroup enumeration by join closure.
//!
//! `all_subgroups` seeds with every cyclic subgroup <x> and then repeatedly
//! closes under single-element joins <H u {x}> until nothing new appears.
//! Every subgroup is generated by finitely many elements, so it is reached
//! by a chain of such joins from one of its cyclic subgroups; the fixed
//! point is therefore the full subgroup set, and reaching it certifies
//! completeness. Each join at least doubles the subgroup order (the index
//! of a proper subgroup is at least 2), so generator chains stay short.
//!
//! Canonical form of a subgroup is its strictly sorted element list. The
//! lattice orders subgroups by (order, lexicographic element list) and ids
//! are positions in that order, which makes every downstream artifact
//! deterministic.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u16>,
    parent_order: usize,
}

impl Subgroup {
    /// Sorted element indices.
    pub fn elements(&self) -> &[u16] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        x <= u16::MAX as usize && self.elements.binary_search(&(x as u16)).is_ok()
    }
}

/// All subgroups of one group, sorted by (order, element list), with ids
/// equal to positions in that order. Id 0 is always the trivial subgroup and
/// the last id is the full group.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<u16>, usize>,
    parent_order: usize,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&Subgroup> {
        self.subgroups.get(id)
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// Id of the trivial subgroup.
    pub fn trivial_id(&self) -> usize {
        0
    }

    /// Id of the full group.
    pub fn full_id(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Looks up a subgroup by element set (any order, duplicates tolerated).
    /// `not-found` means the set is not a member; callers that built the
    /// lattice themselves should treat that as an internal invariant failure.
    pub fn lookup(&self, elements: &[u16]) -> Result<usize> {
        let mut key = elements.to_vec();
        key.sort_unstable();
        key.dedup();
        self.index.get(&key).copied().ok_or_else(|| {
            Error::NotFound(format!("no subgroup with element set {key:?} in lattice"))
        })
    }

    #[inline]
    pub(crate) fn lookup_sorted(&self, elements: &[u16]) -> Option<usize> {
        self.index.get(elements).copied()
    }
}

/// Reusable closure workspace. Membership is tracked with generation stamps
/// so consecutive closures do not pay a clear of the whole buffer.
pub(crate) struct Scratch {
    stamp: Vec<u32>,
    cur: u32,
    queue: Vec<u16>,
}

impl Scratch {
    pub(crate) fn new(n: usize) -> Scratch {
        Scratch {
            stamp: vec![0; n],
            cur: 0,
            queue: Vec::with_capacity(n),
        }
    }

    fn begin(&mut self) {
        if self.cur == u32::MAX {
            self.stamp.fill(0);
            self.cur = 0;
        }
        self.cur += 1;
        self.queue.clear();
    }

    #[inline]
    fn insert(&mut self, x: u16) -> bool {
        let s = &mut self.stamp[x as usize];
        if *s == self.cur {
            false
        } else {
            *s = self.cur;
            true
        }
    }
}

/// Closure of a generator list: all products of words in the generators.
/// In a finite group the generated sub-semigroup containing the identity is
/// already the subgroup (right translation by a fixed element permutes it),
/// so multiplying frontier elements by each generator suffices.
pub(crate) fn closure_sorted(g: &FiniteGroup, gens: &[u16], scratch: &mut Scratch) -> Vec<u16> {
    scratch.begin();
    let e = g.identity() as u16;
    scratch.insert(e);
    scratch.queue.push(e);
    for &x in gens {
        if scratch.insert(x) {
            scratch.queue.push(x);
        }
    }
    let mut next = 0;
    while next < scratch.queue.len() {
        let x = scratch.queue[next];
        next += 1;
        for &gen in gens {
            let y = g.mul_u16(x, gen);
            if scratch.insert(y) {
                scratch.queue.push(y);
            }
        }
    }
    let mut out = scratch.queue.clone();
    out.sort_unstable();
    out
}

/// Subgroup generated by the given elements. An empty generator list yields
/// the trivial subgroup.
pub fn generated_subgroup(g: &FiniteGroup, gens: &[usize]) -> Result<Subgroup> {
    let mut gens16 = Vec::with_capacity(gens.len());
    for &x in gens {
        g.check_element(x)?;
        gens16.push(x as u16);
    }
    let mut scratch = Scratch::new(g.order());
    let elements = closure_sorted(g, &gens16, &mut scratch);
    Ok(Subgroup {
        elements,
        parent_order: g.order(),
    })
}

/// Enumerates every subgroup of `g`, with the default order cap.
pub fn all_subgroups(g: &FiniteGroup) -> Result<SubgroupLattice> {
    all_subgroups_with_cap(g, crate::DEFAULT_ORDER_CAP)
}

/// Enumerates every subgroup of `g`, refusing groups larger than `cap`.
pub fn all_subgroups_with_cap(g: &FiniteGroup, cap: usize) -> Result<SubgroupLattice> {
    let n = g.order();
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "group order {n} exceeds the configured cap {cap}"
        )));
    }
    let mut scratch = Scratch::new(n);
    let mut sets: Vec<Vec<u16>> = Vec::new();
    // Small generating set per discovered subgroup; joins extend it by one
    // element, and chains are at most log2(n) long.
    let mut gens: Vec<Vec<u16>> = Vec::new();
    let mut seen: HashMap<Vec<u16>, usize> = HashMap::new();
    let mut todo: Vec<usize> = Vec::new();

    for x in 0..n as u16 {
        let set = closure_sorted(g, &[x], &mut scratch);
        if !seen.contains_key(&set) {
            let id = sets.len();
            seen.insert(set.clone(), id);
            sets.push(set);
            gens.push(vec![x]);
            todo.push(id);
        }
    }
    let mut cursor = 0;
    while cursor < todo.len() {
        let h = todo[cursor];
        cursor += 1;
        for x in 0..n as u16 {
            if sets[h].binary_search(&x).is_ok() {
                continue;
            }
            let mut joined_gens = gens[h].clone();
            joined_gens.push(x);
            let set = closure_sorted(g, &joined_gens, &mut scratch);
            if !seen.contains_key(&set) {
                let id = sets.len();
                seen.insert(set.clone(), id);
                sets.push(set);
                gens.push(joined_gens);
                todo.push(id);
            }
        }
    }

    sets.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Vec<u16>, usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let subgroups = sets
        .into_iter()
        .map(|elements| Subgroup {
            elements,
            parent_order: n,
        })
        .collect();
    Ok(SubgroupLattice {
        subgroups,
        index,
        parent_order: n,
    })
}
