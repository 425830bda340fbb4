//! Degree maps of the subgroup-generating bipartite graph B(G).
//!
//! B(G) has one vertex per ordered pair (a, b) in G x G and one per subgroup
//! H in L(G); (a, b) is adjacent to H exactly when <a, b> = H. Every pair
//! vertex has degree one, so the whole graph is determined by the subgroup
//! degrees deg(H) = #{(a, b) : <a, b> = H}, and
//!
//!   sum_H deg(H) = |G|^2 = |e(B(G))|,   |V(B(G))| = |G|^2 + |L(G)|.
//!
//! `build_sgb` enumerates pairs with the <a, b> = <b, a> symmetry: diagonal
//! pairs read a cached <a>, off-diagonal pairs with a < b are computed once
//! and credited twice. Degrees are exact u64 counts. The parallel build
//! partitions rows across threads and merges per-id sums, which is
//! bit-identical to the sequential build for any partitioning.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupDescriptor};
use crate::lattice::{closure_sorted, Scratch, SubgroupLattice};
use crate::Rat;

/// Subgroup-side degree map of B(G). Degrees are indexed by lattice id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgbGraph {
    descriptor: GroupDescriptor,
    order: usize,
    degrees: Vec<u64>,
}

impl SgbGraph {
    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    /// Order of the underlying group.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lattice_size(&self) -> usize {
        self.degrees.len()
    }

    /// deg(H) for each subgroup, indexed by lattice id.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// |e(B(G))| = |G|^2.
    pub fn edge_count(&self) -> u64 {
        (self.order as u64) * (self.order as u64)
    }

    /// |V(B(G))| = |G|^2 + |L(G)|.
    pub fn vertex_count(&self) -> u64 {
        self.edge_count() + self.degrees.len() as u64
    }
}

/// Star decomposition of B(G): the multiset of star sizes (sorted ascending;
/// size 1 is K_2) plus the count of isolated subgroup vertices, i.e.
/// subgroups that no pair generates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    pub stars: Vec<u64>,
    pub isolated: usize,
}

impl StarDecomposition {
    /// Number of subgroup vertices this decomposition accounts for.
    pub fn lattice_size(&self) -> usize {
        self.stars.len() + self.isolated
    }
}

fn check_match(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<()> {
    if g.order() != lattice.parent_order() {
        return Err(Error::InvalidInput(format!(
            "lattice was built for a group of order {}, got order {}",
            lattice.parent_order(),
            g.order()
        )));
    }
    Ok(())
}

/// Ids of the cyclic subgroups <x> for every element x.
fn cyclic_ids(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    scratch: &mut Scratch,
) -> Result<Vec<usize>> {
    (0..g.order() as u16)
        .map(|x| {
            let set = closure_sorted(g, &[x], scratch);
            lattice.lookup_sorted(&set).ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "lattice has no entry for the cyclic subgroup of element {x}"
                ))
            })
        })
        .collect()
}

/// Accumulates the degrees contributed by all pairs (a, b) with b >= a.
fn accumulate_row(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    cyclic: &[usize],
    a: u16,
    degrees: &mut [u64],
    scratch: &mut Scratch,
) -> Result<()> {
    degrees[cyclic[a as usize]] += 1;
    let a_sub = lattice.get(cyclic[a as usize]).expect("cyclic id in range");
    for b in (a + 1)..g.order() as u16 {
        let id = if a_sub.elements().binary_search(&b).is_ok() {
            cyclic[a as usize]
        } else if lattice
            .get(cyclic[b as usize])
            .expect("cyclic id in range")
            .elements()
            .binary_search(&a)
            .is_ok()
        {
            cyclic[b as usize]
        } else {
            let set = closure_sorted(g, &[a, b], scratch);
            lattice.lookup_sorted(&set).ok_or_else(|| {
                Error::InternalInconsistency(format!("lattice has no entry for <{a}, {b}>"))
            })?
        };
        // credits (a, b) and (b, a)
        degrees[id] += 2;
    }
    Ok(())
}

fn finish(g: &FiniteGroup, lattice: &SubgroupLattice, degrees: Vec<u64>) -> Result<SgbGraph> {
    let n = g.order() as u64;
    let total: u64 = degrees.iter().sum();
    if total != n * n {
        return Err(Error::InternalInconsistency(format!(
            "degree sum {total} differs from |G|^2 = {}",
            n * n
        )));
    }
    if degrees[lattice.trivial_id()] != 1 {
        return Err(Error::InternalInconsistency(
            "trivial subgroup degree is not 1".into(),
        ));
    }
    Ok(SgbGraph {
        descriptor: g.descriptor().clone(),
        order: g.order(),
        degrees,
    })
}

/// Builds the degree map of B(G), splitting pair rows across the current
/// rayon thread pool. Identical output to [`build_sgb_sequential`].
pub fn build_sgb(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<SgbGraph> {
    check_match(g, lattice)?;
    let n = g.order();
    let l = lattice.len();
    let cyclic = cyclic_ids(g, lattice, &mut Scratch::new(n))?;
    let degrees = (0..n as u16)
        .into_par_iter()
        .try_fold(
            || (vec![0u64; l], Scratch::new(n)),
            |(mut acc, mut scratch), a| -> Result<(Vec<u64>, Scratch)> {
                accumulate_row(g, lattice, &cyclic, a, &mut acc, &mut scratch)?;
                Ok((acc, scratch))
            },
        )
        .map(|r| r.map(|(acc, _)| acc))
        .try_reduce(
            || vec![0u64; l],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                Ok(a)
            },
        )?;
    finish(g, lattice, degrees)
}

/// Single-threaded reference build of the same degree map.
pub fn build_sgb_sequential(g: &FiniteGroup, lattice: &SubgroupLattice) -> Result<SgbGraph> {
    check_match(g, lattice)?;
    let n = g.order();
    let mut scratch = Scratch::new(n);
    let cyclic = cyclic_ids(g, lattice, &mut scratch)?;
    let mut degrees = vec![0u64; lattice.len()];
    for a in 0..n as u16 {
        accumulate_row(g, lattice, &cyclic, a, &mut degrees, &mut scratch)?;
    }
    finish(g, lattice, degrees)
}

/// Probability that two independent uniform elements generate the subgroup
/// with the given lattice id: deg(H) / |G|^2, in lowest terms.
pub fn pr_h(graph: &SgbGraph, id: usize) -> Result<Rat> {
    let deg = *graph
        .degrees()
        .get(id)
        .ok_or_else(|| Error::NotFound(format!("no subgroup id {id} in graph")))?;
    Ok(Rat::new(deg as i128, graph.edge_count() as i128))
}

/// Star decomposition of the graph: sorted star sizes and the isolated count.
pub fn star_decomposition(graph: &SgbGraph) -> StarDecomposition {
    let mut stars: Vec<u64> = graph.degrees().iter().copied().filter(|&d| d > 0).collect();
    stars.sort_unstable();
    let isolated = graph.degrees().len() - stars.len();
    StarDecomposition { stars, isolated }
}
