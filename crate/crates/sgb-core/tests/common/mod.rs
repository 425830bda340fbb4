//! From-scratch brute-force oracles.
//!
//! Nothing here shares logic with the library's enumeration: the subset
//! oracle walks every subset of the group, and the pair oracle recounts star
//! degrees with a plain grow-until-fixpoint closure and a hash map. Where the
//! two worlds disagree, the oracle wins.

use std::collections::HashMap;

use sgb_core::FiniteGroup;

/// Every subgroup, by exhaustive subset enumeration. Exponential in |G|, so
/// the order is capped at 24. Results are sorted by (order, members).
pub fn oracle_subgroups(g: &FiniteGroup) -> Vec<Vec<u16>> {
    let n = g.order();
    assert!(n <= 24, "subset oracle is exponential; got order {n}");
    let identity_bit = 1u32 << g.identity();
    let mut found = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if mask & identity_bit == 0 || !n.is_multiple_of(mask.count_ones() as usize) {
            continue;
        }
        if is_closed(g, mask) {
            let members: Vec<u16> = (0..n)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| i as u16)
                .collect();
            found.push(members);
        }
    }
    found.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
    found
}

// A nonempty finite subset closed under the product is a subgroup.
fn is_closed(g: &FiniteGroup, mask: u32) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut rest_inner = mask;
        while rest_inner != 0 {
            let y = rest_inner.trailing_zeros() as usize;
            rest_inner &= rest_inner - 1;
            if mask & (1 << g.mul(x, y)) == 0 {
                return false;
            }
        }
    }
    true
}

/// Closure of a generating set by repeated multiplication until nothing new
/// appears. Returns the sorted member list.
pub fn naive_closure(g: &FiniteGroup, gens: &[usize]) -> Vec<u16> {
    let mut in_set = vec![false; g.order()];
    let mut members = vec![g.identity()];
    in_set[g.identity()] = true;
    for &x in gens {
        if !in_set[x] {
            in_set[x] = true;
            members.push(x);
        }
    }
    loop {
        let snapshot = members.clone();
        let before = members.len();
        for &x in &snapshot {
            for &y in &snapshot {
                let z = g.mul(x, y);
                if !in_set[z] {
                    in_set[z] = true;
                    members.push(z);
                }
            }
        }
        if members.len() == before {
            break;
        }
    }
    let mut out: Vec<u16> = members.into_iter().map(|i| i as u16).collect();
    out.sort_unstable();
    out
}

/// Ordered-pair counts per generated subgroup: how many (a, b) have
/// <a, b> equal to each member set. Keys are sorted member lists.
pub fn oracle_pair_degrees(g: &FiniteGroup) -> HashMap<Vec<u16>, u64> {
    let n = g.order();
    let mut counts: HashMap<Vec<u16>, u64> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            *counts.entry(naive_closure(g, &[a, b])).or_insert(0) += 1;
        }
    }
    counts
}

/// Sorted star multiset from the oracle counts.
pub fn oracle_star_multiset(counts: &HashMap<Vec<u16>, u64>) -> Vec<u64> {
    let mut stars: Vec<u64> = counts.values().copied().collect();
    stars.sort_unstable();
    stars
}

/// Small-order members of the supported families: cyclic, dihedral, dicyclic,
/// and one direct product per non-cyclic abelian isomorphism class.
pub fn family_groups_up_to_24() -> Vec<FiniteGroup> {
    let mut groups = Vec::new();
    for n in 1..=24 {
        groups.push(FiniteGroup::make_cyclic(n).unwrap());
    }
    for n in 1..=12 {
        groups.push(FiniteGroup::make_dihedral(n).unwrap());
    }
    for n in 1..=6 {
        groups.push(FiniteGroup::make_dicyclic(n).unwrap());
    }
    let abelian: &[&[usize]] = &[
        &[2, 2],
        &[4, 2],
        &[2, 2, 2],
        &[3, 3],
        &[6, 2],
        &[8, 2],
        &[4, 4],
        &[4, 2, 2],
        &[2, 2, 2, 2],
        &[6, 3],
        &[10, 2],
        &[12, 2],
        &[6, 2, 2],
    ];
    for factors in abelian {
        let mut g = FiniteGroup::make_cyclic(factors[0]).unwrap();
        for &f in &factors[1..] {
            let h = FiniteGroup::make_cyclic(f).unwrap();
            g = FiniteGroup::make_direct_product(&g, &h).unwrap();
        }
        groups.push(g);
    }
    groups
}
