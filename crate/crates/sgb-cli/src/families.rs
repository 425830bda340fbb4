//! Deterministic group enumeration for batch searches.
//!
//! Groups are listed in (order, family, parameters) order and deduplicated
//! by descriptor, so repeated runs with the same configuration see the same
//! sequence. Abelian groups are expanded as multisets of prime-power cyclic
//! factors (one per isomorphism class), canonicalized by sorting the factors
//! in descending order.

use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;

use sgb_core::FiniteGroup;

use crate::{io_err, Error, Result};

/// A family of groups the search can walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SearchFamily {
    Cyclic,
    Dihedral,
    Dicyclic,
    Abelian,
    UserTables,
}

impl SearchFamily {
    pub const ALL: [SearchFamily; 5] = [
        SearchFamily::Cyclic,
        SearchFamily::Dihedral,
        SearchFamily::Dicyclic,
        SearchFamily::Abelian,
        SearchFamily::UserTables,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchFamily::Cyclic => "cyclic",
            SearchFamily::Dihedral => "dihedral",
            SearchFamily::Dicyclic => "dicyclic",
            SearchFamily::Abelian => "abelian",
            SearchFamily::UserTables => "user_tables",
        }
    }
}

/// What to search and where to persist it.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub families: Vec<SearchFamily>,
    pub max_order: usize,
    pub table_paths: Vec<PathBuf>,
    pub output_path: PathBuf,
    pub resume: bool,
}

/// One enumerated group, buildable on demand inside a worker.
#[derive(Debug, Clone)]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Dicyclic {
        n: usize,
    },
    /// Cyclic factor orders, each a prime power, sorted descending.
    Abelian {
        factors: Vec<usize>,
    },
    /// Pre-validated user table; kept whole so workers need no file access.
    Table {
        path: PathBuf,
        group: FiniteGroup,
    },
}

impl GroupSpec {
    pub fn family(&self) -> SearchFamily {
        match self {
            GroupSpec::Cyclic { .. } => SearchFamily::Cyclic,
            GroupSpec::Dihedral { .. } => SearchFamily::Dihedral,
            GroupSpec::Dicyclic { .. } => SearchFamily::Dicyclic,
            GroupSpec::Abelian { .. } => SearchFamily::Abelian,
            GroupSpec::Table { .. } => SearchFamily::UserTables,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic { n } => *n,
            GroupSpec::Dihedral { n } => 2 * n,
            GroupSpec::Dicyclic { n } => 4 * n,
            GroupSpec::Abelian { factors } => factors.iter().product(),
            GroupSpec::Table { group, .. } => group.order(),
        }
    }

    /// Stable identity used for ordering, deduplication, and resume. Matches
    /// the descriptor the built group reports about itself.
    pub fn descriptor(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("Z{n}"),
            GroupSpec::Dihedral { n } => format!("D{}", 2 * n),
            GroupSpec::Dicyclic { n } => format!("Q{}", 4 * n),
            GroupSpec::Abelian { factors } => factors
                .iter()
                .map(|f| format!("Z{f}"))
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::Table { path, .. } => format!("table:{}", path.display()),
        }
    }

    pub fn build(&self) -> sgb_core::Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { n } => FiniteGroup::make_cyclic(*n),
            GroupSpec::Dihedral { n } => FiniteGroup::make_dihedral(*n),
            GroupSpec::Dicyclic { n } => FiniteGroup::make_dicyclic(*n),
            GroupSpec::Abelian { factors } => {
                let mut g = FiniteGroup::make_cyclic(factors[0])?;
                for &f in &factors[1..] {
                    let h = FiniteGroup::make_cyclic(f)?;
                    g = FiniteGroup::make_direct_product(&g, &h)?;
                }
                Ok(g)
            }
            GroupSpec::Table { group, .. } => Ok(group.clone()),
        }
    }
}

// Sort key piece that keeps parameters comparable within one family.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum ParamKey {
    N(usize),
    Factors(Vec<usize>),
    Index(usize),
}

/// All prime-power factor multisets (descending) whose product is `m`: one
/// per isomorphism class of abelian groups of order m. `m = 1` yields the
/// trivial group as a single `[1]` factor list.
fn abelian_factor_lists(m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![1]];
    }
    let mut lists = vec![Vec::new()];
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            lists = extend_with_prime(lists, p, e);
        }
        p += 1;
    }
    if rest > 1 {
        lists = extend_with_prime(lists, rest, 1);
    }
    for factors in &mut lists {
        factors.sort_unstable_by(|a, b| b.cmp(a));
    }
    lists.sort_unstable();
    lists
}

// Cross every existing factor list with every partition of e at prime p.
fn extend_with_prime(lists: Vec<Vec<usize>>, p: usize, e: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for parts in partitions(e) {
        let powers: Vec<usize> = parts.iter().map(|&k| p.pow(k)).collect();
        for list in &lists {
            let mut next = list.clone();
            next.extend_from_slice(&powers);
            out.push(next);
        }
    }
    out
}

/// Partitions of e into non-increasing positive parts, largest-first order.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    partitions_rec(e, e, &mut prefix, &mut out);
    out
}

fn partitions_rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        prefix.push(part);
        partitions_rec(remaining - part, part, prefix, out);
        prefix.pop();
        part -= 1;
    }
}

/// Lists the groups selected by `config` in (order, family, parameters)
/// order, duplicate descriptors removed (first occurrence wins). User tables
/// are read and validated here, so a bad path or table fails the whole run
/// up front.
pub fn enumerate_groups(config: &SearchConfig) -> Result<Vec<GroupSpec>> {
    let mut families = config.families.clone();
    families.sort_unstable();
    families.dedup();

    let mut items: Vec<(usize, SearchFamily, ParamKey, GroupSpec)> = Vec::new();
    for family in families {
        match family {
            SearchFamily::Cyclic => {
                for n in 1..=config.max_order {
                    items.push((n, family, ParamKey::N(n), GroupSpec::Cyclic { n }));
                }
            }
            SearchFamily::Dihedral => {
                for n in 1..=config.max_order / 2 {
                    items.push((2 * n, family, ParamKey::N(n), GroupSpec::Dihedral { n }));
                }
            }
            SearchFamily::Dicyclic => {
                for n in 1..=config.max_order / 4 {
                    items.push((4 * n, family, ParamKey::N(n), GroupSpec::Dicyclic { n }));
                }
            }
            SearchFamily::Abelian => {
                for m in 1..=config.max_order {
                    for factors in abelian_factor_lists(m) {
                        items.push((
                            m,
                            family,
                            ParamKey::Factors(factors.clone()),
                            GroupSpec::Abelian { factors },
                        ));
                    }
                }
            }
            SearchFamily::UserTables => {
                for (index, path) in config.table_paths.iter().enumerate() {
                    let text = fs::read_to_string(path).map_err(io_err(path.clone()))?;
                    let group = FiniteGroup::from_cayley_text(&text, path.display().to_string())
                        .map_err(Error::Core)?;
                    items.push((
                        group.order(),
                        family,
                        ParamKey::Index(index),
                        GroupSpec::Table {
                            path: path.clone(),
                            group,
                        },
                    ));
                }
            }
        }
    }

    items.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let mut seen = HashSet::new();
    Ok(items
        .into_iter()
        .filter(|(_, _, _, spec)| seen.insert(spec.descriptor()))
        .map(|(_, _, _, spec)| spec)
        .collect())
}
