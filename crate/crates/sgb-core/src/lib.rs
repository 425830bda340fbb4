//! Subgroup-generating bipartite graphs of finite groups.
//!
//! For a finite group G with subgroup set L(G), the bipartite graph B(G) has
//! vertex parts G x G and L(G), and a pair (a, b) is adjacent to H exactly
//! when <a, b> = H. Every pair vertex has degree one, so B(G) is a disjoint
//! union of stars K_{1,m} (plus isolated subgroup vertices for subgroups that
//! no pair generates) and all degree-based indices of B(G) reduce to
//! functions of the subgroup degrees deg(H) = #{(a, b) : <a, b> = H}.
//!
//! The crate provides:
//! - dense Cayley-table groups: cyclic, dihedral, dicyclic, direct products,
//!   and validated user-supplied tables ([`group`]);
//! - complete subgroup lattice enumeration by join closure ([`lattice`]);
//! - exact degree maps of B(G) via |G|^2 pair enumeration ([`graph`]);
//! - Zagreb indices, the M2/|e| >= M1/|V| comparison in exact rational
//!   arithmetic, and Randic/ABC/GA/harmonic/sum-connectivity indices
//!   ([`indices`]);
//! - closed-form degree multisets and Zagreb values for the supported group
//!   families, cross-verified against the brute-force pipeline
//!   ([`closed_forms`]).

pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod group;
pub mod indices;
pub mod lattice;

pub use closed_forms::{
    structure_formula, verify_family, zagreb_formula, FamilySpec, SideValues, VerificationReport,
    FAMILY_NAMES,
};
pub use error::{Error, Result};
pub use graph::{
    build_sgb, build_sgb_sequential, pr_h, star_decomposition, SgbGraph, StarDecomposition,
};
pub use group::{FiniteGroup, GroupDescriptor};
pub use indices::{
    check_hv, check_hv_generic, index_report, indices_from_star_multiset, other_indices, zagreb,
    HvVerdict, IndexReport, OtherIndices,
};
pub use lattice::{
    all_subgroups, all_subgroups_with_cap, generated_subgroup, Subgroup, SubgroupLattice,
};

/// Exact rational number used for probabilities and index comparisons.
///
/// i128 components are enough headroom for every quantity in scope: at the
/// default order cap of 512, degree sums are bounded by |G|^4 < 7e10 and the
/// largest cross products stay far below i128::MAX.
pub type Rat = num_rational::Ratio<i128>;

/// Default upper bound on |G| for full B(G) construction.
///
/// Pair enumeration is Theta(|G|^2) closures; the default keeps a single
/// group comfortably interactive. Callers can raise it explicitly (the CLI
/// does so via the SGB_MAX_ORDER environment variable, with a warning).
pub const DEFAULT_ORDER_CAP: usize = 512;
