//! Degree-based topological indices of B(G) and the M2/|e| vs M1/|V|
//! comparison.
//!
//! For a star decomposition with subgroup degrees m = deg(H):
//!
//!   M1 = |G|^2 + sum_H m^2          (pair vertices all have degree 1)
//!   M2 = sum_H m^2                  (each star contributes m edges of
//!                                    endpoint product m * 1)
//!
//! so M1 - M2 = |G|^2 always. The comparison M2/|e| >= M1/|V| is evaluated
//! two independent ways and cross-checked: by direct cross multiplication,
//! and through the sign of |L(G)| * P - 1 where P = sum_H Pr_H(G)^2 =
//! M2 / |G|^4. Everything on this path is exact integer or rational
//! arithmetic; floating point is confined to the radical indices.
//!
//! Per star K_{1,m} the radical indices contribute:
//!
//!   Randic            m^(1/2)
//!   ABC               (m^2 - m)^(1/2)
//!   geometric-arith.  2 m^(3/2) / (1 + m)
//!   harmonic          2 m / (1 + m)
//!   sum-connectivity  m / (1 + m)^(1/2)

use crate::error::{Error, Result};
use crate::graph::SgbGraph;
use crate::Rat;

/// Outcome of the M2/|e| >= M1/|V| comparison.
///
/// `criterion` is |L(G)| * P - 1 in lowest terms for B(G) graphs, and the
/// integer M2 * |V| - M1 * |e| for generic graphs; in both cases `holds`
/// iff it is nonnegative and `equality` iff it is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HvVerdict {
    pub holds: bool,
    pub lhs: Rat,
    pub rhs: Rat,
    pub criterion: Rat,
    pub equality: bool,
}

/// Radical degree-based indices of a star forest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OtherIndices {
    pub r: f64,
    pub abc: f64,
    pub ga: f64,
    pub h: f64,
    pub sci: f64,
}

/// Everything the reporting layer needs about one graph.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub m1: i128,
    pub m2: i128,
    pub edge_count: i128,
    pub vertex_count: i128,
    /// P = sum_H Pr_H(G)^2, in lowest terms.
    pub p_value: Rat,
    pub hv: HvVerdict,
    pub other: OtherIndices,
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::InternalInconsistency("i128 overflow in index arithmetic".into()))
}

fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b)
        .ok_or_else(|| Error::InternalInconsistency("i128 overflow in index arithmetic".into()))
}

fn sum_of_squares(degrees: &[u64]) -> Result<i128> {
    let mut acc = 0i128;
    for &d in degrees {
        let d = d as i128;
        acc = checked_add(acc, checked_mul(d, d)?)?;
    }
    Ok(acc)
}

/// First and second Zagreb indices (M1, M2) of B(G), exactly.
pub fn zagreb(graph: &SgbGraph) -> Result<(i128, i128)> {
    let m2 = sum_of_squares(graph.degrees())?;
    let m1 = checked_add(m2, graph.edge_count() as i128)?;
    Ok((m1, m2))
}

/// Checks M2/|e| >= M1/|V| on B(G), cross-validating the direct comparison
/// against the sign of |L(G)| * P - 1. Disagreement between the two routes
/// is an internal error.
pub fn check_hv(graph: &SgbGraph) -> Result<HvVerdict> {
    let (m1, m2) = zagreb(graph)?;
    let e = graph.edge_count() as i128;
    let v = graph.vertex_count() as i128;
    let l = graph.lattice_size() as i128;
    let e2 = checked_mul(e, e)?;

    let lhs = Rat::new(m2, e);
    let rhs = Rat::new(m1, v);
    let direct_holds = checked_mul(m2, v)? >= checked_mul(m1, e)?;

    let criterion = Rat::new(checked_add(checked_mul(l, m2)?, -e2)?, e2);
    let criterion_holds = *criterion.numer() >= 0;
    if direct_holds != criterion_holds {
        return Err(Error::InternalInconsistency(format!(
            "direct comparison ({direct_holds}) disagrees with criterion sign ({criterion_holds})"
        )));
    }
    Ok(HvVerdict {
        holds: direct_holds,
        lhs,
        rhs,
        criterion,
        equality: *criterion.numer() == 0,
    })
}

/// Checks M2/|e| >= M1/|V| on an arbitrary graph given its vertex degrees
/// and, per edge, the degrees of the two endpoints. Here `criterion` is the
/// integer M2 * |V| - M1 * |e|.
pub fn check_hv_generic(vertex_degrees: &[u64], edges: &[(u64, u64)]) -> Result<HvVerdict> {
    if vertex_degrees.is_empty() {
        return Err(Error::InvalidInput("graph has no vertices".into()));
    }
    if edges.is_empty() {
        return Err(Error::InvalidInput(
            "graph has no edges, so M2/|e| is undefined".into(),
        ));
    }
    let degree_sum: i128 = vertex_degrees.iter().map(|&d| d as i128).sum();
    if degree_sum != 2 * edges.len() as i128 {
        return Err(Error::InvalidInput(format!(
            "handshake violation: degree sum {degree_sum} != 2 * {} edges",
            edges.len()
        )));
    }
    let present: std::collections::HashSet<u64> = vertex_degrees.iter().copied().collect();
    for &(du, dv) in edges {
        for d in [du, dv] {
            if d == 0 || !present.contains(&d) {
                return Err(Error::InvalidInput(format!(
                    "edge endpoint degree {d} matches no vertex"
                )));
            }
        }
    }

    let m1 = sum_of_squares(vertex_degrees)?;
    let mut m2 = 0i128;
    for &(du, dv) in edges {
        m2 = checked_add(m2, checked_mul(du as i128, dv as i128)?)?;
    }
    let e = edges.len() as i128;
    let v = vertex_degrees.len() as i128;
    let criterion = Rat::from_integer(checked_add(checked_mul(m2, v)?, -checked_mul(m1, e)?)?);
    Ok(HvVerdict {
        holds: *criterion.numer() >= 0,
        lhs: Rat::new(m2, e),
        rhs: Rat::new(m1, v),
        criterion,
        equality: *criterion.numer() == 0,
    })
}

/// Evaluates the radical indices of a star forest given its star sizes.
/// Summation follows the slice order, so a fixed input order gives a
/// bit-reproducible result.
pub fn indices_from_star_multiset(stars: &[u64]) -> OtherIndices {
    let mut out = OtherIndices {
        r: 0.0,
        abc: 0.0,
        ga: 0.0,
        h: 0.0,
        sci: 0.0,
    };
    for &m in stars {
        if m == 0 {
            continue;
        }
        let mf = m as f64;
        out.r += mf.sqrt();
        out.abc += (mf * mf - mf).sqrt();
        out.ga += 2.0 * mf * mf.sqrt() / (1.0 + mf);
        out.h += 2.0 * mf / (1.0 + mf);
        out.sci += mf / (1.0 + mf).sqrt();
    }
    out
}

/// Radical indices of B(G). Sums run in lattice id order; isolated vertices
/// contribute nothing.
pub fn other_indices(graph: &SgbGraph) -> OtherIndices {
    indices_from_star_multiset(graph.degrees())
}

/// Assembles the full index report for one graph.
pub fn index_report(graph: &SgbGraph) -> Result<IndexReport> {
    let (m1, m2) = zagreb(graph)?;
    let hv = check_hv(graph)?;
    let e = graph.edge_count() as i128;
    Ok(IndexReport {
        m1,
        m2,
        edge_count: e,
        vertex_count: graph.vertex_count() as i128,
        p_value: Rat::new(m2, checked_mul(e, e)?),
        hv,
        other: other_indices(graph),
    })
}
