//! Per-group JSON reports, DOT drawings, and explicit degree-file parsing.

use serde::Serialize;
use sgb_core::{
    all_subgroups_with_cap, build_sgb, index_report, star_decomposition, FiniteGroup, HvVerdict,
    Rat, SgbGraph, SubgroupLattice,
};

use crate::{Error, Result};

/// Exact rational on the wire.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatJson {
    pub num: i64,
    pub den: i64,
}

impl RatJson {
    fn try_from_rat(value: &Rat, what: &str) -> Result<RatJson> {
        let convert = |x: i128| {
            i64::try_from(x).map_err(|_| {
                Error::Core(sgb_core::Error::InternalInconsistency(format!(
                    "{what} = {value} does not fit the 64-bit wire format"
                )))
            })
        };
        Ok(RatJson {
            num: convert(*value.numer())?,
            den: convert(*value.denom())?,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DegreeRow {
    pub subgroup_order: u64,
    pub degree: u64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct HvJson {
    pub holds: bool,
    pub equality: bool,
    pub criterion: RatJson,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IndicesJson {
    pub r: f64,
    pub abc: f64,
    pub ga: f64,
    pub h: f64,
    pub sci: f64,
}

/// The full JSON document `report` prints for one group.
#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub descriptor: String,
    pub order: u64,
    pub lattice_size: u64,
    /// one row per subgroup, in lattice order (ascending order, then members)
    pub degrees: Vec<DegreeRow>,
    /// star sizes sorted ascending
    pub stars: Vec<u64>,
    /// subgroups no pair generates
    pub isolated: u64,
    pub m1: i64,
    pub m2: i64,
    pub edge_count: u64,
    pub vertex_count: u64,
    pub p_value: RatJson,
    pub hv: HvJson,
    pub indices: IndicesJson,
}

/// Verdict document for `check-generic`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerdictJson {
    pub holds: bool,
    pub equality: bool,
    pub lhs: RatJson,
    pub rhs: RatJson,
    pub criterion: RatJson,
}

impl VerdictJson {
    pub fn try_from_verdict(verdict: &HvVerdict) -> Result<VerdictJson> {
        Ok(VerdictJson {
            holds: verdict.holds,
            equality: verdict.equality,
            lhs: RatJson::try_from_rat(&verdict.lhs, "lhs")?,
            rhs: RatJson::try_from_rat(&verdict.rhs, "rhs")?,
            criterion: RatJson::try_from_rat(&verdict.criterion, "criterion")?,
        })
    }
}

/// A group together with everything computed about it.
#[derive(Debug)]
pub struct Analysis {
    pub group: FiniteGroup,
    pub lattice: SubgroupLattice,
    pub graph: SgbGraph,
    pub report: GroupReport,
}

/// Full pipeline for one group: lattice, B(G), indices, report document.
pub fn analyze(group: FiniteGroup, cap: usize) -> Result<Analysis> {
    let lattice = all_subgroups_with_cap(&group, cap).map_err(Error::Core)?;
    let graph = build_sgb(&group, &lattice).map_err(Error::Core)?;
    let indices = index_report(&graph).map_err(Error::Core)?;
    let decomposition = star_decomposition(&graph);

    let to_i64 = |x: i128, what: &str| {
        i64::try_from(x).map_err(|_| {
            Error::Core(sgb_core::Error::InternalInconsistency(format!(
                "{what} = {x} does not fit the 64-bit wire format"
            )))
        })
    };

    let degrees = lattice
        .subgroups()
        .iter()
        .zip(graph.degrees())
        .map(|(sub, &degree)| DegreeRow {
            subgroup_order: sub.order() as u64,
            degree,
        })
        .collect();
    let report = GroupReport {
        descriptor: group.descriptor().to_string(),
        order: group.order() as u64,
        lattice_size: lattice.len() as u64,
        degrees,
        stars: decomposition.stars.clone(),
        isolated: decomposition.isolated as u64,
        m1: to_i64(indices.m1, "m1")?,
        m2: to_i64(indices.m2, "m2")?,
        edge_count: graph.edge_count(),
        vertex_count: graph.vertex_count(),
        p_value: RatJson::try_from_rat(&indices.p_value, "p_value")?,
        hv: HvJson {
            holds: indices.hv.holds,
            equality: indices.hv.equality,
            criterion: RatJson::try_from_rat(&indices.hv.criterion, "criterion")?,
        },
        indices: IndicesJson {
            r: indices.other.r,
            abc: indices.other.abc,
            ga: indices.other.ga,
            h: indices.other.h,
            sci: indices.other.sci,
        },
    };
    Ok(Analysis {
        group,
        lattice,
        graph,
        report,
    })
}

/// DOT drawing of B(G). Every component is a star, so each star's leaves
/// collapse into one annotated pair node; isolated subgroups stand alone.
pub fn dot_string(analysis: &Analysis) -> String {
    use std::fmt::Write as _;

    let mut out = String::new();
    let name = analysis.report.descriptor.replace('"', "'");
    let _ = writeln!(out, "graph \"B({name})\" {{");
    let _ = writeln!(out, "  node [shape=box];");
    for (id, sub) in analysis.lattice.subgroups().iter().enumerate() {
        let degree = analysis.graph.degrees()[id];
        let _ = writeln!(
            out,
            "  h{id} [label=\"H{id} order={} deg={degree}\"];",
            sub.order()
        );
        if degree > 0 {
            let plural = if degree == 1 { "" } else { "s" };
            let _ = writeln!(
                out,
                "  p{id} [label=\"{degree} pair{plural}\", shape=ellipse];"
            );
            let _ = writeln!(out, "  h{id} -- p{id} [label=\"{degree}\"];");
        }
    }
    out.push_str("}\n");
    out
}

/// Vertex degrees plus edges given as endpoint-degree pairs.
pub type DegreeLists = (Vec<u64>, Vec<(u64, u64)>);

/// Parses a degree file: `V E` header, then V vertex degrees, then E edges
/// as endpoint-degree pairs. `#` starts a comment; whitespace is free-form.
pub fn parse_degree_file(text: &str) -> Result<DegreeLists> {
    let mut values = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let data = line.split('#').next().unwrap_or("");
        for token in data.split_whitespace() {
            let value: u64 = token.parse().map_err(|_| {
                Error::Core(sgb_core::Error::InvalidInput(format!(
                    "line {}: {token:?} is not a nonnegative integer",
                    line_no + 1
                )))
            })?;
            values.push(value);
        }
    }
    if values.len() < 2 {
        return Err(Error::Core(sgb_core::Error::InvalidInput(
            "expected a `V E` header".into(),
        )));
    }
    let v = values[0] as usize;
    let e = values[1] as usize;
    let expected = 2 + v + 2 * e;
    if values.len() != expected {
        return Err(Error::Core(sgb_core::Error::InvalidInput(format!(
            "expected {expected} numbers for V={v}, E={e} (header + degrees + endpoint pairs), found {}",
            values.len()
        ))));
    }
    let degrees = values[2..2 + v].to_vec();
    let edges = values[2 + v..]
        .chunks_exact(2)
        .map(|pair| (pair[0], pair[1]))
        .collect();
    Ok((degrees, edges))
}
