//! Finite groups in a dense element-index representation.
//!
//! Elements are the indices 0..n-1 and multiplication is a materialized
//! n x n table, so the pair-enumeration loops downstream pay one array read
//! per product. Family constructors fill the table from closed-form rules
//! and are correct by construction; [`FiniteGroup::from_cayley_table`]
//! validates untrusted input (latin square, identity, inverses, and the full
//! O(n^3) associativity sweep). [`FiniteGroup::validate`] reruns the same
//! sweep on any group when a caller wants the expensive certainty.
//!
//! Element encodings:
//! - cyclic Z_n: i is the residue i, multiplication is addition mod n;
//! - dihedral D_{2n} = <a, b : a^n = b^2 = 1, bab = a^-1>: indices 0..n-1
//!   are a^i, indices n..2n-1 are a^i b;
//! - dicyclic Q_{4n} = <a, b : a^{2n} = 1, b^2 = a^n, bab^-1 = a^-1>:
//!   indices 0..2n-1 are a^i, indices 2n..4n-1 are a^i b;
//! - direct product G x H: index i * |H| + j encodes (g_i, h_j).

use std::fmt;

use crate::error::{Error, GroupCheck, Result};

/// Hard cap on the materialized multiplication table side length.
pub const MAX_TABLE_ORDER: usize = 4096;

/// Identifies how a group was constructed. Deterministic and stable across
/// runs; used as the group key in reports and search logs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// Integers mod n under addition; displayed `Z{n}`.
    Cyclic { n: usize },
    /// Dihedral group of order 2n; displayed `D{2n}`.
    Dihedral { n: usize },
    /// Dicyclic group of order 4n; displayed `Q{4n}`.
    Dicyclic { n: usize },
    /// Direct product with the factor list flattened; factors joined by `x`.
    Product { factors: Vec<GroupDescriptor> },
    /// Validated user-supplied Cayley table; displayed `table:{source}`.
    Table { source: String },
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic { n } => write!(f, "Z{n}"),
            GroupDescriptor::Dihedral { n } => write!(f, "D{}", 2 * n),
            GroupDescriptor::Dicyclic { n } => write!(f, "Q{}", 4 * n),
            GroupDescriptor::Product { factors } => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupDescriptor::Table { source } => write!(f, "table:{source}"),
        }
    }
}

/// A finite group on elements 0..n-1 with a materialized Cayley table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    identity: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    descriptor: GroupDescriptor,
}

impl FiniteGroup {
    /// Cyclic group Z_n. Errors on n = 0 or n over the table cap.
    pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
        check_order(n, 1)?;
        let mut table = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = ((i + j) % n) as u16;
            }
        }
        Ok(FiniteGroup::from_parts(
            table,
            n,
            GroupDescriptor::Cyclic { n },
        ))
    }

    /// Dihedral group D_{2n} of order 2n. n = 1 gives Z_2, n = 2 the Klein
    /// four group; both are degenerate but valid.
    pub fn make_dihedral(n: usize) -> Result<FiniteGroup> {
        check_order(n, 2)?;
        let ord = 2 * n;
        let mut table = vec![0u16; ord * ord];
        let mut set = |r: usize, c: usize, v: usize| table[r * ord + c] = v as u16;
        for i in 0..n {
            for j in 0..n {
                set(i, j, (i + j) % n);
                set(i, n + j, n + (i + j) % n);
                // b a^j = a^-j b
                set(n + i, j, n + (i + n - j) % n);
                set(n + i, n + j, (i + n - j) % n);
            }
        }
        Ok(FiniteGroup::from_parts(
            table,
            ord,
            GroupDescriptor::Dihedral { n },
        ))
    }

    /// Dicyclic group Q_{4n} of order 4n. n = 1 is degenerate: b^2 = a makes
    /// the group cyclic of order 4.
    pub fn make_dicyclic(n: usize) -> Result<FiniteGroup> {
        check_order(n, 4)?;
        let m = 2 * n;
        let ord = 4 * n;
        let mut table = vec![0u16; ord * ord];
        let mut set = |r: usize, c: usize, v: usize| table[r * ord + c] = v as u16;
        for i in 0..m {
            for j in 0..m {
                set(i, j, (i + j) % m);
                set(i, m + j, m + (i + j) % m);
                set(m + i, j, m + (i + m - j) % m);
                // (a^i b)(a^j b) = a^{i-j} b^2 = a^{i-j+n}
                set(m + i, m + j, (i + m - j + n) % m);
            }
        }
        Ok(FiniteGroup::from_parts(
            table,
            ord,
            GroupDescriptor::Dicyclic { n },
        ))
    }

    /// Direct product with componentwise multiplication. The descriptor
    /// flattens nested products so Z2 x (Z2 x Z3) displays as Z2xZ2xZ3.
    pub fn make_direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
        let ord = g
            .order
            .checked_mul(h.order)
            .ok_or_else(|| Error::ResourceLimit("direct product order overflows".into()))?;
        if ord > MAX_TABLE_ORDER {
            return Err(Error::ResourceLimit(format!(
                "direct product order {ord} exceeds table cap {MAX_TABLE_ORDER}"
            )));
        }
        let (gn, hn) = (g.order, h.order);
        let mut table = vec![0u16; ord * ord];
        for gi in 0..gn {
            for hi in 0..hn {
                let row = gi * hn + hi;
                for gj in 0..gn {
                    for hj in 0..hn {
                        let col = gj * hn + hj;
                        let v = g.mul(gi, gj) * hn + h.mul(hi, hj);
                        table[row * ord + col] = v as u16;
                    }
                }
            }
        }
        let mut factors = Vec::new();
        let mut push = |d: &GroupDescriptor| match d {
            GroupDescriptor::Product { factors: fs } => factors.extend(fs.iter().cloned()),
            other => factors.push(other.clone()),
        };
        push(&g.descriptor);
        push(&h.descriptor);
        Ok(FiniteGroup::from_parts(
            table,
            ord,
            GroupDescriptor::Product { factors },
        ))
    }

    /// Builds a group from an untrusted Cayley table, validating the latin
    /// square property, a two-sided identity, inverses, and associativity in
    /// that order. Row i, column j holds the product of element i by j.
    pub fn from_cayley_table(rows: &[Vec<usize>], source: String) -> Result<FiniteGroup> {
        let n = rows.len();
        check_order(n, 1)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "table is not square: row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidParameter(format!(
                        "table entry {v} in row {i} out of range 0..{n}"
                    )));
                }
            }
        }
        let mut table = vec![0u16; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                table[i * n + j] = v as u16;
            }
        }
        check_latin(&table, n)?;
        let identity = find_identity(&table, n)?;
        let inverse = find_inverses(&table, n, identity)?;
        check_associativity(&table, n)?;
        Ok(FiniteGroup {
            order: n,
            identity,
            table,
            inverse,
            descriptor: GroupDescriptor::Table { source },
        })
    }

    /// Parses the plain-text Cayley table format and validates it.
    ///
    /// Format: the first significant line is the order n, followed by n lines
    /// of n whitespace-separated 0-based element indices. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn from_cayley_text(src: &str, source: String) -> Result<FiniteGroup> {
        let rows = parse_cayley_text(src)?;
        FiniteGroup::from_cayley_table(&rows, source)
    }

    fn from_parts(table: Vec<u16>, order: usize, descriptor: GroupDescriptor) -> FiniteGroup {
        // Family constructors are correct by construction, so only the cheap
        // derivations run here; `validate` re-checks everything on demand.
        let identity = find_identity(&table, order).expect("constructor produced no identity");
        let inverse =
            find_inverses(&table, order, identity).expect("constructor produced no inverses");
        FiniteGroup {
            order,
            identity,
            table,
            inverse,
            descriptor,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    /// Product of elements a and b.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn mul_u16(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.order + b as usize]
    }

    /// Inverse of element a.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Multiplicative order of element x: the least k >= 1 with x^k = e.
    pub fn element_order(&self, x: usize) -> Result<usize> {
        self.check_element(x)?;
        let mut acc = x;
        let mut k = 1usize;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
            if k > self.order {
                return Err(Error::InternalInconsistency(format!(
                    "element {x} has no finite order; table is not a group"
                )));
            }
        }
        Ok(k)
    }

    pub fn is_abelian(&self) -> bool {
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                if self.mul(i, j) != self.mul(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Full group-axiom sweep, including the O(n^3) associativity check that
    /// family constructors skip. Intended for tests and debugging.
    pub fn validate(&self) -> Result<()> {
        check_latin(&self.table, self.order)?;
        let identity = find_identity(&self.table, self.order)?;
        if identity != self.identity {
            return Err(Error::InternalInconsistency(format!(
                "stored identity {} but table identity is {identity}",
                self.identity
            )));
        }
        let inverse = find_inverses(&self.table, self.order, identity)?;
        if inverse != self.inverse {
            return Err(Error::InternalInconsistency(
                "stored inverses disagree with table".into(),
            ));
        }
        check_associativity(&self.table, self.order)
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.order {
            return Err(Error::InvalidElement {
                index: x,
                order: self.order,
            });
        }
        Ok(())
    }
}

fn check_order(n: usize, scale: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "group order parameter must be positive".into(),
        ));
    }
    let ord = n.saturating_mul(scale);
    if ord > MAX_TABLE_ORDER {
        return Err(Error::ResourceLimit(format!(
            "order {ord} exceeds table cap {MAX_TABLE_ORDER}"
        )));
    }
    Ok(())
}

fn check_latin(table: &[u16], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.fill(false);
        for j in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] {
                return Err(Error::NotAGroup {
                    check: GroupCheck::LatinSquare,
                    witness: format!("row {i} repeats value {v}"),
                });
            }
            seen[v] = true;
        }
    }
    for j in 0..n {
        seen.fill(false);
        for i in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] {
                return Err(Error::NotAGroup {
                    check: GroupCheck::LatinSquare,
                    witness: format!("column {j} repeats value {v}"),
                });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn find_identity(table: &[u16], n: usize) -> Result<usize> {
    for e in 0..n {
        let ok = (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x);
        if ok {
            return Ok(e);
        }
    }
    Err(Error::NotAGroup {
        check: GroupCheck::Identity,
        witness: "no two-sided identity element".into(),
    })
}

fn find_inverses(table: &[u16], n: usize, identity: usize) -> Result<Vec<u16>> {
    let mut inv = vec![0u16; n];
    for x in 0..n {
        let mut found = None;
        for y in 0..n {
            if table[x * n + y] as usize == identity && table[y * n + x] as usize == identity {
                found = Some(y);
                break;
            }
        }
        match found {
            Some(y) => inv[x] = y as u16,
            None => {
                return Err(Error::NotAGroup {
                    check: GroupCheck::Inverse,
                    witness: format!("element {x} has no two-sided inverse"),
                })
            }
        }
    }
    Ok(inv)
}

fn check_associativity(table: &[u16], n: usize) -> Result<()> {
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b] as usize;
            for c in 0..n {
                let bc = table[b * n + c] as usize;
                if table[ab * n + c] != table[a * n + bc] {
                    return Err(Error::NotAGroup {
                        check: GroupCheck::Associativity,
                        witness: format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Parses the text Cayley-table format (see [`FiniteGroup::from_cayley_text`])
/// into rows of element indices. Purely syntactic; group axioms are checked
/// by `from_cayley_table`.
pub fn parse_cayley_text(src: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("table file is empty".into()))?;
    let n: usize = first.parse().map_err(|_| {
        Error::InvalidInput(format!(
            "line {first_no}: expected the group order, got {first:?}"
        ))
    })?;
    if n == 0 {
        return Err(Error::InvalidInput(format!(
            "line {first_no}: order must be positive"
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines.next().ok_or_else(|| {
            Error::InvalidInput(format!("expected {n} table rows, found {}", rows.len()))
        })?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    Error::InvalidInput(format!("line {no}: bad element index {tok:?}"))
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::InvalidInput(format!(
                "line {no}: expected {n} entries, found {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::InvalidInput(format!(
            "line {no}: trailing data after table rows"
        )));
    }
    Ok(rows)
}
