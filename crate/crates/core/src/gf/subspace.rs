//! Subspaces of GF(q)^n in canonical reduced row echelon form.

use std::cmp::Ordering;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Default cap on the number of subspaces [`enumerate_subspaces`] may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 2_000_000;

/// A subspace of GF(q)^n stored as its RREF basis.
///
/// Two subspaces are equal iff their RREF matrices are identical. The total
/// order is by ambient dimension, then dimension, then the row-major entries
/// read as a big-endian base-q digit string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Elem>>,
}

impl Subspace {
    /// The zero subspace {0} of GF(q)^n.
    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: Vec::new() }
    }

    /// The whole space GF(q)^n.
    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as Elem).collect())
            .collect();
        Subspace { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Pivot column of each row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("RREF rows are nonzero"))
            .collect()
    }

    /// Row-major entries; the digit string used for ordering.
    pub fn key(&self) -> Vec<Elem> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Display label: rows separated by `|`, entries as digits (or
    /// dot-separated decimals once q > 10). The zero subspace is `0`.
    pub fn label(&self, q: usize) -> String {
        if self.rows.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                s.push('|');
            }
            if q <= 10 {
                for &x in row {
                    write!(s, "{x}").unwrap();
                }
            } else {
                s.push_str(&row.iter().map(|x| x.to_string()).join("."));
            }
        }
        s
    }

    /// Whether `v` lies in this subspace. `v` must have length `n`.
    pub fn contains_vector(&self, field: &Field, v: &[Elem]) -> bool {
        let mut r = v.to_vec();
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            let c = r[p];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        r.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, field: &Field, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|v| self.contains_vector(field, v))
    }

    /// Rebuild from rows that must already be in RREF.
    pub fn from_rref_rows(field: &Field, n: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let s = rref(field, n, &rows)?;
        if s.rows != rows {
            return Err(Error::Parse("rows are not in reduced row echelon form".into()));
        }
        Ok(s)
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.rows.len())
            .cmp(&(other.n, other.rows.len()))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Gauss-Jordan elimination in place over the first `ncols` columns; zero
/// rows are removed. Returns pivot columns.
fn eliminate(field: &Field, m: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv_nonzero(m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

/// Canonical RREF basis of the span of `rows`, all of length `n`.
pub fn rref(field: &Field, n: usize, rows: &[Vec<Elem>]) -> Result<Subspace> {
    for row in rows {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "row of length {} in a space of dimension {n}",
                row.len()
            )));
        }
        for &x in row {
            field.check(x)?;
        }
    }
    let mut m = rows.to_vec();
    eliminate(field, &mut m, n);
    Ok(Subspace { n, rows: m })
}

fn same_ambient(x: &Subspace, y: &Subspace) -> Result<()> {
    if x.n != y.n {
        return Err(Error::Shape(format!(
            "ambient dimensions differ: {} vs {}",
            x.n, y.n
        )));
    }
    Ok(())
}

/// X + Y.
pub fn subspace_sum(field: &Field, x: &Subspace, y: &Subspace) -> Result<Subspace> {
    same_ambient(x, y)?;
    let mut m: Vec<Vec<Elem>> = x.rows.iter().chain(&y.rows).cloned().collect();
    eliminate(field, &mut m, x.n);
    Ok(Subspace { n: x.n, rows: m })
}

/// X ∩ Y by Zassenhaus: reduce `[x | x]` over `[y | 0]`; rows whose left
/// half vanishes carry a basis of the intersection in their right half.
pub fn subspace_intersect(field: &Field, x: &Subspace, y: &Subspace) -> Result<Subspace> {
    same_ambient(x, y)?;
    let n = x.n;
    if x.is_zero() || y.is_zero() {
        return Ok(Subspace::zero(n));
    }
    let mut m: Vec<Vec<Elem>> = x
        .rows
        .iter()
        .map(|r| r.iter().chain(r).copied().collect())
        .chain(
            y.rows
                .iter()
                .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, n)).collect()),
        )
        .collect();
    eliminate(field, &mut m, 2 * n);
    let basis: Vec<Vec<Elem>> = m
        .into_iter()
        .filter(|r| r[..n].iter().all(|&v| v == 0))
        .map(|r| r[n..].to_vec())
        .collect();
    rref(field, n, &basis)
}

/// Gaussian binomial [n choose k]_q, the number of k-dimensional subspaces.
pub fn gaussian_binomial(q: u128, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Every subspace of GF(q)^n (or only the dimension-`k` ones), each once, in
/// canonical order. Fails when the count exceeds `budget`.
pub fn enumerate_subspaces(
    field: &Field,
    n: usize,
    k: Option<usize>,
    budget: u128,
) -> Result<Vec<Subspace>> {
    let q = field.q() as u128;
    let dims: Vec<usize> = match k {
        Some(k) if k > n => {
            return Err(Error::Domain(format!("dimension {k} exceeds ambient {n}")));
        }
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let needed: u128 = dims.iter().map(|&d| gaussian_binomial(q, n, d)).sum();
    if needed > budget {
        return Err(Error::Resource {
            what: format!("enumerating subspaces of GF({q})^{n}"),
            needed,
            limit: budget,
        });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for d in dims {
        for pivots in (0..n).combinations(d) {
            // free positions: right of the row's pivot, outside pivot columns
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    let pivots = &pivots;
                    (p + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let total = (field.q() as u64).pow(free.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![0 as Elem; n]; d];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                for &(r, c) in free.iter().rev() {
                    rows[r][c] = (code % field.q() as u64) as Elem;
                    code /= field.q() as u64;
                }
                out.push(Subspace { n, rows });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// JSON form of a subspace: `{"q", "modulus", "n", "rows"}` with RREF rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub q: usize,
    pub modulus: Option<Vec<u8>>,
    pub n: usize,
    pub rows: Vec<Vec<Elem>>,
}

impl SubspaceJson {
    pub fn new(field: &Field, s: &Subspace) -> Self {
        SubspaceJson {
            q: field.q(),
            modulus: field.modulus().map(<[u8]>::to_vec),
            n: s.n,
            rows: s.rows.clone(),
        }
    }

    /// Validates the field and that `rows` are already canonical.
    pub fn decode(&self) -> Result<(Field, Subspace)> {
        let field = match &self.modulus {
            Some(m) => Field::with_modulus(self.q, m)?,
            None => Field::new(self.q)?,
        };
        let s = Subspace::from_rref_rows(&field, self.n, self.rows.clone())?;
        Ok((field, s))
    }
}
