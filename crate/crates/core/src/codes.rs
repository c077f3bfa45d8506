//! Subspace codes: sets of subspaces of GF(q)^n with an addition table `⊞`
//! and optionally a complement map.
//!
//! Partition codes are built from a linearly independent set `E` split into
//! blocks `E₁..E_m`; the codeword for `I ⊆ {1..m}` is the span of the blocks
//! in `I`, and `⟨E_I⟩ ⊞ ⟨E_J⟩ = ⟨E_{I △ J}⟩`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{rref, subspace_intersect, subspace_sum, Elem, Field, FieldSpec, Subspace, SubspaceJson};
use crate::linear::subspace_distance;

/// Default limit on the codeword count accepted by [`search_complement`].
pub const SEARCH_MAX_CODEWORDS: usize = 64;
/// Default limit on backtracking nodes in [`search_complement`].
pub const SEARCH_NODE_BUDGET: u64 = 10_000_000;

/// An independent set of `r` vectors and a partition of `0..r` into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCodeSpec {
    pub field: FieldSpec,
    pub n: usize,
    pub vectors: Vec<Vec<Elem>>,
    /// 0-based vector indices.
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionCodeSpec {
    /// The standard basis of GF(q)^n with every vector in its own block.
    pub fn fixed_basis(field: &Field, n: usize) -> Self {
        PartitionCodeSpec {
            field: field.spec(),
            n,
            vectors: (0..n)
                .map(|i| (0..n).map(|j| (i == j) as Elem).collect())
                .collect(),
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCode {
    field: Field,
    n: usize,
    codewords: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    /// Per codeword, the block subset `I` as a bitmask.
    index_sets: Option<Vec<u64>>,
    boxplus: Option<Vec<Vec<usize>>>,
    complement: Option<Vec<usize>>,
    blocks: Option<Vec<Vec<usize>>>,
}

/// A failing tuple of codeword indices for one axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness {
    pub axiom: String,
    pub codewords: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub name: String,
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

/// Per-axiom results; `witness` is the first failure in axiom order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomResult>,
    pub witness: Option<AxiomWitness>,
}

impl AxiomReport {
    fn from_results(axioms: Vec<AxiomResult>) -> Self {
        let witness = axioms.iter().find_map(|a| a.witness.clone());
        AxiomReport { axioms, witness }
    }

    pub fn holds(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.name == name)
    }
}

fn result(name: &str, witness: Option<(Vec<usize>, String)>) -> AxiomResult {
    AxiomResult {
        name: name.into(),
        holds: witness.is_none(),
        witness: witness.map(|(codewords, detail)| AxiomWitness {
            axiom: name.into(),
            codewords,
            detail,
        }),
    }
}

pub const LINEAR_AXIOMS: [&str; 7] = [
    "zero_codeword",
    "closure",
    "identity",
    "self_inverse",
    "commutativity",
    "associativity",
    "translation_invariance",
];

pub const COMPLEMENT_AXIOMS: [&str; 4] = ["direct_sum", "dimension_swap", "involution", "isometry"];

/// Builds the partition code of `spec`: `2^m` codewords, with `⊞` given by
/// symmetric difference of block sets.
pub fn build_partition_code(spec: &PartitionCodeSpec) -> Result<SubspaceCode> {
    let field = Field::from_spec(&spec.field)?;
    let n = spec.n;
    let r = spec.vectors.len();
    for v in &spec.vectors {
        if v.len() != n {
            return Err(Error::Shape(format!("vector of length {} in GF(q)^{n}", v.len())));
        }
    }
    let span = rref(&field, n, &spec.vectors)?;
    if span.dim() != r {
        return Err(Error::Rank(format!("{r} vectors span only dimension {}", span.dim())));
    }
    let m = spec.blocks.len();
    if m == 0 && r > 0 {
        return Err(Error::Partition("no blocks".into()));
    }
    if m >= 64 {
        return Err(Error::Partition(format!("{m} blocks; at most 63 supported")));
    }
    let mut seen = vec![false; r];
    for (b, block) in spec.blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::Partition(format!("block {} is empty", b + 1)));
        }
        for &i in block {
            if i >= r {
                return Err(Error::Partition(format!("index {} outside 1..={r}", i + 1)));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Partition(format!("index {} appears twice", i + 1)));
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::Partition(format!("index {} is in no block", i + 1)));
    }
    let mut by_mask: Vec<(u64, Subspace)> = Vec::with_capacity(1 << m);
    for mask in 0u64..1 << m {
        let rows: Vec<Vec<Elem>> = (0..m)
            .filter(|b| mask >> b & 1 == 1)
            .flat_map(|b| spec.blocks[b].iter().map(|&i| spec.vectors[i].clone()))
            .collect();
        by_mask.push((mask, rref(&field, n, &rows)?));
    }
    by_mask.sort_by(|a, b| a.1.cmp(&b.1));
    let codewords: Vec<Subspace> = by_mask.iter().map(|(_, s)| s.clone()).collect();
    let index_sets: Vec<u64> = by_mask.iter().map(|&(mask, _)| mask).collect();
    let pos_of_mask: HashMap<u64, usize> =
        index_sets.iter().enumerate().map(|(i, &mask)| (mask, i)).collect();
    let size = codewords.len();
    let boxplus = (0..size)
        .map(|i| (0..size).map(|j| pos_of_mask[&(index_sets[i] ^ index_sets[j])]).collect())
        .collect();
    let mut code = SubspaceCode::new(&field, n, codewords)?;
    if code.len() != size {
        return Err(Error::fault("block spans are not distinct", None));
    }
    code.index_sets = Some(index_sets);
    code.boxplus = Some(boxplus);
    code.blocks = Some(spec.blocks.clone());
    Ok(code)
}

impl SubspaceCode {
    /// A code with no tables. Codewords are deduplicated and sorted.
    pub fn new(field: &Field, n: usize, codewords: Vec<Subspace>) -> Result<Self> {
        let mut codewords = codewords;
        if let Some(s) = codewords.iter().find(|s| s.n() != n) {
            return Err(Error::Shape(format!("codeword in GF(q)^{} for a code in GF(q)^{n}", s.n())));
        }
        codewords.sort();
        codewords.dedup();
        let index = codewords.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(SubspaceCode {
            field: field.clone(),
            n,
            codewords,
            index,
            index_sets: None,
            boxplus: None,
            complement: None,
            blocks: None,
        })
    }

    /// Installs an addition table over codeword indices.
    pub fn with_boxplus(mut self, table: Vec<Vec<usize>>) -> Result<Self> {
        let size = self.len();
        if table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(Error::Shape(format!("addition table must be {size}×{size}")));
        }
        if table.iter().flatten().any(|&v| v >= size) {
            return Err(Error::Shape("addition table entry outside the code".into()));
        }
        self.boxplus = Some(table);
        Ok(self)
    }

    /// Installs a complement map over codeword indices.
    pub fn with_complement(mut self, map: Vec<usize>) -> Result<Self> {
        let size = self.len();
        if map.len() != size || map.iter().any(|&v| v >= size) {
            return Err(Error::Shape(format!("complement map must have {size} entries inside the code")));
        }
        self.complement = Some(map);
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn codeword(&self, i: usize) -> &Subspace {
        &self.codewords[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.index.contains_key(s)
    }

    pub fn index_sets(&self) -> Option<&[u64]> {
        self.index_sets.as_deref()
    }

    /// 0-based blocks of a partition code.
    pub fn blocks(&self) -> Option<&[Vec<usize>]> {
        self.blocks.as_deref()
    }

    pub fn boxplus_table(&self) -> Option<&[Vec<usize>]> {
        self.boxplus.as_deref()
    }

    pub fn complement_map(&self) -> Option<&[usize]> {
        self.complement.as_deref()
    }

    /// Number of codewords of dimension `k`.
    pub fn count_of_dim(&self, k: usize) -> usize {
        self.codewords.iter().filter(|s| s.dim() == k).count()
    }

    fn position(&self, s: &Subspace) -> Result<usize> {
        self.index_of(s)
            .ok_or_else(|| Error::Membership(s.label(self.field.q())))
    }

    /// `x ⊞ y` via the installed table.
    pub fn boxplus(&self, x: &Subspace, y: &Subspace) -> Result<Subspace> {
        let t = self
            .boxplus
            .as_ref()
            .ok_or_else(|| Error::precondition("code has no addition table", None))?;
        let (i, j) = (self.position(x)?, self.position(y)?);
        Ok(self.codewords[t[i][j]].clone())
    }

    /// `f(x)` via the installed complement map.
    pub fn complement(&self, x: &Subspace) -> Result<Subspace> {
        let f = self
            .complement
            .as_ref()
            .ok_or_else(|| Error::precondition("code has no complement map", None))?;
        Ok(self.codewords[f[self.position(x)?]].clone())
    }

    /// Overwrites one addition-table entry. For mutation fixtures.
    #[doc(hidden)]
    pub fn set_boxplus_entry(&mut self, i: usize, j: usize, value: usize) {
        if let Some(t) = &mut self.boxplus {
            t[i][j] = value;
        }
    }

    /// Overwrites one complement-map entry. For mutation fixtures.
    #[doc(hidden)]
    pub fn set_complement_entry(&mut self, i: usize, value: usize) {
        if let Some(f) = &mut self.complement {
            f[i] = value;
        }
    }

    fn distance_matrix(&self) -> Result<Vec<Vec<usize>>> {
        let size = self.len();
        let mut d = vec![vec![0; size]; size];
        for i in 0..size {
            for j in i + 1..size {
                let v = subspace_distance(&self.field, &self.codewords[i], &self.codewords[j])?;
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        Ok(d)
    }

    /// Checks every linear-code axiom exhaustively: `{0}` is a codeword,
    /// `⊞` is closed, has `{0}` as identity, every codeword is its own
    /// inverse, `⊞` is commutative and associative, and the subspace distance
    /// is invariant under translation by any codeword.
    pub fn verify_linear(&self) -> Result<AxiomReport> {
        let t = self
            .boxplus
            .as_ref()
            .ok_or_else(|| Error::precondition("code has no addition table", None))?;
        let size = self.len();
        let lbl = |i: usize| self.codewords[i].label(self.field.q());
        let zero = self.index_of(&Subspace::zero(self.n));
        let mut out = Vec::new();

        out.push(result(
            "zero_codeword",
            zero.is_none().then(|| (vec![], "{0} is not a codeword".to_string())),
        ));

        let closure = (0..size)
            .flat_map(|i| (0..size).map(move |j| (i, j)))
            .find(|&(i, j)| t[i][j] >= size)
            .map(|(i, j)| (vec![i, j], format!("{} ⊞ {} is not a codeword", lbl(i), lbl(j))));
        out.push(result("closure", closure));
        let in_code = |v: usize| v < size;

        let identity = match zero {
            None => Some((vec![], "no identity: {0} is not a codeword".to_string())),
            Some(z) => (0..size)
                .find(|&x| t[x][z] != x || t[z][x] != x)
                .map(|x| (vec![x, z], format!("{} ⊞ {{0}} ≠ {}", lbl(x), lbl(x)))),
        };
        out.push(result("identity", identity));

        let self_inverse = (0..size)
            .find(|&x| Some(t[x][x]) != zero)
            .map(|x| (vec![x], format!("{} ⊞ {} ≠ {{0}}", lbl(x), lbl(x))));
        out.push(result("self_inverse", self_inverse));

        let commutativity = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .find(|&(i, j)| t[i][j] != t[j][i])
            .map(|(i, j)| (vec![i, j], format!("{} ⊞ {} is not symmetric", lbl(i), lbl(j))));
        out.push(result("commutativity", commutativity));

        let mut assoc = None;
        'assoc: for x in 0..size {
            for y in 0..size {
                let xy = t[x][y];
                for z in 0..size {
                    let yz = t[y][z];
                    if !in_code(xy) || !in_code(yz) || t[xy][z] != t[x][yz] {
                        assoc = Some((vec![x, y, z], format!("({0} ⊞ {1}) ⊞ {2} ≠ {0} ⊞ ({1} ⊞ {2})", lbl(x), lbl(y), lbl(z))));
                        break 'assoc;
                    }
                }
            }
        }
        out.push(result("associativity", assoc));

        let d = self.distance_matrix()?;
        let mut invariance = None;
        'inv: for x in 0..size {
            for y in 0..size {
                for w in 0..size {
                    let (xw, yw) = (t[x][w], t[y][w]);
                    if !in_code(xw) || !in_code(yw) || d[x][y] != d[xw][yw] {
                        invariance = Some((
                            vec![x, y, w],
                            format!("d({}, {}) changes under translation by {}", lbl(x), lbl(y), lbl(w)),
                        ));
                        break 'inv;
                    }
                }
            }
        }
        out.push(result("translation_invariance", invariance));
        Ok(AxiomReport::from_results(out))
    }

    /// `X ∩ Y` is a codeword for every pair.
    pub fn verify_closed_under_intersection(&self) -> Result<AxiomReport> {
        let size = self.len();
        let mut w = None;
        'scan: for i in 0..size {
            for j in i + 1..size {
                let m = subspace_intersect(&self.field, &self.codewords[i], &self.codewords[j])?;
                if !self.contains(&m) {
                    w = Some((vec![i, j], format!("intersection {} is not a codeword", m.label(self.field.q()))));
                    break 'scan;
                }
            }
        }
        Ok(AxiomReport::from_results(vec![result("intersection_closure", w)]))
    }

    /// Installs `f(X) = X ⊞ F_q^n`. Requires the whole space as a codeword,
    /// an addition table passing [`SubspaceCode::verify_linear`], and closure
    /// under intersection.
    pub fn canonical_complement(&self) -> Result<SubspaceCode> {
        let Some(top) = self.index_of(&Subspace::full(self.n)) else {
            return Err(Error::precondition(
                "canonical complement needs the whole space as a codeword",
                None,
            ));
        };
        let Some(t) = &self.boxplus else {
            return Err(Error::precondition("code has no addition table", None));
        };
        let lin = self.verify_linear()?;
        if !lin.holds() {
            return Err(Error::precondition(
                format!("code is not linear: {}", lin.witness.map(|w| w.detail).unwrap_or_default()),
                None,
            ));
        }
        let closed = self.verify_closed_under_intersection()?;
        if !closed.holds() {
            return Err(Error::precondition("code is not closed under intersection", None));
        }
        let map = (0..self.len()).map(|x| t[x][top]).collect();
        let code = self.clone().with_complement(map)?;
        let report = code.verify_complement()?;
        if !report.holds() {
            return Err(Error::fault(
                format!(
                    "canonical complement fails {}",
                    report.witness.map(|w| w.detail).unwrap_or_default()
                ),
                None,
            ));
        }
        Ok(code)
    }

    /// Checks the complement axioms exhaustively: `X ∩ f(X) = {0}` and
    /// `X + f(X) = F_q^n`; `f` maps dimension `k` injectively into dimension
    /// `n − k`; `f(f(X)) = X`; and `f` preserves the subspace distance.
    pub fn verify_complement(&self) -> Result<AxiomReport> {
        let f = self
            .complement
            .as_ref()
            .ok_or_else(|| Error::precondition("code has no complement map", None))?;
        let size = self.len();
        let fd = &self.field;
        let lbl = |i: usize| self.codewords[i].label(fd.q());
        let mut out = Vec::new();

        let mut direct = None;
        for x in 0..size {
            let (a, b) = (&self.codewords[x], &self.codewords[f[x]]);
            if !subspace_intersect(fd, a, b)?.is_zero() || !subspace_sum(fd, a, b)?.is_full() {
                direct = Some((vec![x], format!("{} and f = {} are not complementary", lbl(x), lbl(f[x]))));
                break;
            }
        }
        out.push(result("direct_sum", direct));

        let mut swap = None;
        'swap: for x in 0..size {
            if self.codewords[f[x]].dim() + self.codewords[x].dim() != self.n {
                swap = Some((vec![x], format!("dim f({}) ≠ n − dim", lbl(x))));
                break;
            }
            for y in x + 1..size {
                if f[x] == f[y] && self.codewords[x].dim() == self.codewords[y].dim() {
                    swap = Some((vec![x, y], format!("f({}) = f({})", lbl(x), lbl(y))));
                    break 'swap;
                }
            }
        }
        out.push(result("dimension_swap", swap));

        let involution = (0..size)
            .find(|&x| f[f[x]] != x)
            .map(|x| (vec![x], format!("f(f({})) ≠ {}", lbl(x), lbl(x))));
        out.push(result("involution", involution));

        let d = self.distance_matrix()?;
        let isometry = (0..size)
            .flat_map(|x| (x + 1..size).map(move |y| (x, y)))
            .find(|&(x, y)| d[x][y] != d[f[x]][f[y]])
            .map(|(x, y)| (vec![x, y], format!("d(f({}), f({})) ≠ d", lbl(x), lbl(y))));
        out.push(result("isometry", isometry));

        Ok(AxiomReport::from_results(out))
    }

    /// The tables and JSON form.
    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            q: self.field.q(),
            n: self.n,
            codewords: self.codewords.iter().map(|s| SubspaceJson::new(&self.field, s)).collect(),
            boxplus: self.boxplus.clone(),
            complement: self.complement.clone(),
            blocks: self
                .blocks
                .as_ref()
                .map(|b| b.iter().map(|blk| blk.iter().map(|i| i + 1).collect()).collect()),
            index_sets: self.index_sets.as_ref().map(|sets| {
                sets.iter()
                    .map(|&mask| (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect())
                    .collect()
            }),
        }
    }

    pub fn from_json(j: &CodeJson) -> Result<Self> {
        let mut field: Option<Field> = None;
        let mut words = Vec::with_capacity(j.codewords.len());
        for c in &j.codewords {
            let (f, s) = c.decode()?;
            if f.q() != j.q || field.as_ref().is_some_and(|g| *g != f) {
                return Err(Error::Parse("codewords over different fields".into()));
            }
            field = Some(f);
            words.push(s);
        }
        let field = match field {
            Some(f) => f,
            None => Field::new(j.q)?,
        };
        let sorted = {
            let mut w = words.clone();
            w.sort();
            w.dedup();
            w
        };
        if sorted != words {
            return Err(Error::Parse("codewords must be distinct and in canonical order".into()));
        }
        let mut code = SubspaceCode::new(&field, j.n, words)?;
        if let Some(t) = &j.boxplus {
            code = code.with_boxplus(t.clone())?;
        }
        if let Some(f) = &j.complement {
            code = code.with_complement(f.clone())?;
        }
        if let Some(blocks) = &j.blocks {
            let zero_based = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("blocks are 1-based".into())))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            code.blocks = Some(zero_based);
        }
        if let Some(sets) = &j.index_sets {
            if sets.len() != code.len() {
                return Err(Error::Parse("one index set per codeword required".into()));
            }
            let masks = sets
                .iter()
                .map(|s| {
                    s.iter().try_fold(0u64, |m, &b| match b {
                        1..=63 => Ok(m | 1 << (b - 1)),
                        _ => Err(Error::Parse(format!("block index {b} out of range"))),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            code.index_sets = Some(masks);
        }
        Ok(code)
    }
}

/// `{"q", "n", "codewords": [subspace JSON], "boxplus": [[int]] | null,
/// "complement": [int] | null, "blocks": [[int]] | null, "index_sets": [[int]] | null}`
/// with 1-based block numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: usize,
    pub n: usize,
    pub codewords: Vec<SubspaceJson>,
    pub boxplus: Option<Vec<Vec<usize>>>,
    pub complement: Option<Vec<usize>>,
    pub blocks: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub index_sets: Option<Vec<Vec<usize>>>,
}

/// Searches for any complement map on `codewords` (an involution pairing
/// dimension `k` with dimension `n − k` through direct-sum complements and
/// preserving subspace distance). Candidates are tried in index order.
pub fn search_complement(field: &Field, n: usize, codewords: &[Subspace]) -> Result<Option<SubspaceCode>> {
    search_complement_with_budget(field, n, codewords, SEARCH_MAX_CODEWORDS, SEARCH_NODE_BUDGET)
}

pub fn search_complement_with_budget(
    field: &Field,
    n: usize,
    codewords: &[Subspace],
    max_codewords: usize,
    node_budget: u64,
) -> Result<Option<SubspaceCode>> {
    let code = SubspaceCode::new(field, n, codewords.to_vec())?;
    let size = code.len();
    if size > max_codewords {
        return Err(Error::Resource {
            what: "codewords in a complement search".into(),
            needed: size as u128,
            limit: max_codewords as u128,
        });
    }
    let mut compatible = vec![vec![false; size]; size];
    for x in 0..size {
        for y in 0..size {
            let (a, b) = (&code.codewords[x], &code.codewords[y]);
            compatible[x][y] = a.dim() + b.dim() == n
                && subspace_intersect(field, a, b)?.is_zero()
                && subspace_sum(field, a, b)?.is_full();
        }
    }
    let d = code.distance_matrix()?;

    struct Search<'a> {
        size: usize,
        compatible: &'a [Vec<bool>],
        d: &'a [Vec<usize>],
        f: Vec<usize>,
        assigned: Vec<usize>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn isometric_with_assigned(&self, x: usize) -> bool {
            self.assigned
                .iter()
                .all(|&z| self.d[x][z] == self.d[self.f[x]][self.f[z]])
        }

        fn run(&mut self) -> Result<bool> {
            let Some(x) = (0..self.size).find(|&x| self.f[x] == usize::MAX) else {
                return Ok(true);
            };
            for y in 0..self.size {
                if !self.compatible[x][y] || (y != x && self.f[y] != usize::MAX) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::Resource {
                        what: "complement search nodes".into(),
                        needed: self.nodes as u128,
                        limit: self.budget as u128,
                    });
                }
                self.f[x] = y;
                self.f[y] = x;
                let ok = self.isometric_with_assigned(x) && {
                    self.assigned.push(x);
                    let ok_y = y == x || self.isometric_with_assigned(y);
                    if y != x {
                        self.assigned.push(y);
                    }
                    ok_y && self.d[x][y] == self.d[y][x]
                };
                if ok && self.run()? {
                    return Ok(true);
                }
                // undo whatever was pushed for this candidate
                while self.assigned.last().is_some_and(|&a| a == x || a == y) {
                    self.assigned.pop();
                }
                self.f[x] = usize::MAX;
                self.f[y] = usize::MAX;
            }
            Ok(false)
        }
    }

    let mut s = Search {
        size,
        compatible: &compatible,
        d: &d,
        f: vec![usize::MAX; size],
        assigned: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    if !s.run()? {
        return Ok(None);
    }
    let found = code.with_complement(s.f)?;
    if !found.verify_complement()?.holds() {
        return Err(Error::fault("search produced a map failing the complement axioms", None));
    }
    Ok(Some(found))
}

/// Count of one-dimensional codewords against the bound `2^{n−1}`, which is
/// only asserted over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneDimBound {
    pub q: usize,
    pub n: usize,
    pub count: usize,
    pub bound: Option<u128>,
    pub holds: Option<bool>,
}

pub fn one_dim_bound_check(field: &Field, n: usize, codewords: &[Subspace]) -> OneDimBound {
    let mut words = codewords.to_vec();
    words.sort();
    words.dedup();
    let count = words.iter().filter(|s| s.dim() == 1).count();
    let bound = (field.q() == 2 && n >= 1).then(|| 1u128 << (n - 1));
    OneDimBound {
        q: field.q(),
        n,
        count,
        bound,
        holds: bound.map(|b| count as u128 <= b),
    }
}

impl AxiomWitness {
    /// Re-checks the failing tuple against `code`'s tables and freshly
    /// computed subspace distances.
    pub fn verify(&self, code: &SubspaceCode) -> bool {
        let size = code.len();
        let c = &self.codewords;
        if c.iter().any(|&i| i >= size) {
            return false;
        }
        let fd = &code.field;
        let dist = |a: usize, b: usize| subspace_distance(fd, &code.codewords[a], &code.codewords[b]).ok();
        let zero = code.index_of(&Subspace::zero(code.n));
        let t = code.boxplus.as_deref();
        let f = code.complement.as_deref();
        match (self.axiom.as_str(), &c[..]) {
            ("zero_codeword", []) => zero.is_none(),
            ("identity", []) => zero.is_none(),
            ("closure", &[x, y]) => t.is_some_and(|t| t[x][y] >= size),
            ("identity", &[x, z]) => Some(z) == zero && t.is_some_and(|t| t[x][z] != x || t[z][x] != x),
            ("self_inverse", &[x]) => t.is_some_and(|t| Some(t[x][x]) != zero),
            ("commutativity", &[x, y]) => t.is_some_and(|t| t[x][y] != t[y][x]),
            ("associativity", &[x, y, z]) => t.is_some_and(|t| {
                let (xy, yz) = (t[x][y], t[y][z]);
                xy >= size || yz >= size || t[xy][z] != t[x][yz]
            }),
            ("translation_invariance", &[x, y, w]) => t.is_some_and(|t| {
                let (xw, yw) = (t[x][w], t[y][w]);
                xw >= size || yw >= size || dist(x, y) != dist(xw, yw)
            }),
            ("intersection_closure", &[x, y]) => subspace_intersect(fd, &code.codewords[x], &code.codewords[y])
                .is_ok_and(|m| !code.contains(&m)),
            ("direct_sum", &[x]) => f.is_some_and(|f| {
                let (a, b) = (&code.codewords[x], &code.codewords[f[x]]);
                !subspace_intersect(fd, a, b).is_ok_and(|m| m.is_zero())
                    || !subspace_sum(fd, a, b).is_ok_and(|s| s.is_full())
            }),
            ("dimension_swap", &[x]) => {
                f.is_some_and(|f| code.codewords[f[x]].dim() + code.codewords[x].dim() != code.n)
            }
            ("dimension_swap", &[x, y]) => f.is_some_and(|f| {
                x != y && f[x] == f[y] && code.codewords[x].dim() == code.codewords[y].dim()
            }),
            ("involution", &[x]) => f.is_some_and(|f| f[f[x]] != x),
            ("isometry", &[x, y]) => f.is_some_and(|f| dist(x, y) != dist(f[x], f[y])),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: usize) -> Field {
        Field::new(q).unwrap()
    }

    fn span(field: &Field, n: usize, rows: &[Vec<Elem>]) -> Subspace {
        rref(field, n, rows).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Elem> {
        (0..n).map(|j| (j == i) as Elem).collect()
    }

    #[test]
    fn fixed_basis_code() {
        let f2 = f(2);
        let code = build_partition_code(&PartitionCodeSpec::fixed_basis(&f2, 3)).unwrap();
        assert_eq!(code.len(), 8);
        assert!(code.verify_linear().unwrap().holds());
        assert!(code.verify_closed_under_intersection().unwrap().holds());
        let e1 = span(&f2, 3, &[e(3, 0)]);
        let e2 = span(&f2, 3, &[e(3, 1)]);
        let zero = Subspace::zero(3);
        assert_eq!(code.boxplus(&e1, &zero).unwrap(), e1);
        assert_eq!(code.boxplus(&e1, &e1).unwrap(), zero);
        assert_eq!(code.boxplus(&e1, &e2).unwrap(), span(&f2, 3, &[e(3, 0), e(3, 1)]));
        let bad = span(&f2, 3, &[vec![1, 1, 0]]);
        assert!(matches!(code.boxplus(&bad, &e1), Err(Error::Membership(_))));

        let c = code.canonical_complement().unwrap();
        assert_eq!(c.complement(&e1).unwrap(), span(&f2, 3, &[e(3, 1), e(3, 2)]));
        assert_eq!(c.complement(&zero).unwrap(), Subspace::full(3));
        for x in c.codewords() {
            assert_eq!(&c.complement(&c.complement(x).unwrap()).unwrap(), x);
        }
        assert!(c.verify_complement().unwrap().holds());
    }

    #[test]
    fn coarser_partitions() {
        let f2 = f(2);
        let mut spec = PartitionCodeSpec::fixed_basis(&f2, 3);
        spec.blocks = vec![vec![0, 1], vec![2]];
        let code = build_partition_code(&spec).unwrap();
        let expected = vec![
            Subspace::zero(3),
            span(&f2, 3, &[e(3, 2)]),
            span(&f2, 3, &[e(3, 0), e(3, 1)]),
            Subspace::full(3),
        ];
        let mut got = code.codewords().to_vec();
        got.sort();
        let mut exp = expected;
        exp.sort();
        assert_eq!(got, exp);
        spec.blocks = vec![vec![0, 1, 2]];
        assert_eq!(build_partition_code(&spec).unwrap().len(), 2);
    }

    #[test]
    fn construction_errors() {
        let f2 = f(2);
        let mut spec = PartitionCodeSpec::fixed_basis(&f2, 3);
        spec.vectors[2] = vec![1, 1, 0];
        assert!(matches!(build_partition_code(&spec), Err(Error::Rank(_))));
        let mut spec = PartitionCodeSpec::fixed_basis(&f2, 3);
        spec.blocks = vec![vec![0, 1], vec![1, 2]];
        assert!(matches!(build_partition_code(&spec), Err(Error::Partition(_))));
        spec.blocks = vec![vec![0], vec![1]];
        assert!(matches!(build_partition_code(&spec), Err(Error::Partition(_))));
        spec.blocks = vec![vec![0], vec![1], vec![2], vec![]];
        assert!(matches!(build_partition_code(&spec), Err(Error::Partition(_))));
        spec.blocks = vec![vec![0], vec![1, 3], vec![2]];
        assert!(matches!(build_partition_code(&spec), Err(Error::Partition(_))));
    }

    #[test]
    fn two_element_code() {
        let f2 = f(2);
        let code = SubspaceCode::new(&f2, 2, vec![Subspace::zero(2), Subspace::full(2)])
            .unwrap()
            .with_boxplus(vec![vec![0, 1], vec![1, 0]])
            .unwrap();
        assert!(code.verify_linear().unwrap().holds());
        let c = code.clone().with_complement(vec![1, 0]).unwrap();
        assert!(c.verify_complement().unwrap().holds());
        let found = search_complement(&f2, 2, code.codewords()).unwrap().unwrap();
        assert_eq!(found.complement_map().unwrap(), &[1, 0]);
    }

    #[test]
    fn intersection_closure_examples() {
        let f2 = f(2);
        let all: Vec<Subspace> = crate::gf::enumerate_subspaces(&f2, 2, None, 100).unwrap();
        let code = SubspaceCode::new(&f2, 2, all.clone()).unwrap();
        assert!(code.verify_closed_under_intersection().unwrap().holds());
        let c = SubspaceCode::new(
            &f2,
            3,
            vec![
                Subspace::zero(3),
                span(&f2, 3, &[e(3, 0)]),
                span(&f2, 3, &[vec![1, 1, 0]]),
                span(&f2, 3, &[e(3, 0), e(3, 1)]),
            ],
        )
        .unwrap();
        assert!(c.verify_closed_under_intersection().unwrap().holds());
        let open = SubspaceCode::new(
            &f2,
            3,
            vec![span(&f2, 3, &[e(3, 0), e(3, 1)]), span(&f2, 3, &[e(3, 1), e(3, 2)])],
        )
        .unwrap();
        let r = open.verify_closed_under_intersection().unwrap();
        assert!(!r.holds());
        assert!(r.witness.unwrap().verify(&open));
        assert!(search_complement(&f2, 2, &all).unwrap().is_none());
    }

    #[test]
    fn mutations_are_detected() {
        let f2 = f(2);
        let code = build_partition_code(&PartitionCodeSpec::fixed_basis(&f2, 3)).unwrap();
        let mut bad = code.clone();
        let t = code.boxplus_table().unwrap();
        bad.set_boxplus_entry(1, 2, (t[1][2] + 1) % 8);
        let r = bad.verify_linear().unwrap();
        assert!(!r.holds());
        let w = r.witness.unwrap();
        assert!(w.verify(&bad));
        assert!(!w.verify(&code));

        let c = code.canonical_complement().unwrap();
        let mut bad = c.clone();
        let fmap = c.complement_map().unwrap();
        // point the complement of atom 1 at another two-dimensional codeword
        let other = (0..8)
            .find(|&y| y != fmap[1] && c.codeword(y).dim() == 2)
            .unwrap();
        bad.set_complement_entry(1, other);
        let r = bad.verify_complement().unwrap();
        assert!(!r.holds());
        let w = r.witness.unwrap();
        assert!(w.verify(&bad));
        assert!(!w.verify(&c));
    }

    #[test]
    fn complement_preconditions() {
        let f2 = f(2);
        let mut spec = PartitionCodeSpec::fixed_basis(&f2, 3);
        spec.vectors.pop();
        spec.blocks.pop();
        let code = build_partition_code(&spec).unwrap();
        assert!(matches!(code.canonical_complement(), Err(Error::Precondition { .. })));
        let no_zero = SubspaceCode::new(&f2, 2, vec![Subspace::full(2)])
            .unwrap()
            .with_boxplus(vec![vec![0]])
            .unwrap();
        let r = no_zero.verify_linear().unwrap();
        assert!(!r.axiom("zero_codeword").unwrap().holds);
        assert!(r.witness.unwrap().verify(&no_zero));
    }

    #[test]
    fn one_dim_bound() {
        let f2 = f(2);
        for n in 2..=4 {
            let code = build_partition_code(&PartitionCodeSpec::fixed_basis(&f2, n)).unwrap();
            let b = one_dim_bound_check(&f2, n, code.codewords());
            assert_eq!(b.count, n);
            assert_eq!(b.holds, Some(true));
        }
        let b = one_dim_bound_check(&f2, 3, &[Subspace::zero(3), Subspace::full(3)]);
        assert_eq!(b.count, 0);
        let b = one_dim_bound_check(&f(3), 3, &[Subspace::zero(3)]);
        assert_eq!(b.bound, None);
    }

    #[test]
    fn json_round_trip() {
        let f3 = f(3);
        let spec = PartitionCodeSpec {
            field: f3.spec(),
            n: 3,
            vectors: vec![vec![1, 2, 0], vec![0, 1, 1]],
            blocks: vec![vec![1], vec![0]],
        };
        let code = build_partition_code(&spec).unwrap();
        let j = serde_json::to_string(&code.to_json()).unwrap();
        let back = SubspaceCode::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, code);
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["blocks"], serde_json::json!([[2], [1]]));
    }
}
