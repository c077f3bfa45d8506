//! The linear lattice of all subspaces of GF(q)^n, ordered by inclusion,
//! with sum as join and intersection as meet.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{enumerate_subspaces, gaussian_binomial, subspace_intersect, subspace_sum};
use crate::gf::{Elem, Field, FieldSpec, Subspace};
use crate::lattice::{FiniteLattice, LatticeJson, ValuationReport};

/// Default cap on the element count of a materialized subspace lattice.
/// Admits q = 2 up to n = 5 and q = 3 up to n = 4.
pub const DEFAULT_LATTICE_BUDGET: u128 = 1000;

/// `P_q(n)` as a [`FiniteLattice`] together with the index ↔ subspace maps.
///
/// Elements are indexed in subspace order: by dimension, then by RREF entries.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: Field,
    n: usize,
    lattice: FiniteLattice,
    subspaces: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

/// The elements of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannianSlice {
    pub k: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub pairs_checked: usize,
    pub distances_agree: bool,
    /// `(x, y, d_h, d_S)` for the first disagreeing pair.
    pub mismatch: Option<(usize, usize, usize, usize)>,
    pub valuation: ValuationReport,
}

impl MetricReport {
    pub fn all_ok(&self) -> bool {
        self.distances_agree && self.valuation.all_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceTableEntry {
    pub index: usize,
    pub dim: usize,
    pub label: String,
    pub rows: Vec<Vec<Elem>>,
}

/// `{"q", "modulus", "n", "subspaces": [{index, dim, label, rows}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceTable {
    pub q: usize,
    pub modulus: Option<Vec<u8>>,
    pub n: usize,
    pub subspaces: Vec<SubspaceTableEntry>,
}

/// `dim(X + Y) − dim(X ∩ Y)`.
pub fn subspace_distance(field: &Field, x: &Subspace, y: &Subspace) -> Result<usize> {
    let s = subspace_sum(field, x, y)?;
    let i = subspace_intersect(field, x, y)?;
    Ok(s.dim() - i.dim())
}

/// The lattice on a set of subspaces of GF(q)^n that is closed under sum
/// and intersection. Returns the lattice and its elements in index order.
pub fn lattice_of_subspaces(
    field: &Field,
    n: usize,
    subspaces: &[Subspace],
) -> Result<(FiniteLattice, Vec<Subspace>)> {
    let mut elems = subspaces.to_vec();
    elems.sort();
    elems.dedup();
    if let Some(s) = elems.iter().find(|s| s.n() != n) {
        return Err(Error::Shape(format!(
            "subspace of GF(q)^{} in a lattice over GF(q)^{n}",
            s.n()
        )));
    }
    let index: HashMap<&Subspace, usize> = elems.iter().enumerate().map(|(i, s)| (s, i)).collect();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            for (what, z) in [
                ("sum", subspace_sum(field, x, y)?),
                ("intersection", subspace_intersect(field, x, y)?),
            ] {
                if !index.contains_key(&z) {
                    return Err(Error::NotALattice {
                        message: format!(
                            "{what} of {} and {} is missing",
                            x.label(field.q()),
                            y.label(field.q())
                        ),
                        pair: Some((i, index[y])),
                    });
                }
            }
        }
    }
    let mut order = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            if i != j && x.dim() < y.dim() && y.contains(field, x) {
                order.push((i, j));
            }
        }
    }
    let labels = elems.iter().map(|s| s.label(field.q())).collect();
    let lattice = FiniteLattice::from_covers(elems.len(), &order, Some(labels))?;
    Ok((lattice, elems))
}

impl ProjectiveSpace {
    pub fn build(field: &Field, n: usize) -> Result<Self> {
        Self::build_with_budget(field, n, DEFAULT_LATTICE_BUDGET)
    }

    pub fn from_spec(spec: &FieldSpec, n: usize) -> Result<Self> {
        Self::build(&Field::from_spec(spec)?, n)
    }

    /// Enumerates every subspace, links `X ⋖ Y` when `X ⊂ Y` and
    /// `dim Y = dim X + 1`, and checks the resulting tables against sums,
    /// intersections and dimensions computed directly.
    pub fn build_with_budget(field: &Field, n: usize, budget: u128) -> Result<Self> {
        let q = field.q() as u128;
        let needed: u128 = (0..=n).map(|k| gaussian_binomial(q, n, k)).sum();
        if needed > budget {
            return Err(Error::Resource {
                what: format!("elements of the subspace lattice of GF({q})^{n}"),
                needed,
                limit: budget,
            });
        }
        let subspaces = enumerate_subspaces(field, n, None, budget)?;
        let mut start = vec![0usize; n + 2];
        for s in &subspaces {
            start[s.dim() + 1] += 1;
        }
        for k in 1..start.len() {
            start[k] += start[k - 1];
        }
        let mut covers = Vec::new();
        for d in 0..n {
            for x in start[d]..start[d + 1] {
                for y in start[d + 1]..start[d + 2] {
                    if subspaces[y].contains(field, &subspaces[x]) {
                        covers.push((x, y));
                    }
                }
            }
        }
        let labels = subspaces.iter().map(|s| s.label(field.q())).collect();
        let lattice = FiniteLattice::from_covers(subspaces.len(), &covers, Some(labels))?;
        let index = subspaces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let p = ProjectiveSpace {
            field: field.clone(),
            n,
            lattice,
            subspaces,
            index,
        };
        p.verify_tables()?;
        Ok(p)
    }

    fn verify_tables(&self) -> Result<()> {
        let f = &self.field;
        let size = self.subspaces.len();
        if size as u128 != (0..=self.n).map(|k| gaussian_binomial(f.q() as u128, self.n, k)).sum() {
            return Err(Error::fault("element count differs from the enumeration count", None));
        }
        for (i, x) in self.subspaces.iter().enumerate() {
            if self.lattice.height(i) != x.dim() {
                return Err(Error::fault(format!("height of {i} differs from its dimension"), None));
            }
            for j in i..size {
                let y = &self.subspaces[j];
                let sum = self.index.get(&subspace_sum(f, x, y)?);
                let meet = self.index.get(&subspace_intersect(f, x, y)?);
                if sum != Some(&self.lattice.join(i, j)) || meet != Some(&self.lattice.meet(i, j)) {
                    return Err(Error::fault(
                        format!("join/meet of ({i},{j}) differ from sum/intersection"),
                        None,
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Index of the span of `rows`.
    pub fn index_of_span(&self, rows: &[Vec<Elem>]) -> Result<usize> {
        let s = crate::gf::rref(&self.field, self.n, rows)?;
        Ok(self.index[&s])
    }

    pub fn grassmannian(&self, k: usize) -> Result<GrassmannianSlice> {
        if k > self.n {
            return Err(Error::Domain(format!("dimension {k} outside 0..={}", self.n)));
        }
        Ok(GrassmannianSlice {
            k,
            members: self.lattice.level(k),
        })
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<usize> {
        subspace_distance(&self.field, &self.subspaces[i], &self.subspaces[j])
    }

    /// Compares `h(x∨y) − h(x∧y)` with the subspace distance on every pair
    /// and runs the valuation check on the height function.
    pub fn metric_equivalence_check(&self) -> Result<MetricReport> {
        let l = &self.lattice;
        let size = self.size();
        let mut mismatch = None;
        for x in 0..size {
            for y in 0..size {
                let dh = l.height(l.join(x, y)) - l.height(l.meet(x, y));
                let ds = self.distance(x, y)?;
                if dh != ds && mismatch.is_none() {
                    mismatch = Some((x, y, dh, ds));
                }
            }
        }
        let heights: Vec<i64> = (0..size).map(|x| l.height(x) as i64).collect();
        Ok(MetricReport {
            pairs_checked: size * size,
            distances_agree: mismatch.is_none(),
            mismatch,
            valuation: l.check_valuation(&heights)?,
        })
    }

    /// Lattice JSON with RREF labels.
    pub fn to_json(&self) -> LatticeJson {
        self.lattice.to_json()
    }

    pub fn subspace_table(&self) -> SubspaceTable {
        SubspaceTable {
            q: self.field.q(),
            modulus: self.field.modulus().map(<[u8]>::to_vec),
            n: self.n,
            subspaces: self
                .subspaces
                .iter()
                .enumerate()
                .map(|(index, s)| SubspaceTableEntry {
                    index,
                    dim: s.dim(),
                    label: s.label(self.field.q()),
                    rows: s.rows().to_vec(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::props;

    fn p(q: usize, n: usize) -> ProjectiveSpace {
        ProjectiveSpace::build(&Field::new(q).unwrap(), n).unwrap()
    }

    #[test]
    fn p2_2_is_m3() {
        let s = p(2, 2);
        assert_eq!(s.size(), 5);
        let atoms: Vec<String> = s.lattice().atoms().iter().map(|&a| s.lattice().label(a)).collect();
        assert_eq!(atoms, vec!["01", "10", "11"]);
        assert!(s.lattice().is_isomorphic(&crate::lab::catalog::m3()));
    }

    #[test]
    fn small_cases() {
        let s = p(2, 1);
        assert_eq!(s.size(), 2);
        assert_eq!(s.lattice().covers(), &[(0, 1)]);
        let s = p(2, 3);
        assert_eq!(s.size(), 16);
        assert_eq!(s.lattice().whitney_numbers(), vec![1, 7, 7, 1]);
        // 7 points over {0}, 3 planes over each point, the whole space over 7 planes
        assert_eq!(s.lattice().covers().len(), 7 + 7 * 3 + 7);
        let brute = (0..16)
            .flat_map(|x| (0..16).map(move |y| (x, y)))
            .filter(|&(x, y)| {
                s.subspace(y).dim() == s.subspace(x).dim() + 1
                    && s.subspace(y).contains(s.field(), s.subspace(x))
            })
            .count();
        assert_eq!(s.lattice().covers().len(), brute);
        assert_eq!(s.grassmannian(1).unwrap().members.len(), 7);
        assert_eq!(s.grassmannian(0).unwrap().members, vec![s.lattice().bottom()]);
        assert!(s.grassmannian(4).is_err());
        assert_eq!(p(2, 2).grassmannian(1).unwrap().members.len(), 3);
        for i in 0..16 {
            assert_eq!(s.lattice().height(i), s.subspace(i).dim());
        }
    }

    #[test]
    fn distances() {
        let f = Field::new(2).unwrap();
        let a = crate::gf::rref(&f, 2, &[vec![1, 0]]).unwrap();
        let b = crate::gf::rref(&f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(subspace_distance(&f, &a, &a).unwrap(), 0);
        assert_eq!(subspace_distance(&f, &a, &b).unwrap(), 2);
        assert_eq!(
            subspace_distance(&f, &Subspace::zero(3), &Subspace::full(3)).unwrap(),
            3
        );
        assert!(subspace_distance(&f, &a, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn metric_agreement() {
        for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (4, 2), (5, 2)] {
            let s = p(q, n);
            let r = s.metric_equivalence_check().unwrap();
            assert!(r.all_ok(), "q={q} n={n} {r:?}");
            assert_eq!(r.pairs_checked, s.size() * s.size());
        }
    }

    #[test]
    fn budget() {
        let f2 = Field::new(2).unwrap();
        let f3 = Field::new(3).unwrap();
        assert_eq!(p(2, 5).size(), 374);
        assert_eq!(p(3, 4).size(), 212);
        match ProjectiveSpace::build(&f2, 6) {
            Err(Error::Resource { needed, .. }) => assert_eq!(needed, 2825),
            r => panic!("{r:?}"),
        }
        assert!(ProjectiveSpace::build(&f3, 5).is_err());
        assert!(ProjectiveSpace::build_with_budget(&f2, 3, 15).is_err());
    }

    #[test]
    fn classes() {
        for (q, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let s = p(q, n);
            let l = s.lattice();
            assert!(props::is_modular(l).unwrap().holds);
            assert!(props::is_geometric(l).holds);
            let d = props::is_distributive(l).unwrap();
            assert!(!d.holds);
            assert_eq!(d.witness.unwrap().kind, props::WitnessKind::M3);
            for k in 0..=n {
                assert_eq!(
                    s.grassmannian(k).unwrap().members.len(),
                    s.grassmannian(n - k).unwrap().members.len()
                );
            }
        }
    }

    #[test]
    fn sublattice_of_subspaces() {
        let f = Field::new(2).unwrap();
        let e = |v: Vec<Elem>| crate::gf::rref(&f, 3, &[v]).unwrap();
        let e12 = crate::gf::rref(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let set = vec![Subspace::zero(3), e(vec![1, 0, 0]), e(vec![0, 1, 0]), e12.clone()];
        let (l, elems) = lattice_of_subspaces(&f, 3, &set).unwrap();
        assert_eq!(l.size(), 4);
        assert!(l.is_isomorphic(&crate::lab::catalog::boolean(2)));
        assert_eq!(elems[l.top()], e12);
        let bad = vec![Subspace::zero(3), e(vec![1, 0, 0]), e(vec![0, 1, 0])];
        assert!(matches!(
            lattice_of_subspaces(&f, 3, &bad),
            Err(Error::NotALattice { .. })
        ));
    }

    #[test]
    fn table_json() {
        let s = p(2, 2);
        let t = serde_json::to_value(s.subspace_table()).unwrap();
        assert_eq!(t["subspaces"][4]["rows"], serde_json::json!([[1, 0], [0, 1]]));
        assert_eq!(s.to_json().labels.unwrap()[0], "0");
    }
}
