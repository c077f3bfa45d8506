//! Decision procedures for lattice classes, forbidden-sublattice search and
//! the atom decomposition of uniquely atomistic lattices.
//!
//! Every negative answer carries a [`Witness`] that [`Witness::verify`]
//! re-checks against the raw join/meet tables.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Above this many atoms the subset oracle for unique atomisticity is skipped.
pub const SUBSET_ORACLE_MAX_ATOMS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Modular,
    Semimodular,
    Distributive,
    Atomic,
    Atomistic,
    UniquelyAtomistic,
    Geometric,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Modular,
        Property::Semimodular,
        Property::Distributive,
        Property::Atomic,
        Property::Atomistic,
        Property::UniquelyAtomistic,
        Property::Geometric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Modular => "modular",
            Property::Semimodular => "semimodular",
            Property::Distributive => "distributive",
            Property::Atomic => "atomic",
            Property::Atomistic => "atomistic",
            Property::UniquelyAtomistic => "uniquely_atomistic",
            Property::Geometric => "geometric",
        }
    }

    pub fn parse(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown property '{s}'")))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    N5,
    M3,
    #[serde(rename = "identity_failure")]
    IdentityFailure,
    #[serde(rename = "cover_failure")]
    CoverFailure,
    #[serde(rename = "non_atomistic_element")]
    NonAtomisticElement,
    #[serde(rename = "ambiguous_decomposition")]
    AmbiguousDecomposition,
}

/// Evidence that a lattice lacks a property.
///
/// `elements` by kind:
/// - `N5`: `[μ, a₂, a₁, b, M]` with `a₂ ≺ a₁`, `b` incomparable to both,
///   `a₁∨b = a₂∨b = M`, `a₁∧b = a₂∧b = μ`;
/// - `M3`: `[y₁, y₂, y₃]`, pairwise incomparable with equal pairwise joins and meets;
/// - `identity_failure`: `[x, y, z]` violating the modular law, the
///   distributive law, or the bound laws of the join/meet tables;
/// - `cover_failure`: `[x, y]` with `x∧y ⋖ x, y` but not `x, y ⋖ x∨y`;
/// - `non_atomistic_element`: `[x]` differing from the join of the atoms below it;
/// - `ambiguous_decomposition`: `[x]`, with two distinct atom sets in `atom_sets`
///   whose joins both equal `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<usize>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atom_sets: Vec<Vec<usize>>,
}

impl Witness {
    fn new(kind: WitnessKind, elements: Vec<usize>, detail: String) -> Self {
        Witness {
            kind,
            elements,
            detail,
            atom_sets: Vec::new(),
        }
    }

    /// Re-checks the witness against `l`'s tables without using any of the
    /// search code that produced it.
    pub fn verify(&self, l: &FiniteLattice) -> bool {
        let n = l.size();
        if self.elements.iter().any(|&x| x >= n) {
            return false;
        }
        let e = &self.elements;
        let incomparable = |a: usize, b: usize| !l.leq(a, b) && !l.leq(b, a);
        // x ⋖ y from the order alone
        let covers = |x: usize, y: usize| {
            x != y && l.leq(x, y) && (0..n).all(|z| z == x || z == y || !(l.leq(x, z) && l.leq(z, y)))
        };
        match self.kind {
            WitnessKind::N5 => {
                let [mu, a2, a1, b, top] = e[..] else {
                    return false;
                };
                a2 != a1
                    && l.leq(a2, a1)
                    && incomparable(b, a1)
                    && incomparable(b, a2)
                    && l.join(a1, b) == top
                    && l.join(a2, b) == top
                    && l.meet(a1, b) == mu
                    && l.meet(a2, b) == mu
            }
            WitnessKind::M3 => {
                let [y1, y2, y3] = e[..] else {
                    return false;
                };
                incomparable(y1, y2)
                    && incomparable(y1, y3)
                    && incomparable(y2, y3)
                    && l.join(y1, y2) == l.join(y1, y3)
                    && l.join(y1, y2) == l.join(y2, y3)
                    && l.meet(y1, y2) == l.meet(y1, y3)
                    && l.meet(y1, y2) == l.meet(y2, y3)
            }
            WitnessKind::IdentityFailure => {
                let [x, y, z] = e[..] else {
                    return false;
                };
                modular_law_fails(l, x, y, z)
                    || distributive_law_fails(l, x, y, z)
                    || bound_law_fails(l, x, y, z)
            }
            WitnessKind::CoverFailure => {
                let [x, y] = e[..] else {
                    return false;
                };
                let m = l.meet(x, y);
                let j = l.join(x, y);
                covers(m, x) && covers(m, y) && !(covers(x, j) && covers(y, j))
            }
            WitnessKind::NonAtomisticElement => {
                let [x] = e[..] else {
                    return false;
                };
                let bottom = (0..n).find(|&b| (0..n).all(|y| l.leq(b, y))).unwrap();
                let below = (0..n).filter(|&a| covers(bottom, a) && l.leq(a, x));
                below.fold(bottom, |acc, a| l.join(acc, a)) != x
            }
            WitnessKind::AmbiguousDecomposition => {
                let [x] = e[..] else {
                    return false;
                };
                let [s, t] = &self.atom_sets[..] else {
                    return false;
                };
                let bottom = (0..n).find(|&b| (0..n).all(|y| l.leq(b, y))).unwrap();
                let valid = |set: &Vec<usize>| {
                    set.iter().all(|&a| a < n && covers(bottom, a))
                        && set.iter().fold(bottom, |acc, &a| l.join(acc, a)) == x
                };
                let mut s2 = s.clone();
                let mut t2 = t.clone();
                s2.sort_unstable();
                s2.dedup();
                t2.sort_unstable();
                t2.dedup();
                s2 != t2 && valid(s) && valid(t)
            }
        }
    }
}

/// `{"property": str, "holds": bool, "witness": {...} | null}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    fn yes(property: Property) -> Self {
        PropertyReport {
            property,
            holds: true,
            witness: None,
        }
    }

    fn no(property: Property, w: Witness) -> Self {
        PropertyReport {
            property,
            holds: false,
            witness: Some(w),
        }
    }
}

fn modular_law_fails(l: &FiniteLattice, x: usize, y: usize, z: usize) -> bool {
    l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)
}

fn distributive_law_fails(l: &FiniteLattice, x: usize, y: usize, z: usize) -> bool {
    l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))
}

/// `x∧y` must be the greatest lower bound and `x∨y` the least upper bound;
/// `w` is a candidate bound contradicting the tables.
fn bound_law_fails(l: &FiniteLattice, x: usize, y: usize, w: usize) -> bool {
    let m = l.meet(x, y);
    let j = l.join(x, y);
    !(l.leq(m, x) && l.leq(m, y))
        || !(l.leq(x, j) && l.leq(y, j))
        || (l.leq(w, x) && l.leq(w, y) && !l.leq(w, m))
        || (l.leq(x, w) && l.leq(y, w) && !l.leq(j, w))
}

/// First pair whose join/meet table entry disagrees with the order.
fn table_incoherence(l: &FiniteLattice) -> Option<Witness> {
    let n = l.size();
    for x in 0..n {
        for y in 0..n {
            let m = l.meet(x, y);
            let j = l.join(x, y);
            let mut lower = l.down_set(x).clone();
            lower.intersect_with(l.down_set(y));
            let mut upper = l.up_set(x).clone();
            upper.intersect_with(l.up_set(y));
            if &lower == l.down_set(m) && &upper == l.up_set(j) {
                continue;
            }
            let w = lower
                .ones()
                .find(|&w| !l.leq(w, m))
                .or_else(|| upper.ones().find(|&w| !l.leq(j, w)))
                .unwrap_or(m);
            return Some(Witness::new(
                WitnessKind::IdentityFailure,
                vec![x, y, w],
                format!(
                    "tables disagree with the order: meet({x},{y}) = {m}, join({x},{y}) = {j}, bound {w}"
                ),
            ));
        }
    }
    None
}

fn modular_identity_failure(l: &FiniteLattice) -> Option<Witness> {
    let n = l.size();
    for x in 0..n {
        for z in l.up_set(x).ones() {
            for y in 0..n {
                if modular_law_fails(l, x, y, z) {
                    return Some(Witness::new(
                        WitnessKind::IdentityFailure,
                        vec![x, y, z],
                        format!("{x} ≤ {z} but {x}∨({y}∧{z}) ≠ ({x}∨{y})∧{z}"),
                    ));
                }
            }
        }
    }
    None
}

fn distributive_identity_failure(l: &FiniteLattice) -> Option<Witness> {
    let n = l.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if distributive_law_fails(l, x, y, z) {
                    return Some(Witness::new(
                        WitnessKind::IdentityFailure,
                        vec![x, y, z],
                        format!("{x}∧({y}∨{z}) ≠ ({x}∧{y})∨({x}∧{z})"),
                    ));
                }
            }
        }
    }
    None
}

/// The pentagon `[μ, a₂, a₁, b, M]` with the lexicographically least element
/// tuple, if any.
pub fn find_n5(l: &FiniteLattice) -> Option<Witness> {
    let n = l.size();
    let mut best: Option<[usize; 5]> = None;
    for a2 in 0..n {
        for a1 in l.up_set(a2).ones() {
            if a1 == a2 {
                continue;
            }
            for b in 0..n {
                if l.comparable(b, a1) || l.comparable(b, a2) {
                    continue;
                }
                let top = l.join(a1, b);
                let mu = l.meet(a1, b);
                if l.join(a2, b) == top && l.meet(a2, b) == mu {
                    let t = [mu, a2, a1, b, top];
                    if best.is_none_or(|cur| t < cur) {
                        best = Some(t);
                    }
                }
            }
        }
    }
    best.map(|t| {
        Witness::new(
            WitnessKind::N5,
            t.to_vec(),
            format!(
                "{} ≺ {} with {} incomparable to both; joins equal {}, meets equal {}",
                t[1], t[2], t[3], t[4], t[0]
            ),
        )
    })
}

/// The lexicographically least diamond `[y₁, y₂, y₃]`, if any.
pub fn find_m3(l: &FiniteLattice) -> Option<Witness> {
    let n = l.size();
    for y1 in 0..n {
        for y2 in y1 + 1..n {
            if l.comparable(y1, y2) {
                continue;
            }
            let j = l.join(y1, y2);
            let m = l.meet(y1, y2);
            for y3 in y2 + 1..n {
                if l.comparable(y1, y3) || l.comparable(y2, y3) {
                    continue;
                }
                if l.join(y1, y3) == j
                    && l.join(y2, y3) == j
                    && l.meet(y1, y3) == m
                    && l.meet(y2, y3) == m
                {
                    return Some(Witness::new(
                        WitnessKind::M3,
                        vec![y1, y2, y3],
                        format!("pairwise joins {j}, pairwise meets {m}"),
                    ));
                }
            }
        }
    }
    None
}

/// Decides the modular law `x ≤ z ⇒ x∨(y∧z) = (x∨y)∧z` and cross-checks the
/// answer against the pentagon search.
pub fn is_modular(l: &FiniteLattice) -> Result<PropertyReport> {
    if let Some(w) = table_incoherence(l) {
        return Err(Error::fault("join/meet tables are not those of a lattice", Some(w)));
    }
    let identity = modular_identity_failure(l);
    let pentagon = find_n5(l);
    match (identity, pentagon) {
        (None, None) => Ok(PropertyReport::yes(Property::Modular)),
        (Some(_), Some(w)) => Ok(PropertyReport::no(Property::Modular, w)),
        (Some(w), None) => Err(Error::fault("modular law fails but no pentagon exists", Some(w))),
        (None, Some(w)) => Err(Error::fault("modular law holds but a pentagon exists", Some(w))),
    }
}

/// Decides the distributive law and cross-checks against the forbidden
/// sublattice searches: an `M3` witness for modular lattices, `N5` otherwise.
pub fn is_distributive(l: &FiniteLattice) -> Result<PropertyReport> {
    let modular = is_modular(l)?;
    let identity = distributive_identity_failure(l);
    let forbidden = match modular.witness {
        Some(w) => Some(w),
        None => find_m3(l),
    };
    match (identity, forbidden) {
        (None, None) => Ok(PropertyReport::yes(Property::Distributive)),
        (Some(_), Some(w)) => Ok(PropertyReport::no(Property::Distributive, w)),
        (Some(w), None) => Err(Error::fault(
            "distributive law fails but no forbidden sublattice exists",
            Some(w),
        )),
        (None, Some(w)) => Err(Error::fault(
            "distributive law holds but a forbidden sublattice exists",
            Some(w),
        )),
    }
}

/// `x∧y ⋖ x, y ⇒ x, y ⋖ x∨y` over all pairs.
pub fn is_semimodular(l: &FiniteLattice) -> PropertyReport {
    let n = l.size();
    for x in 0..n {
        for y in x + 1..n {
            let m = l.meet(x, y);
            if l.covered_by(m, x) && l.covered_by(m, y) {
                let j = l.join(x, y);
                if !(l.covered_by(x, j) && l.covered_by(y, j)) {
                    return PropertyReport::no(
                        Property::Semimodular,
                        Witness::new(
                            WitnessKind::CoverFailure,
                            vec![x, y],
                            format!("{m} ⋖ {x}, {y} but not both ⋖ {j}"),
                        ),
                    );
                }
            }
        }
    }
    PropertyReport::yes(Property::Semimodular)
}

/// Every element other than the bottom lies above an atom.
pub fn is_atomic(l: &FiniteLattice) -> PropertyReport {
    let atoms = l.atoms();
    for x in 0..l.size() {
        if x != l.bottom() && !atoms.iter().any(|&a| l.leq(a, x)) {
            return PropertyReport::no(
                Property::Atomic,
                Witness::new(
                    WitnessKind::NonAtomisticElement,
                    vec![x],
                    format!("no atom lies below {x}"),
                ),
            );
        }
    }
    PropertyReport::yes(Property::Atomic)
}

fn non_atomistic_element(l: &FiniteLattice) -> Option<Witness> {
    (0..l.size()).find_map(|x| {
        let j = l.join_all(l.atoms_below(x));
        (j != x).then(|| {
            Witness::new(
                WitnessKind::NonAtomisticElement,
                vec![x],
                format!("join of the atoms below {x} is {j}"),
            )
        })
    })
}

/// Every element is the join of the atoms below it.
pub fn is_atomistic(l: &FiniteLattice) -> PropertyReport {
    match non_atomistic_element(l) {
        None => PropertyReport::yes(Property::Atomistic),
        Some(w) => PropertyReport::no(Property::Atomistic, w),
    }
}

/// Join of `set` with each of its members left out in turn.
fn leave_one_out_joins(l: &FiniteLattice, set: &[usize]) -> Vec<usize> {
    let k = set.len();
    let mut prefix = vec![l.bottom(); k + 1];
    let mut suffix = vec![l.bottom(); k + 1];
    for i in 0..k {
        prefix[i + 1] = l.join(prefix[i], set[i]);
        suffix[k - 1 - i] = l.join(suffix[k - i], set[k - 1 - i]);
    }
    (0..k).map(|i| l.join(prefix[i], suffix[i + 1])).collect()
}

/// Drops members of `set` (highest index first) while the join stays `x`,
/// never dropping `keep`.
fn minimize(l: &FiniteLattice, x: usize, mut set: Vec<usize>, keep: Option<usize>) -> Vec<usize> {
    for i in (0..set.len()).rev() {
        if Some(set[i]) == keep {
            continue;
        }
        let a = set.remove(i);
        if l.join_all(set.iter().copied()) != x {
            set.insert(i, a);
        }
    }
    set
}

fn ambiguity(l: &FiniteLattice) -> Option<Witness> {
    for x in 0..l.size() {
        let below = l.atoms_below(x);
        let loo = leave_one_out_joins(l, &below);
        let Some(i) = (0..below.len()).rev().find(|&i| loo[i] == x) else {
            continue;
        };
        let a = below[i];
        let with_a = minimize(l, x, below.clone(), Some(a));
        let mut without: Vec<usize> = below.clone();
        without.remove(i);
        let without_a = minimize(l, x, without, None);
        let mut sets = vec![with_a, without_a];
        sets.sort();
        let detail = format!(
            "{x} = join{:?} = join{:?}",
            sets[0], sets[1]
        );
        let mut w = Witness::new(WitnessKind::AmbiguousDecomposition, vec![x], detail);
        w.atom_sets = sets;
        return Some(w);
    }
    None
}

/// Counts, for every element, how many atom subsets join to it; `None` when
/// there are more than [`SUBSET_ORACLE_MAX_ATOMS`] atoms.
pub fn atom_subset_counts(l: &FiniteLattice) -> Option<Vec<u64>> {
    let atoms = l.atoms();
    let m = atoms.len();
    if m > SUBSET_ORACLE_MAX_ATOMS {
        return None;
    }
    let mut sup = vec![l.bottom() as u32; 1 << m];
    let mut counts = vec![0u64; l.size()];
    counts[l.bottom()] += 1;
    for s in 1usize..1 << m {
        let low = s.trailing_zeros() as usize;
        let v = l.join(sup[s & (s - 1)] as usize, atoms[low]);
        sup[s] = v as u32;
        counts[v] += 1;
    }
    Some(counts)
}

/// Atomistic, and no atom below any `x` is redundant in the join of the
/// atoms below `x`. Cross-checked against the subset oracle when the atom
/// count permits.
pub fn is_uniquely_atomistic(l: &FiniteLattice) -> Result<PropertyReport> {
    let report = match non_atomistic_element(l) {
        Some(w) => PropertyReport::no(Property::UniquelyAtomistic, w),
        None => match ambiguity(l) {
            Some(w) => PropertyReport::no(Property::UniquelyAtomistic, w),
            None => PropertyReport::yes(Property::UniquelyAtomistic),
        },
    };
    if let Some(counts) = atom_subset_counts(l) {
        let oracle = counts.iter().all(|&c| c == 1);
        if oracle != report.holds {
            return Err(Error::fault(
                "irredundancy criterion and subset oracle disagree",
                report.witness,
            ));
        }
    }
    Ok(report)
}

/// Semimodular and atomistic.
pub fn is_geometric(l: &FiniteLattice) -> PropertyReport {
    let semi = is_semimodular(l);
    if !semi.holds {
        return PropertyReport {
            property: Property::Geometric,
            ..semi
        };
    }
    let atomistic = is_atomistic(l);
    PropertyReport {
        property: Property::Geometric,
        ..atomistic
    }
}

pub fn check_property(l: &FiniteLattice, p: Property) -> Result<PropertyReport> {
    match p {
        Property::Modular => is_modular(l),
        Property::Semimodular => Ok(is_semimodular(l)),
        Property::Distributive => is_distributive(l),
        Property::Atomic => Ok(is_atomic(l)),
        Property::Atomistic => Ok(is_atomistic(l)),
        Property::UniquelyAtomistic => is_uniquely_atomistic(l),
        Property::Geometric => Ok(is_geometric(l)),
    }
}

pub fn check_all(l: &FiniteLattice) -> Result<Vec<PropertyReport>> {
    Property::ALL.iter().map(|&p| check_property(l, p)).collect()
}

/// The map `x ↦ S_x` (atoms below `x`) of a uniquely atomistic lattice.
/// Atom sets are bitmasks over positions in [`AtomDecomposition::atoms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomDecomposition {
    pub atoms: Vec<usize>,
    pub sets: Vec<u64>,
    #[serde(skip)]
    element_of: HashMap<u64, usize>,
}

pub fn unique_decomposition(l: &FiniteLattice) -> Result<AtomDecomposition> {
    let report = is_uniquely_atomistic(l)?;
    if !report.holds {
        return Err(Error::precondition(
            "lattice is not uniquely atomistic",
            report.witness,
        ));
    }
    let atoms = l.atoms();
    if atoms.len() >= 64 {
        return Err(Error::Resource {
            what: "atoms in a decomposition".into(),
            needed: atoms.len() as u128,
            limit: 63,
        });
    }
    let sets: Vec<u64> = (0..l.size())
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| l.leq(a, x))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let element_of: HashMap<u64, usize> = sets.iter().enumerate().map(|(x, &s)| (s, x)).collect();
    let d = AtomDecomposition {
        atoms,
        sets,
        element_of,
    };
    if d.element_of.len() != l.size() {
        return Err(Error::fault("atom decomposition is not injective", None));
    }
    for x in 0..l.size() {
        if d.join_of(l, d.sets[x]) != x {
            return Err(Error::fault(format!("atoms below {x} do not join to it"), None));
        }
    }
    Ok(d)
}

impl AtomDecomposition {
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Atom element indices in `S_x`, ascending.
    pub fn atoms_of(&self, x: usize) -> Vec<usize> {
        self.atoms_in(self.sets[x])
    }

    pub fn atoms_in(&self, mask: u64) -> Vec<usize> {
        (0..self.atoms.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.atoms[i])
            .collect()
    }

    /// Mask for a list of atom element indices.
    pub fn mask_of(&self, atoms: &[usize]) -> Result<u64> {
        atoms.iter().try_fold(0u64, |m, a| {
            let i = self
                .atoms
                .iter()
                .position(|b| b == a)
                .ok_or_else(|| Error::Domain(format!("element {a} is not an atom")))?;
            Ok(m | 1 << i)
        })
    }

    /// The element whose decomposition is exactly `mask`. Every subset of
    /// atoms has one.
    pub fn element_of(&self, mask: u64) -> Option<usize> {
        self.element_of.get(&mask).copied()
    }

    /// `sup S` by folding the join table.
    pub fn join_of(&self, l: &FiniteLattice, mask: u64) -> usize {
        l.join_all(self.atoms_in(mask))
    }

    /// `sup (S₁ ∩ S₂)`, asserted equal to `sup S₁ ∧ sup S₂`.
    pub fn meet_via_sets(&self, l: &FiniteLattice, s1: u64, s2: u64) -> Result<usize> {
        let via_sets = self.join_of(l, s1 & s2);
        let direct = l.meet(self.join_of(l, s1), self.join_of(l, s2));
        if via_sets != direct {
            return Err(Error::fault(
                format!("sup of the common atoms is {via_sets} but the meet is {direct}"),
                None,
            ));
        }
        Ok(via_sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::catalog;

    fn no(r: &PropertyReport, l: &FiniteLattice) -> Witness {
        assert!(!r.holds);
        let w = r.witness.clone().unwrap();
        assert!(w.verify(l), "{w:?}");
        w
    }

    #[test]
    fn n5_answers() {
        let l = catalog::n5();
        let w = no(&is_modular(&l).unwrap(), &l);
        assert_eq!(w.kind, WitnessKind::N5);
        assert_eq!(w.elements, vec![0, 1, 2, 3, 4]);
        assert_eq!(find_n5(&l).unwrap().elements, vec![0, 1, 2, 3, 4]);
        let w = no(&is_semimodular(&l), &l);
        assert_eq!(w.kind, WitnessKind::CoverFailure);
        let w = no(&is_atomistic(&l), &l);
        assert_eq!(w.elements, vec![2]);
        assert_eq!(no(&is_distributive(&l).unwrap(), &l).kind, WitnessKind::N5);
        assert!(is_atomic(&l).holds);
    }

    #[test]
    fn m3_answers() {
        let l = catalog::m3();
        assert!(is_modular(&l).unwrap().holds);
        assert!(is_semimodular(&l).holds);
        assert!(is_geometric(&l).holds);
        let w = no(&is_distributive(&l).unwrap(), &l);
        assert_eq!(w.kind, WitnessKind::M3);
        assert_eq!(w.elements, vec![1, 2, 3]);
        let w = no(&is_uniquely_atomistic(&l).unwrap(), &l);
        assert_eq!(w.kind, WitnessKind::AmbiguousDecomposition);
        assert_eq!(w.elements, vec![4]);
        assert_eq!(w.atom_sets, vec![vec![1, 2], vec![1, 3]]);
        assert!(find_n5(&l).is_none());
        match unique_decomposition(&l) {
            Err(Error::Precondition { witness, .. }) => assert!(witness.unwrap().verify(&l)),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn boolean_answers() {
        for k in 1..=4 {
            let l = catalog::boolean(k);
            for r in check_all(&l).unwrap() {
                assert!(r.holds, "B_{k} {:?}", r.property);
            }
            assert!(find_n5(&l).is_none() && find_m3(&l).is_none());
        }
        let b3 = catalog::boolean(3);
        let d = unique_decomposition(&b3).unwrap();
        // elements are subset masks, atoms 1, 2, 4
        assert_eq!(d.atoms_of(0b101), vec![1, 4]);
        assert_eq!(d.atoms_of(0), Vec::<usize>::new());
        assert_eq!(d.atoms_of(7), d.atoms);
        assert_eq!(d.join_of(&b3, 0), b3.bottom());
        let s1 = d.mask_of(&[1, 2]).unwrap();
        let s2 = d.mask_of(&[2, 4]).unwrap();
        assert_eq!(d.meet_via_sets(&b3, s1, s2).unwrap(), 2);
        assert!(d.mask_of(&[3]).is_err());
    }

    #[test]
    fn chains() {
        let c = catalog::chain(3);
        assert!(is_semimodular(&c).holds);
        assert!(is_distributive(&c).unwrap().holds);
        let w = no(&is_atomistic(&c), &c);
        assert_eq!(w.elements, vec![2]);
        assert!(!is_geometric(&c).holds);
        assert!(!is_uniquely_atomistic(&c).unwrap().holds);
        assert!(is_atomic(&c).holds);
    }

    #[test]
    fn corrupted_meet_is_a_fault() {
        let mut l = catalog::boolean(3);
        l.corrupt_meet_entry(3, 5, 0);
        match is_distributive(&l) {
            Err(Error::ConsistencyFault { witness, .. }) => {
                let w = witness.unwrap();
                assert_eq!(w.kind, WitnessKind::IdentityFailure);
                assert!(w.verify(&l));
                assert!(!w.verify(&catalog::boolean(3)));
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn witnesses_reject_tampering() {
        let l = catalog::m3();
        let mut w = find_m3(&l).unwrap();
        w.elements = vec![0, 1, 2];
        assert!(!w.verify(&l));
        let n5 = catalog::n5();
        let mut w = find_n5(&n5).unwrap();
        w.elements.swap(1, 2);
        assert!(!w.verify(&n5));
    }

    #[test]
    fn subset_oracle_counts() {
        let m3 = catalog::m3();
        let c = atom_subset_counts(&m3).unwrap();
        assert_eq!(c, vec![1, 1, 1, 1, 4]);
        assert!(atom_subset_counts(&catalog::boolean(4)).unwrap().iter().all(|&c| c == 1));
    }

    #[test]
    fn report_json() {
        let r = is_distributive(&catalog::m3()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["property"], "distributive");
        assert_eq!(v["holds"], false);
        assert_eq!(v["witness"]["kind"], "M3");
        let ok = serde_json::to_value(is_atomic(&catalog::m3())).unwrap();
        assert!(ok["witness"].is_null());
    }
}
