//! Dense finite lattices.
//!
//! Elements are indices `0..size`. Construction goes through
//! [`FiniteLattice::from_covers`], which computes the order by reachability,
//! validates that every pair has a unique join and meet, and stores full
//! `size × size` join and meet tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    labels: Option<Vec<String>>,
    covers: Vec<(usize, usize)>,
    /// `up[x]` = { y : x ≤ y }
    up: Vec<FixedBitSet>,
    /// `down[x]` = { y : y ≤ x }
    down: Vec<FixedBitSet>,
    /// `upper[x]` = elements covering x
    upper: Vec<FixedBitSet>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
    heights: Vec<usize>,
}

/// Heights of all elements: the length of the longest chain from the bottom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightProfile {
    pub heights: Vec<usize>,
    pub lattice_height: usize,
}

/// Outcome of [`FiniteLattice::check_valuation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub is_valuation: bool,
    pub is_isotone: bool,
    pub is_positive: bool,
    pub metric_ok: bool,
    pub failing_tuple: Option<FailingTuple>,
}

impl ValuationReport {
    pub fn all_ok(&self) -> bool {
        self.is_valuation && self.is_isotone && self.is_positive && self.metric_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingTuple {
    pub check: String,
    pub elements: Vec<usize>,
}

/// `{"n": int, "covers": [[lo, hi], ...], "labels": [str] | null}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    pub labels: Option<Vec<String>>,
}

fn bitset(n: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(n)
}

impl FiniteLattice {
    /// Builds a lattice from a Hasse diagram. Redundant (transitively implied)
    /// pairs are accepted and dropped from the stored cover relation.
    pub fn from_covers(
        n: usize,
        covers: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotALattice {
                message: "the empty poset has no bottom or top".into(),
                pair: None,
            });
        }
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::Domain(format!(
                    "cover pair ({lo},{hi}) references an element outside 0..{n}"
                )));
            }
            if lo == hi {
                return Err(Error::NotAPoset(format!("cover pair ({lo},{lo}) is a loop")));
            }
            succ[lo].push(hi);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &h in s {
                indeg[h] += 1;
            }
        }
        let mut order: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &h in &succ[x] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    order.push(h);
                }
            }
        }
        if order.len() < n {
            return Err(Error::NotAPoset("cover relation contains a cycle".into()));
        }
        let mut up = vec![bitset(n); n];
        for &x in order.iter().rev() {
            let mut set = bitset(n);
            set.insert(x);
            for &h in &succ[x] {
                set.union_with(&up[h]);
            }
            up[x] = set;
        }
        Self::from_order(up, labels)
    }

    /// Builds from up-sets of a partial order, validating the lattice axioms.
    fn from_order(up: Vec<FixedBitSet>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = up.len();
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Shape(format!("{} labels for {n} elements", l.len())));
            }
        }
        let mut down = vec![bitset(n); n];
        for (x, u) in up.iter().enumerate() {
            for y in u.ones() {
                down[y].insert(x);
            }
        }
        let down_count: Vec<usize> = down.iter().map(|d| d.count_ones(..)).collect();
        let up_count: Vec<usize> = up.iter().map(|u| u.count_ones(..)).collect();

        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let (j, m) = if up[x].contains(y) {
                    (y, x)
                } else if up[y].contains(x) {
                    (x, y)
                } else {
                    let mut ub = up[x].clone();
                    ub.intersect_with(&up[y]);
                    // a least upper bound has the fewest elements below it
                    let j = ub
                        .ones()
                        .min_by_key(|&z| down_count[z])
                        .filter(|&c| ub.is_subset(&up[c]))
                        .ok_or_else(|| Error::NotALattice {
                            message: format!("pair ({x},{y}) has no unique least upper bound"),
                            pair: Some((x, y)),
                        })?;
                    let mut lb = down[x].clone();
                    lb.intersect_with(&down[y]);
                    let m = lb
                        .ones()
                        .min_by_key(|&z| up_count[z])
                        .filter(|&c| lb.is_subset(&down[c]))
                        .ok_or_else(|| Error::NotALattice {
                            message: format!("pair ({x},{y}) has no unique greatest lower bound"),
                            pair: Some((x, y)),
                        })?;
                    (j, m)
                };
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
            }
        }
        let bottom = (0..n).find(|&x| down_count[x] == 1).unwrap();
        let top = (0..n).find(|&x| up_count[x] == 1).unwrap();

        let mut covers = Vec::new();
        let mut upper = vec![bitset(n); n];
        for x in 0..n {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                let mut between = up[x].clone();
                between.intersect_with(&down[y]);
                if between.count_ones(..) == 2 {
                    covers.push((x, y));
                    upper[x].insert(y);
                }
            }
        }
        covers.sort_unstable();

        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by_key(|&x| down_count[x]);
        let mut heights = vec![0usize; n];
        for &y in &by_rank {
            heights[y] = down[y]
                .ones()
                .filter(|&x| upper[x].contains(y))
                .map(|x| heights[x] + 1)
                .max()
                .unwrap_or(0);
        }

        Ok(FiniteLattice {
            size: n,
            labels,
            covers,
            up,
            down,
            upper,
            join,
            meet,
            bottom,
            top,
            heights,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Cover pairs `(lo, hi)` in lexicographic order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The element's label, or its index when the lattice is unlabeled.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `x ⋖ y`.
    #[inline]
    pub fn covered_by(&self, x: usize, y: usize) -> bool {
        self.upper[x].contains(y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y] as usize
    }

    /// Join of any number of elements; the empty join is the bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of any number of elements; the empty meet is the top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    pub fn lattice_height(&self) -> usize {
        self.heights[self.top]
    }

    pub fn height_profile(&self) -> HeightProfile {
        HeightProfile {
            heights: self.heights.clone(),
            lattice_height: self.lattice_height(),
        }
    }

    /// Elements covering the bottom, ascending.
    pub fn atoms(&self) -> Vec<usize> {
        self.upper[self.bottom].ones().collect()
    }

    /// Atoms below `x`, ascending.
    pub fn atoms_below(&self, x: usize) -> Vec<usize> {
        self.upper[self.bottom]
            .ones()
            .filter(|&a| self.down[x].contains(a))
            .collect()
    }

    /// `W_k` for `k = 0..=height(top)`.
    pub fn whitney_numbers(&self) -> Vec<usize> {
        let mut w = vec![0; self.lattice_height() + 1];
        for &h in &self.heights {
            w[h] += 1;
        }
        w
    }

    /// Elements of height `k`, ascending.
    pub fn level(&self, k: usize) -> Vec<usize> {
        (0..self.size).filter(|&x| self.heights[x] == k).collect()
    }

    pub fn is_sublattice(&self, set: &[usize]) -> bool {
        let mut member = bitset(self.size);
        for &x in set {
            member.insert(x);
        }
        set.iter().all(|&x| {
            set.iter()
                .all(|&y| member.contains(self.join(x, y)) && member.contains(self.meet(x, y)))
        })
    }

    /// Smallest superset of `seed` closed under join and meet, ascending.
    pub fn sublattice_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut member = bitset(self.size);
        let mut elems: Vec<usize> = Vec::new();
        for &x in seed {
            if !member.put(x) {
                elems.push(x);
            }
        }
        // pairs (i, j) with j < done are already closed
        let mut done = 0;
        while done < elems.len() {
            let end = elems.len();
            for j in done..end {
                for i in 0..=j {
                    let (x, y) = (elems[i], elems[j]);
                    for z in [self.join(x, y), self.meet(x, y)] {
                        if !member.put(z) {
                            elems.push(z);
                        }
                    }
                }
            }
            done = end;
        }
        elems.sort_unstable();
        elems
    }

    /// The sublattice on `elements` (which must be nonempty and closed),
    /// re-indexed in ascending order of the host indices. Labels carry over,
    /// defaulting to the host indices.
    pub fn sublattice(&self, elements: &[usize]) -> Result<FiniteLattice> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::NotALattice {
                message: "empty element set".into(),
                pair: None,
            });
        }
        if let Some(&x) = elems.iter().find(|&&x| x >= self.size) {
            return Err(Error::Domain(format!("element {x} outside 0..{}", self.size)));
        }
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for (i, &x) in elems.iter().enumerate() {
            for &y in &elems[i..] {
                if !pos.contains_key(&self.join(x, y)) || !pos.contains_key(&self.meet(x, y)) {
                    return Err(Error::NotALattice {
                        message: format!("set is not closed: pair ({x},{y}) leaves it"),
                        pair: Some((x, y)),
                    });
                }
            }
        }
        let k = elems.len();
        let up = elems
            .iter()
            .map(|&x| {
                let mut s = bitset(k);
                for (j, &y) in elems.iter().enumerate() {
                    if self.leq(x, y) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        let labels = elems.iter().map(|&x| self.label(x)).collect();
        Self::from_order(up, Some(labels))
    }

    /// Checks that `v` is a positive isotone valuation whose distance
    /// `d(x, y) = v(x ∨ y) - v(x ∧ y)` is a metric. Exact integer arithmetic.
    pub fn check_valuation(&self, v: &[i64]) -> Result<ValuationReport> {
        let n = self.size;
        if v.len() != n {
            return Err(Error::Shape(format!("{} values for {n} elements", v.len())));
        }
        let mut failing: Option<FailingTuple> = None;
        let mut fail = |check: &str, elements: Vec<usize>, slot: &mut bool| {
            if *slot {
                *slot = false;
                if failing.is_none() {
                    failing = Some(FailingTuple {
                        check: check.into(),
                        elements,
                    });
                }
            }
        };
        let (mut val, mut iso, mut pos, mut met) = (true, true, true, true);
        for x in 0..n {
            for y in 0..n {
                if v[self.join(x, y)] + v[self.meet(x, y)] != v[x] + v[y] {
                    fail("valuation", vec![x, y], &mut val);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, y) && v[x] > v[y] {
                    fail("isotone", vec![x, y], &mut iso);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && v[x] >= v[y] {
                    fail("positive", vec![x, y], &mut pos);
                }
            }
        }
        let d: Vec<i64> = (0..n * n)
            .map(|xy| v[self.join(xy / n, xy % n)] - v[self.meet(xy / n, xy % n)])
            .collect();
        'metric: for x in 0..n {
            for y in 0..n {
                let dxy = d[x * n + y];
                if dxy < 0 || (dxy == 0) != (x == y) || dxy != d[y * n + x] {
                    fail("metric", vec![x, y], &mut met);
                    break 'metric;
                }
                for z in 0..n {
                    if d[x * n + z] > dxy + d[y * n + z] {
                        fail("triangle", vec![x, y, z], &mut met);
                        break 'metric;
                    }
                }
            }
        }
        Ok(ValuationReport {
            is_valuation: val,
            is_isotone: iso,
            is_positive: pos,
            metric_ok: met,
            failing_tuple: failing,
        })
    }

    /// The order dual: same elements, order reversed, join and meet swapped.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.size;
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        let mut upper = vec![bitset(n); n];
        for &(a, b) in &covers {
            upper[a].insert(b);
        }
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by_key(|&x| self.up[x].count_ones(..));
        let mut heights = vec![0usize; n];
        for &y in &by_rank {
            heights[y] = self.up[y]
                .ones()
                .filter(|&x| upper[x].contains(y))
                .map(|x| heights[x] + 1)
                .max()
                .unwrap_or(0);
        }
        FiniteLattice {
            size: n,
            labels: self.labels.clone(),
            covers,
            up: self.down.clone(),
            down: self.up.clone(),
            upper,
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
            heights,
        }
    }

    /// Graphviz rendering of the Hasse diagram, one rank per height.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in 0..self.size {
            writeln!(s, "  {x} [label=\"{}\"];", self.label(x).replace('"', "\\\"")).unwrap();
        }
        for k in 0..=self.lattice_height() {
            let level: Vec<String> = self.level(k).iter().map(|x| x.to_string()).collect();
            writeln!(s, "  {{ rank=same; {}; }}", level.join("; ")).unwrap();
        }
        for &(a, b) in &self.covers {
            writeln!(s, "  {a} -> {b};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.size,
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let covers: Vec<(usize, usize)> = j.covers.iter().map(|&[a, b]| (a, b)).collect();
        Self::from_covers(j.n, &covers, j.labels.clone())
    }

    /// An order isomorphism `self → other` if one exists. Backtracks over
    /// elements, placing joins of already-mapped pairs as soon as possible
    /// since their image is forced; intended for small lattices.
    pub fn isomorphism_to(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        if self.size != other.size
            || self.covers.len() != other.covers.len()
            || self.whitney_numbers() != other.whitney_numbers()
        {
            return None;
        }
        let n = self.size;
        let signature = |l: &FiniteLattice, x: usize| {
            (
                l.heights[x],
                l.upper[x].count_ones(..),
                l.down[x].count_ones(..),
                l.up[x].count_ones(..),
            )
        };
        // order[i] = (element, Some((w1, w2)) when it is w1 ∨ w2 of earlier elements)
        let mut order: Vec<(usize, Option<(usize, usize)>)> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let mut forced = None;
            'find: for i in 0..order.len() {
                for j in i + 1..order.len() {
                    let (a, b) = (order[i].0, order[j].0);
                    let x = self.join(a, b);
                    if !placed[x] {
                        forced = Some((x, Some((a, b))));
                        break 'find;
                    }
                }
            }
            let next = forced.unwrap_or_else(|| {
                let x = (0..n).filter(|&x| !placed[x]).min_by_key(|&x| self.heights[x]).unwrap();
                (x, None)
            });
            placed[next.0] = true;
            order.push(next);
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];

        type Sig = (usize, usize, usize, usize);
        fn extend(
            a: &FiniteLattice,
            b: &FiniteLattice,
            order: &[(usize, Option<(usize, usize)>)],
            depth: usize,
            map: &mut [usize],
            used: &mut [bool],
            sig: &dyn Fn(&FiniteLattice, usize) -> Sig,
        ) -> bool {
            let Some(&(x, join_of)) = order.get(depth) else {
                return true;
            };
            let candidates: Vec<usize> = match join_of {
                Some((w1, w2)) => vec![b.join(map[w1], map[w2])],
                None => (0..b.size).collect(),
            };
            for y in candidates {
                if used[y] || sig(a, x) != sig(b, y) {
                    continue;
                }
                let consistent = order[..depth].iter().all(|&(w, _)| {
                    a.leq(w, x) == b.leq(map[w], y) && a.leq(x, w) == b.leq(y, map[w])
                });
                if !consistent {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if extend(a, b, order, depth + 1, map, used, sig) {
                    return true;
                }
                used[y] = false;
                map[x] = usize::MAX;
            }
            false
        }

        extend(self, other, &order, 0, &mut map, &mut used, &signature).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Overwrites one meet-table entry (both argument orders) without any
    /// validation. Breaks the lattice invariants; exists for fault-injection
    /// fixtures that exercise the cross-checks in [`crate::props`].
    #[doc(hidden)]
    pub fn corrupt_meet_entry(&mut self, x: usize, y: usize, value: usize) {
        let n = self.size;
        self.meet[x * n + y] = value as u32;
        self.meet[y * n + x] = value as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::catalog;

    #[test]
    fn m3_from_covers() {
        let l = FiniteLattice::from_covers(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            None,
        )
        .unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 4);
        assert_eq!(l.atoms(), vec![1, 2, 3]);
        assert_eq!(l.height_profile().heights, vec![0, 1, 1, 1, 2]);
        assert_eq!(l.lattice_height(), 2);
        assert_eq!(l.whitney_numbers(), vec![1, 3, 1]);
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(2, 3), 0);
        assert_eq!(l.to_dot().matches("->").count(), 6);
    }

    #[test]
    fn chain_is_max_min() {
        let l = FiniteLattice::from_covers(3, &[(0, 1), (1, 2)], None).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(l.join(x, y), x.max(y));
                assert_eq!(l.meet(x, y), x.min(y));
            }
        }
        assert_eq!(l.atoms(), vec![1]);
        assert_eq!(l.lattice_height(), 2);
        assert_eq!(l.to_dot().matches("->").count(), 2);
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        let err =
            FiniteLattice::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)], None).unwrap_err();
        match err {
            Error::NotALattice { message, pair } => {
                assert_eq!(pair, Some((0, 1)));
                assert_eq!(message, "pair (0,1) has no unique least upper bound");
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FiniteLattice::from_covers(3, &[(0, 1), (1, 2), (2, 0)], None),
            Err(Error::NotAPoset(_))
        ));
        assert!(matches!(
            FiniteLattice::from_covers(2, &[(0, 0)], None),
            Err(Error::NotAPoset(_))
        ));
        assert!(matches!(
            FiniteLattice::from_covers(2, &[(0, 5)], None),
            Err(Error::Domain(_))
        ));
        // two maximal elements
        assert!(matches!(
            FiniteLattice::from_covers(3, &[(0, 1), (0, 2)], None),
            Err(Error::NotALattice { .. })
        ));
        // antichain of two
        assert!(FiniteLattice::from_covers(2, &[], None).is_err());
        assert!(FiniteLattice::from_covers(0, &[], None).is_err());
        assert!(FiniteLattice::from_covers(1, &[], None).is_ok());
    }

    #[test]
    fn redundant_pairs_are_reduced() {
        let l = FiniteLattice::from_covers(3, &[(0, 1), (1, 2), (0, 2)], None).unwrap();
        assert_eq!(l.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn boolean_whitney() {
        assert_eq!(catalog::boolean(3).whitney_numbers(), vec![1, 3, 3, 1]);
        assert_eq!(catalog::boolean(4).whitney_numbers(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn closure_examples() {
        let m3 = catalog::m3();
        assert_eq!(m3.sublattice_closure(&[0, 4]), vec![0, 4]);
        assert_eq!(m3.sublattice_closure(&[1, 2]), vec![0, 1, 2, 4]);
        assert!(m3.sublattice_closure(&[]).is_empty());
        let b3 = catalog::boolean(3);
        let c = b3.sublattice_closure(&[1, 2, 4]);
        assert_eq!(c.len(), 8);
        assert!(b3.is_sublattice(&c));
    }

    #[test]
    fn valuation_examples() {
        let m3 = catalog::m3();
        let h: Vec<i64> = m3.height_profile().heights.iter().map(|&x| x as i64).collect();
        assert!(m3.check_valuation(&h).unwrap().all_ok());

        let zero = vec![0i64; 5];
        let r = m3.check_valuation(&zero).unwrap();
        assert!(r.is_valuation && r.is_isotone);
        assert!(!r.is_positive && !r.metric_ok);

        let n5 = catalog::n5();
        let h: Vec<i64> = n5.height_profile().heights.iter().map(|&x| x as i64).collect();
        let r = n5.check_valuation(&h).unwrap();
        assert!(!r.is_valuation);
        let t = r.failing_tuple.unwrap();
        assert_eq!(t.check, "valuation");
        let (x, y) = (t.elements[0], t.elements[1]);
        assert_ne!(h[n5.join(x, y)] + h[n5.meet(x, y)], h[x] + h[y]);
        assert!(m3.check_valuation(&[0, 1]).is_err());
    }

    #[test]
    fn dual_examples() {
        let chain = catalog::chain(4);
        assert!(chain.dual().is_isomorphic(&chain));
        let m3 = catalog::m3();
        assert!(m3.dual().is_isomorphic(&m3));
        let n5 = catalog::n5();
        assert!(n5.dual().is_isomorphic(&n5));
        assert!(!n5.is_isomorphic(&m3));
        for l in [chain, m3, n5, catalog::partition_lattice(4)] {
            let d = l.dual();
            assert_eq!(d.dual(), l);
            for x in 0..l.size() {
                for y in 0..l.size() {
                    assert_eq!(d.join(x, y), l.meet(x, y));
                    assert_eq!(d.leq(x, y), l.leq(y, x));
                }
            }
            // the swapped tables agree with a fresh build from reversed covers
            let rebuilt = FiniteLattice::from_covers(
                l.size(),
                &l.covers().iter().map(|&(a, b)| (b, a)).collect::<Vec<_>>(),
                l.labels().map(<[String]>::to_vec),
            )
            .unwrap();
            assert_eq!(rebuilt, d);
        }
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let l = catalog::partition_lattice(4);
        let j1 = serde_json::to_string(&l.to_json()).unwrap();
        let back = FiniteLattice::from_json(&serde_json::from_str(&j1).unwrap()).unwrap();
        assert_eq!(back, l);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), j1);
    }

    #[test]
    fn sublattice_reindexes() {
        let b3 = catalog::boolean(3);
        let s = b3.sublattice(&[0, 3, 4, 7]).unwrap();
        assert_eq!(s.size(), 4);
        assert!(s.is_isomorphic(&catalog::boolean(2)));
        assert_eq!(s.labels().unwrap()[1], b3.label(3));
        assert!(b3.sublattice(&[1, 2]).is_err());
    }

    #[test]
    fn lattice_laws_hold_on_catalog() {
        for (name, l) in catalog::LatticeCatalog::standard().entries() {
            for x in 0..l.size() {
                for y in 0..l.size() {
                    let j = l.join(x, y);
                    let m = l.meet(x, y);
                    assert!(l.leq(x, j) && l.leq(m, x), "{name}");
                    assert_eq!(l.join(x, l.meet(x, y)), x, "{name}");
                    assert_eq!(l.meet(x, l.join(x, y)), x, "{name}");
                }
                assert!(l.leq(l.bottom(), x) && l.leq(x, l.top()));
                assert_eq!(l.height(x) == 1, l.atoms().contains(&x));
            }
            let rebuilt = FiniteLattice::from_covers(
                l.size(),
                l.covers(),
                l.labels().map(<[String]>::to_vec),
            )
            .unwrap();
            assert_eq!(&rebuilt, l, "{name}");
        }
    }
}
