//! Named small lattices.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::lattice::FiniteLattice;
use crate::linear::ProjectiveSpace;

fn build(n: usize, covers: &[(usize, usize)], labels: Vec<String>) -> FiniteLattice {
    FiniteLattice::from_covers(n, covers, Some(labels)).expect("catalog lattice")
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The chain `0 ⋖ 1 ⋖ … ⋖ len`.
pub fn chain(len: usize) -> FiniteLattice {
    let covers: Vec<_> = (0..len).map(|i| (i, i + 1)).collect();
    build(len + 1, &covers, (0..=len).map(|i| i.to_string()).collect())
}

/// Subsets of `{1..k}`; element `s` is the subset with bitmask `s`.
pub fn boolean(k: usize) -> FiniteLattice {
    let n = 1usize << k;
    let mut covers = Vec::new();
    for s in 0..n {
        for i in 0..k {
            if s >> i & 1 == 0 {
                covers.push((s, s | 1 << i));
            }
        }
    }
    let labels = (0..n)
        .map(|s| {
            let members: Vec<String> =
                (0..k).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    build(n, &covers, labels)
}

/// `M_k`: bottom 0, atoms `1..=k`, top `k + 1`.
pub fn diamond(k: usize) -> FiniteLattice {
    let mut covers = Vec::new();
    for a in 1..=k {
        covers.push((0, a));
        covers.push((a, k + 1));
    }
    let mut labels = vec!["O".to_string()];
    labels.extend((1..=k).map(|a| format!("a{a}")));
    labels.push("I".into());
    build(k + 2, &covers, labels)
}

pub fn m3() -> FiniteLattice {
    diamond(3)
}

/// The pentagon: `0 = O`, `1 = a₂`, `2 = a₁`, `3 = b`, `4 = I` with `a₂ ≺ a₁`.
pub fn n5() -> FiniteLattice {
    build(
        5,
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        strs(&["O", "a2", "a1", "b", "I"]),
    )
}

/// Cartesian product; element `(x, y)` has index `x * |b| + y`.
pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let nb = b.size();
    let mut covers = Vec::new();
    for x in 0..a.size() {
        for y in 0..nb {
            for &(lo, hi) in b.covers().iter().filter(|c| c.0 == y) {
                debug_assert_eq!(lo, y);
                covers.push((x * nb + y, x * nb + hi));
            }
        }
    }
    for &(lo, hi) in a.covers() {
        for y in 0..nb {
            covers.push((lo * nb + y, hi * nb + y));
        }
    }
    let labels = (0..a.size() * nb)
        .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
        .collect();
    build(a.size() * nb, &covers, labels)
}

/// `a` below `b` with the top of `a` identified with the bottom of `b`.
pub fn stack(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let na = a.size();
    let map_b = |y: usize| -> usize {
        if y == b.bottom() {
            a.top()
        } else if y < b.bottom() {
            na + y
        } else {
            na + y - 1
        }
    };
    let mut covers: Vec<_> = a.covers().to_vec();
    covers.extend(b.covers().iter().map(|&(lo, hi)| (map_b(lo), map_b(hi))));
    let n = na + b.size() - 1;
    let mut labels: Vec<String> = (0..na).map(|x| format!("a{}", a.label(x))).collect();
    labels.extend((0..b.size()).filter(|&y| y != b.bottom()).map(|y| format!("b{}", b.label(y))));
    build(n, &covers, labels)
}

/// Set partitions of `{1..k}` ordered by refinement (finest at the bottom).
pub fn partition_lattice(k: usize) -> FiniteLattice {
    // restricted growth strings enumerate each partition once
    let mut parts: Vec<Vec<usize>> = Vec::new();
    fn grow(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            grow(cur, k, out);
            cur.pop();
        }
    }
    grow(&mut Vec::new(), k, &mut parts);
    let canon = |blocks: &[usize]| -> Vec<usize> {
        let mut relabel = HashMap::new();
        blocks
            .iter()
            .map(|b| {
                let next = relabel.len();
                *relabel.entry(*b).or_insert(next)
            })
            .collect()
    };
    parts.sort_by_key(|p| std::cmp::Reverse(p.iter().max().map_or(0, |m| m + 1)));
    let index: HashMap<Vec<usize>, usize> =
        parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let blocks = p.iter().max().map_or(0, |m| m + 1);
        for b1 in 0..blocks {
            for b2 in b1 + 1..blocks {
                let merged: Vec<usize> = p.iter().map(|&b| if b == b2 { b1 } else { b }).collect();
                covers.push((i, index[&canon(&merged)]));
            }
        }
    }
    let labels = parts
        .iter()
        .map(|p| {
            let blocks = p.iter().max().map_or(0, |m| m + 1);
            (0..blocks)
                .map(|b| {
                    (0..k)
                        .filter(|&i| p[i] == b)
                        .map(|i| (i + 1).to_string())
                        .collect::<String>()
                })
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    build(parts.len(), &covers, labels)
}

/// The subspace lattice of GF(q)^n.
pub fn projective(q: usize, n: usize) -> Result<FiniteLattice> {
    Ok(ProjectiveSpace::build(&Field::new(q)?, n)?.lattice().clone())
}

/// A named collection of lattices.
#[derive(Clone, Debug, Default)]
pub struct LatticeCatalog {
    entries: Vec<(String, FiniteLattice)>,
}

impl LatticeCatalog {
    /// Chains, Boolean lattices, diamonds, the pentagon, products and stacks
    /// of those, the partition lattice on four points, and the subspace
    /// lattices `P_2(1..=4)` and `P_3(1..=3)`.
    pub fn standard() -> Self {
        let mut c = LatticeCatalog::default();
        for len in 0..=6 {
            c.push(format!("chain_{len}"), chain(len));
        }
        for k in 1..=5 {
            c.push(format!("B_{k}"), boolean(k));
        }
        c.push("M3", m3());
        c.push("N5", n5());
        c.push("M4", diamond(4));
        c.push("M5", diamond(5));
        c.push("M3xB_1", product(&m3(), &boolean(1)));
        c.push("N5xB_1", product(&n5(), &boolean(1)));
        c.push("M3xM3", product(&m3(), &m3()));
        c.push("B_2xchain_2", product(&boolean(2), &chain(2)));
        c.push("M3+M3", stack(&m3(), &m3()));
        c.push("N5+B_2", stack(&n5(), &boolean(2)));
        c.push("B_2+M3", stack(&boolean(2), &m3()));
        c.push("chain_1+M3+chain_1", stack(&stack(&chain(1), &m3()), &chain(1)));
        c.push("Pi_3", partition_lattice(3));
        c.push("Pi_4", partition_lattice(4));
        for n in 1..=4 {
            c.push(format!("P_2({n})"), projective(2, n).expect("within budget"));
        }
        for n in 1..=3 {
            c.push(format!("P_3({n})"), projective(3, n).expect("within budget"));
        }
        c
    }

    pub fn push(&mut self, name: impl Into<String>, l: FiniteLattice) {
        self.entries.push((name.into(), l));
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &FiniteLattice)> {
        self.entries.iter().map(|(n, l)| (n.as_str(), l))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Result<&FiniteLattice> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l)
            .ok_or_else(|| Error::Usage(format!("no catalog lattice named '{name}'")))
    }
}
