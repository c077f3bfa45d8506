//! Sublattice surveys: exhaustive subset scans for small hosts, seeded
//! closure sampling for larger ones.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::props;

/// Hosts larger than this cannot be surveyed exhaustively.
pub const EXHAUSTIVE_MAX_ELEMENTS: usize = 16;
/// Largest random seed set drawn in sampled mode.
pub const SAMPLE_SEED_MAX: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SurveyMode {
    Exhaustive,
    /// Closures of `seeds` random element sets plus closures of every set of
    /// at most `height(top)` atoms.
    Sampled { seeds: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SublatticeSurveyResult {
    pub host: String,
    pub mode: SurveyMode,
    pub seed: Option<u64>,
    pub total_sublattices_found: usize,
    pub distributive_count: usize,
    pub max_distributive_size: usize,
    /// Distributive sublattices of the maximum size found.
    pub extremal_sublattices: Vec<Vec<usize>>,
    /// Every sublattice found, ordered by size then elements.
    #[serde(skip)]
    pub sublattices: Vec<Vec<usize>>,
    #[serde(skip)]
    pub distributive: Vec<bool>,
}

impl SublatticeSurveyResult {
    pub fn distributive_sublattices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.sublattices
            .iter()
            .zip(&self.distributive)
            .filter(|(_, &d)| d)
            .map(|(s, _)| s)
    }
}

/// Surveys the nonempty sublattices of `host`. In sampled mode, `budget`
/// caps the number of atom-set closures.
pub fn enumerate_sublattices(
    host: &FiniteLattice,
    name: &str,
    mode: SurveyMode,
    budget: u128,
) -> Result<SublatticeSurveyResult> {
    let found: BTreeSet<Vec<usize>> = match mode {
        SurveyMode::Exhaustive => exhaustive(host)?,
        SurveyMode::Sampled { seeds, seed } => sampled(host, seeds, seed, budget)?,
    };
    let mut sublattices: Vec<Vec<usize>> = found.into_iter().collect();
    sublattices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut distributive = Vec::with_capacity(sublattices.len());
    for s in &sublattices {
        let sub = host.sublattice(s)?;
        distributive.push(props::is_distributive(&sub)?.holds);
    }
    let max_distributive_size = sublattices
        .iter()
        .zip(&distributive)
        .filter(|(_, &d)| d)
        .map(|(s, _)| s.len())
        .max()
        .unwrap_or(0);
    let extremal_sublattices = sublattices
        .iter()
        .zip(&distributive)
        .filter(|(s, &d)| d && s.len() == max_distributive_size)
        .map(|(s, _)| s.clone())
        .collect();
    Ok(SublatticeSurveyResult {
        host: name.to_string(),
        mode,
        seed: match mode {
            SurveyMode::Exhaustive => None,
            SurveyMode::Sampled { seed, .. } => Some(seed),
        },
        total_sublattices_found: sublattices.len(),
        distributive_count: distributive.iter().filter(|&&d| d).count(),
        max_distributive_size,
        extremal_sublattices,
        sublattices,
        distributive,
    })
}

fn exhaustive(host: &FiniteLattice) -> Result<BTreeSet<Vec<usize>>> {
    let n = host.size();
    if n > EXHAUSTIVE_MAX_ELEMENTS {
        return Err(Error::Resource {
            what: "elements for an exhaustive sublattice scan".into(),
            needed: n as u128,
            limit: EXHAUSTIVE_MAX_ELEMENTS as u128,
        });
    }
    // pair[i][j] = bits of join and meet
    let pair: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| 1u32 << host.join(i, j) | 1u32 << host.meet(i, j))
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = members.iter().enumerate().all(|(a, &i)| {
            members[a + 1..]
                .iter()
                .all(|&j| pair[i][j] & !mask == 0)
        });
        if closed {
            out.insert(members);
        }
    }
    Ok(out)
}

fn sampled(host: &FiniteLattice, seeds: usize, seed: u64, budget: u128) -> Result<BTreeSet<Vec<usize>>> {
    let n = host.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BTreeSet::new();
    for _ in 0..seeds {
        let k = rng.random_range(1..=SAMPLE_SEED_MAX.min(n));
        let set: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
        out.insert(host.sublattice_closure(&set));
    }
    let atoms = host.atoms();
    let max = host.lattice_height().min(atoms.len());
    let needed: u128 = (0..=max).map(|s| binomial(atoms.len() as u128, s as u128)).sum();
    if needed > budget {
        return Err(Error::Resource {
            what: "atom-set closures in a sampled survey".into(),
            needed,
            limit: budget,
        });
    }
    for s in 1..=max {
        for set in itertools::Itertools::combinations(atoms.iter().copied(), s) {
            out.insert(host.sublattice_closure(&set));
        }
    }
    Ok(out)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::DEFAULT_ENUMERATION_BUDGET;
    use crate::lab::catalog;

    #[test]
    fn m3_exhaustive() {
        let r = enumerate_sublattices(&catalog::m3(), "M3", SurveyMode::Exhaustive, 0).unwrap();
        assert_eq!(r.max_distributive_size, 4);
        // three squares {O, a_i, a_j, I}
        assert_eq!(r.extremal_sublattices.len(), 3);
        assert!(r.extremal_sublattices.contains(&vec![0, 1, 2, 4]));
        assert_eq!(r.distributive_count, r.total_sublattices_found - 1);
        let l = catalog::m3();
        let brute = (1u32..32)
            .filter(|&m| {
                let s: Vec<usize> = (0..5).filter(|i| m >> i & 1 == 1).collect();
                l.is_sublattice(&s)
            })
            .count();
        assert_eq!(r.total_sublattices_found, brute);
    }

    #[test]
    fn chain_is_its_own_extremal() {
        let r = enumerate_sublattices(&catalog::chain(2), "c", SurveyMode::Exhaustive, 0).unwrap();
        assert_eq!(r.max_distributive_size, 3);
        assert_eq!(r.extremal_sublattices, vec![vec![0, 1, 2]]);
        assert_eq!(r.total_sublattices_found, 7);
    }

    #[test]
    fn size_cap() {
        let b5 = catalog::boolean(5);
        assert!(matches!(
            enumerate_sublattices(&b5, "B_5", SurveyMode::Exhaustive, 0),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn sampled_is_sound_and_seeded() {
        let b5 = catalog::boolean(5);
        let mode = SurveyMode::Sampled { seeds: 50, seed: 9 };
        let a = enumerate_sublattices(&b5, "B_5", mode, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let b = enumerate_sublattices(&b5, "B_5", mode, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(a.sublattices, b.sublattices);
        assert_eq!(a.seed, Some(9));
        for s in &a.sublattices {
            assert!(b5.is_sublattice(s));
        }
        assert_eq!(a.max_distributive_size, 32);
        assert!(enumerate_sublattices(&b5, "B_5", mode, 10).is_err());
    }
}
