//! Checks of the extremal statements about distributive sublattices and
//! their codes.

use serde::Serialize;

use crate::codes::{build_partition_code, PartitionCodeSpec, SubspaceCode};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::lab::survey::SublatticeSurveyResult;
use crate::linear::ProjectiveSpace;
use crate::props::{self, Property};

/// Errors unless `l` is geometric, naming the failing conjunct.
pub fn require_geometric(l: &FiniteLattice) -> Result<()> {
    let semi = props::is_semimodular(l);
    if !semi.holds {
        return Err(Error::precondition("host is not geometric: not semimodular", semi.witness));
    }
    let atomistic = props::is_atomistic(l);
    if !atomistic.holds {
        return Err(Error::precondition("host is not geometric: not atomistic", atomistic.witness));
    }
    Ok(())
}

/// Atoms of the sublattice on `set` (elements covering its least element
/// inside the set), as host indices.
pub fn sublattice_atoms(host: &FiniteLattice, set: &[usize]) -> Vec<usize> {
    let bottom = host.meet_all(set.iter().copied());
    set.iter()
        .copied()
        .filter(|&x| {
            x != bottom && !set.iter().any(|&y| y != bottom && y != x && host.leq(y, x))
        })
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SizeBoundReport {
    pub height: usize,
    pub bound: u128,
    pub distributive_checked: usize,
    pub max_size: usize,
    pub extremal_count: usize,
    /// Sublattices larger than the bound.
    pub bound_violations: Vec<Vec<usize>>,
    /// Extremal sublattices missing one of: own atoms are host atoms, host
    /// top is a member, exactly `height` host atoms, those atoms join to the top.
    pub necessity_violations: Vec<Vec<usize>>,
    /// Extremal ⟺ contains `height` host atoms, where it fails.
    pub atom_count_violations: Vec<Vec<usize>>,
    /// Below the bound even though own atoms are host atoms and the host top
    /// is a member. Reported, not a failure.
    pub sufficiency_counterexamples: Vec<Vec<usize>>,
    /// Extremal ⟺ (own atoms are host atoms ∧ they join to the host top
    /// ∧ least element is the host bottom), where it fails.
    pub atomic_form_violations: Vec<Vec<usize>>,
}

impl SizeBoundReport {
    pub fn holds(&self) -> bool {
        self.bound_violations.is_empty()
            && self.necessity_violations.is_empty()
            && self.atom_count_violations.is_empty()
            && self.atomic_form_violations.is_empty()
    }
}

/// Size bound `2^{h(top)}` on distributive sublattices of a geometric host,
/// and the shape of those attaining it.
pub fn check_size_bound(host: &FiniteLattice, survey: &SublatticeSurveyResult) -> Result<SizeBoundReport> {
    require_geometric(host)?;
    let height = host.lattice_height();
    let bound = 1u128 << height;
    let host_atoms = host.atoms();
    let mut r = SizeBoundReport {
        height,
        bound,
        ..Default::default()
    };
    for m in survey.distributive_sublattices() {
        r.distributive_checked += 1;
        r.max_size = r.max_size.max(m.len());
        let own_atoms = sublattice_atoms(host, m);
        let atoms_are_host_atoms = own_atoms.iter().all(|a| host_atoms.contains(a));
        let has_top = m.contains(&host.top());
        let has_bottom = m.contains(&host.bottom());
        let host_atoms_in = m.iter().filter(|x| host_atoms.contains(x)).count();
        let spans = host.join_all(own_atoms.iter().copied()) == host.top();
        let extremal = m.len() as u128 == bound;
        if m.len() as u128 > bound {
            r.bound_violations.push(m.clone());
        }
        if extremal {
            r.extremal_count += 1;
            if !(atoms_are_host_atoms && has_top && host_atoms_in == height && spans) {
                r.necessity_violations.push(m.clone());
            }
        }
        if extremal != (host_atoms_in == height) {
            r.atom_count_violations.push(m.clone());
        }
        if !extremal && atoms_are_host_atoms && has_top {
            r.sufficiency_counterexamples.push(m.clone());
        }
        if extremal != (atoms_are_host_atoms && spans && has_bottom) {
            r.atomic_form_violations.push(m.clone());
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub atoms: usize,
    pub size: usize,
    pub injective: bool,
    pub surjective: bool,
    pub empty_to_bottom: bool,
    pub full_to_top: bool,
}

impl PhiReport {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.empty_to_bottom && self.full_to_top
    }
}

/// `Φ(I) = ⋁_{i∈I} x_i` from atom subsets onto a uniquely atomistic lattice.
pub fn phi_bijection(m: &FiniteLattice) -> Result<PhiReport> {
    let d = props::unique_decomposition(m)?;
    let k = d.atom_count();
    if k > props::SUBSET_ORACLE_MAX_ATOMS {
        return Err(Error::Resource {
            what: "atoms for the subset bijection".into(),
            needed: k as u128,
            limit: props::SUBSET_ORACLE_MAX_ATOMS as u128,
        });
    }
    let mut hit = vec![0u32; m.size()];
    for mask in 0u64..1 << k {
        hit[d.join_of(m, mask)] += 1;
    }
    Ok(PhiReport {
        atoms: k,
        size: m.size(),
        injective: hit.iter().all(|&h| h <= 1),
        surjective: hit.iter().all(|&h| h >= 1),
        empty_to_bottom: d.join_of(m, 0) == m.bottom(),
        full_to_top: d.join_of(m, (1u64 << k) - 1) == m.top(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WhitneyBoundReport {
    pub n: usize,
    /// Whitney numbers of the sublattice under its own grading, padded to `n + 1`.
    pub whitney: Vec<usize>,
    pub binomials: Vec<u128>,
    pub bounded: bool,
    pub equality: bool,
    pub atoms: usize,
    /// `equality ⟺ atoms == n`.
    pub equality_matches_atoms: bool,
}

impl WhitneyBoundReport {
    pub fn holds(&self) -> bool {
        self.bounded && self.equality_matches_atoms
    }
}

/// Whitney numbers of a distributive lattice `m` against `C(n, k)` for a
/// geometric host of height `n`.
pub fn check_whitney_bound(m: &FiniteLattice, host: &FiniteLattice) -> Result<WhitneyBoundReport> {
    require_geometric(host)?;
    let d = props::is_distributive(m)?;
    if !d.holds {
        return Err(Error::precondition("sublattice is not distributive", d.witness));
    }
    let n = host.lattice_height();
    let mut whitney = m.whitney_numbers();
    if whitney.len() > n + 1 {
        return Err(Error::precondition("sublattice is taller than its host", None));
    }
    whitney.resize(n + 1, 0);
    let binomials: Vec<u128> = (0..=n)
        .map(|k| (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128))
        .collect();
    let bounded = whitney.iter().zip(&binomials).all(|(&w, &b)| w as u128 <= b);
    let equality = whitney.iter().zip(&binomials).all(|(&w, &b)| w as u128 == b);
    let atoms = m.atoms().len();
    Ok(WhitneyBoundReport {
        n,
        whitney,
        binomials,
        bounded,
        equality,
        atoms,
        equality_matches_atoms: equality == (atoms == n),
    })
}

/// Turns a distributive sublattice of `P_q(n)` that contains `{0}` and is
/// atomistic into a partition code: one block per atom, holding an RREF
/// basis of that atom.
pub fn code_from_distributive_sublattice(host: &ProjectiveSpace, set: &[usize]) -> Result<SubspaceCode> {
    let l = host.lattice();
    if !set.contains(&l.bottom()) {
        return Err(Error::precondition("sublattice does not contain {0}", None));
    }
    let sub = l.sublattice(set)?;
    let d = props::unique_decomposition(&sub)?;
    let mut elems = set.to_vec();
    elems.sort_unstable();
    let mut vectors = Vec::new();
    let mut blocks = Vec::new();
    for &a in &d.atoms {
        let rows = host.subspace(elems[a]).rows();
        blocks.push((vectors.len()..vectors.len() + rows.len()).collect());
        vectors.extend(rows.iter().cloned());
    }
    build_partition_code(&PartitionCodeSpec {
        field: host.field().spec(),
        n: host.n(),
        vectors,
        blocks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SublatticeCodeFailure {
    pub sublattice: Vec<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SublatticeCodesReport {
    pub distributive_seen: usize,
    /// Distributive sublattices that are not atomistic or lack `{0}`; these
    /// cannot be linear codes and are skipped.
    pub excluded: usize,
    pub codes_checked: usize,
    pub complements_checked: usize,
    pub precondition_errors_checked: usize,
    pub failures: Vec<SublatticeCodeFailure>,
}

impl SublatticeCodesReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every distributive sublattice in `survey` that contains `{0}` and is
/// atomistic: builds its code, requires the code's linear and intersection
/// axioms and that its codewords are exactly the sublattice, round-trips it
/// through JSON, then requires a valid canonical complement when the whole
/// space is present and the precondition error otherwise.
pub fn check_sublattice_codes(host: &ProjectiveSpace, survey: &SublatticeSurveyResult) -> Result<SublatticeCodesReport> {
    let l = host.lattice();
    let mut r = SublatticeCodesReport::default();
    for set in survey.distributive_sublattices() {
        r.distributive_seen += 1;
        let sub = l.sublattice(set)?;
        if !set.contains(&l.bottom()) || !props::check_property(&sub, Property::Atomistic)?.holds {
            r.excluded += 1;
            continue;
        }
        r.codes_checked += 1;
        let mut reasons: Vec<String> = Vec::new();
        let mut fail = |reason: String| reasons.push(reason);
        let code = match code_from_distributive_sublattice(host, set) {
            Ok(c) => c,
            Err(e) => {
                r.failures.push(SublatticeCodeFailure {
                    sublattice: set.clone(),
                    reason: format!("code construction failed: {e}"),
                });
                continue;
            }
        };
        let mut expected: Vec<_> = set.iter().map(|&i| host.subspace(i).clone()).collect();
        expected.sort();
        if code.codewords() != expected.as_slice() {
            fail("codewords differ from the sublattice".into());
        }
        let lin = code.verify_linear()?;
        if !lin.holds() {
            fail(format!("not linear: {:?}", lin.witness));
        }
        if !code.verify_closed_under_intersection()?.holds() {
            fail("not closed under intersection".into());
        }
        match SubspaceCode::from_json(&serde_json::from_str(&serde_json::to_string(&code.to_json())?)?) {
            Ok(back) if back == code => {}
            _ => fail("JSON round trip changed the code".into()),
        }
        let has_top = set.contains(&l.top());
        match (has_top, code.canonical_complement()) {
            (true, Ok(c)) => {
                r.complements_checked += 1;
                if !c.verify_complement()?.holds() {
                    fail("canonical complement fails its axioms".into());
                }
            }
            (true, Err(e)) => fail(format!("canonical complement failed: {e}")),
            (false, Err(Error::Precondition { .. })) => r.precondition_errors_checked += 1,
            (false, Err(e)) => fail(format!("expected a precondition error, got {e}")),
            (false, Ok(_)) => fail("canonical complement succeeded without the whole space".into()),
        }
        r.failures.extend(reasons.into_iter().map(|reason| SublatticeCodeFailure {
            sublattice: set.clone(),
            reason,
        }));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::lab::catalog;
    use crate::lab::survey::{enumerate_sublattices, SurveyMode};

    fn p(q: usize, n: usize) -> ProjectiveSpace {
        ProjectiveSpace::build(&Field::new(q).unwrap(), n).unwrap()
    }

    #[test]
    fn size_bound_on_boolean_and_chain() {
        let b3 = catalog::boolean(3);
        let s = enumerate_sublattices(&b3, "B_3", SurveyMode::Exhaustive, 0).unwrap();
        let r = check_size_bound(&b3, &s).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.max_size, 8);
        assert_eq!(r.extremal_count, 1);
        assert!(r.sufficiency_counterexamples.contains(&vec![7]));

        let c = catalog::chain(2);
        let s = enumerate_sublattices(&c, "c", SurveyMode::Exhaustive, 0).unwrap();
        match check_size_bound(&c, &s) {
            Err(Error::Precondition { message, .. }) => assert!(message.contains("atomistic")),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn phi() {
        let r = phi_bijection(&catalog::boolean(3)).unwrap();
        assert!(r.holds());
        assert_eq!((r.atoms, r.size), (3, 8));
        assert!(matches!(phi_bijection(&catalog::m3()), Err(Error::Precondition { .. })));
    }

    #[test]
    fn whitney_examples() {
        let host = p(2, 3);
        let l = host.lattice();
        let code = build_partition_code(&PartitionCodeSpec::fixed_basis(host.field(), 3)).unwrap();
        let set: Vec<usize> = code.codewords().iter().map(|s| host.index_of(s).unwrap()).collect();
        let r = check_whitney_bound(&l.sublattice(&set).unwrap(), l).unwrap();
        assert_eq!(r.whitney, vec![1, 3, 3, 1]);
        assert!(r.equality && r.holds());

        let ends = l.sublattice(&[l.bottom(), l.top()]).unwrap();
        let r = check_whitney_bound(&ends, l).unwrap();
        assert_eq!(r.whitney, vec![1, 1, 0, 0]);
        assert!(r.holds() && !r.equality);

        let e12 = host.index_of_span(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let e3 = host.index_of_span(&[vec![0, 0, 1]]).unwrap();
        let r = check_whitney_bound(&l.sublattice(&[l.bottom(), e12, e3, l.top()]).unwrap(), l).unwrap();
        assert_eq!(&r.whitney[..3], &[1, 2, 1]);
        assert!(r.holds());
    }

    #[test]
    fn sublattice_codes_small() {
        let host = p(2, 2);
        let s = enumerate_sublattices(host.lattice(), "P_2(2)", SurveyMode::Exhaustive, 0).unwrap();
        let r = check_sublattice_codes(&host, &s).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.codes_checked > 0 && r.precondition_errors_checked > 0);

        let e1 = host.index_of_span(&[vec![1, 0]]).unwrap();
        let code = code_from_distributive_sublattice(&host, &[0, e1]).unwrap();
        assert_eq!(code.len(), 2);
        assert!(code.verify_linear().unwrap().holds());
        assert!(matches!(code.canonical_complement(), Err(Error::Precondition { .. })));
    }
}
