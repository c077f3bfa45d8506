//! Named verification suites run over a population of lattices.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{build_partition_code, one_dim_bound_check, search_complement, PartitionCodeSpec};
use crate::error::{Error, Result};
use crate::gf::{subspace_sum, Elem, Field, DEFAULT_ENUMERATION_BUDGET};
use crate::lab::catalog::LatticeCatalog;
use crate::lab::checks::{
    check_size_bound, check_sublattice_codes, check_whitney_bound, phi_bijection, require_geometric,
};
use crate::lab::survey::{enumerate_sublattices, SublatticeSurveyResult, SurveyMode, EXHAUSTIVE_MAX_ELEMENTS};
use crate::lattice::FiniteLattice;
use crate::linear::{lattice_of_subspaces, ProjectiveSpace, DEFAULT_LATTICE_BUDGET};
use crate::props::{self, Property};

pub const DEFAULT_SEED: u64 = 1;
/// Sampled sublattices added to the standard population.
pub const DEFAULT_SAMPLES: usize = 500;
/// Random seed sets per sampled survey.
pub const SURVEY_SEEDS: usize = 300;

/// Hosts whose random sublattices join the standard population.
const SAMPLE_HOSTS: [&str; 13] = [
    "P_2(3)", "P_2(4)", "P_3(2)", "P_3(3)", "Pi_4", "B_4", "B_5", "M3xM3", "N5xB_1", "M3+M3",
    "N5+B_2", "M5", "B_2xchain_2",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteName {
    /// Atomistic lattices: distributive ⟺ uniquely atomistic.
    DistributiveIffUniquelyAtomistic,
    /// Uniquely atomistic ⟹ modular.
    UniquelyAtomisticIsModular,
    /// Uniquely atomistic ⟹ geometric.
    UniquelyAtomisticIsGeometric,
    /// Modular ⟺ no pentagon; for modular lattices, distributive ⟺ no diamond.
    ForbiddenSublattices,
    /// Height is a positive isotone valuation on modular lattices, and the
    /// induced metric is the subspace distance on subspace lattices.
    HeightValuation,
    /// Distributive sublattices of geometric hosts have at most `2^height`
    /// elements; the shape of those attaining the bound.
    DistributiveSizeBound,
    /// Whitney numbers of distributive sublattices are bounded by binomials.
    WhitneyBound,
    /// Distributive sublattices of subspace lattices are partition codes with
    /// canonical complements.
    SublatticeCodes,
    /// Partition codes are linear, intersection-closed and distributive.
    PartitionCodes,
    /// Complement maps on codes and the one-dimensional codeword bound.
    Complements,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::DistributiveIffUniquelyAtomistic,
        SuiteName::UniquelyAtomisticIsModular,
        SuiteName::UniquelyAtomisticIsGeometric,
        SuiteName::ForbiddenSublattices,
        SuiteName::HeightValuation,
        SuiteName::DistributiveSizeBound,
        SuiteName::WhitneyBound,
        SuiteName::SublatticeCodes,
        SuiteName::PartitionCodes,
        SuiteName::Complements,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SuiteName::DistributiveIffUniquelyAtomistic => "T1",
            SuiteName::UniquelyAtomisticIsModular => "UAT",
            SuiteName::UniquelyAtomisticIsGeometric => "UAC",
            SuiteName::ForbiddenSublattices => "TL1",
            SuiteName::HeightValuation => "TL3",
            SuiteName::DistributiveSizeBound => "T2",
            SuiteName::WhitneyBound => "C2",
            SuiteName::SublatticeCodes => "T3T4",
            SuiteName::PartitionCodes => "LT1",
            SuiteName::Complements => "CP1",
        }
    }

    pub fn parse(s: &str) -> Result<SuiteName> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = SuiteName::ALL.iter().map(|n| n.id()).collect();
                Error::Usage(format!("unknown suite '{s}'; valid suites: {}", names.join(", ")))
            })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub lattice: FiniteLattice,
}

/// Lattices and parameters a suite runs over.
#[derive(Clone, Debug)]
pub struct Population {
    pub seed: Option<u64>,
    /// Every lattice, for the per-lattice suites.
    pub instances: Vec<Instance>,
    /// Hosts whose sublattices are surveyed.
    pub hosts: Vec<Instance>,
    pub spaces: Vec<(String, ProjectiveSpace)>,
    /// `(q, n)` pairs for the code suites.
    pub code_params: Vec<(usize, usize)>,
    pub budget: u128,
}

impl Population {
    /// The standard catalog plus `samples` distinct seeded random
    /// sublattices of several catalog hosts.
    pub fn standard(seed: u64, samples: usize) -> Result<Self> {
        let catalog = LatticeCatalog::standard();
        let mut instances: Vec<Instance> = catalog
            .entries()
            .map(|(name, l)| Instance {
                name: name.to_string(),
                lattice: l.clone(),
            })
            .collect();
        let hosts = instances.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let mut attempts = 0usize;
        while seen.len() < samples && attempts < samples * 100 {
            let h = attempts % SAMPLE_HOSTS.len();
            attempts += 1;
            let host = catalog.get(SAMPLE_HOSTS[h])?;
            let k = rng.random_range(1..=5);
            let set: Vec<usize> = (0..k).map(|_| rng.random_range(0..host.size())).collect();
            let closure = host.sublattice_closure(&set);
            if closure.len() < 2 || closure.len() == host.size() {
                continue;
            }
            if seen.insert((h, closure.clone())) {
                instances.push(Instance {
                    name: format!("{}~{:?}", SAMPLE_HOSTS[h], closure),
                    lattice: host.sublattice(&closure)?,
                });
            }
        }
        let mut spaces = Vec::new();
        for (q, max_n) in [(2, 4), (3, 3)] {
            let field = Field::new(q)?;
            for n in 1..=max_n {
                spaces.push((format!("P_{q}({n})"), ProjectiveSpace::build(&field, n)?));
            }
        }
        Ok(Population {
            seed: Some(seed),
            instances,
            hosts,
            spaces,
            code_params: (1..=4).flat_map(|n| [(2, n), (3, n)]).collect(),
            budget: DEFAULT_ENUMERATION_BUDGET,
        })
    }

    /// The single host `P_q(n)` and its surveyed sublattices.
    pub fn projective(q: usize, n: usize, seed: u64, lattice_budget: u128) -> Result<Self> {
        let space = ProjectiveSpace::build_with_budget(&Field::new(q)?, n, lattice_budget)?;
        let name = format!("P_{q}({n})");
        let host = Instance {
            name: name.clone(),
            lattice: space.lattice().clone(),
        };
        let survey = survey_host(&host, seed, DEFAULT_ENUMERATION_BUDGET)?;
        let mut instances = vec![host.clone()];
        for s in &survey.sublattices {
            if s.len() >= 2 && s.len() < host.lattice.size() {
                instances.push(Instance {
                    name: format!("{name}~{s:?}"),
                    lattice: host.lattice.sublattice(s)?,
                });
            }
        }
        Ok(Population {
            seed: Some(seed),
            instances,
            hosts: vec![host],
            spaces: vec![(name, space)],
            code_params: vec![(q, n)],
            budget: DEFAULT_ENUMERATION_BUDGET,
        })
    }

    /// Explicit lattices only, e.g. fixtures.
    pub fn from_instances(instances: Vec<Instance>) -> Self {
        Population {
            seed: None,
            hosts: instances.clone(),
            instances,
            spaces: Vec::new(),
            code_params: Vec::new(),
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

/// Exhaustive when the host is small enough, otherwise sampled.
pub fn survey_host(host: &Instance, seed: u64, budget: u128) -> Result<SublatticeSurveyResult> {
    let mode = if host.lattice.size() <= EXHAUSTIVE_MAX_ELEMENTS {
        SurveyMode::Exhaustive
    } else {
        SurveyMode::Sampled {
            seeds: SURVEY_SEEDS,
            seed,
        }
    };
    enumerate_sublattices(&host.lattice, &host.name, mode, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteFailure {
    pub instance: String,
    pub witness: Value,
}

/// `{"suite", "seed", "instances", "failures": [{"instance", "witness"}], "details"}`
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub instances: usize,
    pub failures: Vec<SuiteFailure>,
    pub details: Vec<Value>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Run {
    instances: usize,
    failures: Vec<SuiteFailure>,
    details: Vec<Value>,
}

impl Run {
    fn fail(&mut self, instance: &str, witness: Value) {
        self.failures.push(SuiteFailure {
            instance: instance.to_string(),
            witness,
        });
    }

    /// Runs `f`, turning consistency faults into failures with their witness.
    fn guard(&mut self, instance: &str, f: impl FnOnce(&mut Run) -> Result<()>) -> Result<()> {
        match f(self) {
            Err(Error::ConsistencyFault { message, witness }) => {
                self.fail(instance, json!({"fault": message, "witness": witness}));
                Ok(())
            }
            other => other,
        }
    }
}

pub fn run_theorem_suite(name: SuiteName, population: &Population) -> Result<SuiteReport> {
    let mut run = Run {
        instances: 0,
        failures: Vec::new(),
        details: Vec::new(),
    };
    match name {
        SuiteName::DistributiveIffUniquelyAtomistic => distributive_iff_ua(&mut run, population)?,
        SuiteName::UniquelyAtomisticIsModular => ua_implies(&mut run, population, Property::Modular)?,
        SuiteName::UniquelyAtomisticIsGeometric => ua_implies(&mut run, population, Property::Geometric)?,
        SuiteName::ForbiddenSublattices => forbidden(&mut run, population)?,
        SuiteName::HeightValuation => height_valuation(&mut run, population)?,
        SuiteName::DistributiveSizeBound => size_bound(&mut run, population)?,
        SuiteName::WhitneyBound => whitney(&mut run, population)?,
        SuiteName::SublatticeCodes => sublattice_codes(&mut run, population)?,
        SuiteName::PartitionCodes => partition_codes(&mut run, population)?,
        SuiteName::Complements => complements(&mut run, population)?,
    }
    Ok(SuiteReport {
        suite: name.id().to_string(),
        seed: population.seed,
        instances: run.instances,
        failures: run.failures,
        details: run.details,
    })
}

fn distributive_iff_ua(run: &mut Run, pop: &Population) -> Result<()> {
    let (mut atomistic, mut distributive, mut oracle_checked, mut phi_checked) = (0, 0, 0, 0);
    for inst in &pop.instances {
        run.instances += 1;
        let l = &inst.lattice;
        run.guard(&inst.name, |run| {
            // distinct atoms meet at the bottom in every lattice
            let atoms = l.atoms();
            for (i, &a) in atoms.iter().enumerate() {
                if let Some(&b) = atoms[i + 1..].iter().find(|&&b| l.meet(a, b) != l.bottom()) {
                    run.fail(&inst.name, json!({"atoms_meet_above_bottom": [a, b]}));
                }
            }
            if props::atom_subset_counts(l).is_some() {
                oracle_checked += 1;
            }
            let ua = props::is_uniquely_atomistic(l)?;
            if !props::is_atomistic(l).holds {
                return Ok(());
            }
            atomistic += 1;
            let d = props::is_distributive(l)?;
            if d.holds != ua.holds {
                run.fail(
                    &inst.name,
                    json!({"distributive": d.holds, "uniquely_atomistic": ua.holds,
                           "witness": d.witness.or(ua.witness)}),
                );
                return Ok(());
            }
            if d.holds {
                distributive += 1;
                // each atom meets the join of the others at the bottom, and
                // joins of t atoms have height t
                for (i, &a) in atoms.iter().enumerate() {
                    let rest = l.join_all(atoms.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| b));
                    if l.meet(a, rest) != l.bottom() {
                        run.fail(&inst.name, json!({"atom_not_independent": a}));
                    }
                }
                if atoms.len() <= props::SUBSET_ORACLE_MAX_ATOMS {
                    for mask in 0u64..1 << atoms.len() {
                        let x = l.join_all((0..atoms.len()).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i]));
                        if l.height(x) != mask.count_ones() as usize {
                            run.fail(&inst.name, json!({"height_of_atom_join": mask}));
                            break;
                        }
                    }
                    let phi = phi_bijection(l)?;
                    phi_checked += 1;
                    if !phi.holds() || phi.size != 1 << phi.atoms {
                        run.fail(&inst.name, json!({"subset_bijection": phi}));
                    }
                }
            }
            Ok(())
        })?;
    }
    run.details.push(json!({
        "atomistic": atomistic,
        "distributive_atomistic": distributive,
        "subset_oracle_checked": oracle_checked,
        "subset_bijections_checked": phi_checked,
    }));
    Ok(())
}

fn ua_implies(run: &mut Run, pop: &Population, target: Property) -> Result<()> {
    let mut ua_count = 0;
    for inst in &pop.instances {
        run.instances += 1;
        let l = &inst.lattice;
        run.guard(&inst.name, |run| {
            let ua = props::is_uniquely_atomistic(l)?;
            if !ua.holds {
                return Ok(());
            }
            ua_count += 1;
            let r = props::check_property(l, target)?;
            if !r.holds {
                run.fail(&inst.name, json!({"property": target, "witness": r.witness}));
            }
            if target == Property::Modular {
                let d = props::unique_decomposition(l)?;
                let n = l.size();
                for x in 0..n {
                    for y in 0..n {
                        let (sx, sy) = (d.sets[x], d.sets[y]);
                        // strictly larger atom sets above, joins and meets by set operations
                        if l.lt(x, y) && !(sx & !sy == 0 && sx != sy) {
                            run.fail(&inst.name, json!({"atom_sets_not_increasing": [x, y]}));
                        }
                        if d.join_of(l, sx | sy) != l.join(x, y) {
                            run.fail(&inst.name, json!({"join_not_union": [x, y]}));
                        }
                        d.meet_via_sets(l, sx, sy)?;
                    }
                }
            }
            Ok(())
        })?;
    }
    run.details.push(json!({"uniquely_atomistic": ua_count}));
    Ok(())
}

fn forbidden(run: &mut Run, pop: &Population) -> Result<()> {
    let (mut modular, mut distributive) = (0, 0);
    for inst in &pop.instances {
        run.instances += 1;
        let l = &inst.lattice;
        run.guard(&inst.name, |run| {
            let m = props::is_modular(l)?;
            let n5 = props::find_n5(l);
            if m.holds != n5.is_none() {
                run.fail(&inst.name, json!({"modular": m.holds, "pentagon": n5}));
            }
            if let Some(w) = n5.as_ref().filter(|w| !w.verify(l)) {
                run.fail(&inst.name, json!({"unverifiable": w}));
            }
            if m.holds {
                modular += 1;
                let d = props::is_distributive(l)?;
                let m3 = props::find_m3(l);
                if d.holds != m3.is_none() {
                    run.fail(&inst.name, json!({"distributive": d.holds, "diamond": m3}));
                }
                if let Some(w) = m3.as_ref().filter(|w| !w.verify(l)) {
                    run.fail(&inst.name, json!({"unverifiable": w}));
                }
                distributive += d.holds as usize;
            }
            Ok(())
        })?;
    }
    run.details.push(json!({"modular": modular, "distributive": distributive}));
    Ok(())
}

fn height_valuation(run: &mut Run, pop: &Population) -> Result<()> {
    let mut modular = 0;
    for inst in &pop.instances {
        run.instances += 1;
        let l = &inst.lattice;
        run.guard(&inst.name, |run| {
            if !props::is_modular(l)?.holds {
                return Ok(());
            }
            modular += 1;
            let h: Vec<i64> = (0..l.size()).map(|x| l.height(x) as i64).collect();
            let v = l.check_valuation(&h)?;
            if !v.all_ok() {
                run.fail(&inst.name, json!({"valuation": v}));
            }
            if let Some(&(a, b)) = l.covers().iter().find(|&&(a, b)| l.height(b) != l.height(a) + 1) {
                run.fail(&inst.name, json!({"cover_skips_height": [a, b]}));
            }
            Ok(())
        })?;
    }
    for (name, space) in &pop.spaces {
        run.instances += 1;
        let r = space.metric_equivalence_check()?;
        if !r.all_ok() {
            run.fail(name, json!(r));
        }
        run.details.push(json!({"host": name, "pairs_checked": r.pairs_checked, "whitney": space.lattice().whitney_numbers()}));
    }
    run.details.push(json!({"modular": modular}));
    Ok(())
}

fn geometric_hosts(pop: &Population) -> impl Iterator<Item = &Instance> {
    pop.hosts.iter().filter(|h| require_geometric(&h.lattice).is_ok())
}

fn size_bound(run: &mut Run, pop: &Population) -> Result<()> {
    let seed = pop.seed.unwrap_or(DEFAULT_SEED);
    for host in geometric_hosts(pop) {
        run.instances += 1;
        let survey = survey_host(host, seed, pop.budget)?;
        let r = check_size_bound(&host.lattice, &survey)?;
        if !r.holds() {
            run.fail(&host.name, json!(r));
        }
        run.details.push(json!({
            "host": host.name,
            "mode": survey.mode,
            "sublattices": survey.total_sublattices_found,
            "distributive": survey.distributive_count,
            "bound": r.bound,
            "max_size": r.max_size,
            "extremal_count": r.extremal_count,
            "sufficiency_counterexamples": r.sufficiency_counterexamples.len(),
        }));
    }
    Ok(())
}

fn whitney(run: &mut Run, pop: &Population) -> Result<()> {
    let seed = pop.seed.unwrap_or(DEFAULT_SEED);
    for host in geometric_hosts(pop) {
        let survey = survey_host(host, seed, pop.budget)?;
        let (mut checked, mut equal) = (0, 0);
        for set in survey.distributive_sublattices() {
            run.instances += 1;
            checked += 1;
            let m = host.lattice.sublattice(set)?;
            let r = check_whitney_bound(&m, &host.lattice)?;
            equal += r.equality as usize;
            if !r.holds() {
                run.fail(&format!("{}~{set:?}", host.name), json!(r));
            }
        }
        run.details.push(json!({"host": host.name, "checked": checked, "equality": equal}));
    }
    Ok(())
}

fn sublattice_codes(run: &mut Run, pop: &Population) -> Result<()> {
    let seed = pop.seed.unwrap_or(DEFAULT_SEED);
    for (name, space) in &pop.spaces {
        run.instances += 1;
        let host = Instance {
            name: name.clone(),
            lattice: space.lattice().clone(),
        };
        let survey = survey_host(&host, seed, pop.budget)?;
        let r = check_sublattice_codes(space, &survey)?;
        for f in &r.failures {
            run.fail(&format!("{name}~{:?}", f.sublattice), json!(f.reason));
        }
        run.details.push(json!({
            "host": name,
            "distributive": r.distributive_seen,
            "excluded": r.excluded,
            "codes": r.codes_checked,
            "complements": r.complements_checked,
            "precondition_errors": r.precondition_errors_checked,
        }));
    }
    Ok(())
}

/// Restricted growth strings of length `r`, as block lists.
fn set_partitions(r: usize) -> Vec<Vec<Vec<usize>>> {
    fn grow(cur: &mut Vec<usize>, r: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if cur.len() == r {
            let m = cur.iter().max().map_or(0, |x| x + 1);
            out.push((0..m).map(|b| (0..r).filter(|&i| cur[i] == b).collect()).collect());
            return;
        }
        let next = cur.iter().max().map_or(0, |x| x + 1);
        for b in 0..=next {
            cur.push(b);
            grow(cur, r, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), r, &mut out);
    out
}

/// Two independent sets of each size `r ≤ n`: a prefix of the standard basis
/// and a sheared one.
fn independent_sets(field: &Field, n: usize) -> Vec<Vec<Vec<Elem>>> {
    let c = (field.q() - 1) as Elem;
    let mut out = Vec::new();
    for r in 1..=n {
        let standard: Vec<Vec<Elem>> = (0..r).map(|i| (0..n).map(|j| (i == j) as Elem).collect()).collect();
        let sheared: Vec<Vec<Elem>> = (0..r)
            .map(|i| {
                (0..n)
                    .map(|j| if j == i { 1 } else if j == i + 1 { c } else { 0 })
                    .collect()
            })
            .collect();
        out.push(standard);
        out.push(sheared);
    }
    out
}

fn partition_codes(run: &mut Run, pop: &Population) -> Result<()> {
    for &(q, n) in &pop.code_params {
        let field = Field::new(q)?;
        let mut max_size = 0usize;
        let mut codes = 0;
        for vectors in independent_sets(&field, n) {
            let r = vectors.len();
            for blocks in set_partitions(r) {
                run.instances += 1;
                codes += 1;
                let m = blocks.len();
                let label = format!("q={q} n={n} r={r} blocks={blocks:?}");
                let code = build_partition_code(&PartitionCodeSpec {
                    field: field.spec(),
                    n,
                    vectors: vectors.clone(),
                    blocks,
                })?;
                max_size = max_size.max(code.len());
                if code.len() != 1 << m {
                    run.fail(&label, json!({"size": code.len(), "blocks": m}));
                }
                if (code.len() == 1 << n) != (r == n && m == n) {
                    run.fail(&label, json!({"extremal_size_mismatch": code.len()}));
                }
                let lin = code.verify_linear()?;
                if !lin.holds() {
                    run.fail(&label, json!(lin.witness));
                }
                let closed = code.verify_closed_under_intersection()?;
                if !closed.holds() {
                    run.fail(&label, json!(closed.witness));
                }
                let (l, _) = lattice_of_subspaces(&field, n, code.codewords())?;
                let d = props::is_distributive(&l)?;
                if !d.holds {
                    run.fail(&label, json!({"not_distributive": d.witness}));
                }
                // disjoint codewords add as subspaces
                for x in code.codewords() {
                    for y in code.codewords() {
                        if crate::gf::subspace_intersect(&field, x, y)?.is_zero()
                            && code.boxplus(x, y)? != subspace_sum(&field, x, y)?
                        {
                            run.fail(&label, json!({"disjoint_sum_differs": [x.label(q), y.label(q)]}));
                        }
                    }
                }
            }
        }
        if max_size != 1 << n {
            run.fail(&format!("q={q} n={n}"), json!({"max_size": max_size}));
        }
        run.details.push(json!({"q": q, "n": n, "codes": codes, "max_size": max_size}));
    }
    Ok(())
}

fn complements(run: &mut Run, pop: &Population) -> Result<()> {
    let seed = pop.seed.unwrap_or(DEFAULT_SEED);
    for &(q, n) in &pop.code_params {
        run.instances += 1;
        let field = Field::new(q)?;
        let label = format!("q={q} n={n} fixed basis");
        let code = build_partition_code(&PartitionCodeSpec::fixed_basis(&field, n))?;
        let c = code.canonical_complement()?;
        let r = c.verify_complement()?;
        if !r.holds() {
            run.fail(&label, json!(r.witness));
        }
        let bound = one_dim_bound_check(&field, n, code.codewords());
        if bound.count != n || (q == 2 && n >= 2 && bound.holds != Some(true)) {
            run.fail(&label, json!(bound));
        }
        let searched = if code.len() <= crate::codes::SEARCH_MAX_CODEWORDS {
            let found = search_complement(&field, n, code.codewords())?;
            if found.is_none() {
                run.fail(&label, json!("complement search found nothing"));
            }
            true
        } else {
            false
        };
        run.details.push(json!({"q": q, "n": n, "one_dim": bound.count, "bound": bound.bound, "searched": searched}));
    }
    for (name, space) in &pop.spaces {
        run.instances += 1;
        if space.size() <= crate::codes::SEARCH_MAX_CODEWORDS
            && space.n() == 2
            && space.field().q() == 2
            && search_complement(space.field(), space.n(), space.subspaces())?.is_some()
        {
            run.fail(name, json!("a complement exists on the whole subspace lattice"));
        }
        let host = Instance {
            name: name.clone(),
            lattice: space.lattice().clone(),
        };
        let survey = survey_host(&host, seed, pop.budget)?;
        let r = check_sublattice_codes(space, &survey)?;
        for f in &r.failures {
            run.fail(&format!("{name}~{:?}", f.sublattice), json!(f.reason));
        }
        run.details.push(json!({"host": name, "precondition_errors": r.precondition_errors_checked, "complements": r.complements_checked}));
    }
    Ok(())
}

/// Default lattice budget for [`Population::projective`].
pub const DEFAULT_HOST_BUDGET: u128 = DEFAULT_LATTICE_BUDGET;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::catalog;

    #[test]
    fn names() {
        assert_eq!(SuiteName::parse("t3t4").unwrap(), SuiteName::SublatticeCodes);
        match SuiteName::parse("BOGUS") {
            Err(Error::Usage(m)) => assert!(m.contains("T1, UAT")),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn partitions() {
        let counts: Vec<usize> = (0..=5).map(|r| set_partitions(r).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn corrupted_fixture_fails_forbidden_suite() {
        let mut l = catalog::boolean(3);
        l.corrupt_meet_entry(3, 5, 0);
        let pop = Population::from_instances(vec![Instance {
            name: "corrupt".into(),
            lattice: l,
        }]);
        let r = run_theorem_suite(SuiteName::ForbiddenSublattices, &pop).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].witness["witness"]["kind"] == "identity_failure");
    }

    #[test]
    fn small_host_suites_pass() {
        let pop = Population::projective(2, 2, 3, DEFAULT_HOST_BUDGET).unwrap();
        for s in SuiteName::ALL {
            let r = run_theorem_suite(s, &pop).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
        }
    }
}
