//! `latcode`: build lattices and codes, check lattice properties, run the
//! verification suites and export DOT or JSON.
//!
//! Exit status: 0 on success, 1 when a checked property or suite fails,
//! 2 on bad input or usage, 3 when a size budget is exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latcode::codes::{build_partition_code, CodeJson, PartitionCodeSpec, SubspaceCode};
use latcode::gf::{Elem, Field};
use latcode::lab::catalog::{self, LatticeCatalog};
use latcode::lab::suite::{run_theorem_suite, Population, SuiteName, SuiteReport, DEFAULT_SAMPLES, DEFAULT_SEED};
use latcode::lattice::LatticeJson;
use latcode::linear::{lattice_of_subspaces, ProjectiveSpace, DEFAULT_LATTICE_BUDGET};
use latcode::props::{self, Property, PropertyReport};
use latcode::{Error, FiniteLattice};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "latcode", version, about = "Finite lattices, subspace lattices and subspace codes")]
struct Cli {
    /// Output format. Defaults to text on the terminal for `check` and
    /// `theorems`, and to JSON otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled populations and surveys.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest lattice to build.
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide lattice properties of a lattice JSON file.
    Check {
        input: PathBuf,
        /// Comma-separated properties; all of them when omitted.
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
    },
    /// Build a lattice or code.
    #[command(subcommand)]
    Build(BuildKind),
    /// Run verification suites.
    #[command(subcommand)]
    Theorems(TheoremsCommand),
    /// Re-emit a lattice or code JSON file in another format.
    Export { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum BuildKind {
    /// Lattice of all subspaces of GF(q)^n.
    Pspace(Dims),
    /// Boolean lattice of subsets of an n-set.
    Boolean {
        #[arg(short)]
        n: usize,
    },
    /// A named lattice from the built-in catalog.
    Catalog {
        /// Catalog entry; `--list` prints the names.
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Code spanned by blocks of an independent set.
    PartitionCode {
        #[command(flatten)]
        dims: Dims,
        /// Blocks of 1-based vector indices, e.g. "1,2|3".
        #[arg(long)]
        blocks: String,
        /// Vectors as comma-separated coordinates separated by ';'.
        /// Defaults to the standard basis.
        #[arg(long)]
        vectors: Option<String>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Dims {
    #[arg(short, default_value_t = 2)]
    q: usize,
    #[arg(short)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum TheoremsCommand {
    /// Run one suite. Without -q/-n it runs over the standard population.
    Run {
        suite: String,
        #[arg(short, requires = "n")]
        q: Option<usize>,
        #[arg(short, requires = "q")]
        n: Option<usize>,
        /// Sampled sublattices added to the standard population.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// List suite names.
    List,
}

/// Exit status and the error message for stderr.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource { .. } => 3,
            _ => 2,
        };
        Failure(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("latcode: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check { input, properties } => check(cli, input, properties),
        Command::Build(kind) => build(cli, kind),
        Command::Theorems(TheoremsCommand::List) => {
            let names: Vec<&str> = SuiteName::ALL.iter().map(|s| s.id()).collect();
            emit(cli, Format::Text, &json!(names), || names.join("\n") + "\n", None)?;
            Ok(0)
        }
        Command::Theorems(TheoremsCommand::Run { suite, q, n, samples }) => theorems(cli, suite, *q, *n, *samples),
        Command::Export { input } => export(cli, input),
    }
}

/// Writes `content` to `--out` atomically, or to stdout.
fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure(2, format!("cannot write output: {e}"));
    match out {
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(content.as_bytes()).map_err(io)?;
            tmp.persist(path).map_err(|e| io(e.error))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

/// Renders in the requested format. `terminal` is the format used on stdout
/// when none is given; files default to JSON.
fn emit(
    cli: &Cli,
    terminal: Format,
    value: &Value,
    text: impl FnOnce() -> String,
    dot: Option<&dyn Fn() -> String>,
) -> Result<(), Failure> {
    let format = cli.format.unwrap_or(if cli.out.is_some() { Format::Json } else { terminal });
    let content = match format {
        Format::Json => serde_json::to_string_pretty(value).map_err(|e| Failure(2, e.to_string()))? + "\n",
        Format::Text => text(),
        Format::Dot => match dot {
            Some(f) => f(),
            None => return Err(Failure(2, "DOT output is only available for lattices".into())),
        },
    };
    write_output(cli.out.as_deref(), &content)
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let s = fs::read_to_string(path).map_err(|e| Failure(2, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load_lattice(value: Value) -> Result<FiniteLattice, Failure> {
    let j: LatticeJson = serde_json::from_value(value).map_err(|e| Failure(2, format!("not lattice JSON: {e}")))?;
    Ok(FiniteLattice::from_json(&j)?)
}

fn check(cli: &Cli, input: &Path, names: &[String]) -> Result<u8, Failure> {
    let l = load_lattice(read_json(input)?)?;
    let wanted: Vec<Property> = if names.is_empty() {
        Property::ALL.to_vec()
    } else {
        names.iter().map(|s| Property::parse(s.trim())).collect::<Result<_, _>>()?
    };
    let reports: Vec<PropertyReport> = wanted
        .iter()
        .map(|&p| props::check_property(&l, p))
        .collect::<Result<_, _>>()?;
    let all_hold = reports.iter().all(|r| r.holds);
    let text = || {
        let mut s = String::new();
        for r in &reports {
            write!(s, "{}: {}", r.property, r.holds).unwrap();
            if let Some(w) = &r.witness {
                let elems: Vec<String> = w.elements.iter().map(|&x| l.label(x)).collect();
                write!(s, "  witness {:?} [{}] {}", w.kind, elems.join(", "), w.detail).unwrap();
            }
            s.push('\n');
        }
        s
    };
    let value = serde_json::to_value(&reports).map_err(|e| Failure(2, e.to_string()))?;
    emit(cli, Format::Text, &value, text, None)?;
    Ok(if all_hold { 0 } else { 1 })
}

fn lattice_summary(l: &FiniteLattice) -> String {
    format!(
        "{} elements, height {}, {} atoms, whitney {:?}\n",
        l.size(),
        l.lattice_height(),
        l.atoms().len(),
        l.whitney_numbers()
    )
}

fn emit_lattice(cli: &Cli, l: &FiniteLattice) -> Result<(), Failure> {
    let value = serde_json::to_value(l.to_json()).map_err(|e| Failure(2, e.to_string()))?;
    emit(cli, Format::Json, &value, || lattice_summary(l), Some(&|| l.to_dot()))
}

fn emit_code(cli: &Cli, code: &SubspaceCode) -> Result<(), Failure> {
    let value = serde_json::to_value(code.to_json()).map_err(|e| Failure(2, e.to_string()))?;
    let q = code.field().q();
    let text = || {
        let mut s = format!("{} codewords in GF({q})^{}\n", code.len(), code.n());
        for c in code.codewords() {
            writeln!(s, "  dim {}  {}", c.dim(), c.label(q)).unwrap();
        }
        s
    };
    let lattice = lattice_of_subspaces(code.field(), code.n(), code.codewords()).ok();
    let dot = lattice.as_ref().map(|(l, _)| move || l.to_dot());
    emit(cli, Format::Json, &value, text, dot.as_ref().map(|f| f as &dyn Fn() -> String))
}

fn build(cli: &Cli, kind: &BuildKind) -> Result<u8, Failure> {
    match kind {
        BuildKind::Pspace(d) => {
            let space = ProjectiveSpace::build_with_budget(&Field::new(d.q)?, d.n, cli.budget as u128)?;
            emit_lattice(cli, space.lattice())?;
        }
        BuildKind::Boolean { n } => {
            let needed = 1u128.checked_shl(*n as u32).unwrap_or(u128::MAX);
            if *n >= 64 || needed > cli.budget as u128 {
                return Err(Error::Resource {
                    what: format!("elements of B_{n}"),
                    needed,
                    limit: cli.budget as u128,
                }
                .into());
            }
            emit_lattice(cli, &catalog::boolean(*n))?;
        }
        BuildKind::Catalog { name, list } => {
            let cat = LatticeCatalog::standard();
            match (name, list) {
                (Some(name), false) => emit_lattice(cli, cat.get(name)?)?,
                _ => {
                    let names = cat.names();
                    emit(cli, Format::Text, &json!(names), || names.join("\n") + "\n", None)?;
                }
            }
        }
        BuildKind::PartitionCode { dims, blocks, vectors } => {
            let field = Field::new(dims.q)?;
            let blocks = parse_blocks(blocks)?;
            let vectors = match vectors {
                Some(v) => parse_vectors(v)?,
                None => {
                    let r = blocks.iter().flatten().max().map_or(0, |&i| i + 1);
                    if r > dims.n {
                        return Err(Failure(2, format!("block index {r} exceeds n = {}", dims.n)));
                    }
                    (0..r).map(|i| (0..dims.n).map(|j| (i == j) as Elem).collect()).collect()
                }
            };
            let needed = 1u128 << blocks.len().min(127);
            if needed > cli.budget as u128 {
                return Err(Error::Resource {
                    what: "codewords".into(),
                    needed,
                    limit: cli.budget as u128,
                }
                .into());
            }
            let spec = PartitionCodeSpec {
                field: field.spec(),
                n: dims.n,
                vectors,
                blocks,
            };
            emit_code(cli, &build_partition_code(&spec)?)?;
        }
    }
    Ok(0)
}

/// `"1,2|3"` to 0-based blocks `[[0, 1], [2]]`.
fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>, Failure> {
    s.split('|')
        .map(|block| {
            block
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(Failure(2, format!("bad block index '{t}' in '{s}' (indices start at 1)"))),
                })
                .collect()
        })
        .collect()
}

fn parse_vectors(s: &str) -> Result<Vec<Vec<Elem>>, Failure> {
    s.split(';')
        .map(|v| {
            v.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Elem>()
                        .map_err(|_| Failure(2, format!("bad coordinate '{t}' in '{s}'")))
                })
                .collect()
        })
        .collect()
}

fn theorems(cli: &Cli, suite: &str, q: Option<usize>, n: Option<usize>, samples: usize) -> Result<u8, Failure> {
    let name = SuiteName::parse(suite)?;
    let population = match (q, n) {
        (Some(q), Some(n)) => Population::projective(q, n, cli.seed, cli.budget as u128)?,
        _ => Population::standard(cli.seed, samples)?,
    };
    let report = run_theorem_suite(name, &population)?;
    let value = serde_json::to_value(&report).map_err(|e| Failure(2, e.to_string()))?;
    match &cli.out {
        // the file gets the JSON report, the terminal a summary
        Some(_) => {
            let content = serde_json::to_string_pretty(&value).map_err(|e| Failure(2, e.to_string()))? + "\n";
            write_output(cli.out.as_deref(), &content)?;
            print!("{}", suite_summary(&report));
        }
        None => emit(cli, Format::Text, &value, || suite_summary(&report), None)?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn suite_summary(r: &SuiteReport) -> String {
    let mut s = format!(
        "{}: {} instances, {} failures{}\n",
        r.suite,
        r.instances,
        r.failures.len(),
        r.seed.map_or(String::new(), |seed| format!(", seed {seed}"))
    );
    for d in &r.details {
        writeln!(s, "  {d}").unwrap();
    }
    for f in &r.failures {
        writeln!(s, "  FAIL {}: {}", f.instance, f.witness).unwrap();
    }
    s
}

fn export(cli: &Cli, input: &Path) -> Result<u8, Failure> {
    let value = read_json(input)?;
    if value.get("codewords").is_some() {
        let j: CodeJson = serde_json::from_value(value).map_err(|e| Failure(2, format!("not code JSON: {e}")))?;
        emit_code(cli, &SubspaceCode::from_json(&j)?)?;
    } else {
        emit_lattice(cli, &load_lattice(value)?)?;
    }
    Ok(0)
}
