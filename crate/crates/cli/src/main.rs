use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use quiverstack::algebra::{Algebra, AlgebraSpec};
use quiverstack::dot::{layered_dot, quiver_dot};
use quiverstack::family::{generate_family, StepFunction};
use quiverstack::field::{Field, FieldSpec, Gf2, PrimeField, Rationals};
use quiverstack::format::{emit_alg, parse_alg};
use quiverstack::module::{
    decompose, minimal_resolution, syzygy, LayeredGraph, Representation, Resolver, ResolverOptions, SearchBudget,
};
use quiverstack::monomial::critical_report;
use quiverstack::oracle::{observed_findim, EnumerationBudget};
use quiverstack::stacking::{check_partition, stack_invariants, verify_splitting, StackingPartition};
use quiverstack::verify::{run_criterion, verify_family, VerifyOptions, CRITERIA};

#[derive(Parser)]
#[command(name = "quiverstack", version, about = "Homological algebra of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect an algebra given as a .alg file.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Work with a module given as a layered graph (.mod file).
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Critical paths and the finitistic-dimension interval of a monomial algebra.
    #[command(subcommand)]
    Monomial(MonomialCmd),
    /// Stacking partitions.
    #[command(subcommand)]
    Stack(StackCmd),
    /// Generate and check the algebra family realizing a step function.
    Theorem10(Theorem10Args),
    /// Observed n-generated finitistic dimension by enumerating Loewy-length-2 modules.
    Oracle(OracleArgs),
    /// Run the acceptance battery.
    #[command(name = "verify-paper")]
    Acceptance(AcceptanceArgs),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Info(AlgebraArgs),
    Dot(AlgebraArgs),
}

#[derive(Args)]
struct AlgebraArgs {
    file: PathBuf,
    /// Override the field declared in the file (Q, F2, F<p>).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand)]
enum ModuleCmd {
    Pdim(ModuleArgs),
    Syzygy {
        #[command(flatten)]
        args: ModuleArgs,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
    },
    Layers(ModuleArgs),
    Dot(ModuleArgs),
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 24)]
    cutoff: usize,
}

#[derive(Subcommand)]
enum MonomialCmd {
    Report(AlgebraArgs),
}

#[derive(Subcommand)]
enum StackCmd {
    Check(StackArgs),
    Invariants(StackArgs),
    Verify {
        #[command(flatten)]
        args: StackArgs,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Args)]
struct StackArgs {
    file: PathBuf,
    /// `E'=v,w;E''=x,y` or `E'=v,w`; defaults to the partition in the file.
    #[arg(long)]
    partition: Option<String>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long, default_value_t = 16)]
    cutoff: usize,
}

#[derive(Args)]
struct Theorem10Args {
    /// Step function as `k:value` pairs, e.g. `1:2,2:4`.
    #[arg(long)]
    jumps: String,
    /// Directory for the .alg, .mod, .dot and report.json files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the witness, structure and lemma checks.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Also run the oracle on the top level at these n.
    #[arg(long, value_delimiter = ',')]
    oracle_n: Vec<usize>,
    #[arg(long, default_value_t = 11)]
    seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long)]
    n: usize,
    /// A finite field: F2 or F<p>.
    #[arg(long, default_value = "F2")]
    field: String,
    /// Modules visited per top vector when its lattice is not enumerated in full.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Tops whose first radical layer has at most this dimension are enumerated in full.
    #[arg(long, default_value_t = 12)]
    full_dim: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    cutoff: usize,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Comma-separated criterion numbers; all by default.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    #[arg(long)]
    json: bool,
}

/// Input could not be read or parsed.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn input<T>(r: anyhow::Result<T>) -> Result<T, InputError> {
    r.map_err(InputError)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_spec(path: &Path, field: Option<&str>) -> anyhow::Result<AlgebraSpec> {
    let mut spec = parse_alg(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(f) = field {
        spec.field = f.parse::<FieldSpec>()?;
    }
    Ok(spec)
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Run `$body` with `$alg` bound to the algebra built over its declared field.
macro_rules! over_field {
    ($spec:expr, |$alg:ident| $body:expr) => {(|| {
        let spec: &AlgebraSpec = $spec;
        match spec.field {
            FieldSpec::Rational => {
                let $alg = spec.build(&Rationals)?;
                $body
            }
            FieldSpec::Prime(2) => {
                let $alg = spec.build(&Gf2)?;
                $body
            }
            FieldSpec::Prime(p) => {
                let $alg = spec.build(&PrimeField::new(p)?)?;
                $body
            }
        }
    })()};
}

fn load_module<F: Field>(alg: &Arc<Algebra<F>>, path: &Path) -> anyhow::Result<(LayeredGraph, Representation<F>)> {
    let g = LayeredGraph::parse(&read(path)?, alg.quiver()).with_context(|| format!("parsing {}", path.display()))?;
    let m = g.build(alg)?;
    Ok((g, m))
}

fn partition_for(spec: &AlgebraSpec, text: Option<&str>) -> anyhow::Result<StackingPartition> {
    match (text, &spec.partition) {
        (Some(t), _) => Ok(StackingPartition::parse(t, &spec.quiver)?),
        (None, Some(p)) => Ok(StackingPartition::from_names(&spec.quiver, p)?),
        (None, None) => bail!("no partition given and none declared in the file"),
    }
}

#[derive(Serialize)]
struct PdimOut {
    pdim: String,
    resolution: Vec<quiverstack::module::homology::ResolutionStep>,
}

#[derive(Serialize)]
struct SyzygyOut {
    k: usize,
    dimension_vector: Vec<usize>,
    layers: quiverstack::module::Layers,
    summands: Vec<String>,
    decomposition_certified: bool,
}

fn module_cmd(cmd: ModuleCmd) -> Result<bool, InputError> {
    let args = match &cmd {
        ModuleCmd::Pdim(a) | ModuleCmd::Layers(a) | ModuleCmd::Dot(a) => a,
        ModuleCmd::Syzygy { args, .. } => args,
    };
    let spec = input(load_spec(&args.algebra, args.field.as_deref()))?;
    let cutoff = args.cutoff;
    let graph = args.graph.clone();
    input(over_field!(&spec, |alg| {
        let (g, m) = load_module(&alg, &graph)?;
        match &cmd {
            ModuleCmd::Pdim(_) => {
                let mut res = Resolver::new(
                    &alg,
                    ResolverOptions {
                        cutoff,
                        ..Default::default()
                    },
                );
                let pd = res.pdim(&m);
                print_json(&PdimOut {
                    pdim: pd.render(),
                    resolution: minimal_resolution(&m, cutoff),
                })?;
            }
            ModuleCmd::Syzygy { k, .. } => {
                let omega = syzygy(&m, *k);
                let dec = decompose(&omega, &SearchBudget::default());
                print_json(&SyzygyOut {
                    k: *k,
                    dimension_vector: omega.dims().to_vec(),
                    layers: omega.layers(),
                    summands: dec.summands.iter().map(|s| s.render_summary()).collect(),
                    decomposition_certified: dec.certified,
                })?;
            }
            ModuleCmd::Layers(_) => print_json(&m.layers())?,
            ModuleCmd::Dot(_) => print!("{}", layered_dot(&g, alg.quiver())),
        }
        anyhow::Ok(true)
    }))
}

fn stack_cmd(cmd: StackCmd) -> Result<bool, InputError> {
    let args = match &cmd {
        StackCmd::Check(a) | StackCmd::Invariants(a) => a,
        StackCmd::Verify { args, .. } => args,
    };
    let spec = input(load_spec(&args.file, args.field.as_deref()))?;
    let part = input(partition_for(&spec, args.partition.as_deref()))?;
    let cutoff = args.cutoff;
    let mut module = None;
    if let StackCmd::Verify { graph, depth, .. } = &cmd {
        module = Some((graph.clone(), *depth));
    }
    let outcome: anyhow::Result<Result<bool, anyhow::Error>> = over_field!(&spec, |alg| {
        match &module {
            None if matches!(cmd, StackCmd::Check(_)) => {
                let rep = check_partition(&alg, &part);
                print_json(&rep)?;
                anyhow::Ok(Ok(rep.valid))
            }
            None => {
                let inv = stack_invariants(&alg, &part, cutoff)?;
                print_json(&inv)?;
                anyhow::Ok(Ok(inv.valid))
            }
            Some((graph, depth)) => {
                let (_, m) = match load_module(&alg, graph) {
                    Ok(x) => x,
                    Err(e) => return Ok(Err(e)),
                };
                let t = stack_invariants(&alg, &part, cutoff)?.t;
                let rep = verify_splitting(&alg, &part, &m, *depth, Some(t), cutoff)?;
                print_json(&rep)?;
                anyhow::Ok(Ok(rep.passed))
            }
        }
    });
    input(outcome.and_then(|r| r))
}

fn theorem10(args: Theorem10Args) -> Result<bool, InputError> {
    let f = input(StepFunction::from_jumps(&args.jumps).map_err(Into::into))?;
    let bundle = input(generate_family(&f).map_err(Into::into))?;
    let d = bundle.d();
    if let Some(dir) = &args.out {
        input(write_family(&bundle, dir))?;
    }
    let mut passed = true;
    if args.verify || !args.oracle_n.is_empty() {
        let opts = VerifyOptions {
            lemma_samples: args.samples,
            seed: args.seed,
            oracle_n: args.oracle_n.clone(),
            ..Default::default()
        };
        let rep = input(verify_family(&bundle, &opts).map_err(Into::into))?;
        passed = rep.passed();
        let text = input(serde_json::to_string_pretty(&rep).map_err(Into::into))?;
        if let Some(dir) = &args.out {
            input(fs::write(dir.join("report.json"), &text).map_err(Into::into))?;
        }
        println!("{text}");
    } else {
        let top = &bundle.levels[d];
        println!("{}", emit_alg(&top.spec));
        println!("# witness N_{d}\n{}", top.witness);
    }
    Ok(passed)
}

fn write_family(bundle: &quiverstack::family::FamilyBundle, dir: &Path) -> anyhow::Result<()> {
    fs::create_dir_all(dir)?;
    for level in &bundle.levels {
        let l = level.index;
        fs::write(dir.join(format!("lambda{l}.alg")), emit_alg(&level.spec))?;
        fs::write(dir.join(format!("witness{l}.mod")), &level.witness)?;
        let upper = if l == 0 {
            None
        } else {
            let q = &level.spec.quiver;
            Some(
                level
                    .new_vertices
                    .iter()
                    .map(|v| q.vertex(v))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        };
        fs::write(dir.join(format!("lambda{l}.dot")), quiver_dot(&level.spec.quiver, upper.as_deref()))?;
        let g = bundle.witness_graph(l)?;
        fs::write(dir.join(format!("witness{l}.dot")), layered_dot(&g, &level.spec.quiver))?;
    }
    Ok(())
}

fn oracle(args: OracleArgs) -> Result<bool, InputError> {
    let spec = input(load_spec(&args.algebra, Some(&args.field)))?;
    let budget = EnumerationBudget {
        max_modules: args.budget,
        full_dim: args.full_dim,
        seed: args.seed,
        cutoff: args.cutoff,
    };
    input(match spec.field {
        FieldSpec::Rational => Err(anyhow::anyhow!("the oracle needs a finite field")),
        FieldSpec::Prime(2) => (|| {
            let alg = spec.build(&Gf2)?;
            print_json(&observed_findim(&alg, args.n, &budget)?)?;
            anyhow::Ok(true)
        })(),
        FieldSpec::Prime(p) => (|| {
            let alg = spec.build(&PrimeField::new(p)?)?;
            print_json(&observed_findim(&alg, args.n, &budget)?)?;
            anyhow::Ok(true)
        })(),
    })
}

fn acceptance(args: AcceptanceArgs) -> Result<bool, InputError> {
    let ids: Vec<u8> = if args.only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        args.only.clone()
    };
    let mut all = Vec::new();
    let mut passed = true;
    for id in ids {
        let c = input(run_criterion(id).map_err(Into::into))?;
        passed &= c.passed;
        if !args.json {
            println!("{}", c.line());
        }
        all.push(c);
    }
    if args.json {
        input(print_json(&all))?;
    }
    Ok(passed)
}

fn run(cli: Cli) -> Result<bool, InputError> {
    match cli.command {
        Command::Algebra(AlgebraCmd::Info(a)) => {
            let spec = input(load_spec(&a.file, a.field.as_deref()))?;
            input(over_field!(&spec, |alg| {
                print_json(&alg.info())?;
                anyhow::Ok(true)
            }))
        }
        Command::Algebra(AlgebraCmd::Dot(a)) => {
            let spec = input(load_spec(&a.file, a.field.as_deref()))?;
            let upper = match &spec.partition {
                Some(p) => Some(input(StackingPartition::from_names(&spec.quiver, p).map_err(Into::into))?.upper),
                None => None,
            };
            print!("{}", quiver_dot(&spec.quiver, upper.as_deref()));
            Ok(true)
        }
        Command::Module(cmd) => module_cmd(cmd),
        Command::Monomial(MonomialCmd::Report(a)) => {
            let spec = input(load_spec(&a.file, a.field.as_deref()))?;
            input(over_field!(&spec, |alg| {
                print_json(&critical_report(&alg)?)?;
                anyhow::Ok(true)
            }))
        }
        Command::Stack(cmd) => stack_cmd(cmd),
        Command::Theorem10(a) => theorem10(a),
        Command::Oracle(a) => oracle(a),
        Command::Acceptance(a) => acceptance(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
