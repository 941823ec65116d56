//! `modelkit`: model structures on finite lattices from the command line.
//!
//! Exit status is 0 on success, 1 when a verification or construction fails
//! with a witness, and 2 on usage or input errors.

mod cache;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use modelkit::catalog;
use modelkit::colocalisation::{colocalisations_among, s_colocalise};
use modelkit::constructions::ConstructionError;
use modelkit::json::{CensusEntry, FactorisationJson, ModelJson};
use modelkit::localisation::{localisations_among, LocalisationError};
use modelkit::transfer::{LiftFailure, MixError};
use modelkit::{
    injective_lift, is_locality, k_colocalise, localise_from_locality, mix, projective_lift, prop15_build,
    prop15_dual_build, run_verification, s_localise, Coreflection, FiniteLattice, GaloisConnection, Keep, Limits,
    ModelStructure, ObjectSet, Reflection, Side, Theorem, VerificationReport, VerifyError,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "modelkit", version, about = "Model structures on finite lattices")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Lift the size caps on exhaustive scans.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in lattices.
    Lattices {
        #[command(subcommand)]
        action: LatticesAction,
    },
    /// Enumerate factorisation systems, model structures or (co)localisations.
    Enumerate {
        kind: EnumerateKind,
        #[arg(long)]
        lattice: String,
        /// `discrete` or a model structure JSON file (default: discrete).
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Localise a base structure at maps (S-localisation) or at a set of local objects.
    Localise(PipelineArgs),
    /// Colocalise a base structure at maps or at a set of objects (K-colocalisation).
    Colocalise(PipelineArgs),
    /// Mix two model structures on the same lattice.
    Mix {
        #[arg(long, value_name = "FILE")]
        m1: PathBuf,
        #[arg(long, value_name = "FILE")]
        m2: PathBuf,
        #[arg(long)]
        keep: KeepArg,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Lift a model structure along one adjoint of a Galois connection.
    Lift {
        kind: LiftKind,
        #[arg(long, value_name = "FILE")]
        adjunction: PathBuf,
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Exhaustively verify a theorem on a lattice.
    Verify {
        #[arg(value_parser = parse_theorem)]
        theorem: Theorem,
        #[arg(long)]
        lattice: String,
        /// `discrete` or a model structure JSON file (default: every eligible structure).
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Explicit constructions.
    Build {
        #[command(subcommand)]
        what: BuildWhat,
    },
}

#[derive(Subcommand)]
enum LatticesAction {
    List,
    Show { name: String },
}

#[derive(Subcommand)]
enum BuildWhat {
    /// Model structure with prescribed fibrant, cofibrant and bifibrant objects.
    Prop15 {
        #[arg(long)]
        lattice: String,
        /// Reflective subposet B (with `--dual`: the inner reflective subposet A).
        #[arg(long)]
        locals: String,
        /// Inner coreflective subposet A (with `--dual`: the coreflective subposet B).
        #[arg(long)]
        colocals: String,
        /// Colocalise first, then localise.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct PipelineArgs {
    #[arg(long)]
    lattice: String,
    #[arg(long)]
    base: String,
    /// Comma-separated maps `a<=b`.
    #[arg(long, conflicts_with = "objects", required_unless_present = "objects")]
    maps: Option<String>,
    /// Comma-separated object labels.
    #[arg(long)]
    objects: Option<String>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateKind {
    Ofs,
    Models,
    Localisations,
    Colocalisations,
}

#[derive(Clone, Copy, ValueEnum)]
enum KeepArg {
    Fibrations,
    Cofibrations,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftKind {
    Proj,
    Inj,
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse()
}

enum Outcome {
    Ok,
    Failed,
}

/// A structure together with its (co)fibrant objects and, for pipeline
/// results, the (co)local objects it was built from.
#[derive(Serialize)]
struct ModelOutput {
    #[serde(flatten)]
    entry: CensusEntry,
    #[serde(skip_serializing_if = "Option::is_none")]
    local: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    colocal: Option<Vec<String>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", describe_error(&e));
            ExitCode::from(2)
        }
    }
}

/// The error chain, skipping causes already spelled out by their parent.
fn describe_error(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn run(cli: Cli) -> Result<Outcome> {
    let limits = Limits {
        allow_large: cli.allow_large,
    };
    match cli.command {
        Command::Lattices { action } => lattices(action),
        Command::Enumerate {
            kind,
            lattice,
            base,
            json,
        } => enumerate(kind, &lattice, base.as_deref(), json.as_deref(), limits),
        Command::Localise(args) => pipeline(true, &args),
        Command::Colocalise(args) => pipeline(false, &args),
        Command::Mix { m1, m2, keep, json } => run_mix(&m1, &m2, keep, json.as_deref()),
        Command::Lift {
            kind,
            adjunction,
            model,
            json,
        } => lift(kind, &adjunction, &model, json.as_deref()),
        Command::Verify {
            theorem,
            lattice,
            base,
            json,
        } => verify(theorem, &lattice, base.as_deref(), json.as_deref(), limits),
        Command::Build {
            what:
                BuildWhat::Prop15 {
                    lattice,
                    locals,
                    colocals,
                    dual,
                    json,
                },
        } => build_prop15(&lattice, &locals, &colocals, dual, json.as_deref()),
    }
}

/// A catalog name or a lattice file, named after its stem.
fn load_lattice(spec: &str) -> Result<Arc<FiniteLattice>> {
    if let Some(entry) = catalog::lookup(spec) {
        return Ok(entry.lattice);
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path)
        .with_context(|| format!("`{spec}` is neither a built-in lattice nor a readable file"))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
    let lattice = FiniteLattice::parse(name, &text).with_context(|| format!("parsing {spec}"))?;
    Ok(Arc::new(lattice))
}

fn load_base(spec: &str, lattice: &Arc<FiniteLattice>) -> Result<ModelStructure> {
    if spec == "discrete" {
        return Ok(ModelStructure::discrete(lattice.clone()));
    }
    let raw = read_model_json(Path::new(spec))?;
    raw.to_model(lattice.clone())
        .with_context(|| format!("loading base {spec}"))
}

fn read_model_json(path: &Path) -> Result<ModelJson> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_model(path: &Path) -> Result<ModelStructure> {
    let raw = read_model_json(path)?;
    let lattice = raw.resolve_lattice()?;
    raw.to_model(lattice)
        .with_context(|| format!("loading {}", path.display()))
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn braces(items: Vec<String>) -> String {
    format!("{{{}}}", items.join(", "))
}

fn print_model(m: &ModelStructure) {
    let l = m.lattice();
    println!("lattice: {}", l.name());
    println!("C: {}", braces(l.format_class(m.cofibrations())));
    println!("W: {}", braces(l.format_class(m.weak_equivalences())));
    println!("F: {}", braces(l.format_class(m.fibrations())));
    println!("fibrant: {}", braces(l.format_objects(&m.fibrant_objects())));
    println!("cofibrant: {}", braces(l.format_objects(&m.cofibrant_objects())));
}

fn model_output(m: &ModelStructure, local: Option<&ObjectSet>, colocal: Option<&ObjectSet>) -> ModelOutput {
    let l = m.lattice();
    ModelOutput {
        entry: CensusEntry::from_model(m),
        local: local.map(|s| l.format_objects(s)),
        colocal: colocal.map(|s| l.format_objects(s)),
    }
}

fn lattices(action: LatticesAction) -> Result<Outcome> {
    match action {
        LatticesAction::List => {
            for e in catalog::catalog() {
                println!(
                    "{:<4} {:>2} objects {:>3} maps  {}",
                    e.name,
                    e.lattice.len(),
                    e.lattice.map_count(),
                    e.notes
                );
            }
        }
        LatticesAction::Show { name } => {
            let l = load_lattice(&name)?;
            println!(
                "# {}: {} objects, {} maps ({} non-identity)",
                l.name(),
                l.len(),
                l.map_count(),
                l.non_identity_map_count()
            );
            print!("{}", l.to_text());
        }
    }
    Ok(Outcome::Ok)
}

fn enumerate(
    kind: EnumerateKind,
    lattice: &str,
    base: Option<&str>,
    json: Option<&Path>,
    limits: Limits,
) -> Result<Outcome> {
    let l = load_lattice(lattice)?;
    match kind {
        EnumerateKind::Ofs | EnumerateKind::Models if base.is_some() => {
            bail!("--base only applies to localisations and colocalisations")
        }
        EnumerateKind::Ofs => {
            let systems = cache::systems(&l, limits)?;
            println!("{} factorisation systems on {}", systems.len(), l.name());
            if let Some(path) = json {
                let out: Vec<FactorisationJson> = systems.iter().map(FactorisationJson::from_system).collect();
                write_json(path, &out)?;
            }
        }
        EnumerateKind::Models => {
            let census = cache::models(&l, limits)?;
            let left = census.iter().filter(|m| m.is_left_proper()).count();
            let right = census.iter().filter(|m| m.is_right_proper()).count();
            println!(
                "{} model structures on {} ({left} left proper, {right} right proper)",
                census.len(),
                l.name()
            );
            if let Some(path) = json {
                let out: Vec<CensusEntry> = census.iter().map(CensusEntry::from_model).collect();
                write_json(path, &out)?;
            }
        }
        EnumerateKind::Localisations | EnumerateKind::Colocalisations => {
            let b = load_base(base.unwrap_or("discrete"), &l)?;
            let census = cache::models(&l, limits)?;
            let localising = matches!(kind, EnumerateKind::Localisations);
            let found = if localising {
                localisations_among(&b, &census)
            } else {
                colocalisations_among(&b, &census)
            };
            let noun = if localising { "localisations" } else { "colocalisations" };
            println!("{} {noun} of the base on {}", found.len(), l.name());
            let mut out = Vec::with_capacity(found.len());
            for m in &found {
                let (local, colocal) = if localising {
                    (Some(m.fibrant_objects()), None)
                } else {
                    (None, Some(m.cofibrant_objects()))
                };
                let objects = local.as_ref().or(colocal.as_ref()).expect("one side is set");
                println!(
                    "  {}: {}  W: {}",
                    if localising { "local" } else { "colocal" },
                    braces(l.format_objects(objects)),
                    braces(l.format_class(m.weak_equivalences()))
                );
                out.push(model_output(m, local.as_ref(), colocal.as_ref()));
            }
            if let Some(path) = json {
                write_json(path, &out)?;
            }
        }
    }
    Ok(Outcome::Ok)
}

/// Failures that indicate a broken construction rather than bad input.
fn is_internal(e: &LocalisationError) -> bool {
    matches!(
        e,
        LocalisationError::Invariant { .. } | LocalisationError::Lift(_) | LocalisationError::Mix(_)
    )
}

fn pipeline(localising: bool, args: &PipelineArgs) -> Result<Outcome> {
    let l = load_lattice(&args.lattice)?;
    let base = load_base(&args.base, &l)?;
    let result = match (&args.maps, &args.objects, localising) {
        (Some(maps), _, true) => s_localise(&base, &l.parse_map_list(maps)?),
        (Some(maps), _, false) => s_colocalise(&base, &l.parse_map_list(maps)?),
        (None, Some(objects), true) => {
            let set = l.parse_object_list(objects)?;
            is_locality(&base, &set)
                .map_err(LocalisationError::from)
                .and_then(|loc| localise_from_locality(&loc))
        }
        (None, Some(objects), false) => k_colocalise(&base, &l.parse_object_list(objects)?),
        (None, None, _) => bail!("one of --maps or --objects is required"),
    };
    match result {
        Ok(m) => {
            print_model(&m);
            if let Some(path) = &args.json {
                let out = if localising {
                    model_output(&m, Some(&m.fibrant_objects()), None)
                } else {
                    model_output(&m, None, Some(&m.cofibrant_objects()))
                };
                write_json(path, &out)?;
            }
            Ok(Outcome::Ok)
        }
        Err(e) if is_internal(&e) => {
            println!("failed: {e}");
            Ok(Outcome::Failed)
        }
        Err(e) => Err(e.into()),
    }
}

fn run_mix(m1: &Path, m2: &Path, keep: KeepArg, json: Option<&Path>) -> Result<Outcome> {
    let (a, b) = (load_model(m1)?, load_model(m2)?);
    let keep = match keep {
        KeepArg::Fibrations => Keep::Fibrations,
        KeepArg::Cofibrations => Keep::Cofibrations,
    };
    match mix(&a, &b, keep) {
        Ok(m) => {
            print_model(&m);
            if let Some(path) = json {
                write_json(path, &ModelJson::from_model(&m))?;
            }
            Ok(Outcome::Ok)
        }
        Err(e @ MixError::NotAModel(_)) => {
            println!("failed: {e}");
            Ok(Outcome::Failed)
        }
        Err(e) => Err(e.into()),
    }
}

fn lift(kind: LiftKind, adjunction: &Path, model: &Path, json: Option<&Path>) -> Result<Outcome> {
    let text = fs::read_to_string(adjunction).with_context(|| format!("reading {}", adjunction.display()))?;
    let g = GaloisConnection::parse(&text).with_context(|| format!("parsing {}", adjunction.display()))?;
    let raw = read_model_json(model)?;
    // The structure lives where the chosen adjoint lands.
    let (side, home) = match kind {
        LiftKind::Proj => (Side::Right, g.lower().clone()),
        LiftKind::Inj => (Side::Left, g.upper().clone()),
    };
    let m = raw
        .to_model(home)
        .with_context(|| format!("loading {}", model.display()))?;
    let result = match kind {
        LiftKind::Proj => projective_lift(&g, side, &m),
        LiftKind::Inj => injective_lift(&g, side, &m),
    };
    match result {
        Ok(lifted) => {
            print_model(&lifted);
            if let Some(path) = json {
                write_json(path, &ModelJson::from_model(&lifted))?;
            }
            Ok(Outcome::Ok)
        }
        Err(e @ (LiftFailure::WrongSide { .. } | LiftFailure::LatticeMismatch)) => Err(e.into()),
        Err(e) => {
            println!("failed: {e}");
            Ok(Outcome::Failed)
        }
    }
}

fn verify(theorem: Theorem, lattice: &str, base: Option<&str>, json: Option<&Path>, limits: Limits) -> Result<Outcome> {
    let l = load_lattice(lattice)?;
    let base = base.map(|spec| load_base(spec, &l)).transpose()?;
    let report = match run_verification(theorem, &l, base.as_ref(), limits) {
        Ok(r) => r,
        Err(e @ VerifyError::Failed { .. }) => VerificationReport::failed(theorem.name(), l.name(), &e),
        Err(e) => return Err(anyhow!(e)),
    };
    let mut line = format!("bijection_ok: {}", report.bijection_ok);
    for (k, v) in &report.counts {
        line.push_str(&format!(", {k}: {v}"));
    }
    println!("{line}");
    for w in &report.witnesses {
        println!("witness: {w}");
    }
    if let Some(path) = json {
        write_json(path, &report)?;
    }
    Ok(if report.bijection_ok {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn build_prop15(lattice: &str, locals: &str, colocals: &str, dual: bool, json: Option<&Path>) -> Result<Outcome> {
    let l = load_lattice(lattice)?;
    let (locals, colocals) = (l.parse_object_list(locals)?, l.parse_object_list(colocals)?);
    let result = if dual {
        let c = Coreflection::new(l.clone(), colocals).context("--colocals must be coreflective")?;
        prop15_dual_build(&c, &locals)
    } else {
        let r = Reflection::new(l.clone(), locals).context("--locals must be reflective")?;
        prop15_build(&r, &colocals)
    };
    match result {
        Ok(m) => {
            print_model(&m);
            println!("bifibrant: {}", braces(l.format_objects(&m.bifibrant_objects())));
            if let Some(path) = json {
                let out = model_output(&m, Some(&m.fibrant_objects()), Some(&m.cofibrant_objects()));
                write_json(path, &out)?;
            }
            Ok(Outcome::Ok)
        }
        Err(e @ ConstructionError::Invariant { .. }) => {
            println!("failed: {e}");
            Ok(Outcome::Failed)
        }
        Err(ConstructionError::Pipeline(e)) if is_internal(&e) => {
            println!("failed: {e}");
            Ok(Outcome::Failed)
        }
        Err(e) => Err(e.into()),
    }
}
