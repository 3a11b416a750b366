use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use epair_core::kostant::{freudenthal_character, koszul_n_homology, kostant_homology, weyl_character};
use epair_core::lattice::{parse_type_label, DEFAULT_RANK_CAP};
use epair_core::verify::{parse_dims, parse_suites, parse_types, run};
use epair_core::{
    Catalog, CharElement, Error, GradedHomology, HomologySource, PairingKind, PairingValue, PositiveSystem,
    RootSystem, RunConfig, Series, Weight, WeylElement, WeylSubgroup,
};

#[derive(Parser)]
#[command(name = "epair", version, about = "Exact pairings of virtual representations on root lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a root system.
    Rootsys {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Character of an irreducible highest weight module.
    Char {
        #[command(flatten)]
        ty: TypeArgs,
        /// Highest weight, e.g. `1,0`.
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
        #[arg(long, value_enum, default_value_t = CharMethod::Weyl)]
        method: CharMethod,
        #[command(flatten)]
        common: Common,
    },
    /// n-homology of an irreducible module.
    Homology {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_hyphen_values = true)]
        weight: Weight,
        #[arg(long, value_enum, default_value_t = Source::Koszul)]
        source: Source,
        /// Twist the positive system by this Weyl word (1-based, comma separated).
        #[arg(long)]
        twist: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build a catalog of classes.
    Zoo {
        #[command(flatten)]
        preset: PresetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Pairing matrix of a catalog.
    Pairing {
        /// Catalog JSON written by `zoo`; otherwise built from the preset flags.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Elliptic)]
        kind: KindArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites.
    Verify {
        /// Suites, comma separated, or `all`.
        #[arg(long)]
        suite: Option<String>,
        /// Types such as `A1,B2`, or a series letter with `--rank`.
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        bound: Option<i64>,
        /// `full`, `trivial`, or 1-based generator words such as `1;2,1`.
        #[arg(long)]
        w0: Option<String>,
        /// Abelian dimensions, e.g. `1..6`.
        #[arg(long)]
        dims: Option<String>,
        /// Random pairs per type for the fuzz suite.
        #[arg(long)]
        fuzz: Option<usize>,
        /// Key-value configuration file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Record wall time per suite.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "cap-weyl")]
    cap_weyl: Option<u128>,
    #[arg(long = "cap-dim")]
    cap_dim: Option<u128>,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Series letter, or a full label such as `G2`.
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Clone)]
struct PresetArgs {
    #[arg(long, value_enum, default_value_t = Preset::Compact)]
    preset: Preset,
    #[arg(long = "type")]
    ty: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Weight bound for compact and SL2 catalogs.
    #[arg(long, default_value_t = 2)]
    bound: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharMethod {
    Weyl,
    Freudenthal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Koszul,
    Kostant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Compact,
    Sl2,
    Unequal,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Multiplicity,
    Elliptic,
    Homological,
    All,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

struct Output {
    json: Value,
    table: String,
    pass: bool,
}

impl Output {
    fn ok(json: Value, table: String) -> Self {
        Output { json, table, pass: true }
    }
}

fn series_rank(ty: &str, rank: Option<usize>) -> CliResult<(Series, usize)> {
    match rank {
        Some(r) => Ok((ty.parse::<Series>()?, r)),
        None => Ok(parse_type_label(ty)?),
    }
}

fn root_system(ty: &str, rank: Option<usize>) -> CliResult<RootSystem> {
    let (s, r) = series_rank(ty, rank)?;
    Ok(RootSystem::with_rank_cap(s, r, DEFAULT_RANK_CAP)?)
}

fn weyl_cap(c: &Common) -> u128 {
    c.cap_weyl.unwrap_or(epair_core::weyl::DEFAULT_WEYL_CAP)
}

fn dim_cap(c: &Common) -> u128 {
    c.cap_dim.unwrap_or(epair_core::kostant::DEFAULT_DIM_CAP)
}

fn char_table(x: &CharElement) -> String {
    let mut out = String::new();
    for (w, c) in x.terms() {
        let _ = writeln!(out, "{c:>8}  e^{w}");
    }
    out
}

fn homology_table(h: &GradedHomology) -> String {
    let mut out = String::new();
    for (p, class) in h.classes().iter().enumerate() {
        let _ = writeln!(out, "H_{p}: {class}");
    }
    let _ = writeln!(out, "euler: {}", h.euler_class());
    out
}

fn matrix_table(labels: &[String], m: &[Vec<PairingValue>]) -> String {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = labels
        .iter()
        .map(String::len)
        .chain(cells.iter().flatten().map(String::len))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:>width$}", "");
    for l in labels {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(&cells) {
        let _ = write!(out, "{l:>width$}");
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}

fn cmd_rootsys(ty: &TypeArgs) -> CliResult<Output> {
    let rs = root_system(&ty.ty, ty.rank)?;
    let dump = rs.dump();
    let mut table = format!("{}  |R+| = {}  |W| = {}\nrho = {}\n", rs.label(), rs.num_positive_roots(), rs.classical_weyl_order(), rs.rho());
    for r in rs.positive_roots() {
        let _ = writeln!(table, "  {r}");
    }
    let json = serde_json::to_value(&dump).map_err(Error::from)?;
    Ok(Output::ok(json, table))
}

fn cmd_char(ty: &TypeArgs, weight: &Weight, method: CharMethod, common: &Common) -> CliResult<Output> {
    let rs = root_system(&ty.ty, ty.rank)?;
    rs.check_rank(weight)?;
    let x = match method {
        CharMethod::Weyl => weyl_character(weight, &rs, &WeylSubgroup::full(&rs, weyl_cap(common))?)?,
        CharMethod::Freudenthal => freudenthal_character(weight, &rs)?,
    };
    let json = json!({
        "type": rs.label(),
        "highest_weight": weight.coords(),
        "dim": x.degree().to_string(),
        "character": x,
    });
    let table = format!("{} V{}  dim {}\n{}", rs.label(), weight, x.degree(), char_table(&x));
    Ok(Output::ok(json, table))
}

fn parse_word(s: &str, rank: usize) -> CliResult<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(Failure::Usage(format!("invalid reflection index `{t}` (1..={rank})"))),
        })
        .collect()
}

fn cmd_homology(ty: &TypeArgs, weight: &Weight, source: Source, twist: Option<&str>, common: &Common) -> CliResult<Output> {
    let rs = root_system(&ty.ty, ty.rank)?;
    rs.check_rank(weight)?;
    let ps = match twist {
        Some(word) => PositiveSystem::from_weyl(&rs, &WeylElement::from_word(&rs, &parse_word(word, rs.rank())?)?),
        None => PositiveSystem::standard(&rs),
    };
    let h = match source {
        Source::Koszul => koszul_n_homology(weight, &ps, &rs, dim_cap(common))?,
        Source::Kostant => kostant_homology(weight, &ps, &rs, &WeylSubgroup::full(&rs, weyl_cap(common))?)?,
    };
    let json = json!({
        "type": rs.label(),
        "highest_weight": weight.coords(),
        "homology": h,
        "euler_class": h.euler_class(),
    });
    let table = format!("{} V{}\n{}", rs.label(), weight, homology_table(&h));
    Ok(Output::ok(json, table))
}

fn build_catalog(p: &PresetArgs, common: &Common) -> CliResult<Catalog> {
    if p.bound < 0 {
        return Err(Failure::Usage("--bound must be nonnegative".into()));
    }
    match p.preset {
        Preset::Compact => {
            let ty = p.ty.as_deref().ok_or_else(|| Failure::Usage("--type is required for the compact preset".into()))?;
            let rs = root_system(ty, p.rank)?;
            let source = HomologySource::Auto {
                dim_cap: dim_cap(common),
                rank_cap: epair_core::kostant::DEFAULT_KOSZUL_RANK_CAP,
            };
            Ok(Catalog::compact(rs, p.bound, weyl_cap(common), source)?)
        }
        Preset::Sl2 => Ok(Catalog::sl2(-p.bound..=p.bound)?),
        Preset::Unequal => Ok(Catalog::unequal_rank(&["stub-a", "stub-b"])),
    }
}

fn cmd_zoo(p: &PresetArgs, common: &Common) -> CliResult<Output> {
    let cat = build_catalog(p, common)?;
    let json = serde_json::from_str(&cat.to_json()?).map_err(Error::from)?;
    let mut table = format!("context {}  |W0| = {}\n", cat.context.preset(), cat.context.w0_order());
    for m in &cat.modules {
        let _ = writeln!(table, "{:<12} {:<16} {}", m.label, m.provenance, m.euler);
    }
    Ok(Output::ok(json, table))
}

fn cmd_pairing(catalog: Option<&PathBuf>, p: &PresetArgs, kind: KindArg, common: &Common) -> CliResult<Output> {
    let cat = match catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Catalog::from_json(&text)?
        }
        None => build_catalog(p, common)?,
    };
    let kinds: Vec<PairingKind> = match kind {
        KindArg::Multiplicity => vec![PairingKind::Multiplicity],
        KindArg::Elliptic => vec![PairingKind::Elliptic],
        KindArg::Homological => vec![PairingKind::Homological],
        // multiplicity needs a compact context
        KindArg::All => PairingKind::ALL
            .into_iter()
            .filter(|k| *k != PairingKind::Multiplicity || cat.context.is_compact() || !cat.context.equal_rank())
            .collect(),
    };
    let labels: Vec<String> = cat.modules.iter().map(|m| m.label.clone()).collect();
    let mut matrices = serde_json::Map::new();
    let mut table = String::new();
    let mut first: Option<Vec<Vec<PairingValue>>> = None;
    let mut agree = true;
    for k in kinds {
        let m = cat.pairing_matrix(k)?;
        let _ = writeln!(table, "{k}:\n{}", matrix_table(&labels, &m));
        if let Some(f) = &first {
            agree &= *f == m;
        } else {
            first = Some(m.clone());
        }
        matrices.insert(k.to_string(), serde_json::to_value(&m).map_err(Error::from)?);
    }
    let mut json = json!({
        "context": cat.context,
        "labels": labels,
        "matrices": matrices,
    });
    if matches!(kind, KindArg::All) {
        json["all_equal"] = json!(agree);
        let _ = writeln!(table, "all kinds equal: {agree}");
    }
    Ok(Output::ok(json, table))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Option<&str>,
    ty: Option<&str>,
    rank: Option<usize>,
    bound: Option<i64>,
    w0: Option<&str>,
    dims: Option<&str>,
    fuzz: Option<usize>,
    config: Option<&PathBuf>,
    timing: bool,
    common: &Common,
) -> CliResult<Output> {
    let mut cfg = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            RunConfig::from_key_values(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(s) = suite {
        cfg.suites = parse_suites(s)?;
    }
    if let Some(t) = ty {
        cfg.types = match rank {
            Some(_) => vec![series_rank(t, rank)?],
            None => parse_types(t)?,
        };
    }
    if let Some(b) = bound {
        cfg.bound = Some(b);
    }
    if let Some(w) = w0 {
        cfg.w0 = w.parse()?;
    }
    if let Some(d) = dims {
        cfg.dims = parse_dims(d)?;
    }
    if let Some(f) = fuzz {
        cfg.fuzz = f;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(c) = common.cap_weyl {
        cfg.weyl_cap = c;
    }
    if let Some(c) = common.cap_dim {
        cfg.dim_cap = c;
    }
    if common.out.is_some() {
        cfg.out = common.out.clone();
    }
    cfg.timing |= timing;
    let report = run(&cfg)?;
    Ok(Output {
        json: serde_json::to_value(&report).map_err(Error::from)?,
        table: report.to_table(),
        pass: report.passed(),
    })
}

fn execute(cli: &Cli) -> CliResult<(Output, Common, Option<PathBuf>)> {
    let (out, common) = match &cli.command {
        Command::Rootsys { ty, common } => (cmd_rootsys(ty)?, common),
        Command::Char { ty, weight, method, common } => (cmd_char(ty, weight, *method, common)?, common),
        Command::Homology { ty, weight, source, twist, common } => {
            (cmd_homology(ty, weight, *source, twist.as_deref(), common)?, common)
        }
        Command::Zoo { preset, common } => (cmd_zoo(preset, common)?, common),
        Command::Pairing { catalog, preset, kind, common } => (cmd_pairing(catalog.as_ref(), preset, *kind, common)?, common),
        Command::Verify { suite, ty, rank, bound, w0, dims, fuzz, config, timing, common } => {
            let out = cmd_verify(
                suite.as_deref(),
                ty.as_deref(),
                *rank,
                *bound,
                w0.as_deref(),
                dims.as_deref(),
                *fuzz,
                config.as_ref(),
                *timing,
                common,
            )?;
            (out, common)
        }
    };
    Ok((out, common.clone(), common.out.clone()))
}

fn emit(out: &Output, common: &Common, path: Option<&PathBuf>) -> CliResult<()> {
    let text = match common.emit {
        Emit::Json => serde_json::to_string_pretty(&out.json).map_err(Error::from)? + "\n",
        Emit::Table => out.table.clone(),
    };
    match path {
        Some(p) => std::fs::write(p, &text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(out, common, path)| {
        emit(&out, &common, path.as_ref())?;
        if out.pass {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            log::error!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
