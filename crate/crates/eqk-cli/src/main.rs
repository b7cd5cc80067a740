//! `eqk`: pair descriptors in, structured reports out.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eqk::catalog;
use eqk::formality::{borel_cohomology, equivariant_cohomology, st_battery};
use eqk::groebner::cache::GbCache;
use eqk::invariant_theory::{coinvariant_dimension, cst_verdict, molien_series, FiniteMatrixGroup, MatrixGroupFile};
use eqk::kunneth_tor::{
    assemble_ktheory, classify_pair, iota_image_comparison, iota_map, ordinary_ktheory, tor0_presentation,
};
use eqk::lie_data::{pi1_is_free_abelian, GroupDesc, GroupPair, PairDescriptor};
use eqk::rep_ring::representation_ring;
use eqk::{Ctx, Error, ErrorKind, Limits};

#[derive(Parser)]
#[command(name = "eqk", version, about = "Equivariant K-theory and Borel cohomology of homogeneous spaces")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Maximum S-pair reductions per Gröbner basis.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Skip the on-disk Gröbner cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Report the classification instead of refusing uncovered pairs.
    #[arg(long, global = true)]
    allow_uncovered: bool,
    /// Window for ι-image comparisons.
    #[arg(long, global = true)]
    window: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compact groups.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Subgroup pairs, given as `catalog:NAME` or a descriptor file.
    Pair {
        #[command(subcommand)]
        cmd: PairCmd,
    },
    /// Finite matrix groups from a JSON file.
    Invariants {
        #[command(subcommand)]
        cmd: InvCmd,
    },
    /// Built-in worked pairs.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Rank, Weyl order, π₁, fundamental characters and Borel degrees.
    Info { group: String },
}

#[derive(Subcommand)]
enum PairCmd {
    Classify { pair: String },
    Ktheory { pair: String },
    Ordinary { pair: String },
    Tor0 { pair: String },
    Iota { pair: String },
    Formality { pair: String },
    Cohomology { pair: String },
}

#[derive(Subcommand)]
enum InvCmd {
    Molien { file: String },
    Cst { file: String },
    Coinvariants { file: String },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Run {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

enum Failure {
    Lib(Error),
    Golden(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 2,
        ErrorKind::Budget => 3,
        ErrorKind::Refused => 4,
        ErrorKind::Math | ErrorKind::Internal => 1,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{path}: {e}")))
}

fn load_pair(arg: &str) -> Result<GroupPair, Error> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog::lookup(name)?.pair();
    }
    read_json::<PairDescriptor>(arg)?.build()
}

fn load_group(arg: &str) -> Result<eqk::lie_data::CompactGroup, Error> {
    if Path::new(arg).is_file() {
        read_json::<GroupDesc>(arg)?.build()
    } else {
        GroupDesc::Name(arg.to_string()).build()
    }
}

fn load_matrix_group(path: &str, ctx: &Ctx) -> Result<FiniteMatrixGroup, Error> {
    let f: MatrixGroupFile = read_json(path)?;
    let g = FiniteMatrixGroup::from_file(&f, ctx.limits.group)?;
    Ok(match f.name {
        Some(n) => g.with_label(n),
        None => g,
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn group_info(arg: &str, ctx: &Ctx) -> Result<Value, Error> {
    let g = load_group(arg)?;
    let rr = representation_ring(&g, ctx)?;
    let borel = borel_cohomology(&g, ctx)?;
    Ok(json!({
        "group": g.label,
        "rank": g.rank,
        "weyl_order": g.weyl_order(),
        "positive_roots": g.positive_roots.len(),
        "pi1": pi1_is_free_abelian(&g),
        "representation_ring": rr.to_json(),
        "borel": {
            "degrees": borel.ring.degrees,
            "generators": borel.generators,
            "series": borel.series,
        },
    }))
}

fn pair_cmd(cmd: &PairCmd, opts: &GlobalOpts, ctx: &Ctx) -> Result<Value, Error> {
    match cmd {
        PairCmd::Classify { pair } => Ok(to_value(&classify_pair(&load_pair(pair)?, ctx)?)),
        PairCmd::Ktheory { pair } => {
            let p = load_pair(pair)?;
            match assemble_ktheory(&p, ctx) {
                Err(Error::Refused(_)) if opts.allow_uncovered => {
                    Ok(json!({"status": "not_covered", "classification": classify_pair(&p, ctx)?}))
                }
                r => Ok(to_value(&r?)),
            }
        }
        PairCmd::Ordinary { pair } => {
            let p = load_pair(pair)?;
            match ordinary_ktheory(&p, ctx) {
                Err(Error::Refused(_)) if opts.allow_uncovered => {
                    Ok(json!({"status": "not_covered", "classification": classify_pair(&p, ctx)?}))
                }
                r => Ok(to_value(&r?)),
            }
        }
        PairCmd::Tor0 { pair } => {
            let t = tor0_presentation(&load_pair(pair)?, ctx)?;
            Ok(json!({
                "tor0": t,
                "one_factor_fiber": t.one_factor_fiber(ctx)?,
                "double_augmentation_fiber": t.double_augmentation_fiber(ctx)?,
            }))
        }
        PairCmd::Iota { pair } => {
            let p = load_pair(pair)?;
            let map = iota_map(&p, ctx)?;
            let cmp = iota_image_comparison(&p, opts.window.unwrap_or(3), ctx)?;
            Ok(json!({"iota": map, "comparison": cmp}))
        }
        PairCmd::Formality { pair } => Ok(to_value(&st_battery(&load_pair(pair)?, ctx)?)),
        PairCmd::Cohomology { pair } => Ok(to_value(&equivariant_cohomology(&load_pair(pair)?, ctx)?)),
    }
}

fn inv_cmd(cmd: &InvCmd, ctx: &Ctx) -> Result<Value, Error> {
    match cmd {
        InvCmd::Molien { file } => {
            let g = load_matrix_group(file, ctx)?;
            let m = molien_series(&g)?;
            Ok(json!({"group": g.label, "order": g.order(), "molien": m}))
        }
        InvCmd::Cst { file } => {
            let g = load_matrix_group(file, ctx)?;
            Ok(json!({"group": g.label, "report": cst_verdict(&g, ctx)?}))
        }
        InvCmd::Coinvariants { file } => {
            let g = load_matrix_group(file, ctx)?;
            Ok(json!({"group": g.label, "report": coinvariant_dimension(&g, None, ctx)?}))
        }
    }
}

fn catalog_cmd(cmd: &CatalogCmd, opts: &GlobalOpts, ctx: &Ctx) -> Result<Value, Failure> {
    match cmd {
        CatalogCmd::List => Ok(Value::Array(
            catalog::entries().map(|e| json!({"name": e.name, "title": e.title})).collect(),
        )),
        CatalogCmd::Run { name, all } => {
            let results = match (name, all) {
                (_, true) => catalog::run_all(ctx),
                (Some(n), false) => vec![catalog::run_entry(catalog::lookup(n)?, opts.window, ctx)],
                (None, false) => return Err(Error::Input("catalog run needs an entry name or --all".into()).into()),
            };
            let passed = results.iter().filter(|r| r.passed).count();
            let out = json!({"passed": passed, "total": results.len(), "results": results});
            if passed == results.len() {
                Ok(out)
            } else {
                Err(Failure::Golden(out))
            }
        }
    }
}

/// `key: value` lines; series objects print factored and truncated.
fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(o) if o.contains_key("factored") && o.contains_key("truncated") => {
                        out.push_str(&format!("{pad}{k}: {} = {}\n", o["factored"].as_str().unwrap_or(""), o["truncated"].as_str().unwrap_or("")));
                    }
                    Value::Object(o) if o.is_empty() => out.push_str(&format!("{pad}{k}: {{}}\n")),
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                if x.is_object() {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn emit(v: &Value, format: Format) {
    let s = match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
    };
    // a closed pipe downstream is not an error
    let _ = std::io::stdout().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts.clone();
    let mut limits = Limits::default();
    if let Some(b) = opts.budget {
        limits.pairs = b;
    }
    let ctx = Ctx { limits, cache: (!opts.no_cache).then(GbCache::from_env) };
    let result: Result<Value, Failure> = match &cli.command {
        Command::Group { cmd: GroupCmd::Info { group } } => group_info(group, &ctx).map_err(Failure::from),
        Command::Pair { cmd } => pair_cmd(cmd, &opts, &ctx).map_err(Failure::from),
        Command::Invariants { cmd } => inv_cmd(cmd, &ctx).map_err(Failure::from),
        Command::Catalog { cmd } => catalog_cmd(cmd, &opts, &ctx),
    };
    match result {
        Ok(v) => {
            emit(&v, opts.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Golden(v)) => {
            emit(&v, opts.format);
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            match opts.format {
                Format::Json => println!("{}", json!({"error": e.to_string()})),
                Format::Text => {}
            }
            eprintln!("eqk: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
