mod cache;
mod output;

use std::path::{Path, PathBuf};
use std::time::Instant;

use ac_lab_core::abelian::{class_count, AbelianStructure};
use ac_lab_core::graph::{
    self, components, diameter_inequality_report, gacc1_check, move_equivalence_check,
    recalcitrance, recalcitrance_group, weight_one_classes, MoveSet,
};
use ac_lab_core::group::{
    abelianization, derived_series, normal_subgroups, rank, solubility_length, w_subgroup, weight,
    NORMAL_LATTICE_LIMIT,
};
use ac_lab_core::moves::normally_generates;
use ac_lab_core::poly::{cyclotomic_poly, phi_at_1};
use ac_lab_core::spec::{parse_spec, GroupSpec};
use ac_lab_core::suite::{run_suite, write_reports, Catalog};
use ac_lab_core::units::{bs_coessential, bs_scan, finite_quotient_surjectivity, laurent_unit_lift, unit_subgroup_mod, xi_unit_check};
use ac_lab_core::wreath::{wreath_weight_one_verify, WreathSpec};
use ac_lab_core::{perm, GroupTable, Limits};
use anyhow::{anyhow, bail, Context as _};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::output::{digest, render, sha256_hex, RunManifest, CODE_VERSION};

#[derive(Parser)]
#[command(name = "ac-lab", version, about = "Finite-scale Nielsen, AC and M-transformation analytics")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest tuple space |G|^n any enumeration may visit.
    #[arg(long, global = true)]
    state_cap: Option<u64>,
    /// Largest group order any constructor may build.
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    /// Result cache directory.
    #[arg(long, global = true, env = "AC_LAB_CACHE")]
    cache_dir: Option<PathBuf>,
    /// Write a run manifest to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure of a single group.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Nielsen classes of generating vectors of an abelian group.
    Nielsen {
        #[command(subcommand)]
        cmd: NielsenCmd,
    },
    /// Move graphs on normally generating tuples.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Unit map certificate for BS(1, n).
    BsCoessential {
        n: Option<u64>,
        /// Inclusive range `a..b`.
        #[arg(long)]
        range: Option<String>,
    },
    /// Cyclotomic polynomials and the units xi_a.
    Cyclotomic {
        #[command(subcommand)]
        cmd: CyclotomicCmd,
    },
    /// Residue ring unit groups.
    Units {
        #[command(subcommand)]
        cmd: UnitsCmd,
    },
    /// Iterated wreath products of cyclic groups.
    Wreath {
        #[command(subcommand)]
        cmd: WreathCmd,
    },
    /// The catalog-driven acceptance suite.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Args)]
struct GroupArg {
    /// Group spec, e.g. `builtin: dihedral(4)`, or `@file`.
    #[arg(long, short = 'g')]
    group: String,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Tuple length (default: the rank of the group).
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// ac, m, m-only or nielsen.
    #[arg(long, default_value = "ac")]
    moves: MoveSet,
}

#[derive(Subcommand)]
enum GroupCmd {
    Info(GroupArg),
}

#[derive(Subcommand)]
enum NielsenCmd {
    Classes {
        #[command(flatten)]
        group: GroupArg,
        #[arg(short = 'n', long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Connected components and their diameters.
    Components(GraphArgs),
    /// Diameters of M_n(G), M_n(G_ab) and M_n(G/W(G)) and their inequalities.
    Diameter(GraphArgs),
    /// Recalcitrance of one tuple, or of the group.
    Rec {
        #[command(flatten)]
        args: GraphArgs,
        /// Element ids, comma separated.
        #[arg(long, conflicts_with = "tuple_perm")]
        tuple: Option<String>,
        /// Permutations in cycle notation, separated by `;`.
        #[arg(long)]
        tuple_perm: Option<String>,
    },
    /// AC components against Nielsen classes of the abelianization.
    Gacc1(GraphArgs),
    /// AC classes of weight elements.
    W1(GroupArg),
    /// Whether AC and M-with-inversion moves give the same partition.
    Equivalence(GraphArgs),
}

#[derive(Subcommand)]
enum CyclotomicCmd {
    Xi {
        n: u64,
        #[arg(allow_hyphen_values = true)]
        a: i64,
    },
    Poly {
        n: u64,
    },
}

#[derive(Subcommand)]
enum UnitsCmd {
    /// Closure of residues in (Z/m)^x.
    Subgroup {
        m: u64,
        /// Comma separated residues.
        #[arg(allow_hyphen_values = true)]
        gens: String,
    },
    /// The constant Laurent polynomial u and its inverse mod m.
    Lift {
        m: u64,
        #[arg(allow_hyphen_values = true)]
        u: i64,
    },
    /// Surjectivity of R^x -> (R / (1 - alpha) R)^x for R = (Z/m)[x]/(f).
    Quotient {
        m: u64,
        /// Coefficients of f, constant term first.
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Coefficients of alpha, constant term first.
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum WreathCmd {
    Verify { orders: String },
}

#[derive(Subcommand)]
enum SuiteCmd {
    Run {
        /// Catalog TOML (default: the built-in catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Directory for per-check reports and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Context {
    json: bool,
    limits: Limits,
    jobs: usize,
    cache: Option<Cache>,
    manifest: Option<PathBuf>,
    argv: Vec<String>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global()?;
    }
    let mut limits = Limits::default();
    if let Some(s) = cli.state_cap {
        limits.state_cap = s;
    }
    if let Some(o) = cli.order_cap {
        limits.order_cap = o;
    }
    let ctx = Context {
        json: cli.json,
        limits,
        jobs: rayon::current_num_threads(),
        cache: cli.cache_dir.as_deref().map(Cache::new).transpose()?,
        manifest: cli.manifest,
        argv: std::env::args().collect(),
    };
    match cli.command {
        Command::Group { cmd: GroupCmd::Info(g) } => {
            let (spec, g) = load_group(&g.group, &ctx.limits)?;
            ctx.emit(Some(&spec), "group-info", json!({}), || group_info(&g, &ctx.limits))
        }
        Command::Nielsen { cmd: NielsenCmd::Classes { group, n } } => {
            let (spec, g) = load_group(&group.group, &ctx.limits)?;
            ctx.emit(Some(&spec), "nielsen-classes", json!({ "n": n }), || nielsen_classes(&g, n))
        }
        Command::Graph { cmd } => graph_command(&ctx, cmd),
        Command::BsCoessential { n, range } => match (n, range) {
            (Some(n), None) => {
                if n < 2 {
                    bail!("n must be at least 2");
                }
                ctx.emit(None, "bs-coessential", json!({ "n": n }), || Ok(to_value(&bs_coessential(n))))
            }
            (None, Some(r)) => {
                let (a, b) = parse_range(&r)?;
                ctx.emit(None, "bs-range", json!({ "range": [a, b] }), || {
                    let rows: Vec<Value> = bs_scan(a..=b)
                        .into_iter()
                        .map(|c| json!({
                            "n": c.n, "verdict": c.verdict, "surjective": c.surjective,
                            "image_size": c.image.size(), "unit_count": c.unit_count,
                            "witness": c.witness, "diverges_from_prediction": c.diverges_from_prediction,
                        }))
                        .collect();
                    Ok(json!({ "range": [a, b], "rows": rows }))
                })
            }
            _ => bail!("give either N or --range a..b"),
        },
        Command::Cyclotomic { cmd: CyclotomicCmd::Xi { n, a } } => {
            ctx.emit(None, "cyclotomic-xi", json!({ "n": n, "a": a }), || Ok(to_value(&xi_unit_check(n, a)?)))
        }
        Command::Cyclotomic { cmd: CyclotomicCmd::Poly { n } } => {
            if n == 0 {
                bail!("n must be positive");
            }
            ctx.emit(None, "cyclotomic-poly", json!({ "n": n }), || {
                let p = cyclotomic_poly(n);
                Ok(json!({
                    "n": n, "poly": p.to_string(), "coefficients": p,
                    "phi_at_1": (n >= 2).then(|| phi_at_1(n)),
                }))
            })
        }
        Command::Units { cmd } => match cmd {
            UnitsCmd::Subgroup { m, gens } => {
                let gens = parse_list::<i64>(&gens)?;
                ctx.emit(None, "units-subgroup", json!({ "m": m, "gens": gens }), || {
                    Ok(to_value(&unit_subgroup_mod(m, &gens)?))
                })
            }
            UnitsCmd::Lift { m, u } => {
                ctx.emit(None, "units-lift", json!({ "m": m, "u": u }), || Ok(to_value(&laurent_unit_lift(m, u)?)))
            }
            UnitsCmd::Quotient { m, f, alpha } => {
                let (f, alpha) = (parse_list::<i64>(&f)?, parse_list::<i64>(&alpha)?);
                ctx.emit(None, "units-quotient", json!({ "m": m, "f": f, "alpha": alpha }), || {
                    Ok(to_value(&finite_quotient_surjectivity(m, &f, &alpha)?))
                })
            }
        },
        Command::Wreath { cmd: WreathCmd::Verify { orders } } => {
            let spec = WreathSpec::new(parse_list::<u64>(&orders)?)?;
            ctx.emit(None, "wreath-verify", json!({ "orders": spec.orders }), || {
                Ok(to_value(&wreath_weight_one_verify(&spec, &ctx.limits)?))
            })
        }
        Command::Suite { cmd: SuiteCmd::Run { catalog, out } } => suite_run(&ctx, catalog.as_deref(), out.as_deref()),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse_list<T: std::str::FromStr>(text: &str) -> anyhow::Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| anyhow!("`{s}` is not a valid number")))
        .collect()
}

fn parse_range(text: &str) -> anyhow::Result<(u64, u64)> {
    let (a, b) = text.split_once("..").ok_or_else(|| anyhow!("range must look like a..b"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty range {a}..{b}");
    }
    Ok((a, b))
}

/// Reads `@path` specs from disk and normalizes the text.
fn load_group(arg: &str, limits: &Limits) -> anyhow::Result<(String, GroupTable)> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading group spec {path}"))?,
        None => arg.to_string(),
    };
    let spec: GroupSpec = parse_spec(&text)?;
    let g = spec.build(limits)?;
    Ok((spec.to_string(), g))
}

impl Context {
    /// Computes (or fetches from the cache) a report, prints it and writes
    /// the manifest. Exit status 1 when the report carries `"pass": false`.
    fn emit(
        &self,
        spec: Option<&str>,
        op: &str,
        params: Value,
        compute: impl FnOnce() -> anyhow::Result<Value>,
    ) -> anyhow::Result<i32> {
        let start = Instant::now();
        let params = json!({ "params": params, "limits": to_value(&self.limits) });
        let key = cache::key(spec.unwrap_or(""), op, &params);
        let cached = self.cache.as_ref().and_then(|c| c.get(&key));
        let cache_hit = cached.is_some();
        let mut value = match cached {
            Some(v) => v,
            None => {
                let mut v = compute()?;
                if let (Some(s), Some(obj)) = (spec, v.as_object_mut()) {
                    if obj.contains_key("group") {
                        obj.insert("group".into(), json!(s));
                    }
                }
                if let Some(c) = &self.cache {
                    c.put(&key, &v)?;
                }
                v
            }
        };
        if let (Some(s), Some(obj)) = (spec, value.as_object_mut()) {
            obj.entry("group").or_insert_with(|| json!(s));
        }
        self.print(&value);
        self.write_manifest(spec, cache_hit, start, &value)?;
        Ok(if value.get("pass") == Some(&Value::Bool(false)) { 1 } else { 0 })
    }

    fn print(&self, value: &Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).unwrap());
        } else {
            print!("{}", render(value));
        }
    }

    fn manifest(&self, spec: Option<&str>, cache_hit: bool, start: Instant, value: &Value) -> RunManifest {
        RunManifest {
            command_line: self.argv.clone(),
            spec_hash: spec.map(|s| sha256_hex(s.as_bytes())),
            code_version: CODE_VERSION.to_string(),
            limits: self.limits.clone(),
            jobs: self.jobs,
            cache_hit,
            elapsed_ms: start.elapsed().as_millis() as u64,
            digest: digest(value),
        }
    }

    fn write_manifest(&self, spec: Option<&str>, cache_hit: bool, start: Instant, value: &Value) -> anyhow::Result<()> {
        if let Some(path) = &self.manifest {
            let m = self.manifest(spec, cache_hit, start, value);
            std::fs::write(path, serde_json::to_string_pretty(&m)? + "\n")
                .with_context(|| format!("writing manifest {}", path.display()))?;
        }
        Ok(())
    }
}

fn group_info(g: &GroupTable, limits: &Limits) -> anyhow::Result<Value> {
    let series: Vec<usize> = derived_series(g).iter().map(|s| s.size()).collect();
    let ab = abelianization(g);
    let invariants = AbelianStructure::new(&ab.table)?.invariants().clone();
    let lattice = (g.order() <= NORMAL_LATTICE_LIMIT).then(|| normal_subgroups(g)).transpose()?;
    let w = (g.order() <= NORMAL_LATTICE_LIMIT).then(|| w_subgroup(g)).transpose()?;
    let generators: Vec<Value> = g
        .generators()
        .iter()
        .map(|&x| json!({ "id": x, "name": g.name(x) }))
        .collect();
    Ok(json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "soluble": solubility_length(g).is_some(),
        "solubility_length": solubility_length(g),
        "derived_series": series,
        "abelianization": invariants,
        "rank": rank(g, limits).ok(),
        "weight": weight(g, limits).ok(),
        "conjugacy_classes": g.conjugacy_classes().len(),
        "normal_subgroups": lattice.map(|l| l.len()),
        "w_subgroup_size": w.map(|w| w.size()),
        "generators": generators,
    }))
}

fn nielsen_classes(a: &GroupTable, n: Option<usize>) -> anyhow::Result<Value> {
    let structure = AbelianStructure::new(a)?;
    let n = n.unwrap_or(structure.invariants().len().max(1));
    let reps: Vec<Value> = structure
        .representatives(a, n)?
        .into_iter()
        .map(|(delta, tuple)| json!({ "delta": delta, "representative": tuple }))
        .collect();
    Ok(json!({
        "invariants": structure.invariants(),
        "n": n,
        "class_count": class_count(structure.invariants(), n)?,
        "classes": reps,
    }))
}

fn parse_tuple(g: &GroupTable, tuple: Option<&str>, perms: Option<&str>) -> anyhow::Result<Option<Vec<usize>>> {
    if let Some(t) = tuple {
        let ids = parse_list::<usize>(t)?;
        for &x in &ids {
            g.check_element(x)?;
        }
        return Ok(Some(ids));
    }
    let Some(text) = perms else { return Ok(None) };
    let degree = g
        .permutation(0)
        .map(|p| p.len())
        .ok_or_else(|| anyhow!("--tuple-perm needs a permutation group spec"))?;
    text.split(';')
        .map(|part| {
            let p = perm::parse_cycles(part.trim(), degree)?;
            g.element_of_permutation(&p)
                .ok_or_else(|| anyhow!("{} is not in the group", part.trim()))
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .map(Some)
}

fn graph_command(ctx: &Context, cmd: GraphCmd) -> anyhow::Result<i32> {
    let lim = &ctx.limits;
    match cmd {
        GraphCmd::Components(a) => {
            let (spec, g) = load_group(&a.group.group, lim)?;
            let n = default_n(&g, a.n, lim)?;
            ctx.emit(Some(&spec), "graph-components", json!({ "n": n, "moves": a.moves }), || {
                Ok(to_value(&components(&g, n, a.moves, lim)?))
            })
        }
        GraphCmd::Diameter(a) => {
            let (spec, g) = load_group(&a.group.group, lim)?;
            let n = match a.n {
                Some(n) => n,
                None => weight(&g, lim)? + 1,
            };
            ctx.emit(Some(&spec), "graph-diameter", json!({ "n": n }), || {
                Ok(to_value(&diameter_inequality_report(&g, n, lim)?))
            })
        }
        GraphCmd::Rec { args, tuple, tuple_perm } => {
            let (spec, g) = load_group(&args.group.group, lim)?;
            match parse_tuple(&g, tuple.as_deref(), tuple_perm.as_deref())? {
                Some(t) => {
                    if !normally_generates(&g, &t) {
                        bail!("tuple {t:?} does not normally generate the group");
                    }
                    ctx.emit(Some(&spec), "graph-rec-tuple", json!({ "tuple": t }), || {
                        let r = recalcitrance(&g, &t, lim)?;
                        let rank = rank(&g, lim).ok();
                        Ok(json!({
                            "tuple": t, "n": t.len(), "recalcitrance": r,
                            "rank": rank, "rank_extension": rank != Some(t.len()),
                        }))
                    })
                }
                None => {
                    let n = default_n(&g, args.n, lim)?;
                    ctx.emit(Some(&spec), "graph-rec", json!({ "n": n }), || {
                        Ok(to_value(&recalcitrance_group(&g, n, lim)?))
                    })
                }
            }
        }
        GraphCmd::Gacc1(a) => {
            let (spec, g) = load_group(&a.group.group, lim)?;
            let n = default_n(&g, a.n, lim)?.max(2);
            ctx.emit(Some(&spec), "graph-gacc1", json!({ "n": n }), || Ok(to_value(&gacc1_check(&g, n, lim)?)))
        }
        GraphCmd::W1(a) => {
            let (spec, g) = load_group(&a.group, lim)?;
            ctx.emit(Some(&spec), "graph-w1", json!({}), || Ok(to_value(&weight_one_classes(&g, lim)?)))
        }
        GraphCmd::Equivalence(a) => {
            let (spec, g) = load_group(&a.group.group, lim)?;
            let n = default_n(&g, a.n, lim)?;
            ctx.emit(Some(&spec), "graph-equivalence", json!({ "n": n }), || {
                let equal = move_equivalence_check(&g, n, lim)?;
                Ok(json!({ "group": graph::describe(&g), "n": n, "partitions_equal": equal, "pass": equal }))
            })
        }
    }
}

fn default_n(g: &GroupTable, n: Option<usize>, limits: &Limits) -> anyhow::Result<usize> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => bail!("n must be positive"),
        None => Ok(rank(g, limits)?.max(1)),
    }
}

fn suite_run(ctx: &Context, catalog: Option<&Path>, out: Option<&Path>) -> anyhow::Result<i32> {
    let start = Instant::now();
    let catalog = match catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading catalog {}", path.display()))?;
            Catalog::parse(&text).with_context(|| format!("in catalog {}", path.display()))?
        }
        None => Catalog::default_catalog(),
    };
    let (outcomes, summary) = run_suite(&catalog, &ctx.limits);
    let all = to_value(&outcomes);
    let manifest = ctx.manifest(None, false, start, &all);
    if let Some(dir) = out {
        write_reports(dir, &outcomes, &summary)?;
        std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    }
    if let Some(path) = &ctx.manifest {
        std::fs::write(path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    }
    let mut value = to_value(&summary);
    value["digest"] = json!(manifest.digest);
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        for c in &summary.checks {
            let status = serde_json::to_value(c.status)?;
            let reason = c.reason.as_deref().map(|r| format!(" ({r})")).unwrap_or_default();
            println!("{:>4} {:<8} {}{}", c.index, status.as_str().unwrap(), c.name, reason);
        }
        println!(
            "{} checks: {} passed, {} failed, {} skipped; digest {}",
            summary.total, summary.passed, summary.failed, summary.skipped, manifest.digest
        );
    }
    Ok(if summary.pass { 0 } else { 1 })
}
