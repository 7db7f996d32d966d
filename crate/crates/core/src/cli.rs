//! Command-line front end.
//!
//! Exit codes: 0 success or law holds, 1 law violated, 2 usage or input
//! error, 3 capacity exceeded.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::approximation::convergence_scan;
use crate::error::{Error, Result};
use crate::instance::{GroupInstance, Instance, PartitionInstance};
use crate::lattice::{
    dual_isomorphism_check, export_hasse_dot, partition_lattice, semilattice_vectors, Convention,
    DEFAULT_NODE_CAP,
};
use crate::laws::{
    builtin_law, eval_on_partitions, eval_on_subgroups, falsify, instance_rng, parse_law,
    random_group_instance, random_partition_instance, replay, verify_s5_counterexample,
    Counterexample, EvalResult, FalsifyConfig, LawExpression, Side,
};
use crate::partitions::{entropy, LogBase, Partition};
use crate::perm_groups::{
    coset_partition, generated_join, intersection, orbit_partition, PermGroup, DEFAULT_GROUP_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Logarithm base for entropies.
    #[arg(long, global = true, value_enum, default_value = "e")]
    pub base: BaseArg,
    /// Maximum number of lattice nodes.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub node_cap: usize,
    /// Maximum number of enumerated group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub group_cap: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

impl CliConfig {
    fn log_base(&self) -> LogBase {
        match self.base {
            BaseArg::E => LogBase::Natural,
            BaseArg::Two => LogBase::Two,
        }
    }

    fn json(&self) -> bool {
        self.output == OutputFormat::Json
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "infolattice",
    version,
    about = "Information lattices of partitions and subgroups"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice generated by the elements of a partition file.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Entropies of the elements, optionally the full semilattice vector.
    Entropy {
        file: PathBuf,
        #[arg(long)]
        vectors: bool,
    },
    /// Group computations on a group file.
    Groups {
        file: PathBuf,
        #[arg(value_enum)]
        op: GroupOp,
    },
    /// Check that stabilizers form a lattice dual to the information lattice.
    IsoCheck { file: PathBuf },
    /// Entropy vs. log-index vectors of the dilated space.
    Approx {
        file: PathBuf,
        /// Comma-separated amplification factors.
        #[arg(long = "K", value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long)]
        csv: bool,
    },
    /// Information laws.
    #[command(subcommand)]
    Law(LawCmd),
}

#[derive(Debug, Subcommand)]
enum LatticeCmd {
    Build {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "info")]
        convention: ConventionArg,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Info,
    Partition,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroupOp {
    Order,
    Join,
    Intersect,
    Orbits,
    Cosets,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Partitions,
    Subgroups,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Partitions => Side::Partitions,
            SideArg::Subgroups => Side::Subgroups,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
struct LawChoice {
    /// Name of a built-in law.
    #[arg(long)]
    builtin: Option<String>,
    /// Law in the DSL, e.g. "H(1v2) >= H(1)".
    #[arg(long)]
    law: Option<String>,
}

impl LawChoice {
    fn resolve(&self) -> Result<LawExpression> {
        match (&self.builtin, &self.law) {
            (Some(name), _) => builtin_law(name),
            (None, Some(text)) => parse_law(text),
            (None, None) => unreachable!("clap enforces one of --builtin/--law"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum LawCmd {
    /// Evaluate a law on a file or on random instances.
    Check {
        #[command(flatten)]
        choice: LawChoice,
        file: Option<PathBuf>,
        /// Number of random instances instead of a file.
        #[arg(long, conflicts_with = "file")]
        random: Option<u64>,
        #[arg(long, value_enum, default_value = "partitions")]
        side: SideArg,
    },
    /// Seeded random search for a violation.
    Falsify {
        #[command(flatten)]
        choice: LawChoice,
        #[arg(long, value_enum, default_value = "partitions")]
        side: SideArg,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Write the counterexample JSON here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Re-evaluate a counterexample dump.
    Replay { file: PathBuf },
    /// Verify the S5 counterexample to common-information supermodularity.
    S5,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            }
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text)
}

fn read_partitions(path: &Path) -> Result<PartitionInstance> {
    match read_instance(path)? {
        Instance::Partitions(p) => Ok(p),
        Instance::Groups(_) => Err(Error::Invalid(format!(
            "{}: expected a partition file with `elements`",
            path.display()
        ))),
    }
}

fn read_groups(path: &Path) -> Result<GroupInstance> {
    match read_instance(path)? {
        Instance::Groups(g) => Ok(g),
        Instance::Partitions(_) => Err(Error::Invalid(format!(
            "{}: expected a group file with `groups`",
            path.display()
        ))),
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Lattice(LatticeCmd::Build {
            file,
            convention,
            dot,
        }) => lattice_build(cfg, file, *convention, *dot),
        Command::Entropy { file, vectors } => entropy_cmd(cfg, file, *vectors),
        Command::Groups { file, op } => groups_cmd(cfg, file, *op),
        Command::IsoCheck { file } => iso_check(cfg, file),
        Command::Approx { file, k, csv } => approx(cfg, file, k, *csv),
        Command::Law(cmd) => law_cmd(cfg, cmd),
    }
}

fn lattice_build(cfg: &CliConfig, file: &Path, conv: ConventionArg, dot: bool) -> Result<Output> {
    let inst = read_partitions(file)?;
    let conv = match conv {
        ConventionArg::Info => Convention::Info,
        ConventionArg::Partition => Convention::Partition,
    };
    let l = partition_lattice(&inst.elements, conv, cfg.node_cap)?;
    if dot {
        return Ok(Output::ok(export_hasse_dot(&l, Partition::to_string)));
    }
    if cfg.json() {
        return Ok(Output::ok(to_json(&l.to_dump(Partition::to_string))));
    }
    let mut s = String::new();
    let _ = writeln!(s, "nodes: {}", l.len());
    let _ = writeln!(s, "edges: {}", l.hasse_edges.len());
    for (i, p) in l.nodes.iter().enumerate() {
        let tag = l
            .generator_indices
            .iter()
            .position(|&g| g == i)
            .map(|k| format!("  [{}]", k + 1))
            .unwrap_or_default();
        let _ = writeln!(s, "n{i}: {p}{tag}");
    }
    for (a, b) in &l.hasse_edges {
        let _ = writeln!(s, "n{a} < n{b}");
    }
    Ok(Output::ok(s))
}

fn base_name(base: LogBase) -> &'static str {
    match base {
        LogBase::Natural => "nats",
        LogBase::Two => "bits",
    }
}

fn entropy_cmd(cfg: &CliConfig, file: &Path, vectors: bool) -> Result<Output> {
    let inst = read_partitions(file)?;
    let base = cfg.log_base();
    let rows: Vec<(String, f64)> = if vectors {
        let v = semilattice_vectors(&inst.info_elements())?;
        v.slots
            .iter()
            .zip(&v.entries)
            .map(|(s, h)| (s.to_string(), base.from_nats(*h)))
            .collect()
    } else {
        inst.elements
            .iter()
            .enumerate()
            .map(|(i, p)| Ok((format!("H({})", i + 1), entropy(p, &inst.space, base)?)))
            .collect::<Result<_>>()?
    };
    if cfg.json() {
        let entries: Vec<Value> = rows
            .iter()
            .map(|(k, v)| json!({"slot": k, "value": v}))
            .collect();
        return Ok(Output::ok(to_json(
            &json!({"units": base_name(base), "entries": entries}),
        )));
    }
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k} = {v:.6}");
    }
    Ok(Output::ok(s))
}

fn group_summary(g: &PermGroup, cap: usize) -> Result<Value> {
    Ok(json!({
        "order": g.order(cap)?.to_string(),
        "generators": g.to_json().generators,
    }))
}

fn groups_cmd(cfg: &CliConfig, file: &Path, op: GroupOp) -> Result<Output> {
    let inst = read_groups(file)?;
    let cap = cfg.group_cap;
    let refs: Vec<&PermGroup> = inst.groups.iter().collect();
    let value = match op {
        GroupOp::Order => {
            let orders = inst
                .groups
                .iter()
                .map(|g| g.order(cap).map(|o| o.to_string()))
                .collect::<Result<Vec<_>>>()?;
            json!({"orders": orders})
        }
        GroupOp::Join => group_summary(&generated_join(&refs)?, cap)?,
        GroupOp::Intersect => {
            let mut acc = inst.groups[0].clone();
            for g in &inst.groups[1..] {
                acc = intersection(&acc, g, cap)?;
            }
            group_summary(&acc, cap)?
        }
        GroupOp::Orbits => {
            let orbits: Vec<String> = inst
                .groups
                .iter()
                .map(|g| orbit_partition(g).to_string())
                .collect();
            json!({"orbits": orbits})
        }
        GroupOp::Cosets => {
            // cosets are taken inside the subgroup generated by all listed groups
            let ambient = generated_join(&refs)?;
            let elements = ambient.enumerate(cap)?;
            let rows = inst
                .groups
                .iter()
                .map(|g| {
                    let p = coset_partition(elements, g, cap)?;
                    Ok(json!({"index": p.num_blocks(), "cosets": p.to_string()}))
                })
                .collect::<Result<Vec<_>>>()?;
            json!({"ambient_order": elements.len(), "partitions": rows})
        }
    };
    if cfg.json() {
        return Ok(Output::ok(to_json(&value)));
    }
    let mut s = String::new();
    match op {
        GroupOp::Order => {
            for (i, o) in value["orders"].as_array().into_iter().flatten().enumerate() {
                let _ = writeln!(s, "G{}: {}", i + 1, o.as_str().unwrap_or_default());
            }
        }
        GroupOp::Join | GroupOp::Intersect => {
            let _ = writeln!(s, "order: {}", value["order"].as_str().unwrap_or_default());
            let gens: Vec<&str> = value["generators"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(Value::as_str)
                .collect();
            let _ = writeln!(
                s,
                "generators: {}",
                if gens.is_empty() {
                    "()".into()
                } else {
                    gens.join(" ")
                }
            );
        }
        GroupOp::Orbits => {
            for (i, o) in value["orbits"].as_array().into_iter().flatten().enumerate() {
                let _ = writeln!(s, "G{}: {}", i + 1, o.as_str().unwrap_or_default());
            }
        }
        GroupOp::Cosets => {
            let _ = writeln!(s, "ambient order: {}", value["ambient_order"]);
            for (i, r) in value["partitions"]
                .as_array()
                .into_iter()
                .flatten()
                .enumerate()
            {
                let _ = writeln!(
                    s,
                    "G{}: index {}: {}",
                    i + 1,
                    r["index"],
                    r["cosets"].as_str().unwrap_or_default()
                );
            }
        }
    }
    Ok(Output::ok(s))
}

fn iso_check(cfg: &CliConfig, file: &Path) -> Result<Output> {
    let inst = read_partitions(file)?;
    let rep = dual_isomorphism_check(&inst.elements, cfg.node_cap, cfg.group_cap)?;
    let code = if rep.passed { EXIT_OK } else { EXIT_VIOLATED };
    let text = if cfg.json() {
        to_json(&rep)
    } else {
        let mut s = format!(
            "{}: {} information nodes, {} subgroup nodes\n",
            if rep.passed { "pass" } else { "FAIL" },
            rep.info_nodes,
            rep.group_nodes
        );
        for f in &rep.failures {
            let _ = writeln!(s, "  {f}");
        }
        s
    };
    Ok(Output { text, code })
}

fn approx(cfg: &CliConfig, file: &Path, ks: &[usize], csv: bool) -> Result<Output> {
    let inst = read_partitions(file)?;
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let rows = convergence_scan(&inst.info_elements(), &ks)?;
    if cfg.json() {
        return Ok(Output::ok(to_json(&rows)));
    }
    let mut s = String::new();
    if csv {
        s.push_str("K,dilated_size,max_error,l1_error,bound\n");
        for r in &rows {
            let _ = writeln!(
                s,
                "{},{},{:.9},{:.9},{:.9}",
                r.amplification, r.dilated_size, r.max_error, r.l1_error, r.bound
            );
        }
    } else {
        let _ = writeln!(
            s,
            "{:>8} {:>12} {:>12} {:>12} {:>12}",
            "K", "points", "max_err", "l1_err", "bound"
        );
        for r in &rows {
            let _ = writeln!(
                s,
                "{:>8} {:>12} {:>12.6} {:>12.6} {:>12.6}",
                r.amplification, r.dilated_size, r.max_error, r.l1_error, r.bound
            );
        }
    }
    Ok(Output::ok(s))
}

fn eval_text(law: &LawExpression, r: &EvalResult, units: &str) -> String {
    let mut s = format!("law: {law}\n");
    let _ = writeln!(s, "value: {:.9} {units}", r.lhs_value);
    for (t, v) in law.terms.iter().zip(&r.witness_values) {
        let _ = writeln!(s, "  H({}) = {v:.9}", t.term);
    }
    let verdict = if r.satisfied { "satisfied" } else { "VIOLATED" };
    let _ = writeln!(s, "{verdict} (margin {:.9} {units})", r.margin);
    s
}

fn law_cmd(cfg: &CliConfig, cmd: &LawCmd) -> Result<Output> {
    match cmd {
        LawCmd::Check {
            choice,
            file,
            random,
            side,
        } => {
            let law = choice.resolve()?;
            match (file, random) {
                (Some(f), _) => check_file(cfg, &law, f),
                (None, Some(n)) => check_random(cfg, &law, (*side).into(), *n),
                (None, None) => Err(Error::Invalid(
                    "law check needs a file or --random N".into(),
                )),
            }
        }
        LawCmd::Falsify {
            choice,
            side,
            budget,
            max_degree,
            dump,
        } => {
            let law = choice.resolve()?;
            let fc = FalsifyConfig {
                max_degree: *max_degree,
                group_cap: cfg.group_cap,
                ..FalsifyConfig::default()
            };
            if fc.max_degree < fc.min_degree {
                return Err(Error::Invalid(format!(
                    "--max-degree must be at least {}",
                    fc.min_degree
                )));
            }
            let hit = falsify(&law, (*side).into(), *budget, cfg.seed, &fc)?;
            let Some(cx) = hit else {
                let text = if cfg.json() {
                    to_json(
                        &json!({"law": law.to_string(), "budget": budget, "counterexample": null}),
                    )
                } else {
                    format!("no violation in {budget} instances (seed {})\n", cfg.seed)
                };
                return Ok(Output::ok(text));
            };
            if let Some(path) = dump {
                std::fs::write(path, to_json(&cx))
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            }
            let text = if cfg.json() {
                to_json(&cx)
            } else {
                format!(
                    "violation at instance {} (seed {}), margin {:.9} {}\n{}",
                    cx.index,
                    cx.seed,
                    cx.margin,
                    cx.units,
                    to_json(&cx.instance)
                )
            };
            Ok(Output {
                text,
                code: EXIT_VIOLATED,
            })
        }
        LawCmd::Replay { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Invalid(format!("{}: {e}", file.display())))?;
            let cx: Counterexample =
                serde_json::from_str(&text).map_err(|e| Error::Invalid(e.to_string()))?;
            let r = replay(&cx, cfg.group_cap)?;
            let reproduced = !r.satisfied && (r.margin - cx.margin).abs() <= 1e-9;
            let out = if cfg.json() {
                to_json(
                    &json!({"reproduced": reproduced, "recorded_margin": cx.margin, "result": r}),
                )
            } else {
                let law = parse_law(&cx.law)?;
                let mut s = eval_text(&law, &r, &cx.units);
                let _ = writeln!(
                    s,
                    "recorded margin {:.9}: {}",
                    cx.margin,
                    if reproduced {
                        "reproduced"
                    } else {
                        "NOT reproduced"
                    }
                );
                s
            };
            let code = if r.satisfied { EXIT_OK } else { EXIT_VIOLATED };
            Ok(Output { text: out, code })
        }
        LawCmd::S5 => {
            let rep = verify_s5_counterexample(cfg.group_cap)?;
            let text = if cfg.json() {
                to_json(&rep)
            } else {
                let o = rep.orders;
                let mut s = format!(
                    "orders (|G1|,|G2|,|G3|,|G1vG2|,|G2vG3|,|G1vG2vG3|) = ({},{},{},{},{},{})\n",
                    o[0], o[1], o[2], o[3], o[4], o[5]
                );
                let _ = writeln!(
                    s,
                    "|G1vG2|*|G2vG3| = {} < {} = |G1vG2vG3|*|G2|",
                    rep.lhs_product, rep.rhs_product
                );
                let _ = writeln!(s, "subgroup margin: {:.7} nats/degree", rep.subgroup.margin);
                let _ = writeln!(s, "partition margin: {:.7} nats", rep.partition.margin);
                for f in &rep.failures {
                    let _ = writeln!(s, "unexpected: {f}");
                }
                s
            };
            let violated = !rep.subgroup.satisfied && !rep.partition.satisfied;
            Ok(Output {
                text,
                code: if violated { EXIT_VIOLATED } else { EXIT_OK },
            })
        }
    }
}

fn check_file(cfg: &CliConfig, law: &LawExpression, file: &Path) -> Result<Output> {
    let (r, units) = match read_instance(file)? {
        Instance::Partitions(p) => (eval_on_partitions(law, &p.info_elements())?, "nats"),
        Instance::Groups(g) => (
            eval_on_subgroups(law, &g.groups, g.ambient_order, g.degree, cfg.group_cap)?,
            "nats/degree",
        ),
    };
    let code = if r.satisfied { EXIT_OK } else { EXIT_VIOLATED };
    let text = if cfg.json() {
        to_json(&json!({"law": law.to_string(), "units": units, "result": r}))
    } else {
        eval_text(law, &r, units)
    };
    Ok(Output { text, code })
}

fn check_random(cfg: &CliConfig, law: &LawExpression, side: Side, n: u64) -> Result<Output> {
    let fc = FalsifyConfig {
        group_cap: cfg.group_cap,
        ..FalsifyConfig::default()
    };
    let mut satisfied = 0u64;
    let mut first_violation: Option<(u64, EvalResult, Value)> = None;
    for i in 0..n {
        let mut rng = instance_rng(cfg.seed, i);
        let (r, inst) = match side {
            Side::Partitions => {
                let inst = random_partition_instance(&mut rng, law.n_vars, &fc);
                (
                    eval_on_partitions(law, &inst.info_elements())?,
                    Instance::Partitions(inst),
                )
            }
            Side::Subgroups => {
                let inst = random_group_instance(&mut rng, law.n_vars, &fc);
                let r = eval_on_subgroups(
                    law,
                    &inst.groups,
                    inst.ambient_order,
                    inst.degree,
                    fc.group_cap,
                )?;
                (r, Instance::Groups(inst))
            }
        };
        if r.satisfied {
            satisfied += 1;
        } else if first_violation.is_none() {
            first_violation = Some((i, r, inst.to_value()));
        }
    }
    let code = if satisfied == n {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    };
    let text = if cfg.json() {
        let witness = first_violation
            .as_ref()
            .map(|(i, r, v)| json!({"index": i, "result": r, "instance": v}));
        to_json(&json!({
            "law": law.to_string(),
            "side": side.to_string(),
            "seed": cfg.seed,
            "satisfied": satisfied,
            "total": n,
            "first_violation": witness,
        }))
    } else {
        let mut s = format!("{satisfied}/{n} satisfied\n");
        if let Some((i, r, v)) = &first_violation {
            let _ = writeln!(s, "first violation at instance {i}, margin {:.9}", r.margin);
            s.push_str(&to_json(v));
        }
        s
    };
    Ok(Output { text, code })
}
