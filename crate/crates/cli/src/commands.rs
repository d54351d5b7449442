//! Subcommands. Each writes its report to `out` and returns the exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use mguard::generators::{random_k14_free_2split, random_k14_free_3split};
use mguard::graph::split_partition;
use mguard::oracle::{
    edn_oracle, gamma_exact, medn_feasible, edn_feasible, medn_oracle, Budget, OracleError, DEFAULT_BUDGET,
};
use mguard::reductions::{
    build_gp2, build_gp3, build_gp5, exact_covers, perfect_3d_matchings, reduce_3dm, reduce_x3c, ConstructedGraph,
    ThreeDMInstance, X3CInstance,
};
use mguard::solvers::solve_k13_free;
use mguard::strategy::{
    interactive_defender, strategy_3dm, strategy_k14_2split, strategy_k14_3split, strategy_x3c, verify_closure,
    ClosureResult, DefenseStrategy,
};
use mguard::graph::CliqueTree;
use mguard::Graph;

use crate::analysis::{analyze, split_strategy, MethodChoice, Param};
use crate::{load_graph, load_json, presets, service, CliError, EXIT_NEGATIVE};

#[derive(Debug, Parser)]
#[command(name = "mguard", version, about = "Eternal and m-eternal domination toolkit")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Work limit for each exact computation (configurations and
    /// configuration pairs examined).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute graph parameters.
    Analyze(AnalyzeArgs),
    /// Build a constructed graph from an instance or base graph.
    Reduce(ReduceArgs),
    /// Check that a strategy defends its graph forever.
    VerifyStrategy {
        /// Graph file or `reduce` document.
        graph: PathBuf,
        /// Strategy JSON as written by `--strategy-out`.
        strategy: PathBuf,
    },
    /// Query the exact fixed-point oracle.
    Oracle(OracleArgs),
    /// Serve the session API.
    Serve(ServeArgs),
    /// Run a quick battery of consistency checks.
    Selftest,
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    /// Graph file (JSON or edge list) or a document written by `reduce`.
    pub path: PathBuf,
    /// Comma-separated parameters to compute.
    #[arg(long, value_delimiter = ',', default_values = ["gamma", "alpha", "medn"])]
    pub param: Vec<Param>,
    /// How to compute medn; `auto` uses a split-graph formula when one applies.
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodChoice,
    /// Exit with code 3 when any parameter runs out of budget.
    #[arg(long)]
    pub strict: bool,
    /// Also compute medn with the oracle and warn on disagreement.
    #[arg(long)]
    pub cross_check: bool,
    /// Write the constructive strategy of a split graph to this file.
    #[arg(long)]
    pub strategy_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    X3c,
    #[value(name = "3dm")]
    ThreeDm,
    Gp2,
    Gp3,
    Gp5,
}

#[derive(Debug, clap::Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub kind: ReduceKind,
    /// Instance JSON (x3c, 3dm) or base graph (gp2, gp3, gp5).
    pub input: PathBuf,
    /// Write the document here instead of standard output.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Also write the bare graph in the JSON graph format.
    #[arg(long)]
    pub graph_out: Option<PathBuf>,
    /// Write the guard strategy (x3c, 3dm) built from the certificate.
    #[arg(long)]
    pub strategy_out: Option<PathBuf>,
    /// Triple indices of the exact cover or perfect matching; the first one
    /// found is used when omitted.
    #[arg(long, value_delimiter = ',')]
    pub certificate: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    /// Every guard may move (m-eternal).
    All,
    /// One guard moves (eternal).
    One,
}

#[derive(Debug, clap::Args)]
pub struct OracleArgs {
    /// Graph file (JSON or edge list) or a document written by `reduce`.
    pub path: PathBuf,
    /// `all`: every guard may move on each attack; `one`: a single guard moves.
    #[arg(long, value_enum, default_value = "all")]
    pub model: ModelArg,
    /// Decide feasibility for this many guards instead of computing the
    /// least number.
    #[arg(long)]
    pub k: Option<usize>,
    /// List the winning configurations (with --k).
    #[arg(long)]
    pub winning_set: bool,
}

#[derive(Debug, clap::Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Directory for JSON session snapshots.
    #[arg(long)]
    pub persist: Option<PathBuf>,
    /// Concurrent analysis and session-setup jobs.
    #[arg(long, default_value_t = 4)]
    pub workers: usize,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(ref a) => cmd_analyze(&cli, a, out),
        Command::Reduce(ref a) => cmd_reduce(&cli, a, out),
        Command::VerifyStrategy { ref graph, ref strategy } => cmd_verify_strategy(&cli, graph, strategy, out),
        Command::Oracle(ref a) => cmd_oracle(&cli, a, out),
        Command::Serve(ref a) => cmd_serve(&cli, a, out),
        Command::Selftest => cmd_selftest(&cli, out),
    }
}

fn write_json(out: &mut dyn Write, v: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn write_file(path: &Path, v: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Input(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn budget_error(e: OracleError) -> CliError {
    match e {
        OracleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn cmd_analyze(cli: &Cli, a: &AnalyzeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let g = load_graph(&a.path)?;
    let report = analyze(&g, &a.param, a.method, cli.budget, a.cross_check).map_err(|e| CliError::Input(e.to_string()))?;
    if cli.json {
        write_json(out, &report)?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    if let Some(path) = &a.strategy_out {
        let s = split_strategy(&g).map_err(CliError::Input)?;
        write_file(path, &s)?;
    }
    if a.strict && report.any_budget_exceeded() {
        return Err(CliError::Budget("some parameters are unknown".into()));
    }
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReduceDoc<'a> {
    kind: &'static str,
    #[serde(flatten)]
    built: &'a ConstructedGraph,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_tree: Option<&'a CliqueTree>,
    /// Exact covers or perfect matchings of the source instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<Vec<Vec<usize>>>,
}

fn cmd_reduce(cli: &Cli, a: &ReduceArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let input_err = |e: &dyn std::fmt::Display| CliError::Input(format!("{}: {e}", a.input.display()));
    let (built, tree, certificates, strategy) = match a.kind {
        ReduceKind::X3c => {
            let inst: X3CInstance = load_json(&a.input)?;
            let built = reduce_x3c(&inst).map_err(|e| input_err(&e))?;
            let certs = exact_covers(&inst);
            let strategy = match (&a.strategy_out, a.certificate.as_ref().or(certs.first())) {
                (Some(_), Some(c)) => Some(strategy_x3c(&inst, c).map_err(|e| input_err(&e))?.1),
                _ => None,
            };
            (built, None, Some(certs), strategy)
        }
        ReduceKind::ThreeDm => {
            let inst: ThreeDMInstance = load_json(&a.input)?;
            let (built, tree) = reduce_3dm(&inst).map_err(|e| input_err(&e))?;
            let certs = perfect_3d_matchings(&inst);
            let strategy = match (&a.strategy_out, a.certificate.as_ref().or(certs.first())) {
                (Some(_), Some(m)) => Some(strategy_3dm(&inst, m).map_err(|e| input_err(&e))?.1),
                _ => None,
            };
            (built, Some(tree), Some(certs), strategy)
        }
        ReduceKind::Gp2 | ReduceKind::Gp3 | ReduceKind::Gp5 => {
            let g = load_graph(&a.input)?;
            let built = match a.kind {
                ReduceKind::Gp2 => build_gp2(&g),
                ReduceKind::Gp3 => build_gp3(&g),
                _ => build_gp5(&g),
            };
            (built, None, None, None)
        }
    };
    let kind = match a.kind {
        ReduceKind::X3c => "x3c",
        ReduceKind::ThreeDm => "3dm",
        ReduceKind::Gp2 => "gp2",
        ReduceKind::Gp3 => "gp3",
        ReduceKind::Gp5 => "gp5",
    };
    let doc = ReduceDoc { kind, built: &built, clique_tree: tree.as_ref(), certificates };
    if let Some(path) = &a.graph_out {
        write_file(path, &built.graph)?;
    }
    let mut code = 0;
    if let Some(path) = &a.strategy_out {
        match &strategy {
            Some(s) => write_file(path, s)?,
            None if matches!(a.kind, ReduceKind::X3c | ReduceKind::ThreeDm) => {
                writeln!(out, "no certificate: the instance has no solution, strategy not written")?;
                code = EXIT_NEGATIVE;
            }
            None => return Err(CliError::Input(format!("--strategy-out is not available for {kind}"))),
        }
    }
    match &a.out {
        Some(path) => {
            write_file(path, &doc)?;
            if cli.json {
                write_json(out, &json!({ "out": path, "vertices": built.graph.n(), "edges": built.graph.edge_count() }))?;
            } else {
                writeln!(out, "wrote {} ({} vertices, {} edges)", path.display(), built.graph.n(), built.graph.edge_count())?;
            }
        }
        None => write_json(out, &doc)?,
    }
    Ok(code)
}

fn cmd_verify_strategy(cli: &Cli, graph: &Path, strategy: &Path, out: &mut dyn Write) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let s: DefenseStrategy = load_json(strategy)?;
    let largest = s
        .rules
        .iter()
        .flat_map(|r| r.config.vertices().iter().copied().chain([r.attack]))
        .chain(s.initial.vertices().iter().copied())
        .chain(s.invariant.iter().copied())
        .max();
    if let Some(v) = largest.filter(|&v| v >= g.n()) {
        return Err(CliError::Input(format!("strategy uses vertex {v} but the graph has {} vertices", g.n())));
    }
    let report = verify_closure(&g, &s);
    if cli.json {
        write_json(out, &report)?;
    } else {
        match &report.result {
            ClosureResult::Proven => writeln!(out, "proven, {} configs", report.visited_configs)?,
            ClosureResult::Counterexample { config, attack, reason } => {
                let at = attack.map_or("initial configuration".to_string(), |r| format!("attack on {r}"));
                writeln!(out, "counterexample: config {:?}, {at}: {reason}", config.vertices())?;
            }
        }
    }
    Ok(if report.is_proven() { 0 } else { EXIT_NEGATIVE })
}

fn cmd_oracle(cli: &Cli, a: &OracleArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let g = load_graph(&a.path)?;
    let mut budget = Budget::new(cli.budget);
    let Some(k) = a.k else {
        let value = match a.model {
            ModelArg::All => medn_oracle(&g, &mut budget),
            ModelArg::One => edn_oracle(&g, &mut budget).map(|r| r.value),
        }
        .map_err(budget_error)?;
        let name = if a.model == ModelArg::All { "medn" } else { "edn" };
        if cli.json {
            write_json(out, &json!({ "model": a.model, name: value, "budgetUsed": budget.used() }))?;
        } else {
            writeln!(out, "{name} = {value}")?;
        }
        return Ok(0);
    };
    let ws = match a.model {
        ModelArg::All => medn_feasible(&g, k, &mut budget),
        ModelArg::One => edn_feasible(&g, k, &mut budget),
    }
    .map_err(budget_error)?;
    let configs: Vec<Vec<usize>> = ws.configs().iter().map(|c| c.vertices().to_vec()).collect();
    if cli.json {
        let mut v = json!({ "model": a.model, "k": k, "feasible": !ws.is_empty(), "winningConfigs": ws.len() });
        if a.winning_set {
            v["configs"] = json!(configs);
        }
        write_json(out, &v)?;
    } else {
        let verdict = if ws.is_empty() { "infeasible" } else { "feasible" };
        writeln!(out, "k = {k}: {verdict}, {} winning configurations", ws.len())?;
        if a.winning_set {
            for c in &configs {
                writeln!(out, "{c:?}")?;
            }
        }
    }
    Ok(if ws.is_empty() { EXIT_NEGATIVE } else { 0 })
}

fn cmd_serve(cli: &Cli, a: &ServeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let config = service::ServiceConfig { budget: cli.budget, persist: a.persist.clone(), workers: a.workers.max(1) };
    let state = service::AppState::new(config).map_err(CliError::Input)?;
    let addr = format!("{}:{}", a.host, a.port);
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(&addr)
            .await
            .map_err(|e| CliError::Input(format!("cannot bind {addr}: {e}")))?;
        writeln!(out, "listening on http://{}", listener.local_addr()?)?;
        out.flush()?;
        axum::serve(listener, service::router(state)).await?;
        Ok(0)
    })
}

type Check = (&'static str, Box<dyn Fn() -> Result<(), String>>);

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn proven(g: &Graph, s: &DefenseStrategy) -> Result<(), String> {
    match verify_closure(g, s).result {
        ClosureResult::Proven => Ok(()),
        ClosureResult::Counterexample { config, attack, reason } => {
            Err(format!("counterexample at {:?}, attack {attack:?}: {reason}", config.vertices()))
        }
    }
}

fn checks(budget: u64, seed: u64) -> Vec<Check> {
    let oracle = move |g: &Graph| medn_oracle(g, &mut Budget::new(budget)).map_err(|e| e.to_string());
    vec![
        (
            "P5: gamma = 2, medn = 3",
            Box::new(move || {
                let g = Graph::path(5);
                expect_eq("gamma", gamma_exact(&g), 2)?;
                expect_eq("medn", oracle(&g)?, 3)
            }),
        ),
        (
            "K_{1,4}: medn = 2, one guard infeasible",
            Box::new(move || {
                let g = Graph::star(4);
                expect_eq("medn", oracle(&g)?, 2)?;
                let ws = medn_feasible(&g, 1, &mut Budget::new(budget)).map_err(|e| e.to_string())?;
                expect_eq("winning configurations for k = 1", ws.len(), 0)
            }),
        ),
        (
            "3-sun: k13 formula is an upper bound on the oracle",
            Box::new(move || {
                let g = presets::sun3();
                let f = solve_k13_free(&g, &split_partition(&g).ok_or("not split")?).map_err(|e| e.to_string())?;
                let o = oracle(&g)?;
                (f >= o).then_some(()).ok_or(format!("formula {f} below oracle {o}"))
            }),
        ),
        (
            "X3C fixture: 17 vertices, strategy with 5 guards proven",
            Box::new(|| {
                let (g, s) = strategy_x3c(&presets::x3c_sample_instance(), &[0, 1, 3]).map_err(|e| e.to_string())?;
                expect_eq("vertices", g.n(), 17)?;
                expect_eq("guards", s.k, 5)?;
                proven(&g, &s)
            }),
        ),
        (
            "3DM fixture: 36 vertices, strategy with 10 guards proven",
            Box::new(|| {
                let (g, s) = strategy_3dm(&presets::tdm_sample_instance(), &[1, 2]).map_err(|e| e.to_string())?;
                expect_eq("vertices", g.n(), 36)?;
                expect_eq("guards", s.k, 10)?;
                proven(&g, &s)
            }),
        ),
        (
            "random K_{1,4}-free split strategies proven",
            Box::new(move || {
                let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                for _ in 0..10 {
                    let g = random_k14_free_2split(&mut rng, 10);
                    proven(&g, &strategy_k14_2split(&g, &split_partition(&g).unwrap()).map_err(|e| e.to_string())?)?;
                    let g = random_k14_free_3split(&mut rng, 10);
                    proven(&g, &strategy_k14_3split(&g, &split_partition(&g).unwrap()).map_err(|e| e.to_string())?)?;
                }
                Ok(())
            }),
        ),
        (
            "oracle session on P5 with 3 guards survives 100 attacks",
            Box::new(move || {
                let g = Graph::path(5);
                let mut s = interactive_defender(&g, 3, &mut Budget::new(budget)).map_err(|e| e.to_string())?;
                let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                for _ in 0..100 {
                    s.attack(rng.gen_range(0..5)).map_err(|e| e.to_string())?;
                }
                Ok(())
            }),
        ),
        (
            "preset graphs load and split strategies exist where expected",
            Box::new(|| {
                for name in presets::NAMES {
                    presets::graph(name).ok_or(format!("preset {name} missing"))?;
                }
                let g = Graph::path(4);
                proven(&g, &split_strategy(&g)?)
            }),
        ),
    ]
}

fn cmd_selftest(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut results = Vec::new();
    for (name, check) in checks(cli.budget, cli.seed) {
        results.push((name, check()));
    }
    let failed = results.iter().filter(|(_, r)| r.is_err()).count();
    if cli.json {
        let rows: Vec<_> = results
            .iter()
            .map(|(name, r)| json!({ "name": name, "ok": r.is_ok(), "message": r.as_ref().err() }))
            .collect();
        write_json(out, &json!({ "checks": rows, "failed": failed }))?;
    } else {
        for (name, r) in &results {
            match r {
                Ok(()) => writeln!(out, "ok   {name}")?,
                Err(e) => writeln!(out, "FAIL {name}: {e}")?,
            }
        }
        writeln!(out, "{} of {} checks passed", results.len() - failed, results.len())?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_NEGATIVE })
}
