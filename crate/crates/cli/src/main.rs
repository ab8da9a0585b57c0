//! Command-line front end: parse a network file, run the pipeline, print
//! machine-readable results.
//!
//! Exit codes: 0 success (for `verify`: all checks passed), 1 input or
//! validation failure (also failed `verify` checks), 2 expansion budget
//! exceeded, 3 internal self-check tripped.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tempoflow_core::{
    breaktimes, build_cten, build_ten, critical_times, cten_size_report, cut_cost,
    extract_cut_function, gen_random_network, generalized_critical_times, isomorphic, max_flow,
    max_flow_over_time, min_cut, normalize_min_cut, ten_flow_to_temporal, validate_flow,
    validate_network, Capacity, CriticalTimeSet, CutFunction, Error, GenParams, RawNetwork,
    TemporalNetwork, TimeStep, DEFAULT_LENGTH_SET_BOUND, DEFAULT_NODE_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "tempoflow",
    about = "Exact maximum flow over time on temporal networks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Network file in the canonical JSON format
    input: String,
    /// Time horizon T
    #[arg(long)]
    horizon: TimeStep,
    /// Emit a single JSON object instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the maximum flow over time value
    Maxflow {
        #[command(flatten)]
        common: CommonArgs,
        /// Also print the minimum cut as a cut function {node: time}
        #[arg(long)]
        cut: bool,
        /// Solve on the full time expansion instead of the condensed one
        #[arg(long)]
        oracle: bool,
        /// Node budget for the full expansion (overrides TEMPOFLOW_BUDGET)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build the condensed expansion and print it with its size report
    Cten {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the equivalence and round-trip checks on a file or a seeded corpus
    Verify {
        /// Network file; omit to verify a seeded corpus
        input: Option<String>,
        /// Time horizon (file mode)
        #[arg(long)]
        horizon: Option<TimeStep>,
        /// Corpus seed (corpus mode)
        #[arg(long)]
        seed: Option<u64>,
        /// Corpus size
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Extract a full-expansion min cut and move it onto the critical times
    Normalize {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate a random network
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        nodes: usize,
        #[arg(long, default_value_t = 5)]
        edges: usize,
        /// Maximum pieces per edge capacity
        #[arg(long, default_value_t = 3)]
        pieces: usize,
        #[arg(long, default_value_t = 8)]
        max_capacity: u64,
        #[arg(long, default_value_t = 1)]
        tau: TimeStep,
        /// Range for piece boundaries
        #[arg(long, default_value_t = 20)]
        horizon: TimeStep,
        /// Draw per-edge travel times from this comma-separated pool
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<TimeStep>>,
    },
    /// Print instance statistics and condensed expansion sizes
    Stats {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::BudgetExceeded { .. } => 2,
        Error::DualityViolation(_)
        | Error::BoundViolation(_)
        | Error::CostIncreased { .. }
        | Error::NotAMinCut { .. }
        | Error::NotMonotone(_) => 3,
        _ => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            code: exit_code_for(&error),
            message: error.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn node_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("TEMPOFLOW_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_NODE_BUDGET)
}

fn load_network(path: &str) -> Result<TemporalNetwork, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(1, format!("cannot read {path}: {e}")))?;
    let raw = RawNetwork::from_json(&text)
        .map_err(|e| fail(1, format!("cannot parse {path}: {e}")))?;
    let validated = validate_network(&raw)?;
    for warning in &validated.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(validated.network)
}

fn cut_to_json(cut: &CutFunction, net: &TemporalNetwork) -> Value {
    let mut map = serde_json::Map::new();
    for (node, &time) in cut.values().iter().enumerate() {
        map.insert(net.node_name(node).to_string(), json!(time));
    }
    Value::Object(map)
}

fn boundaries_for(net: &TemporalNetwork, horizon: TimeStep) -> Result<CriticalTimeSet, Error> {
    if net.is_uniform_length() {
        Ok(critical_times(net, horizon))
    } else {
        generalized_critical_times(
            net,
            &net.distinct_lengths(),
            horizon,
            DEFAULT_LENGTH_SET_BOUND,
        )
    }
}

fn run_maxflow(
    common: &CommonArgs,
    want_cut: bool,
    oracle: bool,
    budget: Option<u64>,
) -> Result<(), Failure> {
    let net = load_network(&common.input)?;
    let expansion = if oracle {
        build_ten(&net, common.horizon, node_budget(budget))?
    } else {
        let boundaries = boundaries_for(&net, common.horizon)?;
        build_cten(&net, &boundaries, common.horizon)?
    };
    let (value, flows) = max_flow(&expansion)?;

    let cut_json = if want_cut {
        let cut = min_cut(&expansion, &flows)?;
        let phi = extract_cut_function(&cut, &expansion)?;
        Some(cut_to_json(&phi, &net))
    } else {
        None
    };

    if common.json {
        let mut object = json!({ "value": value });
        if let Some(cut) = cut_json {
            object["cut"] = cut;
        }
        println!("{object}");
    } else {
        println!("{value}");
        if let Some(cut) = cut_json {
            println!("{cut}");
        }
    }
    Ok(())
}

fn run_cten(common: &CommonArgs) -> Result<(), Failure> {
    let net = load_network(&common.input)?;
    let boundaries = boundaries_for(&net, common.horizon)?;
    let cten = build_cten(&net, &boundaries, common.horizon)?;
    let report = cten_size_report(&cten, &net, &boundaries)?;
    let object = json!({
        "network": cten.export(),
        "size_report": report,
    });
    println!("{object}");
    Ok(())
}

fn run_normalize(common: &CommonArgs, budget: Option<u64>) -> Result<(), Failure> {
    let net = load_network(&common.input)?;
    let horizon = common.horizon;
    let ten = build_ten(&net, horizon, node_budget(budget))?;
    let (_, flows) = max_flow(&ten)?;
    let cut = min_cut(&ten, &flows)?;
    let phi = extract_cut_function(&cut, &ten)?;
    let normalized = normalize_min_cut(&net, horizon, &phi)?;
    let cut_json = cut_to_json(&normalized.cut, &net);
    if common.json {
        let cost = cut_cost(&net, horizon, &normalized.cut)?;
        println!(
            "{}",
            json!({
                "cut": cut_json,
                "iterations": normalized.iterations,
                "cost": cost,
            })
        );
    } else {
        println!("{cut_json}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_gen(
    seed: u64,
    nodes: usize,
    edges: usize,
    pieces: usize,
    max_capacity: u64,
    tau: TimeStep,
    horizon: TimeStep,
    lengths: Option<Vec<TimeStep>>,
) -> Result<(), Failure> {
    let params = GenParams {
        node_count: nodes,
        edge_count: edges,
        max_pieces_per_edge: pieces,
        max_capacity,
        tau,
        horizon,
        edge_lengths: lengths,
    };
    let net = gen_random_network(seed, &params)?;
    println!("{}", net.to_raw().to_json());
    Ok(())
}

fn run_stats(common: &CommonArgs) -> Result<(), Failure> {
    let net = load_network(&common.input)?;
    let horizon = common.horizon;
    let bt = breaktimes(&net, horizon);
    let boundaries = boundaries_for(&net, horizon)?;
    let cten = build_cten(&net, &boundaries, horizon)?;
    let stats = json!({
        "nodes": net.node_count(),
        "edges": net.edge_count(),
        "mu": net.mu(),
        "tau": net.tau(),
        "breaktimes": bt.len(),
        "critical_times": boundaries.len(),
        "cten_nodes": cten.node_count(),
        "cten_arcs": cten.arcs().len(),
    });
    if common.json {
        println!("{stats}");
    } else {
        for (key, value) in stats.as_object().unwrap() {
            println!("{key} {value}");
        }
    }
    Ok(())
}

struct Check {
    instance: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn verify_instance(
    net: &TemporalNetwork,
    horizon: TimeStep,
    instance: usize,
    budget: u64,
    checks: &mut Vec<Check>,
) -> Result<(), Failure> {
    let mut push = |name: &'static str, pass: bool, detail: String| {
        checks.push(Check {
            instance,
            name,
            pass,
            detail,
        });
    };

    let ten = build_ten(net, horizon, budget)?;
    let (ten_value, ten_flows) = max_flow(&ten)?;

    let fast = max_flow_over_time(net, horizon)?;
    push(
        "equivalence",
        fast == ten_value,
        format!("condensed {fast}, full {ten_value}"),
    );

    match ten_flow_to_temporal(net, horizon, &ten, &ten_flows) {
        Ok(table) => {
            let validated = validate_flow(net, horizon, &table)?;
            push(
                "round-trip",
                validated == ten_value,
                format!("table {validated}, solver {ten_value}"),
            );
        }
        Err(e) => push("round-trip", false, e.to_string()),
    }

    let boundaries = boundaries_for(net, horizon)?;
    let cten = build_cten(net, &boundaries, horizon)?;
    match cten_size_report(&cten, net, &boundaries) {
        Ok(report) => push(
            "size-bounds",
            true,
            format!("{} nodes, {} arcs", report.node_count, report.arc_count),
        ),
        Err(e) => push("size-bounds", false, e.to_string()),
    }

    let full = build_cten(net, &CriticalTimeSet::full(horizon), horizon)?;
    push(
        "degenerate-identity",
        isomorphic(&ten, &full),
        String::new(),
    );

    let cut = min_cut(&ten, &ten_flows)?;
    let phi = extract_cut_function(&cut, &ten)?;
    match normalize_min_cut(net, horizon, &phi) {
        Ok(normalized) => {
            let cost = cut_cost(net, horizon, &normalized.cut)?;
            let on_critical = normalized
                .cut
                .values()
                .iter()
                .all(|&v| v > horizon || boundaries.contains(v));
            push(
                "normalization",
                Capacity::Finite(cost) == ten_value && on_critical,
                format!("cost {cost} after {} iterations", normalized.iterations),
            );
        }
        Err(e) => push("normalization", false, e.to_string()),
    }
    Ok(())
}

fn run_verify(
    input: Option<String>,
    horizon: Option<TimeStep>,
    seed: Option<u64>,
    count: usize,
    json: bool,
    budget: Option<u64>,
) -> Result<(), Failure> {
    let budget = node_budget(budget);
    let mut checks = Vec::new();
    match (&input, seed) {
        (Some(path), _) => {
            let net = load_network(path)?;
            let horizon =
                horizon.ok_or_else(|| fail(1, "--horizon is required to verify a file"))?;
            verify_instance(&net, horizon, 0, budget, &mut checks)?;
        }
        (None, Some(seed)) => {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for instance in 0..count {
                let node_count = rng.gen_range(2..=6);
                let params = GenParams {
                    node_count,
                    edge_count: rng.gen_range(1..=(node_count * (node_count - 1)).min(10)),
                    max_pieces_per_edge: 4,
                    max_capacity: rng.gen_range(1..=8),
                    tau: rng.gen_range(0..=3),
                    horizon: rng.gen_range(1..=40),
                    edge_lengths: None,
                };
                let net = gen_random_network(
                    seed ^ (instance as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                    &params,
                )?;
                verify_instance(&net, params.horizon, instance, budget, &mut checks)?;
            }
        }
        (None, None) => {
            return Err(fail(1, "verify needs a network file or --seed"));
        }
    }

    let all_pass = checks.iter().all(|c| c.pass);
    if json {
        let entries: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "instance": c.instance,
                    "check": c.name,
                    "pass": c.pass,
                    "detail": c.detail,
                })
            })
            .collect();
        println!("{}", json!({ "checks": entries, "all_pass": all_pass }));
    } else {
        for c in &checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                println!("{verdict} {} (instance {})", c.name, c.instance);
            } else {
                println!(
                    "{verdict} {} (instance {}): {}",
                    c.name, c.instance, c.detail
                );
            }
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(fail(1, "verification checks failed"))
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Maxflow {
            common,
            cut,
            oracle,
            budget,
        } => run_maxflow(&common, cut, oracle, budget),
        Command::Cten { common } => run_cten(&common),
        Command::Verify {
            input,
            horizon,
            seed,
            count,
            json,
            budget,
        } => run_verify(input, horizon, seed, count, json, budget),
        Command::Normalize { common, budget } => run_normalize(&common, budget),
        Command::Gen {
            seed,
            nodes,
            edges,
            pieces,
            max_capacity,
            tau,
            horizon,
            lengths,
        } => run_gen(seed, nodes, edges, pieces, max_capacity, tau, horizon, lengths),
        Command::Stats { common } => run_stats(&common),
    }
}

fn wants_json(cli: &Cli) -> bool {
    match &cli.command {
        Command::Maxflow { common, .. }
        | Command::Cten { common }
        | Command::Normalize { common, .. }
        | Command::Stats { common } => common.json,
        Command::Verify { json, .. } => *json,
        Command::Gen { .. } => false,
    }
}

fn main() -> ExitCode {
    // keep exit code 2 reserved for budget exhaustion: usage errors are
    // input errors and exit 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            e.exit()
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::FAILURE;
        }
    };
    let json = wants_json(&cli);
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if json {
                println!(
                    "{}",
                    json!({ "error": { "code": failure.code, "message": failure.message } })
                );
            } else {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
