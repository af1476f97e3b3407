//! `tightsrg`: scan, analyze and verify strongly regular graphs whose ratio
//! bound and inertia bound coincide.
//!
//! Exit codes: 0 on success (including a verdict or a search status), 1 when
//! a mathematical check fails, 2 on usage or input-format errors.

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tightsrg::designs::{check_2design, intersection_profile, BlockDesign, QuasiSymParams};
use tightsrg::graphs::graph6::{parse_graph6, write_graph6};
use tightsrg::graphs::{
    coclique_intersection_stats, enumerate_delsarte_cocliques_threaded, extract_quasisym_design,
    extract_symmetric_design, induced_complement_srg, kneser2, lemma71_extend, m22_graph, petersen,
    tight_info, verify_quasisym_extraction, verify_srg, verify_symmetric_extraction, Graph,
};
use tightsrg::nonexistence::{parse_facts, KnownFact};
use tightsrg::report::{self, analyze, scan_rows, to_json_value};
use tightsrg::search::{extend_design, ExtensionProblem, Limits, Status};
use tightsrg::srg::{params_from_eigenvalues, spectrum_of, tight_params, SrgParams};

#[derive(Parser)]
#[command(name = "tightsrg", version, about)]
struct Cli {
    /// Worker threads for coclique enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all tight parameter sets in a range of v.
    Scan(ScanArgs),
    /// Report everything derived from one eigenvalue pair.
    Analyze(AnalyzeArgs),
    /// Concrete graphs in graph6.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Block designs in the `<points> <blocks>` text format.
    #[command(subcommand)]
    Design(DesignCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 1)]
    min_v: i64,
    #[arg(long)]
    max_v: i64,
    #[arg(long, default_value_t = 2)]
    min_eplus: i64,
    /// Literature bounds, one `e+ e- bound citation` per line.
    #[arg(long)]
    facts_file: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "from_params"
    )]
    eplus: Option<i64>,
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "from_params"
    )]
    eminus: Option<i64>,
    /// `v,k,lambda,mu` instead of the eigenvalues.
    #[arg(long, conflicts_with_all = ["eplus", "eminus"])]
    from_params: Option<String>,
    #[arg(long)]
    facts_file: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Print a named graph in graph6.
    Construct {
        #[command(subcommand)]
        which: Named,
    },
    /// Check strong regularity and tightness.
    Verify { file: String },
    /// Enumerate Delsarte cocliques and verify the designs they carry.
    Cocliques {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Extend a generalized M22 graph by its cocliques.
    ExtendLemma71 { file: String },
}

#[derive(Subcommand)]
enum Named {
    Kneser2 { n: usize },
    M22,
    Petersen,
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Verify a 2-design and classify it.
    Check { file: String },
    /// Complete a partial design to a quasisymmetric design.
    Extend {
        file: String,
        /// `v,k,lambda,s1,s2,blocks`.
        #[arg(long)]
        target_quasisym: String,
        /// Node budget; accepts forms such as `1e8`.
        #[arg(long)]
        max_nodes: String,
        /// Wall-clock budget.
        #[arg(long, default_value_t = 600.0)]
        max_seconds: f64,
    },
    /// Design parameters carried by an eigenvalue pair.
    Params {
        #[arg(long, allow_hyphen_values = true)]
        eplus: i64,
        #[arg(long, allow_hyphen_values = true)]
        eminus: i64,
    },
}

enum Failure {
    /// A mathematical check failed.
    Math(String),
    /// Bad arguments or malformed input.
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn math(e: impl std::fmt::Display) -> Failure {
    Failure::Math(e.to_string())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn load_facts(path: Option<&str>) -> Result<Vec<KnownFact>, Failure> {
    match path {
        None => Ok(Vec::new()),
        Some(p) => parse_facts(&read_input(p)?).map_err(usage),
    }
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    parse_graph6(&read_input(path)?).map_err(|e| usage(format!("graph6: {e}")))
}

fn load_design(path: &str) -> Result<BlockDesign, Failure> {
    BlockDesign::parse(&read_input(path)?).map_err(usage)
}

fn json(x: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(&to_json_value(x)).expect("json");
    s.push('\n');
    s
}

fn parse_ints<const N: usize>(s: &str, what: &str) -> Result<[i64; N], Failure> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            usage(format!(
                "{what}: expected {N} comma-separated integers, got {s:?}"
            ))
        })?;
    parts.try_into().map_err(|_| {
        usage(format!(
            "{what}: expected {N} comma-separated integers, got {s:?}"
        ))
    })
}

fn scan(a: &ScanArgs) -> Outcome {
    if a.min_v > a.max_v {
        return Err(usage(format!(
            "--min-v {} exceeds --max-v {}",
            a.min_v, a.max_v
        )));
    }
    if a.min_eplus < 1 {
        return Err(usage("--min-eplus must be at least 1"));
    }
    let facts = load_facts(a.facts_file.as_deref())?;
    let rows = scan_rows(a.min_v, a.max_v, a.min_eplus, &facts);
    Ok(match a.format {
        Format::Text => report::to_text(&rows),
        Format::Csv => report::to_csv(&rows),
        Format::Json => report::to_json(&rows),
    })
}

fn analyze_cmd(a: &AnalyzeArgs) -> Outcome {
    let facts = load_facts(a.facts_file.as_deref())?;
    let t = match &a.from_params {
        Some(s) => {
            let [v, k, l, m] = parse_ints::<4>(s, "--from-params")?;
            tight_params(&SrgParams::new(v, k, l, m)).map_err(math)?
        }
        None => {
            let (p, m) = (
                a.eplus.expect("required by clap"),
                a.eminus.expect("required by clap"),
            );
            params_from_eigenvalues(p, m).map_err(math)?
        }
    };
    let r = analyze(&t, &facts);
    Ok(match a.format {
        Format::Json => json(&r),
        _ => r.to_text(),
    })
}

fn graph(cmd: &GraphCommand, threads: usize) -> Outcome {
    match cmd {
        GraphCommand::Construct { which } => {
            let g = match which {
                Named::Kneser2 { n } => kneser2(*n).map_err(usage)?,
                Named::M22 => m22_graph().map_err(math)?,
                Named::Petersen => petersen(),
            };
            Ok(write_graph6(&g) + "\n")
        }
        GraphCommand::Verify { file } => {
            let g = load_graph(file)?;
            let p = verify_srg(&g).map_err(math)?;
            let mut out = format!("srg {p}\n");
            match spectrum_of(&p) {
                Ok(s) => {
                    let tight = tight_params(&p).is_ok();
                    let _ = writeln!(
                        out,
                        "spectrum e+ = {} (m+ = {}), e- = {} (m- = {})",
                        s.e_plus, s.m_plus, s.e_minus, s.m_minus
                    );
                    let _ = writeln!(out, "tight {}", if tight { "yes" } else { "no" });
                }
                Err(e) => {
                    let _ = writeln!(out, "spectrum: {e}");
                    let _ = writeln!(out, "tight no");
                }
            }
            Ok(out)
        }
        GraphCommand::Cocliques { file, format } => cocliques(&load_graph(file)?, threads, *format),
        GraphCommand::ExtendLemma71 { file } => {
            let g = load_graph(file)?;
            let all = enumerate_delsarte_cocliques_threaded(&g, threads).map_err(math)?;
            let h = lemma71_extend(&g, &all).map_err(math)?;
            Ok(write_graph6(&h) + "\n")
        }
    }
}

#[derive(serde::Serialize)]
struct CocliqueReport {
    params: SrgParams,
    count: usize,
    bound: i64,
    cocliques: Vec<Vec<usize>>,
    pairwise: Vec<usize>,
    triple: Vec<usize>,
    checks: Vec<String>,
}

fn cocliques(g: &Graph, threads: usize, format: Format) -> Outcome {
    let info = tight_info(g).map_err(math)?;
    let all = enumerate_delsarte_cocliques_threaded(g, threads).map_err(math)?;
    let stats = coclique_intersection_stats(&all);
    let mut checks = Vec::new();
    if let Some(y) = all.first() {
        let ex = extract_quasisym_design(g, y).map_err(math)?;
        let q = verify_quasisym_extraction(g, &ex).map_err(math)?;
        checks.push(format!("quasisymmetric design on one coclique: {q}"));
        let induced = induced_complement_srg(g, y).map_err(math)?;
        checks.push(format!(
            "graph without one coclique: srg {}{}",
            induced.params,
            if induced.imprimitive {
                " (imprimitive)"
            } else {
                ""
            }
        ));
    }
    if let [y, z, ..] = all.as_slice() {
        let ex = extract_symmetric_design(g, y, z).map_err(math)?;
        let s = verify_symmetric_extraction(g, &ex).map_err(math)?;
        checks.push(format!("symmetric design on two cocliques: {s}"));
    }
    let r = CocliqueReport {
        params: info.params,
        count: all.len(),
        bound: info.spectrum.m_minus + 1,
        cocliques: all.into_iter().map(|c| c.vertices).collect(),
        pairwise: stats.pairwise.into_iter().collect(),
        triple: stats.triple.into_iter().collect(),
        checks,
    };
    if let Format::Json = format {
        return Ok(json(&r));
    }
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    for c in &r.cocliques {
        let _ = writeln!(out, "{}", list(c));
    }
    let _ = writeln!(
        out,
        "# {} Delsarte cocliques (at most {})",
        r.count, r.bound
    );
    let _ = writeln!(out, "# pairwise intersection sizes: {}", list(&r.pairwise));
    let _ = writeln!(out, "# triple intersection sizes: {}", list(&r.triple));
    for c in &r.checks {
        let _ = writeln!(out, "# ok: {c}");
    }
    Ok(out)
}

fn parse_budget(s: &str) -> Result<u64, Failure> {
    let bad = || usage(format!("--max-nodes: not a node count: {s:?}"));
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    if !(x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64) {
        return Err(bad());
    }
    Ok(x as u64)
}

fn design(cmd: &DesignCommand) -> Outcome {
    match cmd {
        DesignCommand::Check { file } => {
            let d = load_design(file)?;
            let stats = check_2design(&d).map_err(math)?;
            let k = d.block_size().unwrap_or(0);
            let sizes = intersection_profile(&d).sizes();
            let kind = if d.block_count() == d.point_count() {
                "symmetric"
            } else if sizes.len() == 2 {
                "quasisymmetric"
            } else {
                "neither symmetric nor quasisymmetric"
            };
            let mut out = format!(
                "2-({},{},{}) b={} r={}\n",
                d.point_count(),
                k,
                stats.lambda,
                d.block_count(),
                stats.r
            );
            let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "intersections {{{}}}", sizes.join(","));
            let _ = writeln!(out, "{kind}");
            Ok(out)
        }
        DesignCommand::Extend {
            file,
            target_quasisym,
            max_nodes,
            max_seconds,
        } => {
            let base = load_design(file)?;
            let [v, k, lambda, s1, s2, blocks] =
                parse_ints::<6>(target_quasisym, "--target-quasisym")?;
            if k < 2 || (lambda * (v - 1)) % (k - 1) != 0 {
                return Err(usage(
                    "--target-quasisym: replication number is not an integer",
                ));
            }
            let target = QuasiSymParams {
                v,
                k,
                lambda,
                r: lambda * (v - 1) / (k - 1),
                s1,
                s2,
                blocks,
            };
            if !(max_seconds.is_finite() && *max_seconds > 0.0) {
                return Err(usage("--max-seconds must be positive"));
            }
            let limits = Limits {
                max_nodes: parse_budget(max_nodes)?,
                max_time: Duration::from_secs_f64(*max_seconds),
            };
            let r = extend_design(&ExtensionProblem {
                base,
                target,
                limits,
            })
            .map_err(usage)?;
            let status = match &r.status {
                Status::Found { .. } => "found",
                Status::Infeasible => "infeasible",
                Status::BudgetExhausted { .. } => "budget-exhausted",
            };
            let mut record = serde_json::json!({
                "status": status,
                "nodes": r.stats.nodes,
                "depth": r.stats.max_depth,
                "candidates": r.stats.candidates,
                "elapsed_ms": r.elapsed_ms as u64,
            });
            if let Status::Found { design } = &r.status {
                record["design"] = serde_json::Value::String(design.to_text());
            }
            Ok(json(&record))
        }
        DesignCommand::Params { eplus, eminus } => {
            let t = params_from_eigenvalues(*eplus, *eminus).map_err(math)?;
            let a = analyze(&t, &[]);
            let mut out = format!("graph {}\n", t.params);
            match a.quasisymmetric {
                Some(q) => {
                    let _ = writeln!(out, "quasisymmetric {q}");
                }
                None => out.push_str("quasisymmetric none\n"),
            }
            match a.symmetric {
                Some(s) => {
                    let _ = writeln!(out, "symmetric {s}");
                }
                None => out.push_str("symmetric not integral\n"),
            }
            let _ = writeln!(out, "equality design {}", a.equality_design);
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let threads = cli.threads.max(1);
    let result = match &cli.command {
        Command::Scan(a) => scan(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Graph(g) => graph(g, threads),
        Command::Design(d) => design(d),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
