//! `hm`: generate, solve, certify, and scan hypergraph matching instances.
//!
//! Exit codes: 0 success; 1 verification failure (rejected certificate,
//! failed walkthrough); 2 usage or parse error; 3 budget exceeded. Errors
//! are also emitted as one JSON object on stderr.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use hm_core::ratio::{parse_rat, pq};
use hm_core::reduction::{link_floor, proof_walkthrough};
use hm_core::solver::{certify, nu_frac, nu_integral, Certificate, EdgeWeighting};
use hm_core::threshold::{
    brute_force_threshold, csv_row, f_formula, m0_formula, regime, scan, Grid, Mode,
    ThresholdQuery, CSV_HEADER,
};
use hm_core::{random_graph, Error as CoreError, Hypergraph, Limits, VertexSet};

#[derive(Parser)]
#[command(name = "hm", version, about = "Fractional matchings, covers, and degree thresholds in k-uniform hypergraphs", max_term_width = 100)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores)
    #[arg(long, global = true, env = "HM_WORKERS")]
    workers: Option<usize>,
    /// Largest edge universe the exhaustive enumeration accepts
    #[arg(long, global = true)]
    edge_cap: Option<u32>,
    /// Work budget for branch-and-bound and per-set sweeps
    #[arg(long, global = true)]
    node_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fractional,
    Integral,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Fractional => Mode::Fractional,
            ModeArg::Integral => Mode::Integral,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypergraph and write it to a file
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Solve a matching program on a hypergraph
    Solve {
        #[command(subcommand)]
        program: Program,
    },
    /// Check a matching/cover certificate; exits 1 unless it proves optimality
    Certify {
        /// Hypergraph file, or - for stdin
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Certificate file
        #[arg(long)]
        cert: String,
    },
    /// Emit the link of a vertex set, with the id map on stdout
    Link {
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Comma-separated vertex ids of the link center
        #[arg(short = 'S', long = "set", value_delimiter = ',', required = true)]
        set: Vec<u32>,
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Minimum d-degree with its witnessing d-set
    Degree {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short)]
        d: u32,
    },
    /// Run the cover-rescale pipeline and report every intermediate value
    Walkthrough {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short)]
        d: u32,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Minimum fractional matching number over all d-set links
    Floor {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short)]
        d: u32,
    },
    /// Closed-form threshold values with regime flags
    Formula {
        #[command(subcommand)]
        which: FormulaKind,
    },
    /// Brute-force threshold over every k-graph on n vertices
    Oracle {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        d: u32,
        /// Matching size, "p/q" or integer
        #[arg(short)]
        s: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Fractional)]
        mode: ModeArg,
    },
    /// Evaluate a JSON grid of threshold queries; reports as JSON lines
    Scan {
        /// Grid manifest file, or - for stdin
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(short, long, default_value = "-")]
        output: String,
        /// Also write one CSV row per cell
        #[arg(long)]
        csv: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// All C(n,k) edges
    Complete {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// All k-sets meeting the cover set {0..ceil(s)-2}
    Extremal {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        /// Target matching size, "p/q" or integer
        #[arg(short)]
        s: String,
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Each edge included independently with probability p (seeded, reproducible)
    Random {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        /// Edge probability, "p/q" or integer
        #[arg(short)]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, default_value = "-")]
        output: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Program {
    /// Maximum fractional matching ν' (prints the exact value as p/q)
    NuFrac {
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Write the optimal matching/cover certificate here
        #[arg(long)]
        cert: Option<String>,
    },
    /// Minimum fractional vertex cover μ (equal to ν' by duality)
    Mu {
        #[arg(short, long, default_value = "-")]
        input: String,
        #[arg(long)]
        cert: Option<String>,
    },
    /// Maximum integral matching ν by branch-and-bound
    Nu {
        #[arg(short, long, default_value = "-")]
        input: String,
        /// Write the witnessing matching as a certificate (unit weights)
        #[arg(long)]
        cert: Option<String>,
    },
}

#[derive(Subcommand)]
enum FormulaKind {
    /// Fractional threshold C(n-d,k-d) - C(n-d-(ceil(s)-1),k-d) + 1
    F {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        d: u32,
        #[arg(short)]
        s: String,
        /// Absolute constant for the second range predicate
        #[arg(long, default_value = "1")]
        fk_s0: String,
    },
    /// Integral d=0 threshold C(n,k) - C(n-s+1,k) + 1
    M0 {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        s: String,
        #[arg(long, default_value = "1")]
        fk_s0: String,
    },
}

struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    fn new(kind: &'static str, message: impl Into<String>, code: u8) -> Failure {
        Failure { kind, message: message.into(), code }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let (kind, code) = match &e {
            CoreError::NonUniformEdge { .. } => ("non_uniform_edge", 2),
            CoreError::VertexOutOfRange { .. } => ("vertex_out_of_range", 2),
            CoreError::InvalidParams(_) => ("invalid_params", 2),
            CoreError::Parse(_) => ("parse", 2),
            CoreError::TooLarge { .. } => ("too_large", 3),
            CoreError::NotACover { .. } => ("not_a_cover", 1),
            CoreError::InvalidCertificate(_) => ("invalid_certificate", 1),
        };
        Failure::new(kind, e.to_string(), code)
    }
}

fn io_failure(path: &str, e: std::io::Error) -> Failure {
    Failure::new("io", format!("{path}: {e}"), 2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // A second initialization (e.g. in tests) is harmless; ignore it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global();
    }
    let mut limits = Limits::default();
    if let Some(cap) = cli.edge_cap {
        limits.edge_cap = cap;
    }
    if let Some(cap) = cli.node_cap {
        limits.node_cap = cap;
    }
    match run(cli.command, &limits) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let diag = serde_json::json!({
                "error": { "kind": f.kind, "message": f.message }
            });
            eprintln!("{diag}");
            ExitCode::from(f.code)
        }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| io_failure("<stdin>", e))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }
}

fn write_sink(path: &str, content: &str) -> Result<(), Failure> {
    if path == "-" {
        std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| io_failure("<stdout>", e))
    } else {
        std::fs::write(path, content).map_err(|e| io_failure(path, e))
    }
}

fn read_hypergraph(path: &str) -> Result<Hypergraph, Failure> {
    let content = read_source(path)?;
    let parsed = match content.trim_start().chars().next() {
        Some('{') => Hypergraph::from_json(&content),
        _ => Hypergraph::from_text(&content),
    };
    Ok(parsed?)
}

fn render(h: &Hypergraph, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", h.to_json()),
        Format::Text => h.to_text(),
    }
}

fn bigint_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(small) => small.into(),
        Err(_) => v.to_string().into(),
    }
}

fn parse_rat_arg(name: &str, raw: &str) -> Result<hm_core::Rat, Failure> {
    parse_rat(raw)
        .map_err(|e| Failure::new("invalid_params", format!("bad {name}: {e}"), 2))
}

fn run(command: Command, limits: &Limits) -> Result<(), Failure> {
    match command {
        Command::Gen { family } => {
            let (graph, output, format) = match family {
                GenFamily::Complete { n, k, output, format } => {
                    (Hypergraph::complete(n, k)?, output, format)
                }
                GenFamily::Extremal { n, k, s, output, format } => {
                    let s = parse_rat_arg("s", &s)?;
                    (Hypergraph::extremal(n, k, &s)?, output, format)
                }
                GenFamily::Random { n, k, p, seed, output, format } => {
                    let p = parse_rat_arg("p", &p)?;
                    (random_graph(n, k, &p, seed)?, output, format)
                }
            };
            write_sink(&output, &render(&graph, format))
        }
        Command::Solve { program } => match program {
            Program::NuFrac { input, cert } | Program::Mu { input, cert } => {
                let h = read_hypergraph(&input)?;
                let outcome = nu_frac(&h);
                if let Some(path) = cert {
                    let certificate = Certificate::from_outcome(&outcome);
                    write_sink(&path, &format!("{}\n", certificate.to_json()))?;
                }
                println!("{}", pq(&outcome.value));
                Ok(())
            }
            Program::Nu { input, cert } => {
                let h = read_hypergraph(&input)?;
                let (value, matching) = nu_integral(&h, limits)?;
                if let Some(path) = cert {
                    let certificate = Certificate::from_weightings(
                        &EdgeWeighting::unit(matching),
                        &hm_core::VertexWeighting::zeros(h.n()),
                    );
                    write_sink(&path, &format!("{}\n", certificate.to_json()))?;
                }
                println!("{value}");
                Ok(())
            }
        },
        Command::Certify { input, cert } => {
            let h = read_hypergraph(&input)?;
            let certificate = Certificate::from_json(&read_source(&cert)?)?;
            let (f, w) = certificate.to_weightings(&h)?;
            let verdict = certify(&h, &f, &w)?;
            println!("{}", serde_json::to_string(&verdict).expect("verdict serializes"));
            if verdict.optimal {
                Ok(())
            } else {
                Err(Failure::new(
                    "certificate_rejected",
                    "certificate does not prove optimality",
                    1,
                ))
            }
        }
        Command::Link { input, set, output, format } => {
            let h = read_hypergraph(&input)?;
            let s = VertexSet::new(set)?;
            let (link, old_ids) = h.link(&s)?;
            write_sink(&output, &render(&link, format))?;
            println!("{}", serde_json::json!({ "old_ids": old_ids }));
            Ok(())
        }
        Command::Degree { input, d } => {
            let h = read_hypergraph(&input)?;
            let (delta, witness) = h.min_d_degree(d)?;
            println!(
                "{}",
                serde_json::json!({ "delta": delta, "witness": witness.members() })
            );
            Ok(())
        }
        Command::Walkthrough { input, d, output } => {
            let h = read_hypergraph(&input)?;
            let trace = proof_walkthrough(&h, d, limits)?;
            let rendered = format!("{}\n", trace.to_json());
            match output {
                Some(path) => write_sink(&path, &rendered)?,
                None => print!("{rendered}"),
            }
            if trace.ok {
                Ok(())
            } else {
                Err(Failure::new(
                    "walkthrough_failed",
                    "an internal assertion of the rescale pipeline failed",
                    1,
                ))
            }
        }
        Command::Floor { input, d } => {
            let h = read_hypergraph(&input)?;
            let (value, witness) = link_floor(&h, d, limits)?;
            println!(
                "{}",
                serde_json::json!({ "value": pq(&value), "witness": witness.members() })
            );
            Ok(())
        }
        Command::Formula { which } => {
            let (value, regime_record) = match which {
                FormulaKind::F { n, k, d, s, fk_s0 } => {
                    let s = parse_rat_arg("s", &s)?;
                    let s0 = parse_rat_arg("fk-s0", &fk_s0)?;
                    (f_formula(n, k, d, &s)?, regime(n, k, d, &s, &s0))
                }
                FormulaKind::M0 { n, k, s, fk_s0 } => {
                    let s = parse_rat_arg("s", &s)?;
                    let s0 = parse_rat_arg("fk-s0", &fk_s0)?;
                    if !s.is_integer() {
                        return Err(Failure::new(
                            "invalid_params",
                            "m0 requires an integer size s",
                            2,
                        ));
                    }
                    let s_int = u64::try_from(s.to_integer()).map_err(|_| {
                        Failure::new("invalid_params", "s out of range", 2)
                    })?;
                    (m0_formula(n, k, s_int)?, regime(n, k, 0, &s, &s0))
                }
            };
            println!(
                "{{\"value\":{},\"regime\":{}}}",
                serde_json::to_string(&bigint_json(&value)).expect("value serializes"),
                serde_json::to_string(&regime_record).expect("regime serializes"),
            );
            Ok(())
        }
        Command::Oracle { n, k, d, s, mode } => {
            let s = parse_rat_arg("s", &s)?;
            let query = ThresholdQuery { n, k, d, s, mode: mode.into() };
            let report = brute_force_threshold(&query, limits)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(())
        }
        Command::Scan { input, output, csv } => {
            let grid: Grid = serde_json::from_str(&read_source(&input)?)
                .map_err(|e| Failure::new("parse", format!("grid manifest: {e}"), 2))?;
            let reports = scan(&grid, limits);
            let mut jsonl = String::new();
            for report in &reports {
                jsonl.push_str(&serde_json::to_string(report).expect("report serializes"));
                jsonl.push('\n');
            }
            write_sink(&output, &jsonl)?;
            if let Some(path) = csv {
                let mut table = String::from(CSV_HEADER);
                table.push('\n');
                for report in &reports {
                    table.push_str(&csv_row(report));
                    table.push('\n');
                }
                write_sink(&path, &table)?;
            }
            Ok(())
        }
    }
}
