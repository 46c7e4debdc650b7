//! `c4free`: construct, verify, audit and enumerate C4-free graphs.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 a construction
//! violated its own structural guarantees.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use c4free::audit::{audit_graph_with, ClaimsRoot};
use c4free::brown::{build_brown, verify_brown};
use c4free::constructions::{
    build_figure1, build_figure1b, build_h, chain_bridge, chain_identify, derive_gadget, gadgets_to_asset,
    ConstructionError, Family,
};
use c4free::enumerate::{generate, EnumError, GenSpec};
use c4free::graph::codec::{decode_graph6, decode_roles, encode_graph6, encode_roles, to_dot};
use c4free::graph::{diameter, edge_connectivity, is_c4_free, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "c4free", version, about = "C4-free graphs with large diameter")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print a JSON header describing it.
    Construct {
        #[command(subcommand)]
        family: Construct,
    },
    /// Check the defining properties of a construction.
    Verify {
        #[command(subcommand)]
        target: Verify,
    },
    /// Audit a graph6 file: diameter bounds and BFS-layer claims.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
        /// Role sidecar (`role=vertex_id` lines).
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Also compute vertex-connectivity.
        #[arg(long)]
        kappa: bool,
        /// `auto`, a vertex ID, or a role name from --labels.
        #[arg(long, default_value = "auto")]
        claims_root: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Generate connected C4-free graphs, one per isomorphism class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        min_lambda: usize,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        /// Worker threads; 0 picks one per core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        time_limit_secs: Option<u64>,
        /// graph6 output, one graph per line; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rerun the gadget search and print the gadget asset.
    DeriveGadgets {
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Output {
    /// graph6 output; roles go to the same path with a `.roles` extension.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Bridge,
    Identify,
}

#[derive(Subcommand)]
enum Construct {
    Brown {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        output: Output,
    },
    H {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        output: Output,
    },
    Chain {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[command(flatten)]
        output: Output,
    },
    Figure1 {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    Figure1b {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Verify {
    Brown {
        #[arg(long)]
        q: u32,
    },
}

enum Failure {
    Check(String),
    Usage(String),
    Bug(String),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::InvalidParameter(_) => Failure::Usage(e.to_string()),
            ConstructionError::StructureViolation(_) => Failure::Bug(e.to_string()),
            ConstructionError::GadgetUnavailable(_) => Failure::Check(e.to_string()),
        }
    }
}

fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(g: &Graph, name: &str, header: serde_json::Value, output: &Output) -> Result<(), Failure> {
    let mut header = header;
    header["n"] = json!(g.n());
    header["m"] = json!(g.m());
    header["delta"] = json!(g.min_degree());
    header["diameter"] = json!(diameter(g).map_err(|e| Failure::Bug(e.to_string()))?);
    header["lambda"] = json!(edge_connectivity(g).map_err(|e| Failure::Bug(e.to_string()))?.value);
    header["c4_free"] = json!(is_c4_free(g).free);
    if let Some(path) = &output.out {
        write_atomic(path, &(encode_graph6(g) + "\n"))?;
        write_atomic(&path.with_extension("roles"), &encode_roles(g.roles()))?;
    }
    if let Some(path) = &output.dot {
        write_atomic(path, &to_dot(g, name))?;
    }
    println!("{}", serde_json::to_string_pretty(&header).expect("serializable"));
    Ok(())
}

fn construct(family: Construct) -> Result<(), Failure> {
    match family {
        Construct::Brown { q, output } => {
            let b = build_brown(q).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut g = b.graph;
            for &w in &b.quadric {
                g.roles_mut().add("W", w);
            }
            emit(&g, "brown", json!({"family": "brown", "q": q}), &output)
        }
        Construct::H { q, output } => {
            let h = build_h(q)?;
            emit(&h.graph, "h", json!({"family": "h", "q": q}), &output)
        }
        Construct::Chain { q, k, mode, output } => {
            let (c, mode) = match mode {
                Mode::Bridge => (chain_bridge(q, k)?, "bridge"),
                Mode::Identify => (chain_identify(q, k)?, "identify"),
            };
            emit(&c.graph, "chain", json!({"family": "chain", "q": q, "k": k, "mode": mode}), &output)
        }
        Construct::Figure1 { k, output } => {
            let g = build_figure1(k)?;
            emit(&g, "figure1", json!({"family": "figure1", "k": k}), &output)
        }
        Construct::Figure1b { k, output } => {
            let f = build_figure1b(k)?;
            let header = json!({"family": "figure1b", "k": k, "cap_order": f.cap_order});
            emit(&f.graph, "figure1b", header, &output)
        }
    }
}

fn verify(target: Verify) -> Result<(), Failure> {
    match target {
        Verify::Brown { q } => {
            let b = build_brown(q).map_err(|e| Failure::Usage(e.to_string()))?;
            let cert = verify_brown(&b);
            for check in &cert.checks {
                println!("{check}");
            }
            if cert.all_passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("B({q}) failed a property check")))
            }
        }
    }
}

fn audit(input: &Path, labels: Option<&Path>, kappa: bool, root: &str, json_out: Option<&Path>) -> Result<(), Failure> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let mut g = decode_graph6(line).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    if let Some(path) = labels {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let roles = decode_roles(&text, g.n()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        *g.roles_mut() = roles;
    }
    let root = match root {
        "auto" => ClaimsRoot::Auto,
        s => match s.parse::<usize>() {
            Ok(v) if v < g.n() => ClaimsRoot::Vertex(v),
            Ok(v) => return Err(Failure::Usage(format!("claims root {v} is not a vertex"))),
            Err(_) => ClaimsRoot::Vertex(
                g.roles()
                    .get(s)
                    .ok_or_else(|| Failure::Usage(format!("unknown claims root {s:?}")))?,
            ),
        },
    };
    let id = input.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    let report = audit_graph_with(&g, &id, kappa, root).map_err(|e| Failure::Usage(e.to_string()))?;
    let body = report.to_json() + "\n";
    match json_out {
        Some(path) => write_atomic(path, &body)?,
        None => print!("{body}"),
    }
    if report.has_bug() {
        Err(Failure::Check(format!("{id}: a proven bound or claim is violated")))
    } else if !report.c4_free {
        Err(Failure::Check(format!("{id}: not C4-free, witness {:?}", report.certificates.c4_witness)))
    } else {
        Ok(())
    }
}

fn enumerate(spec: GenSpec, out: Option<&Path>) -> Result<(), Failure> {
    let mut lines = String::new();
    let summary = generate(&spec, |g| {
        lines.push_str(&encode_graph6(g));
        lines.push('\n');
    })
    .map_err(|e| match e {
        EnumError::InvalidSpec(_) => Failure::Usage(e.to_string()),
        EnumError::BudgetExceeded { .. } => Failure::Check(e.to_string()),
    })?;
    match out {
        Some(path) => write_atomic(path, &lines)?,
        None => print!("{lines}"),
    }
    eprintln!("{}", serde_json::to_string(&summary).expect("serializable"));
    Ok(())
}

fn derive_gadgets(budget: u64, out: Option<&Path>) -> Result<(), Failure> {
    let mut gadgets = Vec::new();
    for family in Family::ALL {
        let (g, stats) = derive_gadget(family, budget)?;
        eprintln!("{family}: {} nodes, {} leaves", stats.nodes, stats.leaves);
        gadgets.push(g);
    }
    let text = gadgets_to_asset(&gadgets);
    match out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { family } => construct(family),
        Command::Verify { target } => verify(target),
        Command::Audit {
            input,
            labels,
            kappa,
            claims_root,
            json,
        } => audit(&input, labels.as_deref(), kappa, &claims_root, json.as_deref()),
        Command::Enumerate {
            n,
            min_lambda,
            min_degree,
            workers,
            max_nodes,
            time_limit_secs,
            out,
        } => {
            let spec = GenSpec {
                n_max: n,
                min_degree,
                min_lambda,
                workers,
                max_nodes,
                time_limit: time_limit_secs.map(Duration::from_secs),
            };
            enumerate(spec, out.as_deref())
        }
        Command::DeriveGadgets { budget, out } => derive_gadgets(budget, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bug(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
