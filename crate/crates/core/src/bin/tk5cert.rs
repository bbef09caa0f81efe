//! Command-line front end: certify graphs, re-verify certificates, generate
//! corpus graphs, and run property sweeps.
//!
//! Exit codes: 0 success, 1 verification or input failure, 2 budget
//! exhausted, 3 theorem-violation diagnostic (a 5-connected nonplanar graph
//! the TK5 search could not handle — a bug report, not a counterexample).

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use tk5cert::certify::{certify, verify_certificate, Certificate, CertificatePayload};
use tk5cert::corpus::{self, CorpusSpec, Family, Property};
use tk5cert::format;
use tk5cert::graph::Graph;
use tk5cert::{Budget, Error};

#[derive(Parser)]
#[command(
    name = "tk5cert",
    version,
    about = "Certify graphs: TK5 subdivision, planar embedding, or small cut"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    /// graph6 line format
    G6,
    /// one "u v" pair per line
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    G6,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Produce a certificate for the graph in a file.
    Certify {
        /// Input graph file.
        path: PathBuf,
        /// Input format; guessed from the content when omitted.
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        /// Write the full certificate as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Skip the cut and planarity stages; accept only a TK5 witness.
        #[arg(long)]
        force_tk5: bool,
        /// Search-step budget (nodes explored) before giving up.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Re-check a certificate JSON against a graph, sharing no search state.
    Verify {
        /// Input graph file.
        graph: PathBuf,
        /// Certificate JSON produced by `certify --json`.
        certificate: PathBuf,
        /// Input format; guessed from the content when omitted.
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
    },
    /// Deterministically generate a corpus graph from a seed.
    Gen {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Run property checks over a JSON corpus file.
    Sweep {
        /// JSON file holding an array of corpus specs.
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated properties: dichotomy, theorem_1_1, lemma_4_1.
        #[arg(long, value_delimiter = ',', value_parser = parse_property)]
        props: Vec<Property>,
        /// Search-step budget per check.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the full report as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenCommon {
    /// Seed for the generator's random stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "edgelist")]
    format: OutputFormat,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Complete graph K_n.
    Complete {
        n: usize,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Complete bipartite graph K_{a,b}.
    CompleteBipartite {
        a: usize,
        b: usize,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Circulant graph on n vertices with the given jumps.
    Circulant {
        n: usize,
        #[arg(required = true)]
        jumps: Vec<usize>,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Random d-regular graph (configuration model).
    RandomRegular {
        n: usize,
        d: usize,
        #[command(flatten)]
        common: GenCommon,
    },
    /// Erdős–Rényi G(n, p).
    RandomGnp {
        n: usize,
        p: f64,
        #[command(flatten)]
        common: GenCommon,
    },
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse::<Property>().map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded | Error::TooLarge { .. } => 2,
        Error::TheoremViolation(_) => 3,
        _ => 1,
    }
}

fn read_graph(path: &Path, fmt: Option<InputFormat>) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match fmt {
        Some(InputFormat::G6) => format::parse_graph6(text.trim()),
        Some(InputFormat::Edgelist) => format::parse_edge_list(&text),
        None => format::parse_auto(&text),
    }
}

fn budget_from(steps: Option<u64>) -> Budget {
    match steps {
        Some(s) => Budget::with_steps(s),
        None => Budget::default(),
    }
}

fn describe(payload: &CertificatePayload) -> String {
    match payload {
        CertificatePayload::Tk5(w) => format!(
            "TK5 subdivision with branch vertices {:?} and 10 internally disjoint paths",
            w.branch
        ),
        CertificatePayload::Planar(emb) => {
            format!("planar embedding with {} faces", emb.faces().len())
        }
        CertificatePayload::SmallCut(cut) => {
            if cut.vertices.is_empty() {
                "empty cut: the graph is disconnected".into()
            } else {
                format!("vertex cut of order {}: {:?}", cut.order(), cut.vertices)
            }
        }
    }
}

fn run_certify(
    path: &Path,
    fmt: Option<InputFormat>,
    json: Option<&Path>,
    force_tk5: bool,
    budget: Option<u64>,
) -> Result<i32, Error> {
    let g = read_graph(path, fmt)?;
    let cert = certify(&g, force_tk5, budget_from(budget))?;
    if !verify_certificate(&g, &cert)? {
        eprintln!("internal error: certificate failed self-verification");
        return Ok(1);
    }
    println!(
        "{}: n={} m={} -> {}",
        path.display(),
        g.n(),
        g.edge_count(),
        describe(&cert.payload)
    );
    println!("verified; input sha256 {}", cert.meta.input_sha256);
    if let Some(out) = json {
        let text = serde_json::to_string_pretty(&cert)
            .map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(out, text).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
        println!("certificate written to {}", out.display());
    }
    Ok(0)
}

fn run_verify(graph: &Path, certificate: &Path, fmt: Option<InputFormat>) -> Result<i32, Error> {
    let g = read_graph(graph, fmt)?;
    let text = std::fs::read_to_string(certificate)
        .map_err(|e| Error::Io(format!("{}: {e}", certificate.display())))?;
    let cert: Certificate =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if verify_certificate(&g, &cert)? {
        println!("valid: {}", describe(&cert.payload));
        Ok(0)
    } else {
        println!("INVALID: certificate does not verify against this graph");
        Ok(1)
    }
}

fn run_gen(cmd: FamilyCmd) -> Result<i32, Error> {
    let (family, common) = match cmd {
        FamilyCmd::Complete { n, common } => (Family::Complete { n }, common),
        FamilyCmd::CompleteBipartite { a, b, common } => {
            (Family::CompleteBipartite { a, b }, common)
        }
        FamilyCmd::Circulant { n, jumps, common } => (Family::Circulant { n, jumps }, common),
        FamilyCmd::RandomRegular { n, d, common } => (Family::RandomRegular { n, d }, common),
        FamilyCmd::RandomGnp { n, p, common } => (Family::RandomGnp { n, p }, common),
    };
    let spec = CorpusSpec {
        family,
        seed: common.seed,
    };
    let g = corpus::generate(&spec)?;
    let payload = match common.format {
        OutputFormat::G6 => format!("{}\n", format::write_graph6(&g)),
        OutputFormat::Edgelist => format::write_edge_list(&g),
    };
    match common.out {
        Some(out) => {
            std::fs::write(&out, payload)
                .map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            println!(
                "wrote {}: n={} m={} to {}",
                spec.label(),
                g.n(),
                g.edge_count(),
                out.display()
            );
        }
        None => print!("{payload}"),
    }
    Ok(0)
}

fn run_sweep(
    corpus_path: &Path,
    props: &[Property],
    budget: Option<u64>,
    json: Option<&Path>,
) -> Result<i32, Error> {
    let text = std::fs::read_to_string(corpus_path)
        .map_err(|e| Error::Io(format!("{}: {e}", corpus_path.display())))?;
    let specs: Vec<CorpusSpec> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let props = if props.is_empty() {
        vec![Property::Dichotomy, Property::Theorem11, Property::Lemma41]
    } else {
        props.to_vec()
    };
    let report = corpus::sweep(&specs, &props, budget_from(budget));
    for entry in &report.entries {
        if let Some(err) = &entry.error {
            println!("{}: FAIL — generation: {err}", entry.label);
            continue;
        }
        if entry.passed() {
            let summary: Vec<String> = entry
                .outcomes
                .iter()
                .map(|o| format!("{} ok", o.property))
                .collect();
            println!(
                "{}: pass ({}) [{} ms]",
                entry.label,
                summary.join(", "),
                entry.elapsed_ms
            );
        } else {
            for o in entry.outcomes.iter().filter(|o| !o.pass) {
                println!("{}: FAIL — {}: {}", entry.label, o.property, o.detail);
            }
        }
    }
    println!(
        "{} graphs, {} failure{}",
        report.entries.len(),
        report.failures,
        if report.failures == 1 { "" } else { "s" }
    );
    if let Some(out) = json {
        let text =
            serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(out, text).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Certify {
            path,
            format,
            json,
            force_tk5,
            budget,
        } => run_certify(&path, format, json.as_deref(), force_tk5, budget),
        Command::Verify {
            graph,
            certificate,
            format,
        } => run_verify(&graph, &certificate, format),
        Command::Gen { family } => run_gen(family),
        Command::Sweep {
            corpus,
            props,
            budget,
            json,
        } => run_sweep(&corpus, &props, budget, json.as_deref()),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}
