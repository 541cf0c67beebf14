use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cclique::graph::oracle::{brute_alpha, brute_beta, verify_maximal_matching, verify_mis};
use cclique::graph::{read_edge_list, write_edge_list, Graph, Matching, VertexSet};
use cclique::harness::{
    emit, generate, run_experiment, run_trial, write_csv, write_json, Algorithm, ExperimentConfig,
    Format, GeneratorSpec, TrialRecord,
};
use cclique::Seed;

#[derive(Parser)]
#[command(name = "cclique", version, about = "Congested Clique MIS / maximal matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// First seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of trials.
    #[arg(long)]
    reps: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Per-node message budget constant c_L.
    #[arg(long = "budget-cl")]
    budget_cl: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// Generator, e.g. "gnp n=1000 d=16".
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one trial and print its record.
    Solve {
        /// Algorithm name, e.g. mis-avg-degree.
        algorithm: String,
        /// Edge-list file to solve.
        #[arg(long, conflicts_with = "generator")]
        graph: Option<PathBuf>,
        /// Generator to draw the graph from instead of a file.
        #[arg(long = "gen")]
        generator: Option<String>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        rule: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a batch described by a key = value config file.
    Bench {
        config: PathBuf,
        /// Extra key=value overrides.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in check suite over small instances.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Exact independence numbers and solution verification on a small graph.
    Oracle {
        graph: PathBuf,
        /// File with one vertex id per line to verify as an MIS.
        #[arg(long)]
        mis: Option<PathBuf>,
        /// File with one "u v" pair per line to verify as a maximal matching.
        #[arg(long)]
        matching: Option<PathBuf>,
    },
}

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Gen { spec, seed, out } => {
            let spec: GeneratorSpec = spec.parse()?;
            let (g, _) = generate(&spec, Seed(seed))?;
            write_edge_list(&g, output(out.as_deref())?)?;
            Ok(true)
        }
        Command::Solve {
            algorithm,
            graph,
            generator,
            mu,
            rule,
            common,
        } => {
            let spec = match (graph, generator) {
                (Some(path), None) => GeneratorSpec::File { path },
                (None, Some(text)) => text.parse()?,
                _ => return Err("give exactly one of --graph or --gen".into()),
            };
            let mut cfg = ExperimentConfig::new(spec, algorithm.parse()?);
            if let Some(mu) = mu {
                cfg.set("mu", &mu.to_string())?;
            }
            if let Some(rule) = rule {
                cfg.set("rule", &rule)?;
            }
            cfg.format = Format::Json;
            apply_common(&mut cfg, &common)?;
            cfg.validate()?;
            let records: Vec<TrialRecord> = cfg.seeds().map(|s| run_trial(&cfg, s)).collect::<std::result::Result<_, _>>()?;
            write_records(&records, cfg.format, cfg.out.as_deref())?;
            Ok(records.iter().all(|r| r.valid))
        }
        Command::Bench {
            config,
            overrides,
            common,
        } => {
            let text = std::fs::read_to_string(&config)?;
            let mut cfg = ExperimentConfig::parse(&text)?;
            for o in &overrides {
                let (k, v) = o.split_once('=').ok_or_else(|| format!("override `{o}` is not key=value"))?;
                cfg.set(k.trim(), v.trim())?;
            }
            apply_common(&mut cfg, &common)?;
            cfg.validate()?;
            let ex = run_experiment(&cfg)?;
            write_records(&ex.records, cfg.format, cfg.out.as_deref())?;
            eprintln!("{}", serde_json::to_string_pretty(&ex.summary)?);
            Ok(ex.ok())
        }
        Command::Check { common } => check_suite(&common),
        Command::Oracle { graph, mis, matching } => oracle(&graph, mis.as_deref(), matching.as_deref()),
    }
}

fn apply_common(cfg: &mut ExperimentConfig, c: &Common) -> Result<()> {
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(r) = c.reps {
        cfg.reps = r;
    }
    if let Some(o) = &c.out {
        cfg.out = Some(o.clone());
    }
    if let Some(f) = &c.format {
        cfg.format = f.parse()?;
    }
    if let Some(b) = c.budget_cl {
        cfg.c_l = b;
    }
    Ok(())
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_records(records: &[TrialRecord], format: Format, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => emit(records, format, path)?,
        None => match format {
            Format::Csv => write_csv(records, io::stdout().lock())?,
            Format::Json => write_json(records, io::stdout().lock())?,
        },
    }
    Ok(())
}

/// Small batches over every generator family and algorithm; prints one
/// line per batch and fails if any output is invalid or a threshold is
/// missed.
fn check_suite(common: &Common) -> Result<bool> {
    let generators = [
        "gnp n=400 d=12",
        "gnp n=400 d=0.5",
        "line-gnp n=60 d=6",
        "interval count=300 span=40",
        "cliques sizes=20/20/10/5 cross=0.05",
        "star-forest stars=10 leaves=6",
        "hard k=64 levels=3 b=2 variant=mis",
        "hard k=16 levels=2 b=4 variant=mm",
        "petersen",
    ];
    let mut all = Vec::new();
    let mut ok = true;
    for gen in generators {
        for alg in Algorithm::ALL {
            let mut cfg = ExperimentConfig::new(gen.parse()?, alg);
            cfg.reps = 5;
            cfg.checks = vec!["admissible".into(), "trace-monotone".into(), "cluster-independence".into()];
            apply_common(&mut cfg, common)?;
            cfg.out = None;
            cfg.validate()?;
            let ex = run_experiment(&cfg)?;
            let pass = ex.ok() && ex.summary.thresholds_met;
            ok &= pass;
            eprintln!(
                "{} {:<18} {:<40} trials={} median_rounds={}",
                if pass { "PASS" } else { "FAIL" },
                alg.name(),
                gen,
                ex.summary.trials,
                ex.summary.median_rounds
            );
            all.extend(ex.records);
        }
    }
    if let Some(path) = &common.out {
        let format = match &common.format {
            Some(f) => f.parse()?,
            None => Format::Csv,
        };
        emit(&all, format, path)?;
    }
    Ok(ok)
}

fn oracle(graph: &Path, mis: Option<&Path>, matching: Option<&Path>) -> Result<bool> {
    let g = read_edge_list(BufReader::new(File::open(graph)?))?;
    let mut report = serde_json::Map::new();
    report.insert("n".into(), g.n().into());
    report.insert("m".into(), g.m().into());
    for (key, value) in [("alpha", brute_alpha(&g)), ("beta", brute_beta(&g))] {
        match value {
            Ok(v) => report.insert(key.into(), v.into()),
            Err(e) => report.insert(key.into(), e.to_string().into()),
        };
    }
    let mut ok = true;
    if let Some(p) = mis {
        let s = read_vertices(&g, p)?;
        let valid = verify_mis(&g, &s);
        ok &= valid;
        report.insert("mis_valid".into(), valid.into());
    }
    if let Some(p) = matching {
        let valid = read_pairs(&g, p)?.is_some_and(|m| verify_maximal_matching(&g, &m));
        ok &= valid;
        report.insert("matching_valid".into(), valid.into());
    }
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ok)
}

fn read_vertices(g: &Graph, path: &Path) -> Result<VertexSet> {
    let mut ids = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() {
            ids.push(t.parse::<u32>()?);
        }
    }
    Ok(VertexSet::new(g.n(), ids)?)
}

/// Reads a pair list; `None` when the pairs are not a matching of `g`.
fn read_pairs(g: &Graph, path: &Path) -> Result<Option<Matching>> {
    let mut pairs = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        let mut it = line.split_whitespace();
        if let (Some(a), Some(b)) = (it.next(), it.next()) {
            pairs.push((a.parse::<u32>()?, b.parse::<u32>()?));
        }
    }
    Ok(Matching::new(g, pairs).ok())
}
