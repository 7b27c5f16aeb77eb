use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use hexagram_algebra::Prime;
use hexagram_core::cache::{CacheError, ResultCache};
use hexagram_core::labels::{enumerate_orbits, PascalLabel, PascalSymbol, Triple};
use hexagram_core::pipeline::{
    brute_force_count, compute_four, intersection_number_with, solve_points, stabilizer_action, worked_instance,
    ComputePath, Consensus, IntersectionResult, PipelineError, TrialRecord,
};
use hexagram_core::reference::MANDATORY;
use hexagram_core::report::{
    default_primes, orbit_listing, render_records, render_table, solutions_text, OutputFormat, ReportRow, RunConfig,
};
use hexagram_core::svg::{render_figure, DEFAULT_PARAMS};
use hexagram_core::theorems::{fiber_degree_retrying, run_suite, Pattern};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "hexagram", version, about = "Intersection numbers of pascal varieties on a conic over prime fields")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 77 orbit representatives with orbit sizes and stabilizers.
    Orbits {
        #[arg(long, default_value = "table")]
        format: OutputFormat,
    },
    /// Intersection number of one triple, e.g. "(1,23),(4,23),(5,23)".
    Count {
        triple: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute the table of intersection numbers.
    Table {
        #[command(flatten)]
        run: RunArgs,
        /// Only these 1-based rows, e.g. "1,2,10-12".
        #[arg(long)]
        rows: Option<String>,
        /// Only the ten triples checked in every test run.
        #[arg(long, conflicts_with = "rows")]
        mandatory: bool,
    },
    /// Replay the hand-worked instance over F_101.
    Example {
        /// Also scan all hexads over F_101 (slow).
        #[arg(long)]
        brute: bool,
    },
    /// Check the Pascal, Steiner, Kirkman and AE ∩ BF concurrences on random hexads.
    Theorems {
        #[arg(long, value_delimiter = ',', default_values_t = default_primes())]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        hexads: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Fiber degrees of the curves with concurrent prescribed lines.
    Fiber {
        /// steiner, kirkman, trivial or all.
        #[arg(long, default_value = "all")]
        pattern: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![32003u64, 43051])]
        primes: Vec<u64>,
        /// Letters to fix, e.g. "a,d".
        #[arg(long, value_delimiter = ',', default_values_t = vec!['a', 'd'])]
        letters: Vec<char>,
        /// Random configurations per prime and letter.
        #[arg(long, default_value_t = 2)]
        draws: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        retries: u32,
    },
    /// Draw a real hexad on the conic with some of its pascals as SVG.
    Figure {
        /// Six real conic parameters.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        params: Option<Vec<f64>>,
        /// Pascals as labels such as "k(1,23)" or arrays such as "ABC/FED".
        #[arg(value_delimiter = ';')]
        pascals: Vec<String>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_delimiter = ',', default_values_t = default_primes())]
    primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Fresh line draws allowed per trial after a non-generic outcome.
    #[arg(long, default_value_t = 5)]
    retries: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// six, four or both.
    #[arg(long, default_value = "six")]
    path: ComputePath,
    /// JSONL file of trial records, read and extended.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value = "table")]
    format: OutputFormat,
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new(&self.primes, self.trials, self.retries, self.seed)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        cfg.path = self.path;
        cfg.format = self.format;
        cfg.cache = self.cache.clone();
        Ok(cfg)
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("trials disagree: {0}")]
    Disagreement(String),
    #[error("no zero-dimensional outcome: {0}")]
    NonGeneric(String),
    #[error("values differ from the published table: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Disagreement(_) => 3,
            CliError::NonGeneric(_) => 4,
            CliError::Cache(_) => 5,
            CliError::Mismatch(_) => 6,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut output = String::new();
    let result = run(&cli.command, &mut output);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output).map_err(CliError::from),
        None => {
            print!("{output}");
            Ok(())
        }
    };
    match result.and(written) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: &Command, out: &mut String) -> Result<(), CliError> {
    match command {
        Command::Orbits { format } => {
            match format {
                OutputFormat::Table => out.push_str(&orbit_listing()),
                OutputFormat::Records => {
                    for o in enumerate_orbits() {
                        let stab: Vec<String> = o.stabilizer.iter().map(|g| g.digits().to_string()).collect();
                        let rec = serde_json::json!({
                            "index": o.index,
                            "triple": o.representative.to_string(),
                            "size": o.size,
                            "stabilizer": o.stabilizer_class().to_string(),
                            "elements": stab,
                        });
                        out.push_str(&format!("{rec}\n"));
                    }
                }
            }
            Ok(())
        }
        Command::Count { triple, run } => {
            let triple: Triple = triple.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let cfg = run.config()?;
            let cache = open_cache(&cfg)?;
            let result = count_with_cache(&triple, &cfg, cache.as_ref())?;
            match cfg.format {
                OutputFormat::Table => {
                    out.push_str(&format!("{triple}: {}\n", result.consensus));
                    for r in &result.trials {
                        let count = r.count.map_or("-".into(), |c| c.to_string());
                        out.push_str(&format!("  p={} seed={} count={count} redraws={} {} ms\n", r.prime, r.seed, r.retries, r.millis));
                    }
                    for f in &result.failures {
                        out.push_str(&format!("  failed: {f}\n"));
                    }
                }
                OutputFormat::Records => out.push_str(&hexagram_core::cache::to_jsonl(&result.trials)),
            }
            verdict(&[result]).map(|_| ())
        }
        Command::Table { run, rows, mandatory } => {
            let cfg = run.config()?;
            let cache = open_cache(&cfg)?;
            let orbits = enumerate_orbits();
            let selected: Vec<usize> = if *mandatory {
                let wanted: Vec<Triple> = MANDATORY.iter().map(|s| s.parse().unwrap()).collect();
                orbits.iter().filter(|o| wanted.contains(&o.representative)).map(|o| o.index).collect()
            } else if let Some(spec) = rows {
                parse_rows(spec, orbits.len())?
            } else {
                (1..=orbits.len()).collect()
            };
            let mut results = Vec::new();
            let mut report = Vec::new();
            for &i in &selected {
                let orbit = &orbits[i - 1];
                let result = count_with_cache(&orbit.representative, &cfg, cache.as_ref())?;
                log::info!("row {i}: {}", result.consensus);
                report.push(ReportRow::new(orbit, &result));
                results.push(result);
            }
            match cfg.format {
                OutputFormat::Table => out.push_str(&render_table(&report)),
                OutputFormat::Records => {
                    let records: Vec<TrialRecord> = results.iter().flat_map(|r| r.trials.clone()).collect();
                    out.push_str(&render_records(&records, &report));
                }
            }
            verdict(&results)?;
            let off: Vec<String> = report.iter().filter(|r| !r.matches()).map(|r| format!("row {}", r.index)).collect();
            if off.is_empty() {
                Ok(())
            } else {
                Err(CliError::Mismatch(off.join(", ")))
            }
        }
        Command::Example { brute } => {
            let inst = worked_instance();
            let sol = solve_points(&inst).map_err(failed)?;
            let action = stabilizer_action(&sol).map_err(failed)?;
            out.push_str(&format!("labels {}; lines ", inst.triple()));
            let lines: Vec<String> = inst.lines.iter().map(|l| l.to_string()).collect();
            out.push_str(&lines.join(", "));
            out.push('\n');
            out.push_str(&solutions_text(&sol, &action));
            let group: Vec<String> = action.group.iter().map(|g| g.digits().to_string()).collect();
            out.push_str(&format!("stabilizer {{{}}}; orbit sizes {:?}\n", group.join(", "), action.orbit_sizes));
            let four = compute_four(&inst, 0).map_err(failed)?;
            out.push_str(&format!("four-variable count {}\n", four.count.map_or("-".into(), |c| c.to_string())));
            if *brute {
                let bf = brute_force_count(&inst).map_err(failed)?;
                out.push_str(&format!("brute force over F_101: {} rational hexads\n", bf.hexads.len()));
                for h in &bf.hexads {
                    out.push_str(&format!("  {h}\n"));
                }
                if bf.hexads != sol.rational_hexads() {
                    return Err(CliError::Failed("brute force and the algebraic solution differ".into()));
                }
            }
            Ok(())
        }
        Command::Theorems { primes, hexads, seed } => {
            for &p in primes {
                let prime = Prime::new(p).map_err(|_| CliError::Usage(format!("{p} is not a prime")))?;
                let s = run_suite(prime, *hexads, *seed).map_err(|e| CliError::Failed(e.to_string()))?;
                out.push_str(&format!(
                    "p={}: {} hexads, {} pascals collinear, {} Steiner and {} Kirkman points, {} AE∩BF concurrences, \
                     60 distinct pascals in {} hexads, Kirkman off Steiner in {} hexads\n",
                    s.prime, s.hexads, s.pascals, s.steiner, s.kirkman, s.trivial, s.distinct_pascals, s.kirkman_off_steiner
                ));
            }
            Ok(())
        }
        Command::Fiber { pattern, primes, letters, draws, seed, retries } => {
            let patterns: Vec<Pattern> = if pattern == "all" {
                vec![Pattern::Steiner, Pattern::Kirkman, Pattern::Trivial]
            } else {
                vec![pattern.parse().map_err(CliError::Usage)?]
            };
            let letters: Vec<u8> = letters
                .iter()
                .map(|c| match c.to_ascii_lowercase() {
                    l @ 'a'..='f' => Ok(l as u8 - b'a'),
                    _ => Err(CliError::Usage(format!("{c} is not a letter a-f"))),
                })
                .collect::<Result<_, _>>()?;
            for pat in patterns {
                let mut degrees = Vec::new();
                for &p in primes {
                    let prime = Prime::new(p).map_err(|_| CliError::Usage(format!("{p} is not a prime")))?;
                    for &l in &letters {
                        for d in 0..*draws {
                            let s = hexagram_core::pipeline::derive_seed(*seed, d);
                            let deg = fiber_degree_retrying(pat, prime, l, s, *retries).map_err(|e| CliError::Failed(e.to_string()))?;
                            degrees.push(deg);
                        }
                    }
                }
                let stable = degrees.windows(2).all(|w| w[0] == w[1]);
                out.push_str(&format!(
                    "{pat:?} {}: fiber degrees {degrees:?}{}\n",
                    pat.triple(),
                    if stable { "" } else { " (unstable)" }
                ));
            }
            Ok(())
        }
        Command::Figure { params, pascals } => {
            let params: [f64; 6] = match params {
                None => DEFAULT_PARAMS,
                Some(v) => v.as_slice().try_into().map_err(|_| CliError::Usage("--params needs six numbers".into()))?,
            };
            let symbols: Vec<PascalSymbol> = if pascals.is_empty() {
                vec![PascalSymbol::standard()]
            } else {
                pascals.iter().map(|s| parse_pascal(s)).collect::<Result<_, _>>()?
            };
            out.push_str(&render_figure(&params, &symbols).map_err(|e| CliError::Usage(e.to_string()))?);
            Ok(())
        }
    }
}

fn failed(e: PipelineError) -> CliError {
    CliError::Failed(e.to_string())
}

fn parse_pascal(s: &str) -> Result<PascalSymbol, CliError> {
    if let Ok(l) = s.parse::<PascalLabel>() {
        return Ok(l.to_symbol());
    }
    s.parse::<PascalSymbol>().map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_rows(spec: &str, max: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad row list {spec:?}"));
    let mut rows = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let v: usize = part.parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo == 0 || hi > max || lo > hi {
            return Err(bad());
        }
        rows.extend(lo..=hi);
    }
    rows.sort_unstable();
    rows.dedup();
    Ok(rows)
}

fn open_cache(cfg: &RunConfig) -> Result<Option<ResultCache>, CliError> {
    Ok(cfg.cache.as_ref().map(ResultCache::open).transpose()?)
}

fn count_with_cache(triple: &Triple, cfg: &RunConfig, cache: Option<&ResultCache>) -> Result<IntersectionResult, CliError> {
    let known = cache.map(|c| c.records_for(triple)).unwrap_or_default();
    let write_error: Mutex<Option<CacheError>> = Mutex::new(None);
    let result = intersection_number_with(triple, &cfg.pipeline(), &known, &|rec| {
        if let Some(c) = cache {
            if let Err(e) = c.insert(rec) {
                write_error.lock().unwrap().get_or_insert(e);
            }
        }
    });
    match write_error.into_inner().unwrap() {
        Some(e) => Err(e.into()),
        None => Ok(result),
    }
}

/// Disagreement outranks missing evidence.
fn verdict(results: &[IntersectionResult]) -> Result<(), CliError> {
    let disagree: Vec<String> = results
        .iter()
        .filter(|r| matches!(r.consensus, Consensus::Disagreement(_)))
        .map(|r| format!("{}: {}", r.triple, r.consensus))
        .collect();
    if !disagree.is_empty() {
        return Err(CliError::Disagreement(disagree.join("; ")));
    }
    let missing: Vec<String> = results
        .iter()
        .filter(|r| r.consensus == Consensus::Insufficient)
        .map(|r| {
            let why: Vec<String> = r.failures.iter().map(|f| f.to_string()).collect();
            if why.is_empty() {
                format!("{} (fewer than two primes with a count)", r.triple)
            } else {
                format!("{} ({})", r.triple, why.join("; "))
            }
        })
        .collect();
    if !missing.is_empty() {
        return Err(CliError::NonGeneric(missing.join("; ")));
    }
    Ok(())
}
