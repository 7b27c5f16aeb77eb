//! Run configuration, report rows and the text renderings used by the CLI.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use hexagram_algebra::{linear_text, Prime, UniPoly};
use serde::Serialize;
use thiserror::Error;

use crate::conic::letter_name;
use crate::labels::{enumerate_orbits, Orbit, StabilizerClass};
use crate::pipeline::{
    ComputePath, Consensus, IntersectionResult, PipelineConfig, Solutions, StabilizerAction, TrialRecord, DEFAULT_PRIMES,
};
use crate::reference::{known_value, Shade};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("at least one prime is required")]
    NoPrimes,
    #[error("trials must be at least 1")]
    NoTrials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Records,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "records" => Ok(OutputFormat::Records),
            _ => Err(format!("unknown format {s:?}; expected table or records")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub primes: Vec<Prime>,
    pub trials: usize,
    pub retries: u32,
    pub seed: u64,
    pub path: ComputePath,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = PipelineConfig::default();
        RunConfig {
            primes: p.primes,
            trials: p.trials,
            retries: p.retries,
            seed: p.seed,
            path: p.path,
            format: OutputFormat::Table,
            cache: None,
        }
    }
}

impl RunConfig {
    pub fn new(primes: &[u64], trials: usize, retries: u32, seed: u64) -> Result<Self, ConfigError> {
        if primes.is_empty() {
            return Err(ConfigError::NoPrimes);
        }
        if trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        let primes = primes
            .iter()
            .map(|&p| Prime::new(p).map_err(|_| ConfigError::NotPrime(p)))
            .collect::<Result<_, _>>()?;
        Ok(RunConfig { primes, trials, retries, seed, ..RunConfig::default() })
    }

    pub fn pipeline(&self) -> PipelineConfig {
        PipelineConfig {
            primes: self.primes.clone(),
            trials: self.trials,
            retries: self.retries,
            seed: self.seed,
            path: self.path,
        }
    }
}

pub fn default_primes() -> Vec<u64> {
    DEFAULT_PRIMES.iter().map(|&p| p as u64).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub index: usize,
    pub triple: String,
    pub class: StabilizerClass,
    /// Agreed count, if any.
    pub count: Option<u32>,
    pub published: Option<u32>,
    pub shade: Option<Shade>,
    pub evidence: String,
}

impl ReportRow {
    pub fn new(orbit: &Orbit, result: &IntersectionResult) -> Self {
        let known = known_value(&orbit.representative);
        let mut primes: Vec<u32> = result.trials.iter().map(|r| r.prime).collect();
        primes.sort_unstable();
        primes.dedup();
        let retries: u32 = result.trials.iter().map(|r| r.retries).sum();
        let mut evidence = match &result.consensus {
            Consensus::Agreed(_) => format!("{} trials agree at p = {primes:?}", result.trials.len()),
            other => other.to_string(),
        };
        if retries > 0 {
            let _ = write!(evidence, "; {retries} redraws");
        }
        if !result.failures.is_empty() {
            let _ = write!(evidence, "; {} failed trials", result.failures.len());
        }
        ReportRow {
            index: orbit.index,
            triple: orbit.representative.to_string(),
            class: orbit.stabilizer_class(),
            count: result.consensus.value(),
            published: known.map(|k| k.count),
            shade: known.map(|k| k.shade),
            evidence,
        }
    }

    /// Agreed count equals the published one.
    pub fn matches(&self) -> bool {
        self.count.is_some() && self.count == self.published
    }
}

pub fn render_table(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>3}  {:<26} {:<6} {:>4} {:>5}  {}", "#", "triple", "stab", "IN", "known", "evidence");
    for r in rows {
        let count = r.count.map_or("?".to_string(), |c| c.to_string());
        let published = r.published.map_or("-".to_string(), |c| c.to_string());
        let flag = if r.matches() { "" } else { "  MISMATCH" };
        let _ = writeln!(
            out,
            "{:>3}  {:<26} {:<6} {:>4} {:>5}  {}{flag}",
            r.index,
            r.triple,
            r.class.to_string(),
            count,
            published,
            r.evidence
        );
    }
    let matched = rows.iter().filter(|r| r.matches()).count();
    let _ = writeln!(out, "{matched}/{} rows match", rows.len());
    out
}

/// Trial records as JSONL, then one summary line per row.
pub fn render_records(records: &[TrialRecord], rows: &[ReportRow]) -> String {
    let mut out = crate::cache::to_jsonl(records);
    for r in rows {
        out.push_str(&serde_json::to_string(r).expect("rows serialize"));
        out.push('\n');
    }
    out
}

/// The 77 orbit representatives with orbit sizes and pointwise stabilizers.
pub fn orbit_listing() -> String {
    let mut out = String::new();
    for o in enumerate_orbits() {
        let elems: Vec<String> = o.stabilizer.iter().map(|g| g.digits().to_string()).collect();
        let _ = writeln!(
            out,
            "{:>2}  {:<26} size {:>4}  {:<6} {{{}}}",
            o.index,
            o.representative.to_string(),
            o.size,
            o.stabilizer_class().to_string(),
            elems.join(", ")
        );
    }
    out
}

/// A monic polynomial as text, with the linear coefficient of a quadratic
/// written as minus the sum of the roots.
pub fn minpoly_text(f: &UniPoly, var: &str) -> String {
    let p = f.prime();
    if f.degree() == Some(2) {
        let s = p.neg(f.coeff(1));
        let n = f.coeff(0);
        let mut t = format!("{var}^2");
        if s != 0 {
            let _ = write!(t, " - {}{var}", if s == 1 { String::new() } else { s.to_string() });
        }
        if n != 0 {
            let _ = write!(t, " + {n}");
        }
        return t;
    }
    f.display_in(var)
}

/// Families grouped into orbits of the stabilizer.
pub fn family_orbits(action: &StabilizerAction, n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = action.family_images.iter().map(|img| img[start]).collect();
        orbit.push(start);
        orbit.sort_unstable();
        orbit.dedup();
        for &i in &orbit {
            seen[i] = true;
        }
        out.push(orbit);
    }
    out
}

/// Solutions of an instance grouped by stabilizer orbits, with each
/// extension family written in terms of the letter `a`.
pub fn solutions_text(sol: &Solutions, action: &StabilizerAction) -> String {
    let fams = &sol.points.families;
    let mut out = String::new();
    let _ = writeln!(out, "IN = {} over F_{}", sol.count(), sol.instance.prime);
    let mut orbits = family_orbits(action, fams.len());
    for orbit in &mut orbits {
        orbit.sort_by_key(|&i| fams[i].rational_point().map(|v| v.iter().map(|x| x.value()).collect::<Vec<_>>()));
    }
    // Rational orbits first, then by degree and by the sum of the roots.
    orbits.sort_by_key(|o| {
        let f = &fams[o[0]];
        let d = f.degree();
        (d, f.minpoly.prime().neg(f.minpoly.coeff(d - 1)), f.minpoly.coeffs().to_vec())
    });
    for (k, orbit) in orbits.iter().enumerate() {
        let _ = write!(out, "orbit {}: ", k + 1);
        if orbit.iter().all(|&i| fams[i].is_rational()) {
            let pts: Vec<String> = orbit
                .iter()
                .map(|&i| {
                    let v: Vec<String> = fams[i].rational_point().unwrap().iter().map(|x| x.to_string()).collect();
                    format!("({})", v.join(", "))
                })
                .collect();
            let _ = writeln!(out, "{}", pts.join(" and "));
            continue;
        }
        let parts: Vec<String> = orbit
            .iter()
            .map(|&i| {
                let fam = &fams[i];
                let coords: Vec<String> = (1..6)
                    .map(|j| format!("{} = {}", letter_name(j as u8).to_ascii_lowercase(), linear_text(&fam.coords[j], "a")))
                    .collect();
                format!("{}, where {} = 0", coords.join(", "), minpoly_text(&fam.minpoly, "a"))
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("; "));
    }
    out
}
