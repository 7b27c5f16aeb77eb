//! Intersection numbers of three pascal conditions: the ideal of hexads whose
//! pascals for three labels are three given lines, with the big diagonal
//! saturated away, counted by the degree of its radical.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use hexagram_algebra::{
    radical_zero_dim, rational_points, saturate, ExtElement, FieldElement, GroebnerBasis, GroebnerError, Ideal,
    Monomial, MonomialOrder, PointError, PointSet, Polynomial, Prime, Ring,
};
use log::{debug, info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conic::{GeometryError, Hexad, ProjectiveLine, SymbolicPascals};
use crate::labels::{PascalLabel, PascalSymbol, Permutation, Triple, Zeta};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("lines {0} and {1} are proportional")]
    ProportionalLines(usize, usize),
    #[error("lines are defined over a different field than the instance")]
    PrimeMismatch,
    #[error("no zero-dimensional outcome for {triple} at p = {prime} after {attempts} line draws")]
    NonGeneric { triple: Triple, prime: u32, attempts: u32 },
    #[error("the four-variable path needs the label k(1,23) in the triple")]
    MissingBaseLabel,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Points(#[from] PointError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which ideal computes the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComputePath {
    /// The ideal in all six conic parameters.
    #[default]
    Six,
    /// Two parameters eliminated through the k(1,23) construction.
    Four,
    /// Both, which must agree.
    Both,
}

impl std::str::FromStr for ComputePath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "six" => Ok(ComputePath::Six),
            "four" => Ok(ComputePath::Four),
            "both" => Ok(ComputePath::Both),
            _ => Err(format!("unknown path {s:?}; expected six, four or both")),
        }
    }
}

/// Where the lines of an instance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineSource {
    Supplied,
    Seeded(u64),
}

/// Three labels with their prescribed lines over one prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleInstance {
    pub labels: [PascalLabel; 3],
    pub lines: [ProjectiveLine; 3],
    pub prime: Prime,
    pub source: LineSource,
}

impl TripleInstance {
    pub fn new(labels: [PascalLabel; 3], lines: [ProjectiveLine; 3]) -> Result<Self, PipelineError> {
        Triple::new(labels).map_err(|e| PipelineError::Inconsistent(e.to_string()))?;
        let prime = lines[0].prime();
        if lines.iter().any(|l| l.prime() != prime) {
            return Err(PipelineError::PrimeMismatch);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if lines[i] == lines[j] {
                    return Err(PipelineError::ProportionalLines(i + 1, j + 1));
                }
            }
        }
        Ok(TripleInstance { labels, lines, prime, source: LineSource::Supplied })
    }

    /// Lines drawn from `seed`, assigned to the labels in sorted order.
    pub fn seeded(triple: &Triple, prime: Prime, seed: u64) -> Self {
        TripleInstance {
            labels: triple.labels(),
            lines: random_lines(prime, seed),
            prime,
            source: LineSource::Seeded(seed),
        }
    }

    pub fn triple(&self) -> Triple {
        Triple::new(self.labels).unwrap()
    }

    pub fn line_values(&self) -> [[u32; 3]; 3] {
        self.lines.map(|l| l.coords().map(|x| x.value()))
    }
}

/// Three lines with uniform coordinates, none with vanishing last
/// coordinate, pairwise non-proportional.
pub fn random_lines(p: Prime, seed: u64) -> [ProjectiveLine; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ProjectiveLine> = Vec::with_capacity(3);
    while out.len() < 3 {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(0..p.get()) as i64);
        if c[2] == 0 {
            continue;
        }
        let l = ProjectiveLine::from_i64(p, c).unwrap();
        if out.iter().all(|m| *m != l) {
            out.push(l);
        }
    }
    [out[0], out[1], out[2]]
}

/// Stream of well-mixed seeds derived from one base seed.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The 15 differences `u - v` for `u < v` among the six parameters.
pub fn diagonal(ring: &Arc<Ring>) -> Vec<Polynomial> {
    let n = ring.nvars().min(6);
    let mut v = Vec::with_capacity(15);
    for i in 0..n {
        for j in i + 1..n {
            v.push(Polynomial::var(ring, i).sub(&Polynomial::var(ring, j)));
        }
    }
    v
}

fn minors(u: &[Polynomial; 3], l: [Polynomial; 3]) -> [Polynomial; 3] {
    [
        u[0].mul(&l[1]).sub(&u[1].mul(&l[0])),
        u[0].mul(&l[2]).sub(&u[2].mul(&l[0])),
        u[1].mul(&l[2]).sub(&u[2].mul(&l[1])),
    ]
}

fn line_constants(ring: &Arc<Ring>, l: &ProjectiveLine) -> [Polynomial; 3] {
    l.coords().map(|c| Polynomial::constant(ring, c.value() as i64))
}

/// The nine minors: for each label, the 2x2 minors of the matrix with the
/// symbolic pascal coordinates over the prescribed line.
pub fn build_ideal(inst: &TripleInstance) -> Ideal {
    let sp = SymbolicPascals::for_prime(inst.prime);
    let ring = sp.ring();
    let mut gens = Vec::with_capacity(9);
    for (lab, line) in inst.labels.iter().zip(&inst.lines) {
        gens.extend(minors(sp.coords(&lab.to_symbol()), line_constants(ring, line)));
    }
    Ideal::new(ring, gens).unwrap()
}

/// Outcome of one computation on one instance.
#[derive(Debug, Clone)]
pub struct Computation {
    /// Degree of the radical, when zero-dimensional.
    pub count: Option<usize>,
    /// Reduced degrevlex basis of the radical; `None` when not zero-dimensional.
    pub radical: Option<GroebnerBasis>,
    pub millis: u64,
}

impl Computation {
    pub fn zero_dimensional(&self) -> bool {
        self.count.is_some()
    }
}

fn saturate_all(mut ideal: Ideal, by: &[Polynomial]) -> Result<Ideal, PipelineError> {
    for g in by {
        ideal = saturate(&ideal, g)?;
        if ideal.gens().iter().any(|f| f.is_constant()) {
            break;
        }
    }
    Ok(ideal)
}

/// Degree of the radical of a saturated ideal, confirmed by the squarefree
/// minimal polynomials of random linear forms.
fn radical_degree(ideal: &Ideal, seed: u64) -> Result<Option<(usize, GroebnerBasis)>, PipelineError> {
    let (_, gb) = match radical_zero_dim(ideal) {
        Ok(r) => r,
        Err(GroebnerError::NotZeroDimensional) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let count = gb.quotient_dimension()?;
    if count == 0 {
        return Ok(Some((0, gb)));
    }
    let ring = gb.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreeing = 0;
    for _ in 0..8 {
        let mut form = Polynomial::zero(ring);
        for v in 0..ring.nvars() {
            form = form.add(&Polynomial::var(ring, v).scale(rng.gen_range(1..ring.prime().get())));
        }
        let m = gb.minimal_polynomial(&form)?;
        let sf = m.squarefree_part().map_err(|e| PipelineError::Inconsistent(e.to_string()))?;
        match sf.degree().unwrap_or(0) {
            d if d == count => agreeing += 1,
            d if d > count => {
                return Err(PipelineError::Inconsistent(format!(
                    "a linear form separates {d} points but the quotient has dimension {count}"
                )))
            }
            _ => {}
        }
        if agreeing == 2 {
            return Ok(Some((count, gb)));
        }
    }
    Err(PipelineError::Inconsistent(format!(
        "no two random linear forms reached degree {count}"
    )))
}

/// Six-variable computation: build, saturate by the 15 differences one at a
/// time, take the radical and count.
pub fn compute_six(inst: &TripleInstance, seed: u64) -> Result<Computation, PipelineError> {
    compute_six_from(build_ideal(inst), seed)
}

/// [`compute_six`] on an ideal in the six conic parameters with extra
/// generators already added.
pub fn compute_six_from(ideal: Ideal, seed: u64) -> Result<Computation, PipelineError> {
    let start = Instant::now();
    let sat = saturate_all(ideal.clone(), &diagonal(ideal.ring()))?;
    let out = radical_degree(&sat, derive_seed(seed, 0xC0))?;
    Ok(Computation {
        count: out.as_ref().map(|(c, _)| *c),
        radical: out.map(|(_, gb)| gb),
        millis: start.elapsed().as_millis() as u64,
    })
}

/// The ideal in `a, b, c, f` obtained by solving the k(1,23) condition for
/// `d` and `e`, with the list of polynomials to saturate by.
pub struct ParametrizedIdeal {
    pub ideal: Ideal,
    pub saturate_by: Vec<Polynomial>,
    /// `(numerator, denominator)` of `d` and of `e`.
    pub d: (Polynomial, Polynomial),
    pub e: (Polynomial, Polynomial),
}

/// Numerator and denominator of the second conic point on the line from
/// `tau(a)` through the meet of `chord(x, f)` with `l`.
fn second_point(l: &[Polynomial; 3], a: &Polynomial, x: &Polynomial, f: &Polynomial) -> (Polynomial, Polynomial) {
    let s = x.add(f);
    let pr = x.mul(f);
    let q0 = s.neg().mul(&l[2]).sub(&l[1]);
    let q1 = l[0].sub(&pr.mul(&l[2]));
    let q2 = pr.mul(&l[1]).add(&s.mul(&l[0]));
    (a.mul(&q1).sub(&q2), a.mul(&q0).sub(&q1))
}

impl ParametrizedIdeal {
    /// `u(a, b, c, nd/dd, ne/de, f) * dd * de` for a polynomial `u` in the six
    /// parameters of degree at most one in `d` and in `e`, which holds for
    /// every pascal coordinate.
    pub fn clear_denominators(&self, u: &Polynomial) -> Polynomial {
        let r4 = self.d.0.ring();
        let mut acc = Polynomial::zero(r4);
        for t in u.terms() {
            let (ed, ee) = (t.mono.exp(3), t.mono.exp(4));
            assert!(ed <= 1 && ee <= 1, "degree in d or e exceeds one");
            let e4 = [t.mono.exp(0), t.mono.exp(1), t.mono.exp(2), t.mono.exp(5)];
            let mono = Polynomial::from_terms(r4, [(Monomial::from_exponents(&e4), t.coeff)]);
            let fd = if ed == 1 { &self.d.0 } else { &self.d.1 };
            let fe = if ee == 1 { &self.e.0 } else { &self.e.1 };
            acc = acc.add(&mono.mul(fd).mul(fe));
        }
        acc
    }
}

pub fn parametrized_ideal(inst: &TripleInstance) -> Result<ParametrizedIdeal, PipelineError> {
    let base = PascalLabel::from_digits(1, 2, 3).unwrap();
    let k = inst.labels.iter().position(|l| *l == base).ok_or(PipelineError::MissingBaseLabel)?;
    let sp = SymbolicPascals::for_prime(inst.prime);
    let r4 = Ring::new(inst.prime, &["a", "b", "c", "f"], MonomialOrder::DegRevLex).unwrap();
    let v = |i| Polynomial::var(&r4, i);
    let (a, b, c, f) = (v(0), v(1), v(2), v(3));
    let l1 = line_constants(&r4, &inst.lines[k]);
    let (ne, de) = second_point(&l1, &a, &b, &f);
    let (nd, dd) = second_point(&l1, &a, &c, &f);

    let mut par = ParametrizedIdeal {
        ideal: Ideal::new(&r4, vec![])?,
        saturate_by: vec![],
        d: (nd.clone(), dd.clone()),
        e: (ne.clone(), de.clone()),
    };
    let mut gens = Vec::with_capacity(6);
    for (i, (lab, line)) in inst.labels.iter().zip(&inst.lines).enumerate() {
        if i == k {
            continue;
        }
        let cu = sp.coords(&lab.to_symbol()).clone().map(|u| par.clear_denominators(&u));
        gens.extend(minors(&cu, line_constants(&r4, line)));
    }
    let restrict = |x: &Polynomial| l1[0].add(&l1[1].mul(x)).add(&l1[2].mul(x).mul(x));
    let mut by = vec![dd.clone(), de.clone(), restrict(&f), restrict(&a)];
    let free = [&a, &b, &c, &f];
    for i in 0..4 {
        for j in i + 1..4 {
            by.push(free[i].sub(free[j]));
        }
    }
    for x in free {
        by.push(x.mul(&dd).sub(&nd));
        by.push(x.mul(&de).sub(&ne));
    }
    by.push(nd.mul(&de).sub(&ne.mul(&dd)));
    par.ideal = Ideal::new(&r4, gens)?;
    par.saturate_by = by;
    Ok(par)
}

/// Four-variable computation; the count must equal the six-variable one.
pub fn compute_four(inst: &TripleInstance, seed: u64) -> Result<Computation, PipelineError> {
    let start = Instant::now();
    let par = parametrized_ideal(inst)?;
    let sat = saturate_all(par.ideal, &par.saturate_by)?;
    let out = radical_degree(&sat, derive_seed(seed, 0xF4))?;
    Ok(Computation {
        count: out.as_ref().map(|(c, _)| *c),
        radical: out.map(|(_, gb)| gb),
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Trial settings shared by all triples of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub primes: Vec<Prime>,
    /// Trials per triple; trial `k` runs at `primes[k % primes.len()]`.
    pub trials: usize,
    /// Fresh line draws allowed after a non-zero-dimensional outcome.
    pub retries: u32,
    pub seed: u64,
    pub path: ComputePath,
}

pub const DEFAULT_PRIMES: [u32; 3] = [32003, 43051, 48619];

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            primes: DEFAULT_PRIMES.iter().map(|&p| Prime::new(p as u64).unwrap()).collect(),
            trials: 3,
            retries: 5,
            seed: 1,
            path: ComputePath::Six,
        }
    }
}

impl PipelineConfig {
    /// `(prime, seed)` of every trial.
    pub fn trial_plan(&self) -> Vec<(Prime, u64)> {
        (0..self.trials)
            .map(|k| (self.primes[k % self.primes.len()], derive_seed(self.seed, k as u64)))
            .collect()
    }
}

/// One line of the result cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub triple: String,
    pub prime: u32,
    pub seed: u64,
    pub lines: [[u32; 3]; 3],
    pub count: Option<u32>,
    pub zero_dim: bool,
    pub retries: u32,
    pub millis: u64,
}

/// Runs one trial with retries on non-generic lines. The lines of attempt
/// `r` come from `derive_seed(seed, r)`, so a record is replayable from its
/// triple, prime and seed.
pub fn run_trial(triple: &Triple, prime: Prime, seed: u64, retries: u32, path: ComputePath) -> Result<TrialRecord, PipelineError> {
    let mut millis = 0;
    for attempt in 0..=retries {
        let inst = TripleInstance::seeded(triple, prime, derive_seed(seed, attempt as u64));
        let six = matches!(path, ComputePath::Six | ComputePath::Both).then(|| compute_six(&inst, seed)).transpose()?;
        let four = matches!(path, ComputePath::Four | ComputePath::Both).then(|| compute_four(&inst, seed)).transpose()?;
        let counts: Vec<Option<usize>> = six.iter().chain(four.iter()).map(|c| c.count).collect();
        millis += six.iter().chain(four.iter()).map(|c| c.millis).sum::<u64>();
        if counts.windows(2).any(|w| w[0] != w[1]) {
            return Err(PipelineError::Inconsistent(format!(
                "six- and four-variable paths disagree on {triple} at p = {prime}: {counts:?}"
            )));
        }
        if let Some(count) = counts[0] {
            debug!("{triple} p={prime} attempt {attempt}: {count} in {millis} ms");
            return Ok(TrialRecord {
                triple: triple.to_string(),
                prime: prime.get(),
                seed,
                lines: inst.line_values(),
                count: Some(count as u32),
                zero_dim: true,
                retries: attempt,
                millis,
            });
        }
        warn!("{triple} p={prime}: not zero-dimensional on attempt {attempt}, drawing new lines");
    }
    Err(PipelineError::NonGeneric { triple: *triple, prime: prime.get(), attempts: retries + 1 })
}

/// Agreement across trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consensus {
    Agreed(u32),
    /// Fewer than two successful trials at distinct primes.
    Insufficient,
    /// Counts by prime, when trials disagree.
    Disagreement(BTreeMap<u32, Vec<u32>>),
}

impl Consensus {
    pub fn from_records(records: &[TrialRecord]) -> Consensus {
        let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for r in records {
            if let Some(c) = r.count {
                by_prime.entry(r.prime).or_default().push(c);
            }
        }
        let mut values: Vec<u32> = by_prime.values().flatten().copied().collect();
        values.sort_unstable();
        values.dedup();
        match values.as_slice() {
            [] => Consensus::Insufficient,
            [v] if by_prime.len() >= 2 => Consensus::Agreed(*v),
            [_] => Consensus::Insufficient,
            _ => Consensus::Disagreement(by_prime),
        }
    }

    pub fn value(&self) -> Option<u32> {
        match self {
            Consensus::Agreed(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for Consensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Consensus::Agreed(v) => write!(f, "{v}"),
            Consensus::Insufficient => write!(f, "insufficient evidence"),
            Consensus::Disagreement(m) => {
                let parts: Vec<String> = m.iter().map(|(p, c)| format!("p={p}: {c:?}")).collect();
                write!(f, "disagreement ({})", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntersectionResult {
    pub triple: Triple,
    pub trials: Vec<TrialRecord>,
    pub failures: Vec<PipelineError>,
    pub consensus: Consensus,
}

/// Runs every planned trial that `known` does not already cover, in
/// parallel, and combines them with the known records.
pub fn intersection_number_with(
    triple: &Triple,
    config: &PipelineConfig,
    known: &[TrialRecord],
    on_record: &(dyn Fn(&TrialRecord) + Sync),
) -> IntersectionResult {
    let key = triple.to_string();
    let plan = config.trial_plan();
    let results: Vec<Result<TrialRecord, PipelineError>> = plan
        .par_iter()
        .map(|&(prime, seed)| {
            if let Some(r) = known.iter().find(|r| r.triple == key && r.prime == prime.get() && r.seed == seed) {
                return Ok(r.clone());
            }
            let rec = run_trial(triple, prime, seed, config.retries, config.path)?;
            on_record(&rec);
            Ok(rec)
        })
        .collect();
    let mut trials = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(rec) => trials.push(rec),
            Err(e) => failures.push(e),
        }
    }
    let consensus = Consensus::from_records(&trials);
    info!("{triple}: {consensus}");
    IntersectionResult { triple: *triple, trials, failures, consensus }
}

pub fn intersection_number(triple: &Triple, config: &PipelineConfig) -> IntersectionResult {
    intersection_number_with(triple, config, &[], &|_| {})
}

/// Explicit solutions of one instance, each verified against the nine
/// generators by exact evaluation.
#[derive(Debug, Clone)]
pub struct Solutions {
    pub instance: TripleInstance,
    pub points: PointSet,
}

impl Solutions {
    pub fn count(&self) -> usize {
        self.points.count()
    }

    pub fn rational_hexads(&self) -> Vec<Hexad> {
        self.points
            .rational()
            .into_iter()
            .map(|v| Hexad::new([v[0], v[1], v[2], v[3], v[4], v[5]]).unwrap())
            .collect()
    }
}

fn verify_point(gens: &[Polynomial], field: &Arc<hexagram_algebra::ExtField>, pt: &[ExtElement]) -> bool {
    gens.iter().all(|g| g.evaluate_ext(field, pt).map(|v| v.is_zero()).unwrap_or(false))
        && (0..6).all(|i| (i + 1..6).all(|j| pt[i] != pt[j]))
}

pub fn solve_points(inst: &TripleInstance) -> Result<Solutions, PipelineError> {
    let comp = compute_six(inst, inst_seed(inst))?;
    let gb = comp.radical.ok_or(PipelineError::NonGeneric {
        triple: inst.triple(),
        prime: inst.prime.get(),
        attempts: 1,
    })?;
    let points = rational_points(&gb, &[0])?;
    let gens = build_ideal(inst).gens().to_vec();
    for fam in &points.families {
        if !verify_point(&gens, &fam.field(), &fam.generic_point()) {
            return Err(PipelineError::Inconsistent(format!(
                "reported solution family {} fails the defining equations",
                fam.minpoly
            )));
        }
    }
    if points.count() != comp.count.unwrap() {
        return Err(PipelineError::Inconsistent("solution count differs from the degree".into()));
    }
    Ok(Solutions { instance: inst.clone(), points })
}

fn inst_seed(inst: &TripleInstance) -> u64 {
    match inst.source {
        LineSource::Seeded(s) => s,
        LineSource::Supplied => 0,
    }
}

/// Letter permutation induced by a digit permutation fixing each label.
pub fn letter_action(pi: &Permutation) -> Permutation {
    Zeta::global().apply_inv(pi)
}

/// `h'[sigma(X)] = h[X]`.
pub fn permute_point<T: Clone>(sigma: &Permutation, pt: &[T]) -> Vec<T> {
    let mut out = pt.to_vec();
    for x in 0..6u8 {
        out[sigma.apply(x) as usize] = pt[x as usize].clone();
    }
    out
}

/// How the pointwise stabilizer of the labels acts on the solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerAction {
    pub group: Vec<Permutation>,
    /// For each group element, the family index of the image of each family.
    pub family_images: Vec<Vec<usize>>,
    /// Sizes of the orbits on geometric points.
    pub orbit_sizes: Vec<usize>,
}

/// Checks that the solutions are closed under the stabilizer, acting by
/// letter permutations, and that the action is free; returns the orbit
/// structure on geometric points.
pub fn stabilizer_action(sol: &Solutions) -> Result<StabilizerAction, PipelineError> {
    let group = sol.instance.triple().stabilizer();
    let gens = build_ideal(&sol.instance).gens().to_vec();
    let fams = &sol.points.families;
    let mut family_images = Vec::new();
    for g in &group {
        let sigma = letter_action(g);
        let mut images = Vec::with_capacity(fams.len());
        for fam in fams {
            let field = fam.field();
            let pt = fam.generic_point();
            let img = permute_point(&sigma, &pt);
            if !verify_point(&gens, &field, &img) {
                return Err(PipelineError::Inconsistent(format!(
                    "{} maps a solution outside the solution set",
                    sigma.letters()
                )));
            }
            if !g.is_identity() && img == pt {
                return Err(PipelineError::Inconsistent(format!("{} fixes a solution", g.digits())));
            }
            // The image lies in the family whose minimal polynomial vanishes
            // on its primitive coordinate.
            let prim = match &fam.primitive {
                hexagram_algebra::Primitive::Variable(v) => img[*v].clone(),
                hexagram_algebra::Primitive::LinearForm(c) => {
                    let mut acc = ExtElement::from_i64(&field, 0);
                    for (x, &ci) in img.iter().zip(c) {
                        acc = acc.add(&x.scale(ci)).unwrap();
                    }
                    acc
                }
            };
            let target = fams
                .iter()
                .position(|other| {
                    let val = other.minpoly.coeffs().iter().rev().fold(ExtElement::from_i64(&field, 0), |acc, &c| {
                        acc.mul(&prim).unwrap().add(&ExtElement::from_i64(&field, c as i64)).unwrap()
                    });
                    val.is_zero()
                })
                .ok_or_else(|| PipelineError::Inconsistent("image point matches no family".into()))?;
            if fams[target].degree() != fam.degree() {
                return Err(PipelineError::Inconsistent("image family has another degree".into()));
            }
            images.push(target);
        }
        family_images.push(images);
    }
    let n = sol.count();
    let k = group.len();
    Ok(StabilizerAction { group, family_images, orbit_sizes: vec![k; n / k] })
}

/// Result of the exhaustive scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    pub hexads: Vec<Hexad>,
    /// Parameter choices skipped as degenerate (tangent lines, repeated or
    /// infinite points).
    pub skipped: u64,
}

/// Flattened coordinate polynomials for fast evaluation over a small field.
struct FastCoords {
    terms: [Vec<(u32, Vec<u8>)>; 3],
}

impl FastCoords {
    fn new(u: &[Polynomial; 3]) -> Self {
        let flat = |f: &Polynomial| {
            f.terms()
                .iter()
                .map(|t| {
                    let vars: Vec<u8> = (0..6u8).flat_map(|i| std::iter::repeat(i).take(t.mono.exp(i as usize) as usize)).collect();
                    (t.coeff, vars)
                })
                .collect()
        };
        FastCoords { terms: [flat(&u[0]), flat(&u[1]), flat(&u[2])] }
    }

    #[inline]
    fn eval(&self, k: usize, h: &[u64; 6], p: u64) -> u64 {
        let mut s = 0;
        for (c, vars) in &self.terms[k] {
            let mut m = *c as u64;
            for &v in vars {
                m = m * h[v as usize] % p;
            }
            s += m;
        }
        s % p
    }

    /// Pascal coordinates nonzero and proportional to `l`.
    #[inline]
    fn matches(&self, h: &[u64; 6], l: &[u64; 3], p: u64) -> bool {
        let u0 = self.eval(0, h, p);
        let u2 = self.eval(2, h, p);
        if (u0 * l[2] + (p - u2) * l[0]) % p != 0 {
            return false;
        }
        let u1 = self.eval(1, h, p);
        if (u0 | u1 | u2) == 0 {
            return false;
        }
        (u0 * l[1] + (p - u1) * l[0]) % p == 0 && (u1 * l[2] + (p - u2) * l[1]) % p == 0
    }
}

/// All rational hexads of an instance, by scanning the free parameters
/// `a, b, c, f` of the k(1,23) condition and solving for `d` and `e`.
/// Intended for small primes; the cost is `p^4`.
pub fn brute_force_count(inst: &TripleInstance) -> Result<BruteForce, PipelineError> {
    let base = PascalLabel::from_digits(1, 2, 3).unwrap();
    let k = inst.labels.iter().position(|l| *l == base).ok_or(PipelineError::MissingBaseLabel)?;
    let p = inst.prime.get() as u64;
    let sp = SymbolicPascals::for_prime(inst.prime);
    let checks: Vec<(FastCoords, [u64; 3])> = (0..3)
        .map(|i| {
            let u = sp.coords(&inst.labels[i].to_symbol());
            (FastCoords::new(u), inst.lines[i].coords().map(|x| x.value() as u64))
        })
        .collect();
    let order: Vec<usize> = (0..3).filter(|&i| i != k).chain([k]).collect();
    let l = checks[k].1;
    let inv: Vec<u64> = (0..p).map(|x| inst.prime.inv(x as u32).unwrap_or(0) as u64).collect();
    let (mut hexads, mut skipped) = (Vec::new(), 0u64);
    for b in 0..p {
        for f in 0..p {
            if f == b {
                continue;
            }
            // Q = chord(x, f) meet l
            let q = |x: u64| {
                let s = (x + f) % p;
                let pr = x * f % p;
                let q0 = (2 * p - s * l[2] % p - l[1]) % p;
                let q1 = (l[0] + p - pr * l[2] % p) % p;
                let q2 = (pr * l[1] + s * l[0]) % p;
                [q0, q1, q2]
            };
            let q1 = q(b);
            for c in 0..p {
                if c == b || c == f {
                    continue;
                }
                let q2 = q(c);
                for a in 0..p {
                    if a == b || a == c || a == f {
                        continue;
                    }
                    let de = (a * q1[0] % p + p - q1[1]) % p;
                    let dd = (a * q2[0] % p + p - q2[1]) % p;
                    if de == 0 || dd == 0 {
                        skipped += 1;
                        continue;
                    }
                    let e = (a * q1[1] % p + p - q1[2]) % p * inv[de as usize] % p;
                    let d = (a * q2[1] % p + p - q2[2]) % p * inv[dd as usize] % p;
                    let h = [a, b, c, d, e, f];
                    if [a, b, c, f].contains(&d) || [a, b, c, f, d].contains(&e) {
                        skipped += 1;
                        continue;
                    }
                    if order.iter().all(|&i| checks[i].0.matches(&h, &checks[i].1, p)) {
                        hexads.push(Hexad::new(h.map(|x| inst.prime.element(x as i64))).unwrap());
                    }
                }
            }
        }
    }
    hexads.sort_by_key(|h| h.params().map(|x| x.value()));
    hexads.dedup();
    Ok(BruteForce { hexads, skipped })
}

/// The instance worked out by hand over `F_101`.
pub fn worked_instance() -> TripleInstance {
    let p = Prime::new(101).unwrap();
    let labels = ["k(1,23)", "k(1,45)", "k(2,45)"].map(|s| s.parse::<PascalLabel>().unwrap());
    let lines = [[1, 35, 48], [1, 5, 26], [1, 32, 52]].map(|c| ProjectiveLine::from_i64(p, c).unwrap());
    TripleInstance::new(labels, lines).unwrap()
}

/// The pascal of `s` for the hexad, from the symbolic coordinates.
pub fn symbolic_line(h: &Hexad, s: &PascalSymbol) -> Result<ProjectiveLine, GeometryError> {
    let sp = SymbolicPascals::for_prime(h.prime());
    let u = sp.coords(s).clone().map(|u| u.evaluate_all(&h.params()).unwrap());
    ProjectiveLine::new(u)
}

/// Evaluates `f` at a hexad.
pub fn evaluate_at(f: &Polynomial, h: &Hexad) -> FieldElement {
    f.evaluate_all(&h.params()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::pascal_line;

    #[test]
    fn ideal_shape() {
        let inst = worked_instance();
        let ideal = build_ideal(&inst);
        assert_eq!(ideal.gens().len(), 9);
        assert!(ideal.gens().iter().all(|g| g.total_degree().unwrap() <= 5));
        let h = Hexad::from_i64(inst.prime, [48, 49, 14, 92, 9, 57]).unwrap();
        for g in ideal.gens() {
            assert!(evaluate_at(g, &h).is_zero());
        }
        assert_eq!(diagonal(ideal.ring()).len(), 15);
    }

    #[test]
    fn constructed_lines_give_vanishing_minors() {
        let p = Prime::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t: Triple = "(1, 23), (2, 34), (5, 36)".parse().unwrap();
        let h = Hexad::random(p, &mut rng);
        let lines = t.labels().map(|l| pascal_line(&h, &l.to_symbol()).unwrap());
        let inst = TripleInstance::new(t.labels(), lines).unwrap();
        for g in build_ideal(&inst).gens() {
            assert!(evaluate_at(g, &h).is_zero());
        }
    }

    #[test]
    fn parametrization_satisfies_base_condition() {
        // After clearing denominators the three k(1,23) minors vanish
        // identically in a, b, c, f.
        let inst = worked_instance();
        let par = parametrized_ideal(&inst).unwrap();
        let r4 = par.ideal.ring().clone();
        let sp = SymbolicPascals::for_prime(inst.prime);
        let u = sp.coords(&PascalSymbol::standard());
        let l = line_constants(&r4, &inst.lines[0]);
        for m in 0..3 {
            for n in m + 1..3 {
                let minor = par.clear_denominators(&u[m]).mul(&l[n]).sub(&par.clear_denominators(&u[n]).mul(&l[m]));
                assert!(minor.is_zero(), "minor {m}{n}");
            }
        }
    }

    #[test]
    fn seeds_and_lines_are_replayable() {
        let p = Prime::new(32003).unwrap();
        assert_eq!(random_lines(p, 9), random_lines(p, 9));
        assert_ne!(random_lines(p, 9), random_lines(p, 10));
        for l in random_lines(p, 11) {
            assert!(!l.coords()[2].is_zero());
        }
    }

    #[test]
    fn consensus_rules() {
        let rec = |prime, count| TrialRecord {
            triple: "t".into(),
            prime,
            seed: 0,
            lines: [[0; 3]; 3],
            count,
            zero_dim: count.is_some(),
            retries: 0,
            millis: 0,
        };
        assert_eq!(Consensus::from_records(&[rec(5, Some(2)), rec(7, Some(2))]), Consensus::Agreed(2));
        assert_eq!(Consensus::from_records(&[rec(5, Some(2)), rec(5, Some(2))]), Consensus::Insufficient);
        assert!(matches!(
            Consensus::from_records(&[rec(5, Some(2)), rec(7, Some(4)), rec(11, Some(2))]),
            Consensus::Disagreement(_)
        ));
        assert_eq!(Consensus::from_records(&[rec(5, None), rec(7, Some(3)), rec(11, Some(3))]), Consensus::Agreed(3));
    }

    #[test]
    fn worked_instance_count() {
        let c = compute_six(&worked_instance(), 0).unwrap();
        assert_eq!(c.count, Some(8));
    }
}
