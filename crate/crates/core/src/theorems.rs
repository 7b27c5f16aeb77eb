//! Concurrency theorems for pascals and the fiber degrees of the curves of
//! hexads whose three pascals pass through a common point.

use hexagram_algebra::{FieldElement, Ideal, Polynomial, Prime};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conic::{det3, join, meet, pascal_line, GeometryError, Hexad, ProjectiveLine, ProjectivePoint};
use crate::labels::{PascalLabel, PascalSymbol, Triple};
use crate::pipeline::{build_ideal, compute_six_from, derive_seed, PipelineError, TripleInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("pascals {0} are not concurrent for hexad {1}")]
    NotConcurrent(String, String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

fn label(w: u8, x: u8, y: u8) -> PascalLabel {
    PascalLabel::new(w, x, y).unwrap()
}

/// Common point of three pascals, checked by the determinant of their
/// coordinates and by incidence of the meet of the first two with the third.
pub fn common_point(h: &Hexad, labels: [PascalLabel; 3]) -> Result<ProjectivePoint, TheoremError> {
    let lines: Vec<ProjectiveLine> = labels
        .iter()
        .map(|l| pascal_line(h, &l.to_symbol()))
        .collect::<Result<_, _>>()?;
    let fail = || {
        let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        TheoremError::NotConcurrent(names.join(", "), h.to_string())
    };
    if !det3(lines[0].coords(), lines[1].coords(), lines[2].coords()).is_zero() {
        return Err(fail());
    }
    let pt = meet(&lines[0], &lines[1])?;
    if !(pt.lies_on(&lines[2]) && pt.lies_on(&lines[0]) && pt.lies_on(&lines[1])) {
        return Err(fail());
    }
    Ok(pt)
}

/// The three labels through the Steiner point of `{x, y, z}` (zero-based digits).
pub fn steiner_labels(x: u8, y: u8, z: u8) -> [PascalLabel; 3] {
    [label(x, y, z), label(y, x, z), label(z, x, y)]
}

/// The three labels through the Kirkman point of `(x, {y, z, w})`.
pub fn kirkman_labels(x: u8, y: u8, z: u8, w: u8) -> [PascalLabel; 3] {
    [label(x, y, z), label(x, y, w), label(x, z, w)]
}

pub fn verify_steiner(h: &Hexad, xyz: [u8; 3]) -> Result<ProjectivePoint, TheoremError> {
    common_point(h, steiner_labels(xyz[0], xyz[1], xyz[2]))
}

pub fn verify_kirkman(h: &Hexad, x: u8, yzw: [u8; 3]) -> Result<ProjectivePoint, TheoremError> {
    common_point(h, kirkman_labels(x, yzw[0], yzw[1], yzw[2]))
}

/// All 20 Steiner points.
pub fn steiner_points(h: &Hexad) -> Result<Vec<ProjectivePoint>, TheoremError> {
    let mut out = Vec::with_capacity(20);
    for x in 0..6 {
        for y in x + 1..6 {
            for z in y + 1..6 {
                out.push(verify_steiner(h, [x, y, z])?);
            }
        }
    }
    Ok(out)
}

/// All 60 Kirkman points.
pub fn kirkman_points(h: &Hexad) -> Result<Vec<ProjectivePoint>, TheoremError> {
    let mut out = Vec::with_capacity(60);
    for x in 0..6 {
        let rest: Vec<u8> = (0..6).filter(|&v| v != x).collect();
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    out.push(verify_kirkman(h, x, [rest[i], rest[j], rest[k]])?);
                }
            }
        }
    }
    Ok(out)
}

/// The triple `{k(1,23), k(2,14), k(3,14)}`, whose pascals all contain the
/// meet of AE and BF.
pub fn trivial_concurrency_labels() -> [PascalLabel; 3] {
    [label(0, 1, 2), label(1, 0, 3), label(2, 0, 3)]
}

pub fn verify_trivial_concurrency(h: &Hexad) -> Result<ProjectivePoint, TheoremError> {
    let pt = common_point(h, trivial_concurrency_labels())?;
    let expect = meet(&h.chord(0, 4), &h.chord(1, 5))?;
    if pt != expect {
        return Err(TheoremError::NotConcurrent("k(1,23), k(2,14), k(3,14) at AE ∩ BF".into(), h.to_string()));
    }
    Ok(pt)
}

/// The three concurrency patterns with a curve of solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    Steiner,
    Kirkman,
    /// The triple whose pascals share the meet of AE and BF.
    Trivial,
}

impl Pattern {
    pub fn labels(&self) -> [PascalLabel; 3] {
        match self {
            Pattern::Steiner => steiner_labels(0, 1, 2),
            Pattern::Kirkman => kirkman_labels(0, 1, 2, 3),
            Pattern::Trivial => trivial_concurrency_labels(),
        }
    }

    pub fn triple(&self) -> Triple {
        Triple::new(self.labels()).unwrap()
    }
}

impl std::str::FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "steiner" => Ok(Pattern::Steiner),
            "kirkman" => Ok(Pattern::Kirkman),
            "trivial" => Ok(Pattern::Trivial),
            _ => Err(format!("unknown pattern {s:?}; expected steiner, kirkman or trivial")),
        }
    }
}

/// Concurrent lines through a base point, with one conic parameter fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub pattern: Pattern,
    pub base: ProjectivePoint,
    pub lines: [ProjectiveLine; 3],
    /// Zero-based letter index.
    pub letter: u8,
    pub value: FieldElement,
}

impl CurveSpec {
    /// A base point off the conic and off the coordinate lines, three
    /// distinct lines through it, and a random value for the letter.
    pub fn random(pattern: Pattern, p: Prime, letter: u8, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha8Rng| p.element(rng.gen_range(1..p.get()) as i64);
        let base = loop {
            let pt = ProjectivePoint::new([draw(&mut rng), draw(&mut rng), draw(&mut rng)]).unwrap();
            if !pt.on_conic() {
                break pt;
            }
        };
        let mut lines: Vec<ProjectiveLine> = Vec::new();
        while lines.len() < 3 {
            let q = ProjectivePoint::new([draw(&mut rng), draw(&mut rng), draw(&mut rng)]).unwrap();
            let Ok(l) = join(&base, &q) else { continue };
            if l.coords()[2].is_zero() || lines.contains(&l) {
                continue;
            }
            lines.push(l);
        }
        let value = draw(&mut rng);
        CurveSpec { pattern, base, lines: [lines[0], lines[1], lines[2]], letter, value }
    }
}

/// Number of hexads on the curve with the given letter at the given value:
/// the degree of the radical of the nine minors plus the linear condition,
/// after saturating the diagonal.
pub fn fiber_degree(spec: &CurveSpec) -> Result<Option<usize>, TheoremError> {
    let inst = TripleInstance::new(spec.pattern.labels(), spec.lines)?;
    let ideal = build_ideal(&inst);
    let ring = ideal.ring().clone();
    let fix = Polynomial::var(&ring, spec.letter as usize).sub(&Polynomial::constant(&ring, spec.value.value() as i64));
    let ideal = Ideal::new(&ring, ideal.gens().iter().cloned().chain([fix]).collect()).map_err(PipelineError::from)?;
    Ok(compute_six_from(ideal, 0)?.count)
}

/// Fiber degree with fresh draws when a draw is not zero-dimensional.
pub fn fiber_degree_retrying(pattern: Pattern, p: Prime, letter: u8, seed: u64, retries: u32) -> Result<usize, TheoremError> {
    for attempt in 0..=retries {
        let spec = CurveSpec::random(pattern, p, letter, derive_seed(seed, attempt as u64));
        if let Some(d) = fiber_degree(&spec)? {
            return Ok(d);
        }
    }
    Err(PipelineError::NonGeneric { triple: pattern.triple(), prime: p.get(), attempts: retries + 1 }.into())
}

/// Tallies of one run of the theorem checks over random hexads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub prime: u32,
    pub hexads: usize,
    /// Pascals whose three points were checked collinear.
    pub pascals: usize,
    pub steiner: usize,
    pub kirkman: usize,
    pub trivial: usize,
    /// Hexads whose 60 pascals are pairwise distinct.
    pub distinct_pascals: usize,
    /// Hexads whose Kirkman points avoid all Steiner points.
    pub kirkman_off_steiner: usize,
}

/// Runs every concurrency check on `n` random hexads; the first violation
/// is returned as an error.
pub fn run_suite(p: Prime, n: usize, seed: u64) -> Result<SuiteSummary, TheoremError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SuiteSummary {
        prime: p.get(),
        hexads: n,
        pascals: 0,
        steiner: 0,
        kirkman: 0,
        trivial: 0,
        distinct_pascals: 0,
        kirkman_off_steiner: 0,
    };
    for _ in 0..n {
        let h = Hexad::random(p, &mut rng);
        let mut lines: Vec<ProjectiveLine> = PascalSymbol::all()
            .iter()
            .map(|sym| pascal_line(&h, sym))
            .collect::<Result<_, _>>()?;
        s.pascals += lines.len();
        let st = steiner_points(&h)?;
        let ki = kirkman_points(&h)?;
        verify_trivial_concurrency(&h)?;
        s.steiner += st.len();
        s.kirkman += ki.len();
        s.trivial += 1;
        let before = lines.len();
        lines.sort_by_key(|l| l.normalized().coords().map(|x| x.value()));
        lines.dedup();
        s.distinct_pascals += usize::from(lines.len() == before);
        s.kirkman_off_steiner += usize::from(ki.iter().all(|k| !st.contains(k)));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorems_hold_on_random_hexads() {
        let p = Prime::new(43051).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let h = Hexad::random(p, &mut rng);
            let st = steiner_points(&h).unwrap();
            let ki = kirkman_points(&h).unwrap();
            assert_eq!(st.len(), 20);
            assert_eq!(ki.len(), 60);
            assert!(ki.iter().all(|k| !st.contains(k)));
            verify_trivial_concurrency(&h).unwrap();
        }
    }

    #[test]
    fn generic_triple_is_not_concurrent() {
        let p = Prime::new(32003).unwrap();
        let h = Hexad::random(p, &mut ChaCha8Rng::seed_from_u64(1));
        let labels = ["k(1,23)", "k(1,45)", "k(2,45)"].map(|s| s.parse().unwrap());
        assert!(matches!(common_point(&h, labels), Err(TheoremError::NotConcurrent(..))));
    }

    #[test]
    fn curve_spec_lines_are_concurrent() {
        let spec = CurveSpec::random(Pattern::Steiner, Prime::new(32003).unwrap(), 0, 4);
        assert!(spec.lines.iter().all(|l| spec.base.lies_on(l)));
        assert!(!spec.base.on_conic());
    }

    #[test]
    fn trivial_concurrency_arrays() {
        let expect = ["[[A,B,C],[F,E,D]]", "[[A,D,F],[B,C,E]]", "[[A,C,F],[B,D,E]]"];
        for (l, e) in trivial_concurrency_labels().iter().zip(expect) {
            assert_eq!(l.to_symbol(), e.parse().unwrap());
        }
    }

    // Cross-checked against the four-variable route and against brute force
    // over F_101 fiber by fiber.
    #[test]
    fn fiber_degrees_are_stable() {
        for (pat, expect) in [(Pattern::Steiner, 4), (Pattern::Kirkman, 7), (Pattern::Trivial, 4)] {
            for prime in [32003, 43051] {
                for (letter, seed) in [(0, 11), (3, 12)] {
                    let d = fiber_degree_retrying(pat, Prime::new(prime).unwrap(), letter, seed, 3).unwrap();
                    assert_eq!(d, expect, "{pat:?} p={prime} letter {letter}");
                }
            }
        }
    }

    #[test]
    fn non_concurrent_lines_give_empty_fiber() {
        let p = Prime::new(32003).unwrap();
        let mut spec = CurveSpec::random(Pattern::Steiner, p, 0, 5);
        spec.lines = crate::pipeline::random_lines(p, 5);
        assert_eq!(fiber_degree(&spec).unwrap(), Some(0));
    }
}
