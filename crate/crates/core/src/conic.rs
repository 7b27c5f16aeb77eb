//! Projective geometry over `F_p` on the conic `z0 z2 = z1^2`, parametrized
//! by `tau(r) = [1, r, r^2]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use hexagram_algebra::{FieldElement, MonomialOrder, Polynomial, Prime, Ring};
use rand::Rng;
use thiserror::Error;

use crate::labels::{PascalLabel, PascalSymbol, LETTERS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the zero vector is not a projective point or line")]
    ZeroVector,
    #[error("coordinates come from different fields")]
    PrimeMismatch,
    #[error("arguments are proportional; their meet or join is undefined")]
    Degenerate,
    #[error("chord through a repeated point is undefined (use the tangent)")]
    TangentUndefined,
    #[error("the second intersection is the point at infinity")]
    AtInfinity,
    #[error("the line is tangent to the conic at the given point")]
    Tangency,
    #[error("tau({0}) does not lie on the line")]
    NotOnLine(u32),
    #[error("hexad parameters must be six distinct values")]
    RepeatedPoint,
    #[error("pascal of {0} is degenerate for this hexad")]
    DegeneratePascal(PascalSymbol),
    #[error("three points expected collinear are not: {0}")]
    TheoremViolation(String),
}

fn cross(u: [FieldElement; 3], v: [FieldElement; 3]) -> [FieldElement; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(u: [FieldElement; 3], v: [FieldElement; 3]) -> FieldElement {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn nonzero(c: [FieldElement; 3]) -> Result<[FieldElement; 3], GeometryError> {
    if c[0].prime() != c[1].prime() || c[1].prime() != c[2].prime() {
        return Err(GeometryError::PrimeMismatch);
    }
    if c.iter().all(|x| x.is_zero()) {
        return Err(GeometryError::ZeroVector);
    }
    Ok(c)
}

/// Proportional iff all 2x2 minors vanish.
fn proportional(u: [FieldElement; 3], v: [FieldElement; 3]) -> bool {
    cross(u, v).iter().all(|x| x.is_zero())
}

macro_rules! projective_type {
    ($name:ident, $open:literal, $close:literal) => {
        #[derive(Debug, Clone, Copy)]
        pub struct $name([FieldElement; 3]);

        impl $name {
            pub fn new(c: [FieldElement; 3]) -> Result<Self, GeometryError> {
                nonzero(c).map($name)
            }

            pub fn from_i64(p: Prime, c: [i64; 3]) -> Result<Self, GeometryError> {
                Self::new(c.map(|x| p.element(x)))
            }

            pub fn coords(&self) -> [FieldElement; 3] {
                self.0
            }

            pub fn prime(&self) -> Prime {
                self.0[0].prime()
            }

            /// Representative scaled so that its first nonzero coordinate is 1.
            pub fn normalized(&self) -> Self {
                let lead = self.0.iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
                $name(self.0.map(|x| x * lead))
            }
        }

        impl PartialEq for $name {
            fn eq(&self, other: &Self) -> bool {
                self.prime() == other.prime() && proportional(self.0, other.0)
            }
        }

        impl Eq for $name {}

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}, {}, {}{}", $open, self.0[0], self.0[1], self.0[2], $close)
            }
        }
    };
}

projective_type!(ProjectivePoint, "[", "]");
projective_type!(ProjectiveLine, "⟨", "⟩");

impl ProjectivePoint {
    pub fn lies_on(&self, l: &ProjectiveLine) -> bool {
        dot(self.0, l.0).is_zero()
    }

    pub fn on_conic(&self) -> bool {
        let [z0, z1, z2] = self.0;
        (z0 * z2 - z1 * z1).is_zero()
    }
}

impl ProjectiveLine {
    /// Values of `l0 + l1 x + l2 x^2`, which vanish exactly at the parameters
    /// of the conic points on the line.
    pub fn conic_restriction(&self, r: FieldElement) -> FieldElement {
        self.0[0] + self.0[1] * r + self.0[2] * r * r
    }
}

pub fn tau(r: FieldElement) -> ProjectivePoint {
    ProjectivePoint([FieldElement::one(r.prime()), r, r * r])
}

/// The line `<rs, -(r+s), 1>` through `tau(r)` and `tau(s)`.
pub fn chord(r: FieldElement, s: FieldElement) -> Result<ProjectiveLine, GeometryError> {
    if r.prime() != s.prime() {
        return Err(GeometryError::PrimeMismatch);
    }
    if r == s {
        return Err(GeometryError::TangentUndefined);
    }
    Ok(ProjectiveLine([r * s, -(r + s), FieldElement::one(r.prime())]))
}

/// The tangent `<r^2, -2r, 1>` at `tau(r)`.
pub fn tangent(r: FieldElement) -> ProjectiveLine {
    let two = r.prime().element(2);
    ProjectiveLine([r * r, -(two * r), FieldElement::one(r.prime())])
}

pub fn meet(l1: &ProjectiveLine, l2: &ProjectiveLine) -> Result<ProjectivePoint, GeometryError> {
    if l1.prime() != l2.prime() {
        return Err(GeometryError::PrimeMismatch);
    }
    ProjectivePoint::new(cross(l1.0, l2.0)).map_err(|_| GeometryError::Degenerate)
}

pub fn join(p1: &ProjectivePoint, p2: &ProjectivePoint) -> Result<ProjectiveLine, GeometryError> {
    if p1.prime() != p2.prime() {
        return Err(GeometryError::PrimeMismatch);
    }
    ProjectiveLine::new(cross(p1.0, p2.0)).map_err(|_| GeometryError::Degenerate)
}

/// Determinant of three coordinate vectors; zero iff the lines are
/// concurrent (or the points collinear).
pub fn det3(a: [FieldElement; 3], b: [FieldElement; 3], c: [FieldElement; 3]) -> FieldElement {
    dot(a, cross(b, c))
}

/// The parameter of the other conic point on a line through `tau(r)`.
pub fn second_intersection(l: &ProjectiveLine, r: FieldElement) -> Result<FieldElement, GeometryError> {
    let [l0, l1, l2] = l.0;
    if !l.conic_restriction(r).is_zero() {
        return Err(GeometryError::NotOnLine(r.value()));
    }
    if l2.is_zero() {
        return Err(GeometryError::AtInfinity);
    }
    let other = if r.is_zero() {
        -l1 * l2.inv().unwrap()
    } else {
        l0 * (l2 * r).inv().unwrap()
    };
    if other == r {
        return Err(GeometryError::Tangency);
    }
    Ok(other)
}

/// Six distinct conic parameters for the letters A..F; the point at
/// infinity is never used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hexad([FieldElement; 6]);

impl Hexad {
    pub fn new(params: [FieldElement; 6]) -> Result<Self, GeometryError> {
        let p = params[0].prime();
        if params.iter().any(|x| x.prime() != p) {
            return Err(GeometryError::PrimeMismatch);
        }
        for i in 0..6 {
            for j in i + 1..6 {
                if params[i] == params[j] {
                    return Err(GeometryError::RepeatedPoint);
                }
            }
        }
        Ok(Hexad(params))
    }

    pub fn from_i64(p: Prime, params: [i64; 6]) -> Result<Self, GeometryError> {
        Self::new(params.map(|x| p.element(x)))
    }

    pub fn random<R: Rng>(p: Prime, rng: &mut R) -> Self {
        loop {
            let params = std::array::from_fn(|_| p.element(rng.gen_range(0..p.get()) as i64));
            if let Ok(h) = Hexad::new(params) {
                return h;
            }
        }
    }

    pub fn params(&self) -> [FieldElement; 6] {
        self.0
    }

    pub fn prime(&self) -> Prime {
        self.0[0].prime()
    }

    pub fn param(&self, letter: u8) -> FieldElement {
        self.0[letter as usize]
    }

    pub fn point(&self, letter: u8) -> ProjectivePoint {
        tau(self.0[letter as usize])
    }

    /// The chord through two of the six points.
    pub fn chord(&self, x: u8, y: u8) -> ProjectiveLine {
        chord(self.0[x as usize], self.0[y as usize]).unwrap()
    }

    /// Letters permuted: the point of letter `sigma(X)` moves to `X`.
    pub fn permuted(&self, images: [u8; 6]) -> Hexad {
        Hexad(images.map(|i| self.0[i as usize]))
    }
}

impl fmt::Display for Hexad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The three intersection points of opposite chords of the array.
pub fn pascal_points(h: &Hexad, s: &PascalSymbol) -> Result<[ProjectivePoint; 3], GeometryError> {
    let mut out = Vec::with_capacity(3);
    for ((a, b), (c, d)) in s.chord_pairs() {
        out.push(meet(&h.chord(a, b), &h.chord(c, d)).map_err(|_| GeometryError::DegeneratePascal(*s))?);
    }
    Ok([out[0], out[1], out[2]])
}

/// The line carrying the three points of [`pascal_points`]. All three
/// incidences are checked.
pub fn pascal_line(h: &Hexad, s: &PascalSymbol) -> Result<ProjectiveLine, GeometryError> {
    let pts = pascal_points(h, s)?;
    let line = join(&pts[0], &pts[1])
        .or_else(|_| join(&pts[0], &pts[2]))
        .or_else(|_| join(&pts[1], &pts[2]))
        .map_err(|_| GeometryError::DegeneratePascal(*s))?;
    if let Some(bad) = pts.iter().find(|q| !q.lies_on(&line)) {
        return Err(GeometryError::TheoremViolation(format!(
            "{bad} is off the line {line} for {s} and hexad {h}"
        )));
    }
    Ok(line)
}

pub fn pascal_line_of_label(h: &Hexad, l: &PascalLabel) -> Result<ProjectiveLine, GeometryError> {
    pascal_line(h, &l.to_symbol())
}

/// Coordinates `(u0, u1, u2)` of the pascal of `[[A,B,C],[F,E,D]]` as
/// polynomials in the parameters `a..f`.
pub const STANDARD_COORDS: [&str; 3] = [
    "abde-abdf-acde+acef+bcdf-bcef",
    "-abe+abf+acd-acf+adf-aef-bcd+bce-bde+bef+cde-cdf",
    "-ad+ae+bd-bf-ce+cf",
];

pub const PARAM_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Symbolic pascal coordinates for all 60 symbols over one prime.
pub struct SymbolicPascals {
    ring: Arc<Ring>,
    coords: HashMap<PascalSymbol, [Polynomial; 3]>,
}

impl SymbolicPascals {
    pub fn new(p: Prime) -> Self {
        let ring = Ring::new(p, &PARAM_NAMES, MonomialOrder::DegRevLex).unwrap();
        let std = STANDARD_COORDS.map(|s| Polynomial::parse(&ring, s).unwrap());
        let coords = PascalSymbol::all()
            .iter()
            .map(|s| {
                let sigma = s.from_standard().images();
                let map: Vec<usize> = sigma.iter().map(|&i| i as usize).collect();
                (*s, std.clone().map(|u| u.map_vars(&ring, &map)))
            })
            .collect();
        SymbolicPascals { ring, coords }
    }

    /// Cached per prime.
    pub fn for_prime(p: Prime) -> Arc<SymbolicPascals> {
        static CACHE: OnceLock<Mutex<HashMap<Prime, Arc<SymbolicPascals>>>> = OnceLock::new();
        let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
        Arc::clone(cache.entry(p).or_insert_with(|| Arc::new(SymbolicPascals::new(p))))
    }

    /// The ring `F_p[a..f]` with degrevlex order.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coords(&self, s: &PascalSymbol) -> &[Polynomial; 3] {
        &self.coords[s]
    }
}

/// Shorthand for the cached coordinates of one symbol.
pub fn pascal_coords(p: Prime, s: &PascalSymbol) -> [Polynomial; 3] {
    SymbolicPascals::for_prime(p).coords(s).clone()
}

pub fn letter_name(i: u8) -> char {
    LETTERS[i as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p101() -> Prime {
        Prime::new(101).unwrap()
    }

    fn e(v: i64) -> FieldElement {
        p101().element(v)
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(e(0)).coords().map(|x| x.value()), [1, 0, 0]);
        assert_eq!(tau(e(48)).coords().map(|x| x.value()), [1, 48, 82]);
        assert!(tau(e(77)).on_conic());
    }

    #[test]
    fn chord_examples() {
        assert_eq!(chord(e(0), e(1)).unwrap().coords().map(|x| x.value()), [0, 100, 1]);
        assert_eq!(chord(e(2), e(3)).unwrap().coords().map(|x| x.value()), [6, 96, 1]);
        assert_eq!(chord(e(2), e(2)), Err(GeometryError::TangentUndefined));
        assert!(tau(e(5)).lies_on(&tangent(e(5))));
    }

    #[test]
    fn meet_and_join_examples() {
        let p = p101();
        let x = ProjectiveLine::from_i64(p, [1, 0, 0]).unwrap();
        let y = ProjectiveLine::from_i64(p, [0, 1, 0]).unwrap();
        assert_eq!(meet(&x, &y).unwrap(), ProjectivePoint::from_i64(p, [0, 0, 1]).unwrap());
        assert_eq!(meet(&x, &x), Err(GeometryError::Degenerate));
        let q = meet(&x, &y).unwrap();
        let on_x = ProjectivePoint::from_i64(p, [0, 3, 7]).unwrap();
        assert_eq!(join(&q, &on_x).unwrap(), x);
        assert_eq!(ProjectiveLine::from_i64(p, [0, 0, 0]), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn second_intersection_examples() {
        assert_eq!(second_intersection(&chord(e(2), e(3)).unwrap(), e(2)).unwrap(), e(3));
        assert_eq!(second_intersection(&chord(e(0), e(1)).unwrap(), e(0)).unwrap(), e(1));
        assert_eq!(second_intersection(&tangent(e(4)), e(4)), Err(GeometryError::Tangency));
        let vertical = ProjectiveLine::from_i64(p101(), [-3, 1, 0]).unwrap();
        assert_eq!(second_intersection(&vertical, e(3)), Err(GeometryError::AtInfinity));
        assert_eq!(second_intersection(&chord(e(2), e(3)).unwrap(), e(4)), Err(GeometryError::NotOnLine(4)));
    }

    #[test]
    fn worked_hexad_pascal() {
        let h = Hexad::from_i64(p101(), [48, 49, 14, 92, 9, 57]).unwrap();
        let line = pascal_line(&h, &PascalSymbol::standard()).unwrap();
        assert_eq!(line, ProjectiveLine::from_i64(p101(), [1, 35, 48]).unwrap());
    }

    #[test]
    fn standard_coordinates_follow_from_geometry() {
        let sp = SymbolicPascals::for_prime(Prime::new(32003).unwrap());
        let r = sp.ring();
        let v = |i| Polynomial::var(r, i);
        let chord = |x: usize, y: usize| [v(x).mul(&v(y)), v(x).add(&v(y)).neg(), Polynomial::one(r)];
        let cross = |a: &[Polynomial; 3], b: &[Polynomial; 3]| {
            [0, 1, 2].map(|i| {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                a[j].mul(&b[k]).sub(&a[k].mul(&b[j]))
            })
        };
        // A, B, C, D, E, F = 0..6; the standard array pairs AE with BF and AD with CF.
        let line = cross(&cross(&chord(0, 4), &chord(1, 5)), &cross(&chord(0, 3), &chord(2, 5)));
        let u = sp.coords(&PascalSymbol::standard());
        assert!(cross(&line, u).iter().all(Polynomial::is_zero));
        assert!(!u[2].is_zero());
    }

    #[test]
    fn standard_coordinates_print_as_given() {
        let sp = SymbolicPascals::for_prime(Prime::new(32003).unwrap());
        let lex = sp.ring().with_order(MonomialOrder::Lex);
        let printed: Vec<String> = sp.coords(&PascalSymbol::standard()).iter().map(|u| u.reorder(&lex).to_string()).collect();
        assert_eq!(printed, STANDARD_COORDS);
    }

    #[test]
    fn symbolic_and_geometric_pascals_agree() {
        let p = Prime::new(32003).unwrap();
        let sp = SymbolicPascals::for_prime(p);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let h = Hexad::random(p, &mut rng);
            for s in PascalSymbol::all() {
                let u = sp.coords(s).clone().map(|u| u.evaluate_all(&h.params()).unwrap());
                let line = pascal_line(&h, s).unwrap();
                assert_eq!(ProjectiveLine::new(u).unwrap(), line, "{s}");
            }
        }
    }

    #[test]
    fn row_shuffle_leaves_coordinates_unchanged() {
        let p = Prime::new(32003).unwrap();
        let a: PascalSymbol = "[[F,E,D],[A,B,C]]".parse().unwrap();
        assert_eq!(pascal_coords(p, &a), pascal_coords(p, &PascalSymbol::standard()));
    }
}
