//! Permutations of the letters A-F and digits 1-6, the outer automorphism
//! between them, pascal symbols and labels, and the orbit structure of label
//! triples.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("not a permutation of six symbols: {0:?}")]
    NotBijective([u8; 6]),
    #[error("zeta table inconsistent: {0}")]
    InconsistentTable(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("label k({w},{x}{y}) is malformed: digits must be distinct")]
    BadLabel { w: u8, x: u8, y: u8 },
    #[error("a triple needs three distinct labels")]
    RepeatedLabel,
}

pub const LETTERS: [char; 6] = ['A', 'B', 'C', 'D', 'E', 'F'];

/// A bijection of `{0..5}`. Composition `a.compose(b)` applies `b` first.
/// Whether the points are letters or digits is decided by context; the
/// display helpers pick the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation([u8; 6]);

impl Permutation {
    pub const IDENTITY: Permutation = Permutation([0, 1, 2, 3, 4, 5]);

    pub fn new(images: [u8; 6]) -> Result<Self, LabelError> {
        let mut seen = [false; 6];
        for &i in &images {
            if i >= 6 || seen[i as usize] {
                return Err(LabelError::NotBijective(images));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation(images))
    }

    pub fn transposition(i: u8, j: u8) -> Self {
        let mut im = Self::IDENTITY.0;
        im.swap(i as usize, j as usize);
        Permutation(im)
    }

    /// Product of disjoint cycles given as point lists.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self, LabelError> {
        let mut im = Self::IDENTITY.0;
        for c in cycles {
            for k in 0..c.len() {
                im[c[k] as usize] = c[(k + 1) % c.len()];
            }
        }
        Self::new(im)
    }

    pub fn images(&self) -> [u8; 6] {
        self.0
    }

    #[inline]
    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn compose(&self, first: &Permutation) -> Permutation {
        Permutation(first.0.map(|i| self.0[i as usize]))
    }

    pub fn inverse(&self) -> Permutation {
        let mut im = [0u8; 6];
        for (i, &j) in self.0.iter().enumerate() {
            im[j as usize] = i as u8;
        }
        Permutation(im)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 6];
        let mut out = Vec::new();
        for s in 0..6u8 {
            if seen[s as usize] {
                continue;
            }
            let mut c = vec![s];
            seen[s as usize] = true;
            let mut k = self.apply(s);
            while k != s {
                seen[k as usize] = true;
                c.push(k);
                k = self.apply(k);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Lengths of the nontrivial cycles, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, |acc, l| lcm(acc, l))
    }

    /// All 720 permutations in lexicographic order of their image arrays.
    pub fn all() -> &'static [Permutation] {
        static ALL: OnceLock<Vec<Permutation>> = OnceLock::new();
        ALL.get_or_init(|| {
            let mut out = Vec::with_capacity(720);
            let mut im = [0u8, 1, 2, 3, 4, 5];
            loop {
                out.push(Permutation(im));
                // next lexicographic permutation
                let Some(i) = (0..5).rev().find(|&i| im[i] < im[i + 1]) else { break };
                let j = (i + 1..6).rev().find(|&j| im[j] > im[i]).unwrap();
                im.swap(i, j);
                im[i + 1..].reverse();
            }
            out
        })
    }

    /// The 15 transpositions, ordered by their pair.
    pub fn transpositions() -> Vec<Permutation> {
        let mut v = Vec::with_capacity(15);
        for i in 0..6 {
            for j in i + 1..6 {
                v.push(Self::transposition(i, j));
            }
        }
        v
    }

    pub fn letters(&self) -> CycleDisplay<'_> {
        CycleDisplay { perm: self, digits: false }
    }

    pub fn digits(&self) -> CycleDisplay<'_> {
        CycleDisplay { perm: self, digits: true }
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Cycle notation, e.g. `(A D)(B E)(C F)` or `(2 3)(4 5)`; `e` for the identity.
pub struct CycleDisplay<'a> {
    perm: &'a Permutation,
    digits: bool,
}

impl fmt::Display for CycleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.perm.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            let pts: Vec<String> = c
                .iter()
                .map(|&i| if self.digits { (i + 1).to_string() } else { LETTERS[i as usize].to_string() })
                .collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Images of the transpositions (X Y) of the letters, as triples of digit
/// transpositions, in the order AB, AC, ..., EF.
const ZETA_TABLE: [(&str, &str); 15] = [
    ("AB", "14.25.36"),
    ("AC", "16.24.35"),
    ("AD", "13.26.45"),
    ("AE", "12.34.56"),
    ("AF", "15.23.46"),
    ("BC", "15.26.34"),
    ("BD", "12.35.46"),
    ("BE", "16.23.45"),
    ("BF", "13.24.56"),
    ("CD", "14.23.56"),
    ("CE", "13.25.46"),
    ("CF", "12.36.45"),
    ("DE", "15.24.36"),
    ("DF", "16.25.34"),
    ("EF", "14.26.35"),
];

/// Images of the digit transpositions under the inverse map; used only to
/// validate the constructed isomorphism.
pub const ZETA_INV_TABLE: [(&str, &str); 15] = [
    ("12", "AE.BD.CF"),
    ("13", "AD.BF.CE"),
    ("14", "AB.CD.EF"),
    ("15", "AF.BC.DE"),
    ("16", "AC.BE.DF"),
    ("23", "AF.BE.CD"),
    ("24", "AC.BF.DE"),
    ("25", "AB.CE.DF"),
    ("26", "AD.BC.EF"),
    ("34", "AE.BC.DF"),
    ("35", "AC.BD.EF"),
    ("36", "AB.CF.DE"),
    ("45", "AD.BE.CF"),
    ("46", "AF.BD.CE"),
    ("56", "AE.BF.CD"),
];

fn letter_index(c: char) -> Option<u8> {
    LETTERS.iter().position(|&l| l == c).map(|i| i as u8)
}

fn digit_index(c: char) -> Option<u8> {
    c.to_digit(10).filter(|d| (1..=6).contains(d)).map(|d| d as u8 - 1)
}

/// Parses "14.25.36" (digits) or "AE.BD.CF" (letters) into a permutation.
pub fn parse_involution(s: &str, digits: bool) -> Result<Permutation, LabelError> {
    let bad = || LabelError::Parse { what: "involution", input: s.to_string() };
    let idx = if digits { digit_index } else { letter_index };
    let mut pairs = Vec::new();
    for part in s.split('.') {
        let cs: Vec<char> = part.chars().collect();
        if cs.len() != 2 {
            return Err(bad());
        }
        pairs.push([idx(cs[0]).ok_or_else(bad)?, idx(cs[1]).ok_or_else(bad)?]);
    }
    let cycles: Vec<&[u8]> = pairs.iter().map(|p| p.as_slice()).collect();
    Permutation::from_cycles(&cycles).map_err(|_| bad())
}

/// The outer automorphism from permutations of letters to permutations of
/// digits, tabulated on all 720 elements.
pub struct Zeta {
    forward: HashMap<Permutation, Permutation>,
    backward: HashMap<Permutation, Permutation>,
}

impl Zeta {
    /// Extends the transposition table along words in transpositions and
    /// checks that the extension is a well-defined bijective homomorphism.
    pub fn build() -> Result<Zeta, LabelError> {
        let mut gens = Vec::new();
        for (t, img) in ZETA_TABLE {
            let cs: Vec<char> = t.chars().collect();
            let src = Permutation::transposition(letter_index(cs[0]).unwrap(), letter_index(cs[1]).unwrap());
            gens.push((src, parse_involution(img, true)?));
        }
        let mut forward = HashMap::with_capacity(720);
        forward.insert(Permutation::IDENTITY, Permutation::IDENTITY);
        let mut queue = VecDeque::from([Permutation::IDENTITY]);
        while let Some(s) = queue.pop_front() {
            let zs = forward[&s];
            for (t, zt) in &gens {
                let st = s.compose(t);
                let z = zs.compose(zt);
                match forward.get(&st) {
                    Some(prev) if *prev != z => {
                        return Err(LabelError::InconsistentTable(format!(
                            "{} has images {} and {}",
                            st.letters(),
                            prev.digits(),
                            z.digits()
                        )))
                    }
                    Some(_) => {}
                    None => {
                        forward.insert(st, z);
                        queue.push_back(st);
                    }
                }
            }
        }
        let backward: HashMap<Permutation, Permutation> = forward.iter().map(|(a, b)| (*b, *a)).collect();
        if forward.len() != 720 || backward.len() != 720 {
            return Err(LabelError::InconsistentTable("map is not a bijection of S6".into()));
        }
        let zeta = Zeta { forward, backward };
        zeta.validate()?;
        Ok(zeta)
    }

    /// Shared instance, built and validated on first use.
    pub fn global() -> &'static Zeta {
        static Z: OnceLock<Zeta> = OnceLock::new();
        Z.get_or_init(|| Zeta::build().expect("built-in zeta table is consistent"))
    }

    fn validate(&self) -> Result<(), LabelError> {
        for a in Permutation::all() {
            for b in Permutation::all() {
                if self.apply(&a.compose(b)) != self.apply(a).compose(&self.apply(b)) {
                    return Err(LabelError::InconsistentTable(format!(
                        "not multiplicative at {}, {}",
                        a.letters(),
                        b.letters()
                    )));
                }
            }
        }
        for (t, img) in ZETA_INV_TABLE {
            let src = parse_involution(t, true)?;
            let expect = parse_involution(img, false)?;
            if self.apply_inv(&src) != expect {
                return Err(LabelError::InconsistentTable(format!(
                    "inverse image of {} is {}, table says {}",
                    src.digits(),
                    self.apply_inv(&src).letters(),
                    expect.letters()
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, sigma: &Permutation) -> Permutation {
        self.forward[sigma]
    }

    pub fn apply_inv(&self, pi: &Permutation) -> Permutation {
        self.backward[pi]
    }
}

/// A 2x3 array of the six letters, stored in canonical form: the
/// lexicographically smallest of its 12 row and column shuffles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PascalSymbol([[u8; 3]; 2]);

const COLUMN_ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl PascalSymbol {
    pub fn new(rows: [[u8; 3]; 2]) -> Result<Self, LabelError> {
        let flat = [rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2]];
        Permutation::new(flat)?;
        let mut best = rows;
        for swap in [false, true] {
            let (top, bot) = if swap { (rows[1], rows[0]) } else { (rows[0], rows[1]) };
            for ord in COLUMN_ORDERS {
                let cand = [ord.map(|c| top[c]), ord.map(|c| bot[c])];
                if cand < best {
                    best = cand;
                }
            }
        }
        Ok(PascalSymbol(best))
    }

    /// `[[A,B,C],[F,E,D]]`, whose line has the hard-coded coordinates.
    pub fn standard() -> Self {
        PascalSymbol([[0, 1, 2], [5, 4, 3]])
    }

    pub fn rows(&self) -> [[u8; 3]; 2] {
        self.0
    }

    /// All 60 symbols in increasing order.
    pub fn all() -> &'static [PascalSymbol] {
        static ALL: OnceLock<Vec<PascalSymbol>> = OnceLock::new();
        ALL.get_or_init(|| {
            let set: BTreeSet<PascalSymbol> = Permutation::all()
                .iter()
                .map(|p| {
                    let i = p.images();
                    PascalSymbol::new([[i[0], i[1], i[2]], [i[3], i[4], i[5]]]).unwrap()
                })
                .collect();
            set.into_iter().collect()
        })
    }

    /// Replaces every letter X by sigma(X).
    pub fn act(&self, sigma: &Permutation) -> PascalSymbol {
        PascalSymbol::new(self.0.map(|r| r.map(|x| sigma.apply(x)))).unwrap()
    }

    /// A letter permutation carrying the standard symbol to this one.
    pub fn from_standard(&self) -> Permutation {
        let std = PascalSymbol::standard().0;
        let mut im = [0u8; 6];
        for r in 0..2 {
            for c in 0..3 {
                im[std[r][c] as usize] = self.0[r][c];
            }
        }
        Permutation(im)
    }

    /// The three column pairs `(x_i y_j, x_j y_i)` for `i < j`; the pascal is
    /// the line through the meets of the chords in each pair.
    pub fn chord_pairs(&self) -> [((u8, u8), (u8, u8)); 3] {
        let [x, y] = self.0;
        [(0, 1), (0, 2), (1, 2)].map(|(i, j)| ((x[i], y[j]), (x[j], y[i])))
    }

    /// The two perfect matchings between the rows that avoid the columns,
    /// each as a product of three transpositions of letters.
    fn matchings(&self) -> [Permutation; 2] {
        let [t, b] = self.0;
        let m = |s: usize| {
            let pairs: Vec<[u8; 2]> = (0..3).map(|k| [t[k], b[(k + s) % 3]]).collect();
            let cycles: Vec<&[u8]> = pairs.iter().map(|p| p.as_slice()).collect();
            Permutation::from_cycles(&cycles).unwrap()
        };
        [m(1), m(2)]
    }

    pub fn to_label(&self) -> PascalLabel {
        let z = Zeta::global();
        let [m1, m2] = self.matchings();
        let (t1, t2) = (z.apply(&m1).cycles(), z.apply(&m2).cycles());
        assert!(t1.len() == 1 && t1[0].len() == 2 && t2.len() == 1 && t2[0].len() == 2);
        let (a, b) = (&t1[0], &t2[0]);
        let w = *a.iter().find(|v| b.contains(v)).expect("matching images share a point");
        let x = *a.iter().find(|&&v| v != w).unwrap();
        let y = *b.iter().find(|&&v| v != w).unwrap();
        PascalLabel::new(w, x, y).unwrap()
    }
}

impl fmt::Display for PascalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: [u8; 3]| r.map(|i| LETTERS[i as usize].to_string()).join(",");
        write!(f, "[[{}],[{}]]", row(self.0[0]), row(self.0[1]))
    }
}

impl FromStr for PascalSymbol {
    type Err = LabelError;

    /// Accepts `[[A,B,C],[F,E,D]]` or the compact `ABC/FED`.
    fn from_str(s: &str) -> Result<Self, LabelError> {
        let bad = || LabelError::Parse { what: "pascal symbol", input: s.to_string() };
        let letters: Vec<u8> = s.chars().filter(|c| c.is_ascii_alphabetic()).map(|c| letter_index(c.to_ascii_uppercase())).collect::<Option<_>>().ok_or_else(bad)?;
        if letters.len() != 6 {
            return Err(bad());
        }
        PascalSymbol::new([[letters[0], letters[1], letters[2]], [letters[3], letters[4], letters[5]]]).map_err(|_| bad())
    }
}

/// The label `k(w, xy)`, digits stored zero-based with `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PascalLabel {
    w: u8,
    x: u8,
    y: u8,
}

impl PascalLabel {
    /// Zero-based digits; the pair is sorted.
    pub fn new(w: u8, x: u8, y: u8) -> Result<Self, LabelError> {
        if w >= 6 || x >= 6 || y >= 6 || w == x || w == y || x == y {
            return Err(LabelError::BadLabel { w: w + 1, x: x + 1, y: y + 1 });
        }
        Ok(PascalLabel { w, x: x.min(y), y: x.max(y) })
    }

    /// One-based digits, as printed: `k(1,23)` is `from_digits(1, 2, 3)`.
    pub fn from_digits(w: u8, x: u8, y: u8) -> Result<Self, LabelError> {
        if !(1..=6).contains(&w) || !(1..=6).contains(&x) || !(1..=6).contains(&y) {
            return Err(LabelError::BadLabel { w, x, y });
        }
        Self::new(w - 1, x - 1, y - 1)
    }

    pub fn w(&self) -> u8 {
        self.w
    }

    pub fn pair(&self) -> (u8, u8) {
        (self.x, self.y)
    }

    /// All 60 labels in increasing order.
    pub fn all() -> Vec<PascalLabel> {
        let mut v = Vec::with_capacity(60);
        for w in 0..6 {
            for x in 0..6 {
                for y in x + 1..6 {
                    if x != w && y != w {
                        v.push(PascalLabel { w, x, y });
                    }
                }
            }
        }
        v
    }

    pub fn act(&self, pi: &Permutation) -> PascalLabel {
        PascalLabel::new(pi.apply(self.w), pi.apply(self.x), pi.apply(self.y)).unwrap()
    }

    pub fn to_symbol(&self) -> PascalSymbol {
        static MAP: OnceLock<HashMap<PascalLabel, PascalSymbol>> = OnceLock::new();
        MAP.get_or_init(|| PascalSymbol::all().iter().map(|s| (s.to_label(), *s)).collect())[self]
    }

    /// `(1, 23)`-style text.
    pub fn short(&self) -> String {
        format!("({}, {}{})", self.w + 1, self.x + 1, self.y + 1)
    }
}

impl fmt::Display for PascalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k({},{}{})", self.w + 1, self.x + 1, self.y + 1)
    }
}

impl FromStr for PascalLabel {
    type Err = LabelError;

    /// Accepts `k(1,23)`, `(1, 23)`, `k(1,{2,3})` and `1,23`.
    fn from_str(s: &str) -> Result<Self, LabelError> {
        let bad = || LabelError::Parse { what: "pascal label", input: s.to_string() };
        let digits: Vec<u8> = s
            .trim()
            .trim_start_matches('k')
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | '{' | '}' | ',' | ' '))
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if digits.len() != 3 {
            return Err(bad());
        }
        PascalLabel::from_digits(digits[0], digits[1], digits[2]).map_err(|_| bad())
    }
}

/// Three distinct labels, kept sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple([PascalLabel; 3]);

impl Triple {
    pub fn new(labels: [PascalLabel; 3]) -> Result<Self, LabelError> {
        let mut l = labels;
        l.sort();
        if l[0] == l[1] || l[1] == l[2] {
            return Err(LabelError::RepeatedLabel);
        }
        Ok(Triple(l))
    }

    pub fn labels(&self) -> [PascalLabel; 3] {
        self.0
    }

    pub fn act(&self, pi: &Permutation) -> Triple {
        Triple::new(self.0.map(|l| l.act(pi))).unwrap()
    }

    /// Digit permutations fixing each label of the triple.
    pub fn stabilizer(&self) -> Vec<Permutation> {
        Permutation::all()
            .iter()
            .filter(|p| self.0.iter().all(|l| l.act(p) == *l))
            .copied()
            .collect()
    }

    /// Digit permutations mapping the triple to itself as a set.
    pub fn setwise_stabilizer(&self) -> Vec<Permutation> {
        Permutation::all().iter().filter(|p| self.act(p) == *self).copied().collect()
    }

    /// All C(60,3) triples in increasing order.
    pub fn all() -> Vec<Triple> {
        let labels = PascalLabel::all();
        let mut v = Vec::with_capacity(34_220);
        for i in 0..60 {
            for j in i + 1..60 {
                for k in j + 1..60 {
                    v.push(Triple([labels[i], labels[j], labels[k]]));
                }
            }
        }
        v
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(PascalLabel::short).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl FromStr for Triple {
    type Err = LabelError;

    /// Accepts `(1, 23), (1, 24), (1, 25)`, `k(1,23) k(1,24) k(1,25)` and
    /// similar: three groups of three digits.
    fn from_str(s: &str) -> Result<Self, LabelError> {
        let bad = || LabelError::Parse { what: "label triple", input: s.to_string() };
        let digits: Vec<u8> = s.chars().filter_map(|c| c.to_digit(10)).map(|d| d as u8).collect();
        if digits.len() != 9 || s.chars().any(|c| !(c.is_ascii_digit() || "k(){}, ;".contains(c))) {
            return Err(bad());
        }
        let l = |k: usize| PascalLabel::from_digits(digits[k], digits[k + 1], digits[k + 2]).map_err(|_| bad());
        Triple::new([l(0)?, l(3)?, l(6)?])
    }
}

/// Isomorphism type of a pointwise stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum StabilizerClass {
    Trivial,
    Z2,
    Z2xZ2,
    /// Anything larger; occurs only for triples with intersection number 0.
    Other(usize),
}

impl StabilizerClass {
    pub fn of(group: &[Permutation]) -> Self {
        match group.len() {
            1 => StabilizerClass::Trivial,
            2 => StabilizerClass::Z2,
            4 if group.iter().all(|g| g.order() <= 2) => StabilizerClass::Z2xZ2,
            n => StabilizerClass::Other(n),
        }
    }
}

impl fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilizerClass::Trivial => write!(f, "1"),
            StabilizerClass::Z2 => write!(f, "Z2"),
            StabilizerClass::Z2xZ2 => write!(f, "Z2xZ2"),
            StabilizerClass::Other(n) => write!(f, "order {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// 1-based position in the ordered list of representatives.
    pub index: usize,
    pub representative: Triple,
    pub size: usize,
    pub stabilizer: Vec<Permutation>,
}

impl Orbit {
    pub fn stabilizer_class(&self) -> StabilizerClass {
        StabilizerClass::of(&self.stabilizer)
    }
}

/// Orbits of label triples under the digit permutations, each represented by
/// its smallest element, in increasing order of representative.
pub fn enumerate_orbits() -> &'static [Orbit] {
    static ORBITS: OnceLock<Vec<Orbit>> = OnceLock::new();
    ORBITS.get_or_init(|| {
        let all = Triple::all();
        let index: HashMap<Triple, usize> = all.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut seen = vec![false; all.len()];
        let mut out = Vec::new();
        for (i, t) in all.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut size = 0;
            for p in Permutation::all() {
                let j = index[&t.act(p)];
                if !seen[j] {
                    seen[j] = true;
                    size += 1;
                }
            }
            out.push(Orbit {
                index: out.len() + 1,
                representative: *t,
                size,
                stabilizer: t.stabilizer(),
            });
        }
        out
    })
}

/// The orbit containing `t`.
pub fn orbit_of(t: &Triple) -> &'static Orbit {
    let rep = Permutation::all().iter().map(|p| t.act(p)).min().unwrap();
    enumerate_orbits()
        .iter()
        .find(|o| o.representative == rep)
        .expect("every triple lies in an enumerated orbit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(s: &str) -> PascalSymbol {
        s.parse().unwrap()
    }

    fn lab(s: &str) -> PascalLabel {
        s.parse().unwrap()
    }

    #[test]
    fn zeta_on_transpositions() {
        let z = Zeta::global();
        let ab = Permutation::transposition(0, 1);
        assert_eq!(z.apply(&ab).digits().to_string(), "(1 4)(2 5)(3 6)");
        let t12 = Permutation::transposition(0, 1);
        assert_eq!(z.apply_inv(&t12).letters().to_string(), "(A E)(B D)(C F)");
        assert!(z.apply(&Permutation::IDENTITY).is_identity());
    }

    #[test]
    fn zeta_is_outer() {
        let z = Zeta::global();
        for g in Permutation::all() {
            let gi = g.inverse();
            let inner = Permutation::all().iter().all(|s| z.apply(s) == g.compose(s).compose(&gi));
            assert!(!inner, "conjugation by {} agrees with zeta", g.digits());
        }
    }

    #[test]
    fn zeta_swaps_transpositions_and_triple_transpositions() {
        let z = Zeta::global();
        let images: BTreeSet<Permutation> = Permutation::all()
            .iter()
            .filter(|s| s.cycle_type() == vec![2, 2, 2])
            .map(|s| z.apply(s))
            .collect();
        assert_eq!(images.len(), 15);
        assert!(images.iter().all(|t| t.cycle_type() == vec![2]));
        for s in Permutation::all() {
            assert_eq!(z.apply_inv(&z.apply(s)), *s);
        }
    }

    #[test]
    fn corrupted_table_is_detected() {
        // Build with the first two images swapped and check validation fails.
        let mut gens: Vec<(Permutation, Permutation)> = ZETA_TABLE
            .iter()
            .map(|(t, img)| {
                let cs: Vec<char> = t.chars().collect();
                (
                    Permutation::transposition(letter_index(cs[0]).unwrap(), letter_index(cs[1]).unwrap()),
                    parse_involution(img, true).unwrap(),
                )
            })
            .collect();
        let tmp = gens[0].1;
        gens[0].1 = gens[1].1;
        gens[1].1 = tmp;
        let mut forward = HashMap::new();
        forward.insert(Permutation::IDENTITY, Permutation::IDENTITY);
        let mut queue = VecDeque::from([Permutation::IDENTITY]);
        let mut conflict = false;
        while let Some(s) = queue.pop_front() {
            let zs = forward[&s];
            for (t, zt) in &gens {
                let st = s.compose(t);
                let zz: Permutation = zs.compose(zt);
                match forward.get(&st) {
                    Some(prev) if *prev != zz => conflict = true,
                    Some(_) => {}
                    None => {
                        forward.insert(st, zz);
                        queue.push_back(st);
                    }
                }
            }
        }
        assert!(conflict);
    }

    #[test]
    fn worked_conversions() {
        assert_eq!(sym("[[A,D,E],[C,B,F]]").to_label(), lab("k(2,35)"));
        assert_eq!(PascalSymbol::standard().to_label(), lab("k(1,23)"));
        assert_eq!(lab("k(1,23)").to_symbol(), PascalSymbol::standard());
        assert_eq!(lab("k(3,15)").to_symbol(), sym("[[A,B,E],[F,C,D]]"));
    }

    #[test]
    fn sixty_symbols_and_labels_in_bijection() {
        assert_eq!(PascalSymbol::all().len(), 60);
        let labels: BTreeSet<PascalLabel> = PascalSymbol::all().iter().map(|s| s.to_label()).collect();
        assert_eq!(labels.len(), 60);
        for l in PascalLabel::all() {
            assert_eq!(l.to_symbol().to_label(), l);
        }
    }

    #[test]
    fn symbol_shuffles_are_equal() {
        assert_eq!(sym("[[F,E,D],[A,B,C]]"), PascalSymbol::standard());
        assert_eq!(sym("[[C,A,B],[D,F,E]]"), PascalSymbol::standard());
        assert_ne!(sym("[[A,B,C],[D,E,F]]"), PascalSymbol::standard());
    }

    #[test]
    fn intertwining_is_exhaustive() {
        let z = Zeta::global();
        for s in PascalSymbol::all() {
            for sigma in Permutation::all() {
                assert_eq!(s.act(sigma).to_label(), s.to_label().act(&z.apply(sigma)));
            }
        }
    }

    #[test]
    fn label_text_round_trip() {
        for l in PascalLabel::all() {
            assert_eq!(l.to_string().parse::<PascalLabel>().unwrap(), l);
            assert_eq!(l.short().parse::<PascalLabel>().unwrap(), l);
        }
        assert_eq!(lab("k(2,{3,5})"), lab("k(2,53)"));
        assert!("k(1,11)".parse::<PascalLabel>().is_err());
        assert!("k(7,12)".parse::<PascalLabel>().is_err());
        let t: Triple = "(1, 23), (1, 24), (1, 25)".parse().unwrap();
        assert_eq!(t.to_string(), "(1, 23), (1, 24), (1, 25)");
        assert!("(1, 23), (1, 23), (1, 25)".parse::<Triple>().is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let t: Triple = "(1, 23), (1, 45), (2, 45)".parse().unwrap();
        let t45 = Permutation::transposition(3, 4);
        assert_eq!(t.act(&t45), t);
        assert_eq!(t.stabilizer(), vec![Permutation::IDENTITY, t45]);
        let q: Triple = "(1, 23), (1, 45), (6, 23)".parse().unwrap();
        let names: Vec<String> = q.stabilizer().iter().map(|g| g.digits().to_string()).collect();
        assert_eq!(names.len(), 4);
        for g in ["e", "(2 3)", "(4 5)", "(2 3)(4 5)"] {
            assert!(names.contains(&g.to_string()), "{g}");
        }
        assert_eq!(StabilizerClass::of(&q.stabilizer()), StabilizerClass::Z2xZ2);
    }

    #[test]
    fn orbit_basics() {
        let orbits = enumerate_orbits();
        assert_eq!(orbits.len(), 77);
        assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), 34_220);
        for o in orbits {
            assert_eq!(o.size * o.representative.setwise_stabilizer().len(), 720);
        }
        assert_eq!(orbits[0].representative.to_string(), "(1, 23), (1, 24), (1, 25)");
        assert_eq!(orbits[1].representative.to_string(), "(1, 23), (1, 24), (1, 34)");
        assert_eq!(orbits[2].representative.to_string(), "(1, 23), (1, 24), (1, 35)");
        let t: Triple = "(2, 45), (1, 45), (1, 23)".parse().unwrap();
        let moved = t.act(&Permutation::from_cycles(&[&[0, 5, 2]]).unwrap());
        assert_eq!(orbit_of(&moved).representative, t);
    }

    proptest! {
        #[test]
        fn zeta_is_multiplicative(i in 0usize..720, j in 0usize..720) {
            let z = Zeta::global();
            let (a, b) = (Permutation::all()[i], Permutation::all()[j]);
            prop_assert_eq!(z.apply(&a.compose(&b)), z.apply(&a).compose(&z.apply(&b)));
            prop_assert_eq!(z.apply(&a.inverse()), z.apply(&a).inverse());
        }

        #[test]
        fn action_is_a_group_action(i in 0usize..720, j in 0usize..720, k in 0usize..34_220) {
            let (a, b) = (Permutation::all()[i], Permutation::all()[j]);
            let t = Triple::all()[k];
            prop_assert_eq!(t.act(&b).act(&a), t.act(&a.compose(&b)));
            prop_assert_eq!(t.act(&Permutation::IDENTITY), t);
        }
    }
}
