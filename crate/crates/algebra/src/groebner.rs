//! Buchberger's algorithm with the Gebauer-Möller criteria, plus the ideal
//! operations built on it: elimination, saturation, zero-dimensional radical
//! and degree, and minimal polynomials of linear forms.

use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;
use std::time::Instant;

use log::debug;
use thiserror::Error;

use crate::fields::Prime;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring, Term};
use crate::univariate::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("ideal is not zero-dimensional; quotient ring has infinite dimension")]
    NotZeroDimensional,
    #[error("expected a linear form")]
    NotLinear,
    #[error("ideal has no generators")]
    Empty,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Pair-selection rule for Buchberger's main loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    /// Smallest lcm first.
    Normal,
    /// Smallest sugar degree first, lcm as tie-break.
    #[default]
    Sugar,
}

/// Counters from one Buchberger run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
    pub max_degree: u32,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; an ideal with no nonzero generator is
    /// the zero ideal.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for g in &gens {
            if g.ring() != ring {
                return Err(PolyError::RingMismatch.into());
            }
        }
        Ok(Ideal {
            ring: Arc::clone(ring),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add_generators(&self, more: impl IntoIterator<Item = Polynomial>) -> Result<Self, GroebnerError> {
        let mut gens = self.gens.clone();
        gens.extend(more);
        Ideal::new(&self.ring, gens)
    }

    /// Same generators, transported to a ring with the same variables and
    /// another order.
    pub fn reorder(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        Ideal {
            gens: self.gens.iter().map(|g| g.reorder(&ring)).collect(),
            ring,
        }
    }

    pub fn groebner(&self) -> GroebnerBasis {
        GroebnerBasis::compute(self, Selection::default())
    }
}

/// A reduced, monic Gröbner basis with respect to its ring's order.
/// Equality ignores the run statistics.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
    stats: GbStats,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis == other.basis
    }
}

impl Eq for GroebnerBasis {}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.basis.iter()).finish()
    }
}

#[derive(Default)]
struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }
    fn write_u128(&mut self, k: u128) {
        let x = (k as u64) ^ ((k >> 64) as u64).rotate_left(29);
        self.0 = x.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (x >> 31);
    }
}

type KeyMap<V> = HashMap<u128, V, BuildHasherDefault<KeyHasher>>;

/// Sparse accumulator: coefficients keyed by order key with a max-heap of keys.
struct Accumulator {
    p: Prime,
    coeffs: KeyMap<(Monomial, u32)>,
    heap: BinaryHeap<u128>,
}

impl Accumulator {
    fn new(p: Prime) -> Self {
        Accumulator {
            p,
            coeffs: KeyMap::default(),
            heap: BinaryHeap::new(),
        }
    }

    #[inline]
    fn add(&mut self, key: u128, mono: Monomial, c: u32) {
        match self.coeffs.get_mut(&key) {
            Some(e) => e.1 = self.p.add(e.1, c),
            None => {
                self.coeffs.insert(key, (mono, c));
                self.heap.push(key);
            }
        }
    }

    fn pop_max(&mut self) -> Option<Term> {
        while let Some(key) = self.heap.pop() {
            if let Some((mono, coeff)) = self.coeffs.remove(&key) {
                if coeff != 0 {
                    return Some(Term { key, mono, coeff });
                }
            }
        }
        None
    }
}

/// A basis element during the computation. Always monic.
struct Element {
    terms: Vec<Term>,
    lm: Monomial,
    key: u128,
    mask: u64,
    sugar: u32,
    redundant: bool,
}

impl Element {
    fn new(terms: Vec<Term>, sugar: u32) -> Self {
        let lm = terms[0].mono;
        Element {
            key: terms[0].key,
            mask: lm.divmask(),
            lm,
            terms,
            sugar,
            redundant: false,
        }
    }
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: u128,
    sugar: u32,
}

/// Reduction context shared by Buchberger and normal forms.
struct Reducer<'a> {
    ring: &'a Ring,
    one_key: u128,
}

impl<'a> Reducer<'a> {
    fn new(ring: &'a Ring) -> Self {
        Reducer {
            ring,
            one_key: ring.key(&Monomial::one()),
        }
    }

    /// Order keys are additive up to the key of 1.
    #[inline]
    fn key_mul(&self, a: u128, b: u128) -> u128 {
        a + b - self.one_key
    }

    fn find<'e>(&self, mono: &Monomial, basis: &'e [Element], skip: Option<usize>) -> Option<&'e Element> {
        let mask = mono.divmask();
        let mut best: Option<&Element> = None;
        for (idx, e) in basis.iter().enumerate() {
            if Some(idx) == skip || e.mask & !mask != 0 || !e.lm.divides(mono) {
                continue;
            }
            if best.is_none_or(|b| e.terms.len() < b.terms.len()) {
                best = Some(e);
            }
        }
        best
    }

    /// Full reduction of `acc` modulo the elements of `basis`; returns the
    /// remainder as sorted terms.
    fn reduce(&self, mut acc: Accumulator, basis: &[Element], skip: Option<usize>) -> Vec<Term> {
        let p = self.ring.prime();
        let mut out = Vec::new();
        while let Some(t) = acc.pop_max() {
            match self.find(&t.mono, basis, skip) {
                Some(r) => {
                    let q = r.lm.quotient_of(&t.mono).unwrap();
                    let qkey = self.ring.key(&q);
                    let c = p.neg(t.coeff);
                    for s in &r.terms[1..] {
                        acc.add(self.key_mul(qkey, s.key), q.mul(&s.mono), p.mul(c, s.coeff));
                    }
                }
                None => out.push(t),
            }
        }
        out
    }

    fn spoly(&self, f: &Element, g: &Element, lcm: &Monomial) -> Accumulator {
        let p = self.ring.prime();
        let mut acc = Accumulator::new(p);
        let qf = f.lm.quotient_of(lcm).unwrap();
        let qg = g.lm.quotient_of(lcm).unwrap();
        let (kf, kg) = (self.ring.key(&qf), self.ring.key(&qg));
        for s in &f.terms[1..] {
            acc.add(self.key_mul(kf, s.key), qf.mul(&s.mono), s.coeff);
        }
        for s in &g.terms[1..] {
            acc.add(self.key_mul(kg, s.key), qg.mul(&s.mono), p.neg(s.coeff));
        }
        acc
    }
}

fn make_monic(p: Prime, mut terms: Vec<Term>) -> Vec<Term> {
    if let Some(first) = terms.first() {
        let inv = p.inv(first.coeff).unwrap();
        for t in &mut terms {
            t.coeff = p.mul(t.coeff, inv);
        }
    }
    terms
}

fn degree_of(terms: &[Term]) -> u32 {
    terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
}

impl GroebnerBasis {
    /// Reduced Gröbner basis of `ideal` for the order of its ring.
    pub fn compute(ideal: &Ideal, selection: Selection) -> GroebnerBasis {
        let start = Instant::now();
        let ring = Arc::clone(&ideal.ring);
        let p = ring.prime();
        let red = Reducer::new(&ring);
        let mut stats = GbStats::default();
        let mut basis: Vec<Element> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        // Seed with interreduced input, smallest leading terms first.
        let mut input: Vec<Polynomial> = ideal.gens.clone();
        input.sort_by_key(|g| g.leading_term().map(|t| t.key));
        for g in input {
            let mut acc = Accumulator::new(p);
            for t in g.terms() {
                acc.add(t.key, t.mono, t.coeff);
            }
            let r = red.reduce(acc, &basis, None);
            if r.is_empty() {
                continue;
            }
            let sugar = degree_of(g.terms());
            Self::update(&red, &mut basis, &mut pairs, make_monic(p, r), sugar, &mut stats);
        }

        while !pairs.is_empty() {
            let idx = Self::select(&pairs, selection);
            let pair = pairs.swap_remove(idx);
            stats.pairs_reduced += 1;
            let acc = red.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
            let r = red.reduce(acc, &basis, None);
            if r.is_empty() {
                stats.zero_reductions += 1;
                continue;
            }
            if r[0].mono.is_one() {
                basis.clear();
                pairs.clear();
                basis.push(Element::new(make_monic(p, r), 0));
                break;
            }
            let deg = degree_of(&r);
            stats.max_degree = stats.max_degree.max(deg);
            Self::update(&red, &mut basis, &mut pairs, make_monic(p, r), pair.sugar.max(deg), &mut stats);
            if stats.pairs_reduced % 500 == 0 {
                debug!(
                    "buchberger: {} pairs reduced, {} pending, basis {}, max degree {}",
                    stats.pairs_reduced,
                    pairs.len(),
                    basis.len(),
                    stats.max_degree
                );
            }
        }

        let result = Self::interreduce(&red, basis);
        stats.basis_size = result.len();
        stats.millis = start.elapsed().as_millis() as u64;
        debug!("buchberger done: {stats:?}");
        GroebnerBasis {
            basis: result.into_iter().map(|t| Polynomial::from_sorted_terms(&ring, t)).collect(),
            ring,
            stats,
        }
    }

    fn select(pairs: &[Pair], selection: Selection) -> usize {
        let mut best = 0;
        for (k, pr) in pairs.iter().enumerate().skip(1) {
            let b = &pairs[best];
            let better = match selection {
                Selection::Normal => pr.key < b.key,
                Selection::Sugar => (pr.sugar, pr.key) < (b.sugar, b.key),
            };
            if better {
                best = k;
            }
        }
        best
    }

    /// Gebauer-Möller installation of a new basis element.
    fn update(
        red: &Reducer<'_>,
        basis: &mut Vec<Element>,
        pairs: &mut Vec<Pair>,
        terms: Vec<Term>,
        sugar: u32,
        stats: &mut GbStats,
    ) {
        let h = Element::new(terms, sugar);
        let t = basis.len();
        let hs = h.sugar - h.lm.degree().min(h.sugar);

        // Candidate pairs (i, t).
        let mut cand: Vec<(Pair, bool)> = basis
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.redundant)
            .map(|(i, e)| {
                let lcm = e.lm.lcm(&h.lm);
                let es = e.sugar - e.lm.degree().min(e.sugar);
                let pr = Pair {
                    i,
                    j: t,
                    lcm,
                    key: red.ring.key(&lcm),
                    sugar: lcm.degree() + es.max(hs),
                };
                (pr, e.lm.is_coprime(&h.lm))
            })
            .collect();

        // Criterion M: drop pairs whose lcm is a proper multiple of another's.
        let lcms: Vec<Monomial> = cand.iter().map(|(pr, _)| pr.lcm).collect();
        let mut keep = vec![true; cand.len()];
        for a in 0..cand.len() {
            for b in 0..cand.len() {
                if a != b && lcms[b] != lcms[a] && lcms[b].divides(&lcms[a]) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Criterion F: one pair per lcm; if any pair with that lcm is coprime,
        // the whole class is dropped.
        let mut by_lcm: HashMap<Monomial, Vec<usize>> = HashMap::new();
        for (a, (pr, _)) in cand.iter().enumerate() {
            if keep[a] {
                by_lcm.entry(pr.lcm).or_default().push(a);
            }
        }
        let mut new_pairs = Vec::new();
        for (_, members) in by_lcm {
            if members.iter().any(|&a| cand[a].1) {
                continue;
            }
            new_pairs.push(cand[members[0]].0);
        }
        cand.clear();

        // Criterion B on existing pairs.
        pairs.retain(|pr| {
            if !h.lm.divides(&pr.lcm) {
                return true;
            }
            let li = basis[pr.i].lm.lcm(&h.lm);
            let lj = basis[pr.j].lm.lcm(&h.lm);
            li == pr.lcm || lj == pr.lcm
        });

        for e in basis.iter_mut() {
            if !e.redundant && h.lm.divides(&e.lm) {
                e.redundant = true;
            }
        }
        stats.pairs_created += new_pairs.len();
        pairs.extend(new_pairs);
        basis.push(h);
    }

    fn interreduce(red: &Reducer<'_>, basis: Vec<Element>) -> Vec<Vec<Term>> {
        let p = red.ring.prime();
        let mut kept: Vec<Element> = basis.into_iter().filter(|e| !e.redundant).collect();
        kept.sort_by_key(|e| e.key);
        // Remove elements whose leading monomial is divisible by another's.
        let mut minimal: Vec<Element> = Vec::new();
        for e in kept {
            if !minimal.iter().any(|m| m.lm.divides(&e.lm)) {
                minimal.push(e);
            }
        }
        let mut out: Vec<Vec<Term>> = Vec::with_capacity(minimal.len());
        for k in 0..minimal.len() {
            let e = &minimal[k];
            let mut acc = Accumulator::new(p);
            for t in &e.terms[1..] {
                acc.add(t.key, t.mono, t.coeff);
            }
            let tail = red.reduce(acc, &minimal, Some(k));
            let mut terms = vec![e.terms[0]];
            terms.extend(tail);
            out.push(make_monic(p, terms));
        }
        out.sort_by_key(|t| t[0].key);
        out
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            ring: Arc::clone(&self.ring),
            gens: self.basis.clone(),
        }
    }

    /// The unit ideal.
    pub fn is_one(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    fn elements(&self) -> Vec<Element> {
        self.basis.iter().map(|g| Element::new(g.terms().to_vec(), 0)).collect()
    }

    /// Remainder of `f` on division by the basis; no term of the result is
    /// divisible by a leading monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if f.ring() != &self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        let red = Reducer::new(&self.ring);
        let mut acc = Accumulator::new(self.ring.prime());
        for t in f.terms() {
            acc.add(t.key, t.mono, t.coeff);
        }
        let terms = red.reduce(acc, &self.elements(), None);
        Ok(Polynomial::from_sorted_terms(&self.ring, terms))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when every S-polynomial of basis pairs reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let red = Reducer::new(&self.ring);
        let elems = self.elements();
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                let lcm = elems[i].lm.lcm(&elems[j].lm);
                if !red.reduce(red.spoly(&elems[i], &elems[j], &lcm), &elems, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Zero-dimensional iff every variable has a pure power among the leading
    /// monomials (or the ideal is the unit ideal).
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_one() {
            return true;
        }
        (0..self.ring.nvars()).all(|v| {
            self.basis
                .iter()
                .any(|g| g.leading_monomial().and_then(|m| m.pure_power_var()) == Some(v))
        })
    }

    /// Monomials outside the leading-term ideal, in increasing order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, GroebnerError> {
        if !self.is_zero_dimensional() {
            return Err(GroebnerError::NotZeroDimensional);
        }
        if self.is_one() {
            return Ok(Vec::new());
        }
        let lms: Vec<Monomial> = self.basis.iter().filter_map(|g| g.leading_monomial()).collect();
        let n = self.ring.nvars();
        let mut out = Vec::new();
        fn walk(var: usize, n: usize, m: Monomial, lms: &[Monomial], out: &mut Vec<Monomial>) {
            if var == n {
                out.push(m);
                return;
            }
            let mut cur = m;
            loop {
                if lms.iter().any(|l| l.divides(&cur)) {
                    break;
                }
                walk(var + 1, n, cur, lms, out);
                cur = cur.mul(&Monomial::var(var, 1));
            }
        }
        walk(0, n, Monomial::one(), &lms, &mut out);
        out.sort_by_key(|m| self.ring.key(m));
        Ok(out)
    }

    /// Dimension of the quotient ring; the degree of a zero-dimensional ideal.
    pub fn quotient_dimension(&self) -> Result<usize, GroebnerError> {
        Ok(self.standard_monomials()?.len())
    }

    /// Monic minimal polynomial of the linear form `linform` in the quotient
    /// ring, found as the first linear dependency among normal forms of its
    /// powers.
    pub fn minimal_polynomial(&self, linform: &Polynomial) -> Result<UniPoly, GroebnerError> {
        if linform.total_degree().unwrap_or(0) > 1 {
            return Err(GroebnerError::NotLinear);
        }
        let p = self.ring.prime();
        let std = self.standard_monomials()?;
        if std.is_empty() {
            return Ok(UniPoly::one(p));
        }
        let index: KeyMap<usize> = std.iter().enumerate().map(|(i, m)| (self.ring.key(m), i)).collect();
        let dim = std.len();
        let to_vec = |f: &Polynomial| {
            let mut v = vec![0u32; dim];
            for t in f.terms() {
                v[index[&t.key]] = t.coeff;
            }
            v
        };
        // Rows kept in echelon form together with their combination of powers.
        let mut rows: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
        let mut power = self.normal_form(&Polynomial::one(&self.ring))?;
        for k in 0..=dim {
            let mut v = to_vec(&power);
            let mut comb = vec![0u32; k + 1];
            comb[k] = 1;
            for (pivot, row, rc) in &rows {
                let c = v[*pivot];
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = p.sub_mul(*x, c, *y);
                    }
                    for (x, y) in comb.iter_mut().zip(rc) {
                        *x = p.sub_mul(*x, c, *y);
                    }
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => return Ok(UniPoly::new(p, comb).monic()),
                Some(pivot) => {
                    let inv = p.inv(v[pivot]).unwrap();
                    for x in v.iter_mut() {
                        *x = p.mul(*x, inv);
                    }
                    for x in comb.iter_mut() {
                        *x = p.mul(*x, inv);
                    }
                    rows.push((pivot, v, comb));
                }
            }
            power = self.normal_form(&power.mul(linform))?;
        }
        unreachable!("powers of a linear form are dependent in a space of dimension {dim}")
    }
}

/// `I ∩ k[remaining variables]`, via a block order with `vars_out` first.
/// The result lives in the original ring; its generators form a Gröbner basis
/// of the elimination ideal for degrevlex on the remaining variables.
pub fn eliminate(ideal: &Ideal, vars_out: &[usize]) -> Ideal {
    let ring = &ideal.ring;
    let mask = vars_out.iter().fold(0u8, |m, &v| m | (1 << v));
    let elim = ideal.reorder(MonomialOrder::Block { elim: mask });
    let gb = GroebnerBasis::compute(&elim, Selection::default());
    let gens = gb
        .basis
        .iter()
        .filter(|g| g.variables().iter().all(|v| !vars_out.contains(v)))
        .map(|g| g.reorder(ring))
        .collect();
    Ideal {
        ring: Arc::clone(ring),
        gens,
    }
}

/// `I : g^∞`, computed as `(I + <t g - 1>) ∩ k[x]` with a fresh variable `t`.
pub fn saturate(ideal: &Ideal, g: &Polynomial) -> Result<Ideal, GroebnerError> {
    if g.ring() != &ideal.ring {
        return Err(PolyError::RingMismatch.into());
    }
    let ring = &ideal.ring;
    let n = ring.nvars();
    let ext = ring.extended(&["t_sat"], MonomialOrder::Block { elim: 1 << n })?;
    let embed: Vec<usize> = (0..n).collect();
    let t = Polynomial::var(&ext, n);
    let mut gens: Vec<Polynomial> = ideal.gens.iter().map(|f| f.map_vars(&ext, &embed)).collect();
    gens.push(t.mul(&g.map_vars(&ext, &embed)).sub(&Polynomial::one(&ext)));
    let gb = GroebnerBasis::compute(&Ideal::new(&ext, gens)?, Selection::default());
    let back: Vec<usize> = (0..=n).map(|i| i.min(n - 1)).collect();
    let out = gb
        .basis
        .iter()
        .filter(|f| f.terms().iter().all(|t| t.mono.exp(n) == 0))
        .map(|f| f.map_vars(ring, &back))
        .collect();
    Ideal::new(ring, out)
}

/// Radical of a zero-dimensional ideal: adjoin the squarefree part of the
/// minimal polynomial of every variable. Valid when all those degrees are
/// below the characteristic.
pub fn radical_zero_dim(ideal: &Ideal) -> Result<(Ideal, GroebnerBasis), GroebnerError> {
    let gb = GroebnerBasis::compute(ideal, Selection::default());
    if !gb.is_zero_dimensional() {
        return Err(GroebnerError::NotZeroDimensional);
    }
    let ring = &ideal.ring;
    let mut extra = Vec::new();
    for v in 0..ring.nvars() {
        let m = gb.minimal_polynomial(&Polynomial::var(ring, v))?;
        let s = m.squarefree_part().map_err(PolyError::from)?;
        if s.degree() < m.degree() {
            extra.push(Polynomial::from_univariate(ring, v, &s));
        }
    }
    if extra.is_empty() {
        return Ok((gb.to_ideal(), gb));
    }
    let rad = gb.to_ideal().add_generators(extra)?;
    let gb = GroebnerBasis::compute(&rad, Selection::default());
    Ok((gb.to_ideal(), gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Prime;
    use proptest::prelude::*;

    fn ring(names: &[&str], order: MonomialOrder) -> Arc<Ring> {
        Ring::new(Prime::new(101).unwrap(), names, order).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect()).unwrap()
    }

    fn gb_strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.basis().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn small_lex_basis() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gb = ideal(&r, &["x^2-1", "xy-1"]).groebner();
        assert_eq!(gb_strings(&gb), vec!["y^2-1", "x-y"]);
        assert!(gb.is_groebner());
        assert_eq!(gb_strings(&ideal(&r, &["x"]).groebner()), vec!["x"]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gb = ideal(&r, &["x-y"]).groebner();
        let nf = gb.normal_form(&Polynomial::parse(&r, "x^2").unwrap()).unwrap();
        assert_eq!(nf.to_string(), "y^2");
        for g in gb.basis() {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let gb = ideal(&r, &["x", "x-1"]).groebner();
        assert!(gb.is_one());
        assert_eq!(gb.quotient_dimension().unwrap(), 0);
    }

    #[test]
    fn zero_dimensionality_and_degree() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let gb = ideal(&r, &["x^2-1", "y^3-y"]).groebner();
        assert!(gb.is_zero_dimensional());
        assert_eq!(gb.quotient_dimension().unwrap(), 6);
        let gb = ideal(&r, &["x-y"]).groebner();
        assert!(!gb.is_zero_dimensional());
        assert_eq!(gb.quotient_dimension(), Err(GroebnerError::NotZeroDimensional));
    }

    #[test]
    fn linear_system_matches_elimination() {
        // 2x + y - z = 3, x - y + 4z = 1, 3x + 2y + z = 0 over F_101.
        let r = ring(&["x", "y", "z"], MonomialOrder::Lex);
        let gb = ideal(&r, &["2x+y-z-3", "x-y+4z-1", "3x+2y+z"]).groebner();
        assert_eq!(gb.basis().len(), 3);
        let p = r.prime();
        // Cramer's rule, computed independently.
        let det = |m: [[i64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let a = [[2, 1, -1], [1, -1, 4], [3, 2, 1]];
        let b = [3, 1, 0];
        let d = p.inv(p.reduce(det(a))).unwrap();
        for (col, name) in ["x", "y", "z"].iter().enumerate() {
            let mut m = a;
            for row in 0..3 {
                m[row][col] = b[row];
            }
            let val = p.mul(p.reduce(det(m)), d);
            let expect = Polynomial::parse(&r, &format!("{name}-{val}")).unwrap();
            assert!(gb.basis().contains(&expect), "{name}");
        }
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "x"], MonomialOrder::DegRevLex);
        assert!(eliminate(&ideal(&r, &["tx-1"]), &[0]).is_zero_ideal());
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let e = eliminate(&ideal(&r, &["x-y", "y-z"]), &[0]);
        assert_eq!(e.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["y-z"]);
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let x = Polynomial::parse(&r, "x").unwrap();
        let s = saturate(&ideal(&r, &["xy"]), &x).unwrap();
        assert_eq!(s.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["y"]);
        let i = ideal(&r, &["x^2y-y", "y^2-x"]);
        let one = Polynomial::one(&r);
        assert_eq!(saturate(&i, &one).unwrap().groebner(), i.groebner());
        // Every point of V(x - y, y^2 - 1) lies on x = y.
        let i = ideal(&r, &["x-y", "y^2-1"]);
        let g = Polynomial::parse(&r, "x-y").unwrap();
        assert!(saturate(&i, &g).unwrap().groebner().is_one());
    }

    #[test]
    fn saturation_is_idempotent() {
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let i = ideal(&r, &["x^2y-xy", "yz^2-y^2", "x^3-z"]);
        let g = Polynomial::parse(&r, "x-y").unwrap();
        let once = saturate(&i, &g).unwrap();
        let twice = saturate(&once, &g).unwrap();
        assert_eq!(once.groebner(), twice.groebner());
        // Matches explicit elimination with the Rabinowitsch variable.
        let r4 = ring(&["t", "x", "y", "z"], MonomialOrder::DegRevLex);
        let e = eliminate(&ideal(&r4, &["x^2y-xy", "yz^2-y^2", "x^3-z", "tx-ty-1"]), &[0]);
        let back: Vec<Polynomial> = e.gens().iter().map(|f| f.map_vars(&r, &[0, 0, 1, 2])).collect();
        assert_eq!(Ideal::new(&r, back).unwrap().groebner(), once.groebner());
    }

    #[test]
    fn minimal_polynomials() {
        let r = ring(&["x"], MonomialOrder::DegRevLex);
        let x = Polynomial::var(&r, 0);
        let gb = ideal(&r, &["x^2-1"]).groebner();
        assert_eq!(gb.minimal_polynomial(&x).unwrap(), UniPoly::from_i64(r.prime(), &[-1, 0, 1]));
        let gb = ideal(&r, &["x-3"]).groebner();
        assert_eq!(gb.minimal_polynomial(&x).unwrap(), UniPoly::from_i64(r.prime(), &[-3, 1]));
    }

    #[test]
    fn radicals() {
        let r = ring(&["x"], MonomialOrder::DegRevLex);
        let (rad, _) = radical_zero_dim(&ideal(&r, &["x^2"])).unwrap();
        assert_eq!(rad.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), vec!["x"]);
        let (rad, gb) = radical_zero_dim(&ideal(&r, &["x^3-4x^2+5x-2"])).unwrap();
        assert_eq!(rad.gens()[0].to_string(), "x^2-3x+2");
        assert_eq!(gb.quotient_dimension().unwrap(), 2);
        let r2 = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let i = ideal(&r2, &["x^2-2xy+y^2", "y^3"]);
        let (rad, gb) = radical_zero_dim(&i).unwrap();
        assert_eq!(gb.quotient_dimension().unwrap(), 1);
        assert!(gb.quotient_dimension().unwrap() <= i.groebner().quotient_dimension().unwrap());
        let (_, again) = radical_zero_dim(&rad).unwrap();
        assert_eq!(again, gb);
        assert_eq!(
            radical_zero_dim(&ideal(&r2, &["x-y"])).unwrap_err(),
            GroebnerError::NotZeroDimensional
        );
    }

    fn arb_ideal() -> impl Strategy<Value = Vec<Vec<(Vec<u16>, u32)>>> {
        proptest::collection::vec(
            proptest::collection::vec((proptest::collection::vec(0u16..3, 3), 1u32..101), 1..4),
            1..4,
        )
    }

    fn build(r: &Arc<Ring>, raw: &[Vec<(Vec<u16>, u32)>]) -> Vec<Polynomial> {
        raw.iter()
            .map(|ts| Polynomial::from_terms(r, ts.iter().map(|(e, c)| (Monomial::from_exponents(e), *c))))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn basis_is_groebner_and_order_independent(raw in arb_ideal(), lex in any::<bool>()) {
            let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
            let r = ring(&["x", "y", "z"], order);
            let gens = build(&r, &raw);
            let gb = Ideal::new(&r, gens.clone()).unwrap().groebner();
            prop_assert!(gb.is_groebner());
            for g in &gens {
                prop_assert!(gb.contains(g).unwrap());
            }
            let lms: Vec<_> = gb.basis().iter().map(|g| g.leading_monomial().unwrap()).collect();
            for (a, la) in lms.iter().enumerate() {
                for (b, lb) in lms.iter().enumerate() {
                    prop_assert!(a == b || !la.divides(lb));
                }
            }
            let mut rev = gens.clone();
            rev.reverse();
            let gb2 = GroebnerBasis::compute(&Ideal::new(&r, rev).unwrap(), Selection::Normal);
            prop_assert_eq!(gb, gb2);
        }
    }
}
