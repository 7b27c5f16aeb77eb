//! Sparse distributed multivariate polynomials over `F_p`.
//!
//! A polynomial is a list of terms kept sorted by decreasing monomial order.
//! Each term caches a `u128` order key so comparisons inside the reduction
//! loops are a single integer compare.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ext::{ExtElement, ExtField};
use crate::fields::{FieldElement, Prime};
use crate::univariate::UniPoly;

/// Maximum number of ring variables (six coordinates plus auxiliaries).
pub const MAX_VARS: usize = 8;
/// Exponents must stay below this bound so order keys fit 12-bit fields.
pub const MAX_EXP: u16 = 4095;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("no value supplied for variable {0}")]
    MissingVariable(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("ring has {0} variables; at most {MAX_VARS} are supported")]
    TooManyVariables(usize),
    #[error(transparent)]
    Univariate(#[from] crate::univariate::UniError),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0u16; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { e }
    }

    pub fn var(i: usize, power: u16) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = power;
        Monomial { e }
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.e
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] + other.e[i];
            assert!(e[i] <= MAX_EXP, "exponent overflow");
        }
        Monomial { e }
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if exact.
    #[inline]
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = other.e[i].checked_sub(self.e[i])?;
        }
        Some(Monomial { e })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(other.e[i]);
        }
        Monomial { e }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bitmask with bit `8*i + k` set when the exponent of `x_i` exceeds `k`.
    /// `a | b` implies `mask(a) & !mask(b) == 0`.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for i in 0..MAX_VARS {
            let k = self.e[i].min(8) as u32;
            if k > 0 {
                m |= ((1u64 << k) - 1) << (8 * i);
            }
        }
        m
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.e)
    }
}

/// Monomial orders. Variable 0 is the largest variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Elimination order: the variables in the bitmask form a first block
    /// compared by degrevlex; ties are broken by degrevlex on the rest.
    Block { elim: u8 },
}

const FIELD: u32 = 12;
const FMASK: u128 = (1 << FIELD) - 1;

impl MonomialOrder {
    /// Order-preserving injective key for monomials in `nvars` variables.
    #[inline]
    pub fn key(&self, m: &Monomial, nvars: usize) -> u128 {
        let mut k: u128 = 0;
        match *self {
            MonomialOrder::Lex => {
                for i in 0..nvars {
                    k = (k << FIELD) | m.e[i] as u128;
                }
            }
            MonomialOrder::DegRevLex => {
                k = m.degree() as u128;
                for i in (0..nvars).rev() {
                    k = (k << FIELD) | (FMASK - m.e[i] as u128);
                }
            }
            MonomialOrder::Block { elim } => {
                for block in [true, false] {
                    let inside = |i: usize| ((elim >> i) & 1 == 1) == block;
                    let d: u32 = (0..nvars).filter(|&i| inside(i)).map(|i| m.e[i] as u32).sum();
                    k = (k << FIELD) | d as u128;
                    for i in (0..nvars).rev().filter(|&i| inside(i)) {
                        k = (k << FIELD) | (FMASK - m.e[i] as u128);
                    }
                }
            }
        }
        k
    }
}

/// Variables, coefficient field and monomial order of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    prime: Prime,
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(prime: Prime, names: &[S], order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        if names.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(names.len()));
        }
        Ok(Arc::new(Ring {
            prime,
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            order,
        }))
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            prime: self.prime,
            names: self.names.clone(),
            order,
        })
    }

    /// Ring with extra variables appended after the existing ones.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> Result<Arc<Ring>, PolyError> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(self.prime, &names, order)
    }

    #[inline]
    pub fn key(&self, m: &Monomial) -> u128 {
        self.order.key(m, self.names.len())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub key: u128,
    pub mono: Monomial,
    pub coeff: u32,
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{:?}", self.coeff, self.mono)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        Self::from_terms(ring, [(Monomial::one(), ring.prime.reduce(c))])
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Self::from_terms(ring, [(Monomial::var(i, 1), 1)])
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self, PolyError> {
        let i = ring.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        Ok(Self::var(ring, i))
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(ring: &Arc<Ring>, terms: I) -> Self {
        let p = ring.prime;
        let mut acc: BTreeMap<u128, (Monomial, u32)> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.exponents()[ring.nvars()..].iter().all(|&x| x == 0));
            let c = c % p.get();
            let e = acc.entry(ring.key(&m)).or_insert((m, 0));
            e.1 = p.add(e.1, c);
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, (_, c))| *c != 0)
            .map(|(key, (mono, coeff))| Term { key, mono, coeff })
            .collect();
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// Terms must already be sorted by decreasing key with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].key > w[1].key));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Polynomial {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.coeff)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Coefficient of the given monomial.
    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        let key = self.ring.key(m);
        self.terms
            .binary_search_by(|t| key.cmp(&t.key))
            .map_or(0, |i| self.terms[i].coeff)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.mono.exp(i) > 0))
            .collect()
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    /// `self + c * other`, merging sorted term lists.
    fn axpy(&self, c: u32, other: &Self) -> Self {
        let p = self.ring.prime;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].key > b[j].key) {
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].key > a[i].key {
                let coeff = p.mul(c, b[j].coeff);
                if coeff != 0 {
                    out.push(Term { coeff, ..b[j] });
                }
                j += 1;
            } else {
                let coeff = p.add(a[i].coeff, p.mul(c, b[j].coeff));
                if coeff != 0 {
                    out.push(Term { coeff, ..a[i] });
                }
                i += 1;
                j += 1;
            }
        }
        Self::from_sorted_terms(&self.ring, out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        Ok(self.axpy(1, other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        Ok(self.axpy(self.ring.prime.neg(1), other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let p = self.ring.prime;
        let mut acc: BTreeMap<u128, (Monomial, u32)> = BTreeMap::new();
        for s in &self.terms {
            for t in &other.terms {
                let m = s.mono.mul(&t.mono);
                let e = acc.entry(self.ring.key(&m)).or_insert((m, 0));
                e.1 = p.add(e.1, p.mul(s.coeff, t.coeff));
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, (_, c))| *c != 0)
            .map(|(key, (mono, coeff))| Term { key, mono, coeff })
            .collect();
        Ok(Self::from_sorted_terms(&self.ring, terms))
    }

    /// Operator-style helpers; panic on ring mismatch.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("ring mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("ring mismatch")
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ring.prime.neg(1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.ring.prime;
        if c % p.get() == 0 {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: p.mul(t.coeff, c),
                ..*t
            })
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    /// `c * m * self`; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Self {
        let p = self.ring.prime;
        if c == 0 {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mono = t.mono.mul(m);
                Term {
                    key: self.ring.key(&mono),
                    mono,
                    coeff: p.mul(t.coeff, c),
                }
            })
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(self.ring.prime.inv(t.coeff).unwrap()),
        }
    }

    /// Evaluation at a full point given as raw residues (one per variable).
    pub fn eval_raw(&self, point: &[u32]) -> u32 {
        let p = self.ring.prime;
        let mut acc = 0u32;
        for t in &self.terms {
            let mut v = t.coeff;
            for (i, &x) in point.iter().enumerate() {
                let k = t.mono.exp(i);
                if k > 0 {
                    v = p.mul(v, p.pow(x, k as u64));
                }
            }
            acc = p.add(acc, v);
        }
        acc
    }

    /// Evaluation at an assignment `variable index -> value`. Variables that
    /// occur in `self` but are absent from the assignment are an error.
    pub fn evaluate(&self, point: &BTreeMap<usize, FieldElement>) -> Result<FieldElement, PolyError> {
        let p = self.ring.prime;
        let mut raw = vec![0u32; self.ring.nvars()];
        for v in self.variables() {
            let x = point
                .get(&v)
                .ok_or_else(|| PolyError::MissingVariable(self.ring.names[v].clone()))?;
            if x.prime() != p {
                return Err(PolyError::RingMismatch);
            }
            raw[v] = x.value();
        }
        Ok(FieldElement::from_raw(self.eval_raw(&raw), p))
    }

    /// Evaluation with every variable assigned in order.
    pub fn evaluate_all(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        let map = point.iter().copied().enumerate().collect();
        self.evaluate(&map)
    }

    /// Evaluation at a point with coordinates in an extension field.
    pub fn evaluate_ext(&self, field: &Arc<ExtField>, point: &[ExtElement]) -> Result<ExtElement, PolyError> {
        let mut acc = ExtElement::from_i64(field, 0);
        for t in &self.terms {
            let mut v = ExtElement::from_i64(field, t.coeff as i64);
            for i in 0..self.ring.nvars() {
                let k = t.mono.exp(i);
                if k > 0 {
                    let x = point
                        .get(i)
                        .ok_or_else(|| PolyError::MissingVariable(self.ring.names[i].clone()))?;
                    v = v.mul(&x.pow(k as u64)).map_err(|_| PolyError::RingMismatch)?;
                }
            }
            acc = acc.add(&v).map_err(|_| PolyError::RingMismatch)?;
        }
        Ok(acc)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`. The images
    /// determine the target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() < self.ring.nvars() {
            let missing = &self.ring.names[images.len()];
            if self.variables().iter().any(|&v| v >= images.len()) {
                return Err(PolyError::MissingVariable(missing.clone()));
            }
        }
        let target = match images.first() {
            Some(g) => Arc::clone(&g.ring),
            None => Arc::clone(&self.ring),
        };
        if images.iter().any(|g| g.ring != target) || target.prime != self.ring.prime {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|g| vec![Polynomial::one(&target), g.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for t in &self.terms {
            let mut v = Polynomial::constant(&target, t.coeff as i64);
            for i in 0..self.ring.nvars() {
                let k = t.mono.exp(i) as usize;
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                v = v.mul(&powers[i][k]);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// Reinterpret in another ring over the same field, sending variable `i`
    /// to variable `var_map[i]` of the target.
    pub fn map_vars(&self, target: &Arc<Ring>, var_map: &[usize]) -> Polynomial {
        assert_eq!(target.prime, self.ring.prime);
        let terms = self.terms.iter().map(|t| {
            let mut e = [0u16; MAX_VARS];
            for i in 0..self.ring.nvars() {
                if t.mono.exp(i) > 0 {
                    e[var_map[i]] += t.mono.exp(i);
                }
            }
            (Monomial { e }, t.coeff)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Same polynomial in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<Ring>) -> Polynomial {
        assert_eq!(target.names, self.ring.names);
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                key: target.key(&t.mono),
                ..*t
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.key.cmp(&a.key));
        Self::from_sorted_terms(target, terms)
    }

    /// If only variable `var` (or none) occurs, the dense univariate form.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly, PolyError> {
        let mut coeffs = Vec::new();
        for t in &self.terms {
            if (0..MAX_VARS).any(|i| i != var && t.mono.exp(i) > 0) {
                return Err(PolyError::NotUnivariate);
            }
            let k = t.mono.exp(var) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = t.coeff;
        }
        Ok(UniPoly::new(self.ring.prime, coeffs))
    }

    pub fn from_univariate(ring: &Arc<Ring>, var: usize, f: &UniPoly) -> Self {
        Self::from_terms(
            ring,
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(k, &c)| (Monomial::var(var, k as u16), c)),
        )
    }

    /// The variable a univariate polynomial lives in, if exactly one occurs.
    fn sole_variable(f: &Self, g: &Self) -> Result<usize, PolyError> {
        let mut vars = f.variables();
        vars.extend(g.variables());
        vars.sort_unstable();
        vars.dedup();
        match vars.as_slice() {
            [] => Ok(0),
            [v] => Ok(*v),
            _ => Err(PolyError::NotUnivariate),
        }
    }

    /// Monic gcd of two univariate polynomials in the same variable.
    pub fn univ_gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let v = Self::sole_variable(self, other)?;
        let g = self.to_univariate(v)?.gcd(&other.to_univariate(v)?);
        Ok(Self::from_univariate(&self.ring, v, &g))
    }

    pub fn squarefree_part(&self) -> Result<Self, PolyError> {
        let v = Self::sole_variable(self, self)?;
        let s = self.to_univariate(v)?.squarefree_part()?;
        Ok(Self::from_univariate(&self.ring, v, &s))
    }

    /// All roots in `F_p` of a univariate polynomial, ascending.
    pub fn root_scan(&self) -> Result<Vec<FieldElement>, PolyError> {
        let v = Self::sole_variable(self, self)?;
        let p = self.ring.prime;
        Ok(self
            .to_univariate(v)?
            .root_scan()
            .into_iter()
            .map(|r| FieldElement::from_raw(r, p))
            .collect())
    }

    /// Parses expressions like `3a^2b - bc + 7`; variable names are matched
    /// greedily against the ring's names, `*` between factors is optional.
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Self, PolyError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || PolyError::Parse(s.clone());
        let bytes = s.as_bytes();
        let mut names: Vec<(usize, &str)> = ring.names.iter().map(|n| n.as_str()).enumerate().collect();
        names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let mut terms = Vec::new();
        let mut i = 0;
        if bytes.is_empty() {
            return Err(err());
        }
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            } else if i > 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff: i64 = if i > start { s[start..i].parse().map_err(|_| err())? } else { 1 };
            let mut mono = Monomial::one();
            let mut any = i > start;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                if bytes[i] == b'*' {
                    i += 1;
                    continue;
                }
                let (v, len) = names
                    .iter()
                    .find(|(_, n)| s[i..].starts_with(n))
                    .map(|(v, n)| (*v, n.len()))
                    .ok_or_else(err)?;
                i += len;
                let mut power = 1u16;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let st = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    power = s[st..i].parse().map_err(|_| err())?;
                }
                mono = mono.mul(&Monomial::var(v, power));
                any = true;
            }
            if !any {
                return Err(err());
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((mono, ring.prime.reduce(coeff)));
        }
        Ok(Self::from_terms(ring, terms))
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        let compact = self.ring.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<String> = (0..self.ring.nvars())
            .filter(|&i| m.exp(i) > 0)
            .map(|i| match m.exp(i) {
                1 => self.ring.names[i].clone(),
                k => format!("{}^{}", self.ring.names[i], k),
            })
            .collect();
        parts.join(if compact { "" } else { "*" })
    }
}

/// Coefficients are printed as signed representatives, so `-1` renders as a
/// minus sign rather than `p-1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let p = self.ring.prime;
        for (k, t) in self.terms.iter().enumerate() {
            let c = p.signed(t.coeff);
            let mono = self.render_monomial(&t.mono);
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            f.write_str(sign)?;
            let abs = c.abs();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}{}{mono}", if mono.chars().next().unwrap().is_ascii_digit() { "*" } else { "" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
