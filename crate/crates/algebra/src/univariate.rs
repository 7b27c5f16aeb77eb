//! Dense univariate polynomials over `F_p`.
//!
//! Used for eliminants and minimal polynomials: gcd, squarefree parts, root
//! scanning and a small distinct-degree / equal-degree factorizer.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fields::{FieldElement, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniError {
    #[error("degree {deg} is not below the characteristic {p}")]
    UnsupportedDegree { deg: usize, p: u32 },
    #[error("polynomials over different fields")]
    PrimeMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

/// Coefficients stored low degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    prime: Prime,
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn new(prime: Prime, coeffs: Vec<u32>) -> Self {
        let mut p = UniPoly { prime, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(prime: Prime, coeffs: &[i64]) -> Self {
        Self::new(prime, coeffs.iter().map(|&c| prime.reduce(c)).collect())
    }

    pub fn zero(prime: Prime) -> Self {
        UniPoly {
            prime,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(prime: Prime, c: u32) -> Self {
        Self::new(prime, vec![c])
    }

    pub fn one(prime: Prime) -> Self {
        Self::constant(prime, 1)
    }

    /// The polynomial `x`.
    pub fn x(prime: Prime) -> Self {
        Self::new(prime, vec![0, 1])
    }

    /// `x - r`
    pub fn linear_root(prime: Prime, r: u32) -> Self {
        Self::new(prime, vec![prime.neg(r), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.prime.inv(self.lc()).expect("nonzero lc");
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.prime;
        Self::new(p, self.coeffs.iter().map(|&a| p.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(p, (0..n).map(|i| p.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(p, (0..n).map(|i| p.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        let p = self.prime;
        Self::new(p, self.coeffs.iter().map(|&a| p.neg(a)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.prime);
        }
        let p = self.prime;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        let pp = p.get() as u64;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % pp;
            }
        }
        Self::new(p, out.into_iter().map(|c| c as u32).collect())
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), UniError> {
        if divisor.is_zero() {
            return Err(UniError::DivisionByZero);
        }
        if self.prime != divisor.prime {
            return Err(UniError::PrimeMismatch);
        }
        let p = self.prime;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv_lc = p.inv(divisor.lc()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = p.mul(rem[i + dd], inv_lc);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = p.sub_mul(rem[i + j], c, b);
            }
        }
        rem.truncate(dd);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).expect("nonzero divisor").1
    }

    /// Exact quotient; panics in debug builds when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.prime;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = p.inv(r0.lc()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.prime;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| p.mul(c, (i as u64 % p.get() as u64) as u32))
                .collect(),
        )
    }

    fn check_degree(&self) -> Result<(), UniError> {
        match self.degree() {
            Some(d) if d >= self.prime.get() as usize => Err(UniError::UnsupportedDegree {
                deg: d,
                p: self.prime.get(),
            }),
            _ => Ok(()),
        }
    }

    /// `f / gcd(f, f')`, monic. Requires `deg f < p`.
    pub fn squarefree_part(&self) -> Result<Self, UniError> {
        self.check_degree()?;
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.monic());
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g).monic())
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.prime;
        self.coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| p.add(p.mul(acc, x), c))
    }

    pub fn eval_element(&self, x: FieldElement) -> FieldElement {
        FieldElement::from_raw(self.eval(x.value()), self.prime)
    }

    /// All roots in `F_p` by exhaustive evaluation, ascending.
    pub fn root_scan(&self) -> Vec<u32> {
        if self.is_zero() {
            return (0..self.prime.get()).collect();
        }
        if self.degree() == Some(0) {
            return Vec::new();
        }
        (0..self.prime.get()).filter(|&x| self.eval(x) == 0).collect()
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.prime).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(self.prime);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(self.prime, c));
        }
        acc
    }

    /// Factorization into monic irreducibles with multiplicities, sorted by
    /// (degree, coefficients). Requires `deg f < p`.
    ///
    /// Squarefree decomposition, distinct-degree split, then randomized
    /// equal-degree splitting with a fixed seed so results are reproducible.
    pub fn factor(&self) -> Result<Vec<(UniPoly, usize)>, UniError> {
        self.check_degree()?;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for (sqf, mult) in self.monic().squarefree_decomposition() {
            for (d, block) in sqf.distinct_degree() {
                for f in block.equal_degree(d, &mut rng) {
                    out.push((f, mult));
                }
            }
        }
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.coeffs.iter().rev().collect::<Vec<_>>())
                .cmp(&(b.0.degree(), b.0.coeffs.iter().rev().collect::<Vec<_>>()))
        });
        Ok(out)
    }

    /// Yun's algorithm; valid because `deg < p`.
    fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    fn distinct_degree(&self) -> Vec<(usize, UniPoly)> {
        let p = self.prime;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p.get() as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                f = f.exact_div(&g);
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.degree().unwrap_or(0) > 0 {
            out.push((f.degree().unwrap(), f));
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.monic()];
        }
        let p = self.prime;
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p.get())).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut frob = a.rem(self);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p.get() as u128, self);
                norm = norm.mul(&frob).rem(self);
            }
            let b = norm.pow_mod(((p.get() - 1) / 2) as u128, self);
            let g = self.gcd(&b.sub(&Self::one(p)));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < n {
                let mut out = g.equal_degree(d, rng);
                out.extend(self.exact_div(&g).equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Render with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if !s.is_empty() {
                s.push('+');
            }
            if c != 1 || i == 0 {
                s.push_str(&c.to_string());
            }
            s.push_str(&mon);
        }
        s
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.display_in("x"), self.prime)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p101() -> Prime {
        Prime::new(101).unwrap()
    }

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(p101(), c)
    }

    #[test]
    fn gcd_and_squarefree_examples() {
        // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
        let f = poly(&[-2, 5, -4, 1]);
        assert_eq!(f.squarefree_part().unwrap(), poly(&[2, -3, 1]));
        assert_eq!(poly(&[-1, 0, 1]).gcd(&poly(&[-1, 1])), poly(&[-1, 1]));
        assert_eq!(UniPoly::zero(p101()).gcd(&UniPoly::zero(p101())), UniPoly::zero(p101()));
    }

    #[test]
    fn root_scan_of_irreducible_quadratic_is_empty() {
        assert!(poly(&[63, -4, 1]).root_scan().is_empty());
        assert_eq!(poly(&[6, -5, 1]).root_scan(), vec![2, 3]);
    }

    #[test]
    fn degree_guard() {
        let p = Prime::new(3).unwrap();
        let f = UniPoly::from_i64(p, &[0, 0, 0, 1]);
        assert_eq!(
            f.squarefree_part(),
            Err(UniError::UnsupportedDegree { deg: 3, p: 3 })
        );
    }

    #[test]
    fn factor_worked_eliminant() {
        // (x-48)(x-92)(x^2-4x+63)(x^2-51x+4)(x^2-56x+4)
        let factors = [
            poly(&[-48, 1]),
            poly(&[-92, 1]),
            poly(&[63, -4, 1]),
            poly(&[4, -51, 1]),
            poly(&[4, -56, 1]),
        ];
        let f = factors.iter().fold(UniPoly::one(p101()), |acc, g| acc.mul(g));
        let got = f.factor().unwrap();
        assert_eq!(got.len(), 5);
        for g in &factors {
            assert!(got.iter().any(|(h, m)| h == g && *m == 1), "{g:?}");
        }
        let sq = f.mul(&poly(&[-48, 1]));
        assert!(sq.factor().unwrap().contains(&(poly(&[-48, 1]), 2)));
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(0u32..101, 1..9).prop_map(|c| UniPoly::new(Prime::new(101).unwrap(), c))
    }

    proptest! {
        #[test]
        fn gcd_divides_and_cofactors_coprime(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let d = f.gcd(&g);
            prop_assert!(f.rem(&d).is_zero());
            prop_assert!(g.rem(&d).is_zero());
            let one = f.exact_div(&d).gcd(&g.exact_div(&d));
            prop_assert_eq!(one, UniPoly::one(f.prime()));
            let (h, s, t) = f.xgcd(&g);
            prop_assert_eq!(s.mul(&f).add(&t.mul(&g)), h);
        }

        #[test]
        fn squarefree_is_idempotent(f in arb_poly(), g in arb_poly()) {
            let h = f.mul(&f).mul(&g);
            prop_assume!(h.degree().unwrap_or(0) > 0);
            let s = h.squarefree_part().unwrap();
            prop_assert_eq!(s.squarefree_part().unwrap(), s.clone());
            prop_assert!(h.rem(&s).is_zero());
            prop_assert_eq!(s.gcd(&s.derivative()), UniPoly::one(s.prime()));
        }

        #[test]
        fn factorization_multiplies_back(f in arb_poly()) {
            prop_assume!(f.degree().unwrap_or(0) > 0);
            let prod = f.factor().unwrap().iter().fold(UniPoly::one(f.prime()), |acc, (g, m)| {
                (0..*m).fold(acc, |a, _| a.mul(g))
            });
            prop_assert_eq!(prod, f.monic());
        }
    }
}
