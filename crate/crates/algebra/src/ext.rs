//! Simple extensions `F_p[x]/(m(x))`.

use std::fmt;
use std::sync::Arc;

use crate::fields::{FieldElement, FieldError, Prime};
use crate::univariate::UniPoly;

/// The quotient ring `F_p[x]/(m)`; a field when `m` is irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField {
    modulus: UniPoly,
}

impl ExtField {
    pub fn new(modulus: UniPoly) -> Result<Arc<Self>, FieldError> {
        if !modulus.is_monic() || modulus.degree().unwrap_or(0) < 1 {
            return Err(FieldError::InvalidModulus);
        }
        Ok(Arc::new(ExtField { modulus }))
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn prime(&self) -> Prime {
        self.modulus.prime()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    field: Arc<ExtField>,
    value: UniPoly,
}

impl ExtElement {
    pub fn new(field: &Arc<ExtField>, value: UniPoly) -> Self {
        let value = value.rem(&field.modulus);
        ExtElement {
            field: Arc::clone(field),
            value,
        }
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(field: &Arc<ExtField>) -> Self {
        Self::new(field, UniPoly::x(field.prime()))
    }

    pub fn from_base(field: &Arc<ExtField>, c: FieldElement) -> Self {
        Self::new(field, UniPoly::constant(field.prime(), c.value()))
    }

    pub fn from_i64(field: &Arc<ExtField>, c: i64) -> Self {
        let p = field.prime();
        Self::new(field, UniPoly::constant(p, p.reduce(c)))
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    /// Coefficients on `1, x, ..., x^(deg m - 1)`, padded with zeros.
    pub fn coeffs(&self) -> Vec<FieldElement> {
        let p = self.field.prime();
        (0..self.field.degree())
            .map(|i| FieldElement::new(self.value.coeff(i) as i64, p))
            .collect()
    }

    pub fn as_poly(&self) -> &UniPoly {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `Some(c)` when the element lies in the base field.
    pub fn as_base(&self) -> Option<FieldElement> {
        match self.value.degree() {
            None => Some(FieldElement::zero(self.field.prime())),
            Some(0) => Some(FieldElement::new(self.value.coeff(0) as i64, self.field.prime())),
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if !Arc::ptr_eq(&self.field, &other.field) && self.field != other.field {
            return Err(FieldError::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.field, self.value.add(&other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.field, self.value.sub(&other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(Self::new(&self.field, self.value.mul(&other.value)))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.value.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(&self.field, self.value.scale(c))
    }

    /// Inverse via extended gcd with the modulus. A nontrivial gcd means the
    /// modulus is reducible; the shared factor is reported.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = self.value.xgcd(&self.field.modulus);
        if g.degree() != Some(0) {
            return Err(FieldError::NotInvertible(g.to_string()));
        }
        Ok(Self::new(&self.field, s))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_i64(&self.field, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.value, self.field.modulus)
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(c: &[i64]) -> Arc<ExtField> {
        ExtField::new(UniPoly::from_i64(Prime::new(101).unwrap(), c)).unwrap()
    }

    #[test]
    fn vieta_in_quadratic_extensions() {
        let k = field(&[63, -4, 1]);
        let x = ExtElement::generator(&k);
        let other = ExtElement::from_i64(&k, 4).sub(&x).unwrap();
        assert_eq!(x.mul(&other).unwrap().as_base().unwrap().value(), 63);
        assert_eq!(x.add(&other).unwrap().as_base().unwrap().value(), 4);

        let k = field(&[4, -51, 1]);
        let x = ExtElement::generator(&k);
        let other = ExtElement::from_i64(&k, 51).sub(&x).unwrap();
        assert_eq!(x.mul(&other).unwrap().as_base().unwrap().value(), 4);
    }

    #[test]
    fn reducible_modulus_is_reported() {
        // x^2 - 1 = (x-1)(x+1)
        let k = field(&[-1, 0, 1]);
        let y = ExtElement::generator(&k).sub(&ExtElement::from_i64(&k, 1)).unwrap();
        assert!(matches!(y.inv(), Err(FieldError::NotInvertible(_))));
        assert!(matches!(ExtElement::from_i64(&k, 0).inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn rejects_bad_modulus_and_mixing() {
        let p = Prime::new(101).unwrap();
        assert_eq!(
            ExtField::new(UniPoly::from_i64(p, &[1, 2])),
            Err(FieldError::InvalidModulus)
        );
        let a = ExtElement::generator(&field(&[63, -4, 1]));
        let b = ExtElement::generator(&field(&[4, -51, 1]));
        assert_eq!(a.add(&b), Err(FieldError::ModulusMismatch));
    }

    proptest! {
        #[test]
        fn constants_agree_with_base_field(a in 0i64..101, b in 0i64..101) {
            let k = field(&[63, -4, 1]);
            let p = Prime::new(101).unwrap();
            let (x, y) = (ExtElement::from_i64(&k, a), ExtElement::from_i64(&k, b));
            prop_assert_eq!(x.mul(&y).unwrap().as_base().unwrap(), p.element(a) * p.element(b));
            prop_assert_eq!(x.add(&y).unwrap().as_base().unwrap(), p.element(a) + p.element(b));
        }

        #[test]
        fn inverse_in_field(c0 in 0i64..101, c1 in 0i64..101) {
            let k = field(&[63, -4, 1]);
            let z = ExtElement::new(&k, UniPoly::from_i64(k.prime(), &[c0, c1]));
            prop_assume!(!z.is_zero());
            let one = z.mul(&z.inv().unwrap()).unwrap();
            prop_assert_eq!(one.as_base().unwrap().value(), 1);
            prop_assert_eq!(z.pow(101 * 101 - 1).as_base().unwrap().value(), 1);
        }
    }
}
