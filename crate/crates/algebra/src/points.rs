//! Explicit points of a zero-dimensional radical ideal: a lex basis in shape
//! position, split along the factorization of its eliminant.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ext::{ExtElement, ExtField};
use crate::fields::FieldElement;
use crate::groebner::{GroebnerBasis, GroebnerError, Ideal, Selection};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Ring};
use crate::univariate::{UniError, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideal is not radical: eliminant factor {0} is repeated")]
    NotRadical(String),
    #[error("no shape-position lex basis found after trying {0} primitive elements")]
    SplittingFailed(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Univariate(#[from] UniError),
}

/// The element whose minimal polynomial parametrizes a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitive {
    /// One of the ring variables.
    Variable(usize),
    /// `sum c_i x_i` with the given coefficients.
    LinearForm(Vec<u32>),
}

/// One Galois orbit of points: the roots of an irreducible `minpoly`, with
/// every coordinate a polynomial in the primitive element reduced modulo it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub minpoly: UniPoly,
    pub primitive: Primitive,
    pub coords: Vec<UniPoly>,
}

impl Family {
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Coordinates of a degree-one family.
    pub fn rational_point(&self) -> Option<Vec<FieldElement>> {
        if !self.is_rational() {
            return None;
        }
        let p = self.minpoly.prime();
        let root = p.neg(self.minpoly.coeff(0));
        Some(self.coords.iter().map(|c| p.element(c.eval(root) as i64)).collect())
    }

    pub fn field(&self) -> Arc<ExtField> {
        ExtField::new(self.minpoly.clone()).expect("minimal polynomials are monic")
    }

    /// One generic point of the family, with coordinates in `F_p[x]/(minpoly)`.
    pub fn generic_point(&self) -> Vec<ExtElement> {
        let k = self.field();
        self.coords.iter().map(|c| ExtElement::new(&k, c.clone())).collect()
    }

    /// Coordinate `i` as text in the primitive element `var`, e.g.
    /// `29a + 69` or `4 - a`.
    pub fn coordinate_text(&self, i: usize, var: &str) -> String {
        linear_text(&self.coords[i], var)
    }
}

/// Positive residues throughout, except a leading coefficient of -1 which is
/// written as subtraction.
pub fn linear_text(f: &UniPoly, var: &str) -> String {
    let p = f.prime();
    match f.degree() {
        None => "0".into(),
        Some(0) => f.coeff(0).to_string(),
        Some(1) => {
            let (c1, c0) = (f.coeff(1), f.coeff(0));
            let head = if c1 == 1 { var.to_string() } else { format!("{c1}{var}") };
            match (c1 == p.get() - 1, c0) {
                (true, 0) => format!("-{var}"),
                (true, c) => format!("{c} - {var}"),
                (false, 0) => head,
                (false, c) => format!("{head} + {c}"),
            }
        }
        Some(_) => f.display_in(var),
    }
}

/// All points of a zero-dimensional radical ideal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    pub families: Vec<Family>,
}

impl PointSet {
    /// Rational points, sorted.
    pub fn rational(&self) -> Vec<Vec<FieldElement>> {
        let mut pts: Vec<Vec<FieldElement>> = self.families.iter().filter_map(Family::rational_point).collect();
        pts.sort_by_key(|v| v.iter().map(|x| x.value()).collect::<Vec<_>>());
        pts
    }

    /// Families of degree at least two.
    pub fn extension_families(&self) -> Vec<&Family> {
        self.families.iter().filter(|f| !f.is_rational()).collect()
    }

    /// Number of geometric points.
    pub fn count(&self) -> usize {
        self.families.iter().map(Family::degree).sum()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pt in self.rational() {
            let parts: Vec<String> = pt.iter().map(|x| x.to_string()).collect();
            writeln!(f, "({})", parts.join(", "))?;
        }
        for fam in self.extension_families() {
            let coords: Vec<String> = (0..fam.coords.len()).map(|i| fam.coordinate_text(i, "x")).collect();
            writeln!(f, "{} = 0: ({})", fam.minpoly.display_in("x"), coords.join(", "))?;
        }
        Ok(())
    }
}

/// Lex basis with the primitive element as the smallest variable; returns
/// the eliminant and every variable as a polynomial in it, or `None` when
/// the basis is not in shape position.
fn shape_basis(ring: &Arc<Ring>, gens: &[Polynomial], prim: usize, degree: usize) -> Result<Option<(UniPoly, Vec<UniPoly>)>, PointError> {
    let n = ring.nvars();
    // Lex ring with `prim` moved to the end.
    let order: Vec<usize> = (0..n).filter(|&i| i != prim).chain([prim]).collect();
    let names: Vec<&str> = order.iter().map(|&i| ring.names()[i].as_str()).collect();
    let lex = Ring::new(ring.prime(), &names, MonomialOrder::Lex)?;
    let mut to_lex = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        to_lex[i] = pos;
    }
    let mapped: Vec<Polynomial> = gens.iter().map(|g| g.map_vars(&lex, &to_lex)).collect();
    let gb = GroebnerBasis::compute(&Ideal::new(&lex, mapped)?, Selection::default());
    if gb.basis().len() != n {
        return Ok(None);
    }
    let last = n - 1;
    let elim = gb.basis()[0].to_univariate(last);
    let Ok(elim) = elim else { return Ok(None) };
    if elim.degree() != Some(degree) {
        return Ok(None);
    }
    let mut coords = vec![UniPoly::zero(ring.prime()); n];
    coords[prim] = UniPoly::x(ring.prime());
    for g in &gb.basis()[1..] {
        let lm = g.leading_monomial().unwrap();
        let Some(v) = lm.pure_power_var() else { return Ok(None) };
        if lm.degree() != 1 || v == last {
            return Ok(None);
        }
        // g = x_v - h(prim)
        let tail = g.sub(&Polynomial::var(&lex, v));
        let Ok(h) = tail.neg().to_univariate(last) else { return Ok(None) };
        coords[order[v]] = h;
    }
    Ok(Some((elim, coords)))
}

fn split(elim: &UniPoly, coords: &[UniPoly], primitive: Primitive) -> Result<PointSet, PointError> {
    let mut families = Vec::new();
    for (phi, mult) in elim.factor()? {
        if mult > 1 {
            return Err(PointError::NotRadical(phi.to_string()));
        }
        families.push(Family {
            coords: coords.iter().map(|c| c.rem(&phi)).collect(),
            minpoly: phi,
            primitive: primitive.clone(),
        });
    }
    Ok(PointSet { families })
}

/// Points of the radical zero-dimensional ideal with basis `gb`. Variables
/// are tried as primitive elements in `preference` order, then seeded random
/// linear forms.
pub fn rational_points(gb: &GroebnerBasis, preference: &[usize]) -> Result<PointSet, PointError> {
    if !gb.is_zero_dimensional() {
        return Err(PointError::NotZeroDimensional);
    }
    let degree = gb.quotient_dimension()?;
    let ring = gb.ring();
    if degree == 0 {
        return Ok(PointSet::default());
    }
    let n = ring.nvars();
    let mut tried = 0;
    let order: Vec<usize> = preference.iter().copied().chain(0..n).collect();
    let mut seen = Vec::new();
    for v in order {
        if seen.contains(&v) {
            continue;
        }
        seen.push(v);
        tried += 1;
        if let Some((elim, coords)) = shape_basis(ring, gb.basis(), v, degree)? {
            return split(&elim, &coords, Primitive::Variable(v));
        }
    }
    let mut names: Vec<String> = ring.names().to_vec();
    names.push("z_prim".into());
    let ext = Ring::new(ring.prime(), &names, MonomialOrder::DegRevLex)?;
    let embed: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9017_75);
    for _ in 0..8 {
        tried += 1;
        let c: Vec<u32> = (0..n).map(|_| rng.gen_range(1..ring.prime().get())).collect();
        let mut form = Polynomial::var(&ext, n);
        for (i, &ci) in c.iter().enumerate() {
            form = form.sub(&Polynomial::var(&ext, i).scale(ci));
        }
        let mut gens: Vec<Polynomial> = gb.basis().iter().map(|g| g.map_vars(&ext, &embed)).collect();
        gens.push(form);
        if let Some((elim, mut coords)) = shape_basis(&ext, &gens, n, degree)? {
            coords.truncate(n);
            return split(&elim, &coords, Primitive::LinearForm(c));
        }
    }
    Err(PointError::SplittingFailed(tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Prime;

    fn ring(names: &[&str]) -> Arc<Ring> {
        Ring::new(Prime::new(101).unwrap(), names, MonomialOrder::DegRevLex).unwrap()
    }

    fn gb(r: &Arc<Ring>, gens: &[&str]) -> GroebnerBasis {
        Ideal::new(r, gens.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect())
            .unwrap()
            .groebner()
    }

    #[test]
    fn single_rational_point() {
        let r = ring(&["x", "y"]);
        let pts = rational_points(&gb(&r, &["x-3", "y-x"]), &[0]).unwrap();
        let p = r.prime();
        assert_eq!(pts.rational(), vec![vec![p.element(3), p.element(3)]]);
        assert_eq!(pts.count(), 1);
    }

    #[test]
    fn quadratic_family() {
        // x^2 - 4x + 63 is irreducible mod 101; y = 29x + 69.
        let r = ring(&["x", "y"]);
        let pts = rational_points(&gb(&r, &["x^2-4x+63", "y-29x-69"]), &[0]).unwrap();
        assert_eq!(pts.count(), 2);
        let fam = &pts.extension_families()[0];
        assert_eq!(fam.minpoly, UniPoly::from_i64(r.prime(), &[63, -4, 1]));
        assert_eq!(fam.coordinate_text(1, "a"), "29a + 69");
        assert_eq!(fam.coordinate_text(0, "a"), "a");
    }

    #[test]
    fn non_shape_variable_falls_back() {
        // x takes the value 1 at two points, so x is not primitive.
        let r = ring(&["x", "y"]);
        let g = gb(&r, &["x-1", "y^2-4"]);
        let pts = rational_points(&g, &[0]).unwrap();
        assert_eq!(pts.rational().len(), 2);
        // Points that share both coordinate projections need a linear form.
        let g = gb(&r, &["x^2-1", "y^2-1"]);
        let pts = rational_points(&g, &[0]).unwrap();
        assert_eq!(pts.rational().len(), 4);
        assert!(matches!(pts.families[0].primitive, Primitive::LinearForm(_)));
    }

    #[test]
    fn mixed_rational_and_extension() {
        // (x - 5)(x^2 - 4x + 63) expanded mod 101, with y = 2x.
        let r = ring(&["x", "y"]);
        let g = gb(&r, &["x^3-9x^2+83x-12", "y-2x"]);
        let pts = rational_points(&g, &[1]).unwrap();
        let p = r.prime();
        assert_eq!(pts.count(), 3);
        assert_eq!(pts.rational(), vec![vec![p.element(5), p.element(10)]]);
        assert_eq!(pts.families[0].primitive, Primitive::Variable(1));
        let fam = pts.extension_families()[0];
        let pt = fam.generic_point();
        for g in g.basis() {
            assert!(g.evaluate_ext(&fam.field(), &pt).unwrap().is_zero());
        }
        assert_eq!(fam.minpoly.degree(), Some(2));
    }

    #[test]
    fn linear_text_forms() {
        let p = Prime::new(101).unwrap();
        assert_eq!(linear_text(&UniPoly::from_i64(p, &[4, -1]), "a"), "4 - a");
        assert_eq!(linear_text(&UniPoly::from_i64(p, &[100, 43]), "a"), "43a + 100");
        assert_eq!(linear_text(&UniPoly::from_i64(p, &[0, 1]), "a"), "a");
        assert_eq!(linear_text(&UniPoly::from_i64(p, &[7]), "a"), "7");
    }
}
