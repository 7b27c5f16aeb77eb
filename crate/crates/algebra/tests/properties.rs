use std::sync::Arc;

use hexagram_algebra::{
    radical_zero_dim, saturate, Ideal, Monomial, MonomialOrder, Polynomial, Prime, Rational, Ring, UniPoly,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn ring() -> Arc<Ring> {
    Ring::new(Prime::new(101).unwrap(), &["x", "y"], MonomialOrder::DegRevLex).unwrap()
}

fn uni(r: &Arc<Ring>, var: usize, roots: &[u32]) -> Polynomial {
    roots.iter().fold(Polynomial::one(r), |acc, &a| {
        acc.mul(&Polynomial::var(r, var).sub(&Polynomial::constant(r, a as i64)))
    })
}

fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((0u16..3, 0u16..3, 1u32..101), 0..5).prop_map(move |ts| {
        Polynomial::from_terms(&r, ts.into_iter().map(|(a, b, c)| (Monomial::from_exponents(&[a, b]), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_round_trip(a in -1000i64..1000, b in -1000i64..1000) {
        prop_assume!(a != 0 && b != 0);
        let q = Rational::new(a.into(), b.into());
        let r = Rational::new(b.into(), a.into());
        prop_assert!((q.clone() * r).is_one());
        prop_assert!((q.clone() - q).is_zero());
    }

    /// Zero-dimensional ideals from univariate polynomials with repeated
    /// roots plus one random generator.
    #[test]
    fn radical_is_smaller_and_saturation_idempotent(
        xs in proptest::collection::vec(0u32..6, 1..4),
        ys in proptest::collection::vec(0u32..6, 1..4),
        extra in arb_poly(ring()),
        g in arb_poly(ring()),
    ) {
        let r = ring();
        let ideal = Ideal::new(&r, vec![uni(&r, 0, &xs), uni(&r, 1, &ys), extra]).unwrap();
        let gb = ideal.groebner();
        let full = gb.quotient_dimension().unwrap();
        let (_, rad) = radical_zero_dim(&ideal).unwrap();
        let reduced = rad.quotient_dimension().unwrap();
        prop_assert!(reduced <= full);
        let mut distinct_x = xs.clone();
        distinct_x.sort_unstable();
        distinct_x.dedup();
        let mut distinct_y = ys.clone();
        distinct_y.sort_unstable();
        distinct_y.dedup();
        prop_assert!(reduced <= distinct_x.len() * distinct_y.len());

        prop_assume!(!g.is_zero());
        let once = saturate(&ideal, &g).unwrap();
        let twice = saturate(&once, &g).unwrap();
        prop_assert_eq!(once.groebner(), twice.groebner());
    }

    #[test]
    fn squarefree_part_divides(coeffs in proptest::collection::vec(0i64..101, 1..6), k in 1usize..3) {
        let p = Prime::new(101).unwrap();
        let f = UniPoly::from_i64(p, &coeffs);
        prop_assume!(f.degree().unwrap_or(0) > 0);
        let g = (1..k).fold(f.clone(), |acc, _| acc.mul(&f));
        let sf = g.squarefree_part().unwrap();
        prop_assert!(g.rem(&sf).is_zero());
        prop_assert_eq!(sf.squarefree_part().unwrap(), sf.clone());
        prop_assert_eq!(sf, f.squarefree_part().unwrap());
    }
}
