//! Multivariate polynomial arithmetic over exact number fields.
//!
//! Submodules: [`ring`] (rings, monomials, orders), [`poly`] (sparse
//! polynomials), [`parse`] (text input), [`fmt`] (canonical text output).

pub mod fmt;
pub mod parse;
pub mod poly;
pub mod ring;

pub use poly::Polynomial;
pub use ring::{Monomial, MonomialOrder, OrderKind, PolyRing};

#[cfg(test)]
pub(crate) mod testutil {
    use rand::Rng;

    use crate::exactfield::{FieldElement, NumberField, Rational};

    use super::{Polynomial, PolyRing};

    pub fn random_rational(rng: &mut impl Rng) -> Rational {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=4);
        Rational::new(num.into(), den.into()).unwrap()
    }

    pub fn random_field_elem(rng: &mut impl Rng, field: &NumberField) -> FieldElement {
        let coeffs: Vec<Rational> = (0..field.degree()).map(|_| random_rational(rng)).collect();
        field.element(coeffs).unwrap()
    }

    pub fn random_poly(
        rng: &mut impl Rng,
        ring: &PolyRing,
        max_terms: usize,
        max_exp: u32,
    ) -> Polynomial {
        let nterms = rng.gen_range(0..=max_terms);
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let exps: Vec<u32> = (0..ring.nvars())
                .map(|_| rng.gen_range(0..=max_exp))
                .collect();
            terms.push((
                ring.monomial(exps).unwrap(),
                random_field_elem(rng, ring.field()),
            ));
        }
        Polynomial::from_terms(ring, terms).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::exactfield::{NumberField, Rational};

    use super::testutil::{random_field_elem, random_poly};
    use super::{MonomialOrder, Polynomial, PolyRing};

    fn qring(vars: &[&str]) -> PolyRing {
        PolyRing::new(
            NumberField::rationals(),
            vars.iter().map(|s| s.to_string()).collect(),
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap()
    }

    fn sixth_root_field() -> NumberField {
        // e^2 = e - 1, so e is a primitive sixth root of unity.
        NumberField::new(
            "e",
            vec![Rational::from_int(1), Rational::from_int(-1), Rational::from_int(1)],
        )
        .unwrap()
    }

    #[test]
    fn ring_axioms_hold_on_random_samples() {
        let field = sixth_root_field();
        let ring = PolyRing::new(
            field,
            vec!["x".into(), "y".into(), "z".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..500 {
            let a = random_poly(&mut rng, &ring, 4, 3);
            let b = random_poly(&mut rng, &ring, 4, 3);
            let c = random_poly(&mut rng, &ring, 4, 3);
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
            let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
            let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(assoc_l, assoc_r);
            assert!(a.sub(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn format_parse_roundtrip_on_random_samples() {
        let field = sixth_root_field();
        let ring = PolyRing::new(
            field,
            vec!["x1".into(), "x2".into(), "x3".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = random_poly(&mut rng, &ring, 6, 4);
            let s = p.to_string();
            let back = ring.parse(&s).unwrap();
            assert_eq!(p, back, "roundtrip failed for `{s}`");
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism() {
        let field = sixth_root_field();
        let ring = PolyRing::new(
            field.clone(),
            vec!["x".into(), "y".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let a = random_poly(&mut rng, &ring, 5, 3);
            let b = random_poly(&mut rng, &ring, 5, 3);
            let pt = vec![
                random_field_elem(&mut rng, &field),
                random_field_elem(&mut rng, &field),
            ];
            let sum = a.add(&b).unwrap().evaluate(&pt).unwrap();
            let prod = a.mul(&b).unwrap().evaluate(&pt).unwrap();
            let ea = a.evaluate(&pt).unwrap();
            let eb = b.evaluate(&pt).unwrap();
            assert_eq!(sum, ea.add(&eb).unwrap());
            assert_eq!(prod, ea.mul(&eb).unwrap());
        }
    }

    #[test]
    fn derivative_satisfies_leibniz_rule() {
        let ring = qring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let a = random_poly(&mut rng, &ring, 5, 3);
            let b = random_poly(&mut rng, &ring, 5, 3);
            for var in 0..2 {
                let lhs = a.mul(&b).unwrap().derivative(var).unwrap();
                let rhs = a
                    .derivative(var)
                    .unwrap()
                    .mul(&b)
                    .unwrap()
                    .add(&a.mul(&b.derivative(var).unwrap()).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let ring = qring(&["x", "y"]);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let field = NumberField::rationals();
        for _ in 0..40 {
            let p = random_poly(&mut rng, &ring, 5, 3);
            let rep = random_poly(&mut rng, &ring, 3, 2);
            let pt = vec![
                random_field_elem(&mut rng, &field),
                random_field_elem(&mut rng, &field),
            ];
            let rep_at = rep.evaluate(&pt).unwrap();
            let direct = p.evaluate(&[rep_at, pt[1].clone()]).unwrap();
            let via_subst = p.substitute(0, &rep).unwrap().evaluate(&pt).unwrap();
            assert_eq!(direct, via_subst);
        }
    }

    #[test]
    fn quartic_and_sextic_strings_roundtrip() {
        let ring = PolyRing::new(
            NumberField::rationals(),
            vec!["s".into(), "x1".into(), "x2".into(), "x3".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let f = "-s^2*x1*x3+s^2*x2^2+2*s*x1^3-2*s*x3^3+4*x1^2*x3^2-32*x1*x2^2*x3+64*x2^4";
        let p = ring.parse(f).unwrap();
        assert_eq!(p.num_terms(), 7);
        assert_eq!(p.weighted_degree(), Some(4));
        assert!(p.is_homogeneous());
        assert_eq!(ring.parse(&p.to_string()).unwrap(), p);

        let g = "x1^6+2*x1^3*x3^3-36*x1^2*x2^2*x3^2+96*x1*x2^4*x3-64*x2^6+x3^6";
        let q = ring.parse(g).unwrap();
        assert_eq!(q.weighted_degree(), Some(6));
        assert!(q.is_homogeneous());
        assert_eq!(ring.parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn sextic_splits_into_conjugate_linear_forms() {
        // Over Q(e) with e^2 = e - 1, the sextic is the norm-style product
        // of the six forms e^(2i)*x1 - 2*e^i*x2 + x3.
        let field = sixth_root_field();
        let ring = PolyRing::new(
            field,
            vec!["x1".into(), "x2".into(), "x3".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let mut prod = Polynomial::one(&ring);
        for i in 0..6u32 {
            let factor = ring
                .parse(&format!("e^{}*x1-2*e^{}*x2+x3", 2 * i, i))
                .unwrap();
            prod = prod.mul(&factor).unwrap();
        }
        let expected = ring
            .parse("x1^6+2*x1^3*x3^3-36*x1^2*x2^2*x3^2+96*x1*x2^4*x3-64*x2^6+x3^6")
            .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn split_square_identity_with_weighted_grading() {
        // z^2 - g = A*B + D^2*E with deg z = 3; every piece is weighted
        // homogeneous of degree 6.
        let ring = PolyRing::new(
            NumberField::rationals(),
            vec!["z".into(), "x1".into(), "x2".into(), "x3".into()],
            Some(vec![3, 1, 1, 1]),
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let g = ring
            .parse("x1^6+2*x1^3*x3^3-36*x1^2*x2^2*x3^2+96*x1*x2^4*x3-64*x2^6+x3^6")
            .unwrap();
        let z2 = ring.parse("z^2").unwrap();
        let lhs = z2.sub(&g).unwrap();
        assert!(lhs.is_homogeneous());
        assert_eq!(lhs.weighted_degree(), Some(6));
        let rhs = ring
            .parse(
                "(z+x1^3-x3^3)*(z-x1^3+x3^3)+4*(x1*x3-4*x2^2)^2*(-x1*x3+x2^2)",
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_reports_errors_with_positions() {
        let ring = qring(&["x", "y"]);
        assert!(matches!(
            ring.parse("x + w"),
            Err(crate::Error::UnknownVariable { .. })
        ));
        assert!(matches!(ring.parse("x + "), Err(crate::Error::Parse { .. })));
        assert!(matches!(ring.parse("x ^ y"), Err(crate::Error::Parse { .. })));
        assert!(matches!(ring.parse("(x"), Err(crate::Error::Parse { .. })));
        assert!(matches!(ring.parse("x) "), Err(crate::Error::Parse { .. })));
        assert!(matches!(ring.parse("1/0"), Err(crate::Error::Parse { .. })));
        assert!(matches!(ring.parse(""), Err(crate::Error::Parse { .. })));
        assert!(matches!(ring.parse("x $ y"), Err(crate::Error::Parse { .. })));
    }

    #[test]
    fn content_and_primitive_part() {
        let ring = qring(&["x", "y"]);
        let p = ring.parse("4/3*x^2-8/9*y").unwrap();
        assert_eq!(p.content(), "4/9".parse().unwrap());
        let (prim, factor) = p.make_primitive();
        assert_eq!(factor, "4/9".parse().unwrap());
        assert_eq!(prim, ring.parse("3*x^2-2*y").unwrap());
        let neg = ring.parse("-2*x-4*y").unwrap();
        let (prim2, factor2) = neg.make_primitive();
        assert_eq!(factor2, "-2".parse().unwrap());
        assert_eq!(prim2, ring.parse("x+2*y").unwrap());
    }

    #[test]
    fn map_vars_and_field_lift() {
        let small = qring(&["x", "y"]);
        let big = PolyRing::new(
            sixth_root_field(),
            vec!["t".into(), "x".into(), "y".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let p = small.parse("x^2*y-3*y+1").unwrap();
        let lifted = p.lift_field(&big).unwrap();
        assert_eq!(lifted, big.parse("x^2*y-3*y+1").unwrap());
        // a non-rational coefficient cannot be pushed back down
        let gen = big.parse("e*x").unwrap();
        assert!(gen.lift_field(&big).is_err());
        // dropping a variable that still occurs is an error
        let wide = qring(&["t", "x", "y"]);
        let fine = wide
            .parse("x^2*y-3*y+1")
            .unwrap()
            .map_vars(&small, &[None, Some(0), Some(1)]);
        assert_eq!(fine.unwrap(), p);
        let bad = wide
            .parse("t*x")
            .unwrap()
            .map_vars(&small, &[None, Some(0), Some(1)]);
        assert!(bad.is_err());
    }

    #[test]
    fn proportionality_detects_scalar_multiples() {
        let ring = qring(&["x", "y"]);
        let p = ring.parse("2*x^2-4*y").unwrap();
        let q = ring.parse("-3*x^2+6*y").unwrap();
        assert!(p.proportional_to(&q));
        let r = ring.parse("-3*x^2+5*y").unwrap();
        assert!(!p.proportional_to(&r));
    }
}
