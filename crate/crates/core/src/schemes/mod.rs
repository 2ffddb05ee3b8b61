//! Scheme layer over ideals: ambient spaces, singular subschemes, tangent
//! spaces, boolean-style scheme operations, translations, linear systems
//! through fat points, plane-curve squarefree parts, and image degrees of
//! rational maps.
//!
//! A scheme is an ideal tagged with an ambient space. Projective ambients
//! carry the grading weights of their coordinate ring and insist on
//! homogeneous generators; geometry that needs points (solving, local
//! multiplicities) happens on affine charts.

pub mod image;
pub mod linsys;
pub mod planar;

use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::groebner::{hilbert, ops, Deadline, Ideal};
use crate::multipoly::Polynomial;

pub use image::{local_length_at, RationalMap};
pub use linsys::{linear_system, multiplicity_at, section_row_space, PointCondition};
pub use planar::squarefree_part;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Affine,
    Projective,
}

/// Affine or projective space with a fixed coordinate ring. Projective
/// weights are the ring's variable weights.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientSpace {
    kind: SpaceKind,
    ring: crate::multipoly::PolyRing,
}

impl AmbientSpace {
    pub fn affine(ring: &crate::multipoly::PolyRing) -> AmbientSpace {
        AmbientSpace {
            kind: SpaceKind::Affine,
            ring: ring.clone(),
        }
    }

    pub fn projective(ring: &crate::multipoly::PolyRing) -> AmbientSpace {
        AmbientSpace {
            kind: SpaceKind::Projective,
            ring: ring.clone(),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn ring(&self) -> &crate::multipoly::PolyRing {
        &self.ring
    }

    pub fn is_projective(&self) -> bool {
        self.kind == SpaceKind::Projective
    }
}

/// A closed subscheme of an ambient space, given by an ideal.
#[derive(Clone, Debug)]
pub struct Scheme {
    ambient: AmbientSpace,
    ideal: Ideal,
}

impl Scheme {
    pub fn new(ambient: &AmbientSpace, ideal: Ideal) -> Result<Scheme> {
        if ideal.ring() != ambient.ring() {
            return Err(Error::RingMismatch {
                left: ambient.ring().describe(),
                right: ideal.ring().describe(),
            });
        }
        if ambient.is_projective() {
            for g in ideal.generators() {
                if !g.is_homogeneous() {
                    return Err(Error::invalid(format!(
                        "projective scheme generator `{g}` is not homogeneous"
                    )));
                }
            }
        }
        Ok(Scheme {
            ambient: ambient.clone(),
            ideal,
        })
    }

    pub fn hypersurface(ambient: &AmbientSpace, f: Polynomial) -> Result<Scheme> {
        if f.is_zero() {
            return Err(Error::invalid("hypersurface needs a nonzero polynomial"));
        }
        let ideal = Ideal::new(ambient.ring(), vec![f])?;
        Scheme::new(ambient, ideal)
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The single defining polynomial, if this scheme was given by one.
    pub fn hypersurface_polynomial(&self) -> Result<&Polynomial> {
        match self.ideal.generators() {
            [f] => Ok(f),
            _ => Err(Error::invalid(
                "operation needs a hypersurface (exactly one generator)",
            )),
        }
    }

    fn check_same_ambient(&self, other: &Scheme) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::invalid("schemes live in different ambient spaces"));
        }
        Ok(())
    }

    /// Scheme-theoretic intersection: the sum of the ideals.
    pub fn meet(&self, other: &Scheme) -> Result<Scheme> {
        self.check_same_ambient(other)?;
        Scheme::new(&self.ambient, ops::sum(&self.ideal, &other.ideal)?)
    }

    /// Scheme-theoretic union: the intersection of the ideals.
    pub fn union(&self, other: &Scheme, deadline: &Deadline) -> Result<Scheme> {
        self.check_same_ambient(other)?;
        Scheme::new(
            &self.ambient,
            ops::intersection(&self.ideal, &other.ideal, deadline)?,
        )
    }

    /// Closure of the complement: saturation of this ideal by the other's.
    pub fn difference(&self, other: &Scheme, deadline: &Deadline) -> Result<Scheme> {
        self.check_same_ambient(other)?;
        Scheme::new(
            &self.ambient,
            ops::saturate(&self.ideal, &other.ideal, deadline)?,
        )
    }

    /// Dimension of the scheme: Krull for affine, cone dimension minus one
    /// for projective (so the empty projective scheme has dimension -1).
    pub fn dimension(&self, deadline: &Deadline) -> Result<i64> {
        let d = hilbert::dimension(&self.ideal, deadline)?;
        Ok(match self.kind() {
            SpaceKind::Affine => d,
            SpaceKind::Projective => d - 1,
        })
    }

    pub fn is_empty(&self, deadline: &Deadline) -> Result<bool> {
        Ok(match self.kind() {
            SpaceKind::Affine => self.ideal.is_unit(deadline)?,
            SpaceKind::Projective => self.dimension(deadline)? < 0,
        })
    }

    pub fn contains_point(&self, pt: &[FieldElement]) -> Result<bool> {
        for g in self.ideal.generators() {
            if !g.evaluate(pt)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn kind(&self) -> SpaceKind {
        self.ambient.kind
    }
}

/// Singular subscheme of a hypersurface: the scheme of the defining
/// polynomial together with all its first partials. In the projective
/// case Euler's relation makes the polynomial itself redundant but it is
/// kept so affine patches behave identically.
pub fn singular_subscheme(x: &Scheme) -> Result<Scheme> {
    let f = x.hypersurface_polynomial()?;
    let ring = x.ambient.ring();
    let mut gens = vec![f.clone()];
    for v in 0..ring.nvars() {
        gens.push(f.derivative(v)?);
    }
    Scheme::new(&x.ambient, Ideal::new(ring, gens)?)
}

/// Defining polynomial of the tangent space of a hypersurface at a smooth
/// point: the gradient pairing, anchored at the point in the affine case.
pub fn tangent_space(x: &Scheme, pt: &[FieldElement]) -> Result<Polynomial> {
    let f = x.hypersurface_polynomial()?;
    if !x.contains_point(pt)? {
        return Err(Error::invalid("tangent space requested at a point off the scheme"));
    }
    let ring = x.ambient.ring();
    let mut t = Polynomial::zero(ring);
    let mut gradient_zero = true;
    for v in 0..ring.nvars() {
        let dv = f.derivative(v)?.evaluate(pt)?;
        if dv.is_zero() {
            continue;
        }
        gradient_zero = false;
        let xi = Polynomial::var(ring, v)?;
        let term = match x.kind() {
            SpaceKind::Projective => xi,
            SpaceKind::Affine => xi.sub(&Polynomial::constant(ring, pt[v].clone())?)?,
        };
        t = t.add(&term.scale(&dv)?)?;
    }
    if gradient_zero {
        return Err(Error::invalid(
            "point is singular on the hypersurface: zero gradient",
        ));
    }
    Ok(t)
}

/// Translate an affine scheme so the given point moves to the origin.
pub fn affine_translate(x: &Scheme, pt: &[FieldElement]) -> Result<Scheme> {
    if x.ambient.is_projective() {
        return Err(Error::invalid("translation only applies to affine schemes"));
    }
    let ring = x.ambient.ring();
    if pt.len() != ring.nvars() {
        return Err(Error::invalid("point arity != ring arity"));
    }
    let mut gens = Vec::with_capacity(x.ideal.generators().len());
    for g in x.ideal.generators() {
        let mut cur = g.clone();
        for (v, c) in pt.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rep = Polynomial::var(ring, v)?.add(&Polynomial::constant(ring, c.clone())?)?;
            cur = cur.substitute(v, &rep)?;
        }
        gens.push(cur);
    }
    Scheme::new(&x.ambient, Ideal::new(ring, gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::NumberField;
    use crate::multipoly::{MonomialOrder, PolyRing};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qring(vars: &[&str]) -> PolyRing {
        PolyRing::new(
            NumberField::rationals(),
            vars.iter().map(|s| s.to_string()).collect(),
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap()
    }

    #[test]
    fn smooth_conic_has_empty_singular_locus() {
        let d = Deadline::none();
        let r = qring(&["x1", "x2", "x3"]);
        let p2 = AmbientSpace::projective(&r);
        let conic = Scheme::hypersurface(&p2, r.parse("x1*x3-x2^2").unwrap()).unwrap();
        let sing = singular_subscheme(&conic).unwrap();
        assert!(sing.is_empty(&d).unwrap());
    }

    #[test]
    fn nodal_cubic_is_singular_exactly_at_the_origin() {
        let d = Deadline::none();
        let r = qring(&["x", "y"]);
        let a2 = AmbientSpace::affine(&r);
        let curve = Scheme::hypersurface(&a2, r.parse("y^2-x^2*(x+1)").unwrap()).unwrap();
        let sing = singular_subscheme(&curve).unwrap();
        assert!(!sing.is_empty(&d).unwrap());
        let f = NumberField::rationals();
        assert!(sing.contains_point(&[f.zero(), f.zero()]).unwrap());
        let rep =
            crate::groebner::solve::solve_zero_dim(sing.ideal(), None, &d).unwrap();
        assert!(rep.is_complete());
        assert_eq!(rep.points.len(), 1);
    }

    #[test]
    fn random_smooth_quadrics_have_empty_singular_locus() {
        let d = Deadline::none();
        let r = qring(&["x", "y", "z", "w"]);
        let p3 = AmbientSpace::projective(&r);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut tested = 0;
        while tested < 20 {
            // random diagonal-dominant quadratic form, checked nonsingular
            // via its discriminant-free criterion: nonzero diagonal after
            // random upper-triangular entries keeps things generic; verify
            // by asking the scheme itself.
            let mut terms = Vec::new();
            for i in 0..4 {
                for j in i..4 {
                    let c: i64 = rng.gen_range(-4..=4);
                    if i == j {
                        let c = if c == 0 { 1 } else { c };
                        terms.push(format!("({c})*{}^2", r.vars()[i]));
                    } else if c != 0 {
                        terms.push(format!("({c})*{}*{}", r.vars()[i], r.vars()[j]));
                    }
                }
            }
            let f = r.parse(&terms.join("+")).unwrap();
            let q = Scheme::hypersurface(&p3, f).unwrap();
            let sing = singular_subscheme(&q).unwrap();
            // skip the rare degenerate draw; count only nonsingular ones
            if sing.is_empty(&d).unwrap() {
                tested += 1;
            }
        }
    }

    #[test]
    fn tangent_space_of_a_quadric() {
        let r = qring(&["x", "y", "z", "w"]);
        let p3 = AmbientSpace::projective(&r);
        let q =
            Scheme::hypersurface(&p3, r.parse("x^2+y^2+z^2-w^2").unwrap()).unwrap();
        let f = NumberField::rationals();
        let pt = vec![f.zero(), f.zero(), f.one(), f.one()];
        let t = tangent_space(&q, &pt).unwrap();
        assert!(t.proportional_to(&r.parse("z-w").unwrap()));

        // at a singular point the gradient vanishes
        let cone = Scheme::hypersurface(&p3, r.parse("x*y-z^2").unwrap()).unwrap();
        let vertex = vec![f.zero(), f.zero(), f.zero(), f.one()];
        assert!(tangent_space(&cone, &vertex).is_err());
    }

    #[test]
    fn scheme_difference_removes_a_component() {
        let d = Deadline::none();
        let r = qring(&["x", "y"]);
        let a2 = AmbientSpace::affine(&r);
        let both = Scheme::new(
            &a2,
            Ideal::new(&r, vec![r.parse("x*y").unwrap()]).unwrap(),
        )
        .unwrap();
        let axis = Scheme::new(
            &a2,
            Ideal::new(&r, vec![r.parse("x").unwrap()]).unwrap(),
        )
        .unwrap();
        let rest = both.difference(&axis, &d).unwrap();
        assert!(rest
            .ideal()
            .equals(&Ideal::new(&r, vec![r.parse("y").unwrap()]).unwrap(), &d)
            .unwrap());
        // difference with itself is empty
        assert!(both.difference(&both, &d).unwrap().is_empty(&d).unwrap());
    }

    #[test]
    fn translation_round_trips() {
        let r = qring(&["x", "y"]);
        let a2 = AmbientSpace::affine(&r);
        let f = NumberField::rationals();
        let x = Scheme::new(
            &a2,
            Ideal::new(&r, vec![r.parse("y^2-x^3-1").unwrap()]).unwrap(),
        )
        .unwrap();
        let pt = vec![f.from_int(2), f.from_int(3)];
        let moved = affine_translate(&x, &pt).unwrap();
        // the translated scheme passes through the origin
        assert!(moved.contains_point(&[f.zero(), f.zero()]).unwrap());
        let back = affine_translate(&moved, &[pt[0].neg(), pt[1].neg()]).unwrap();
        assert_eq!(back.ideal().generators(), x.ideal().generators());
    }
}
