//! Degree of the closure of the image of a rational map to projective
//! space, plus local lengths of zero-dimensional loci.
//!
//! The exact route eliminates the source variables and the cone parameter
//! from the graph ideal and reads the degree off the Hilbert series of the
//! image ideal. The randomized route slices the image with two random
//! hyperplanes: it pulls the slice back to the source, strips the base
//! locus by saturation, and counts distinct image points through the
//! squarefree degree of a random coordinate's minimal polynomial. The
//! randomized answer is a generic-position count, so callers re-run it or
//! compare it against the exact route when that one finishes in time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactfield::FieldElement;
use crate::groebner::{hilbert, ops, solve, univariate, Deadline, Ideal};
use crate::multipoly::{MonomialOrder, Polynomial, PolyRing};

use super::{Scheme, SpaceKind};

/// A rational map from a scheme to projective space, given by sections.
#[derive(Clone, Debug)]
pub struct RationalMap {
    source: Scheme,
    sections: Vec<Polynomial>,
}

impl RationalMap {
    pub fn new(source: Scheme, sections: Vec<Polynomial>) -> Result<RationalMap> {
        if sections.len() < 2 {
            return Err(Error::invalid("a rational map needs at least two sections"));
        }
        let ring = source.ambient().ring();
        for s in &sections {
            if s.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring.describe(),
                    right: s.ring().describe(),
                });
            }
        }
        if sections.iter().all(|s| s.is_zero()) {
            return Err(Error::invalid("all sections are zero"));
        }
        Ok(RationalMap { source, sections })
    }

    pub fn source(&self) -> &Scheme {
        &self.source
    }

    pub fn sections(&self) -> &[Polynomial] {
        &self.sections
    }

    fn affine_source_ring(&self) -> Result<&PolyRing> {
        if self.source.ambient().kind() != SpaceKind::Affine {
            return Err(Error::invalid(
                "image degree is computed on an affine source patch",
            ));
        }
        Ok(self.source.ambient().ring())
    }
}

/// Exact image degree through elimination of the graph ideal. Errors when
/// the image has projective dimension below two.
pub fn image_degree_elimination(map: &RationalMap, deadline: &Deadline) -> Result<u64> {
    let src = map.affine_source_ring()?;
    let n = src.nvars();
    let k = map.sections.len();
    let mut vars: Vec<String> = src.vars().to_vec();
    vars.push("_t".into());
    for i in 0..k {
        let name = format!("u{i}");
        if src.var_index(&name).is_some() {
            return Err(Error::invalid(
                "source ring already uses an image coordinate name",
            ));
        }
        vars.push(name);
    }
    let graph_ring = PolyRing::new(
        src.field().clone(),
        vars,
        None,
        MonomialOrder::block(n + 1),
    )?;
    let assign: Vec<Option<usize>> = (0..n).map(Some).collect();
    let t = Polynomial::var(&graph_ring, n)?;
    let mut gens = Vec::with_capacity(map.sections.len() + map.source.ideal().generators().len());
    for g in map.source.ideal().generators() {
        gens.push(g.map_vars(&graph_ring, &assign)?);
    }
    for (i, s) in map.sections.iter().enumerate() {
        let ui = Polynomial::var(&graph_ring, n + 1 + i)?;
        let lifted = s.map_vars(&graph_ring, &assign)?;
        gens.push(ui.sub(&lifted.mul(&t)?)?);
    }
    let graph = Ideal::new(&graph_ring, gens)?;
    let eliminated = ops::elimination(&graph, n + 1, deadline)?;
    // Re-home the image ideal into a clean ring over the image coordinates.
    let image_ring = PolyRing::new(
        src.field().clone(),
        (0..k).map(|i| format!("u{i}")).collect(),
        None,
        MonomialOrder::grevlex(),
    )?;
    let mut down = vec![None; graph_ring.nvars()];
    for i in 0..k {
        down[n + 1 + i] = Some(i);
    }
    let image_gens = eliminated
        .generators()
        .iter()
        .map(|g| g.map_vars(&image_ring, &down))
        .collect::<Result<Vec<_>>>()?;
    let image = Ideal::new(&image_ring, image_gens)?;
    let (cone_dim, degree) = hilbert::projective_degree(&image, deadline)?;
    if cone_dim != 3 {
        return Err(Error::inconsistent(format!(
            "image has projective dimension {}, expected a surface",
            cone_dim as i64 - 1
        )));
    }
    Ok(degree)
}

/// One randomized slice count: distinct images of the source points cut
/// out by two random hyperplane pullbacks, away from the base locus.
fn slice_count_once(
    map: &RationalMap,
    rng: &mut ChaCha8Rng,
    deadline: &Deadline,
) -> Result<u64> {
    let src = map.affine_source_ring()?;
    let field = src.field();
    let random_combo = |rng: &mut ChaCha8Rng, sections: &[Polynomial]| -> Result<Polynomial> {
        let mut g = Polynomial::zero(src);
        for s in sections {
            let c: i64 = rng.gen_range(-9..=9);
            if c != 0 {
                g = g.add(&s.scale_rational(&crate::exactfield::Rational::from_int(c)))?;
            }
        }
        Ok(g)
    };
    let g1 = random_combo(rng, &map.sections)?;
    let g2 = random_combo(rng, &map.sections)?;
    if g1.is_zero() || g2.is_zero() {
        return Err(Error::invalid("degenerate random combination"));
    }
    let mut slice_gens = map.source.ideal().generators().to_vec();
    slice_gens.push(g1);
    slice_gens.push(g2);
    let slice = Ideal::new(src, slice_gens)?;
    // strip the base locus (all sections vanish) by saturation
    let mut base_gens = map.source.ideal().generators().to_vec();
    base_gens.extend(map.sections.iter().cloned());
    let base = Ideal::new(src, base_gens)?;
    let away = ops::saturate(&slice, &base, deadline)?;
    if away.is_unit(deadline)? {
        return Ok(0);
    }
    // chart: a section that vanishes nowhere on the away set
    let mut chart = None;
    for s in &map.sections {
        let mut with = away.generators().to_vec();
        with.push(s.clone());
        if Ideal::new(src, with)?.is_unit(deadline)? {
            chart = Some(s.clone());
            break;
        }
    }
    let den = chart.ok_or_else(|| {
        Error::inconsistent("no section stays nonzero on the sliced locus")
    })?;
    // w = (random combination) / den separates distinct image points for
    // generic coefficients; its squarefree minimal polynomial counts them
    let num = random_combo(rng, &map.sections)?;
    let n = src.nvars();
    let mut wvars: Vec<String> = src.vars().to_vec();
    wvars.push("_w".into());
    let wring = PolyRing::new(field.clone(), wvars, None, MonomialOrder::grevlex())?;
    let assign: Vec<Option<usize>> = (0..n).map(Some).collect();
    let w = Polynomial::var(&wring, n)?;
    let mut wgens = away
        .generators()
        .iter()
        .map(|g| g.map_vars(&wring, &assign))
        .collect::<Result<Vec<_>>>()?;
    wgens.push(
        den.map_vars(&wring, &assign)?
            .mul(&w)?
            .sub(&num.map_vars(&wring, &assign)?)?,
    );
    let wideal = Ideal::new(&wring, wgens)?;
    let gb = wideal.groebner_basis(deadline)?;
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(0);
    }
    let bound = hilbert::zero_dim_degree(&wideal, deadline)? as usize;
    let mu = solve::minimal_polynomial_of_var(gb[0].ring(), &gb, n, bound, deadline)?;
    let sf = univariate::squarefree_part(&mu, field)?;
    Ok(univariate::deg(&sf).unwrap_or(0) as u64)
}

/// Randomized image degree: the maximum slice count over a few draws.
/// Each draw can only undercount (collisions in generic position are
/// codimension one), so the maximum is the stable generic value.
pub fn image_degree_slices(
    map: &RationalMap,
    seed: u64,
    deadline: &Deadline,
) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..3 {
        let count = slice_count_once(map, &mut rng, deadline)?;
        best = best.max(count);
    }
    Ok(best)
}

/// Length of the local ring at a point of a scheme: the multiplicity of
/// the point as a fat point of the ideal. Computed by adding powers of
/// the maximal ideal until the staircase count stabilizes. Zero when the
/// point is off the scheme; an error when the point is not isolated.
pub fn local_length_at(
    ideal: &Ideal,
    pt: &[FieldElement],
    deadline: &Deadline,
) -> Result<u64> {
    let ring = ideal.ring();
    if pt.len() != ring.nvars() {
        return Err(Error::invalid("point arity != ring arity"));
    }
    // translate the point to the origin
    let mut gens = Vec::with_capacity(ideal.generators().len());
    for g in ideal.generators() {
        let mut cur = g.clone();
        for (v, c) in pt.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rep =
                Polynomial::var(ring, v)?.add(&Polynomial::constant(ring, c.clone())?)?;
            cur = cur.substitute(v, &rep)?;
        }
        gens.push(cur);
    }
    let n = ring.nvars();
    let mut prev: Option<u64> = None;
    for k in 1..=64u32 {
        deadline.check("local length")?;
        let mut fat = gens.clone();
        for exps in power_products(n, k) {
            fat.push(Polynomial::from_terms(
                ring,
                vec![(ring.monomial(exps)?, ring.field().one())],
            )?);
        }
        let len = hilbert::zero_dim_degree(&Ideal::new(ring, fat)?, deadline)?;
        if prev == Some(len) {
            return Ok(len);
        }
        prev = Some(len);
    }
    Err(Error::inconsistent(
        "local length did not stabilize: the point is not isolated",
    ))
}

/// Exponent vectors of all degree-k monomials in n variables.
fn power_products(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn walk(n: usize, var: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var + 1 == n {
            exps[var] = left;
            out.push(exps.clone());
            exps[var] = 0;
            return;
        }
        for e in 0..=left {
            exps[var] = e;
            walk(n, var + 1, left - e, exps, out);
        }
        exps[var] = 0;
    }
    walk(n, 0, k, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::NumberField;
    use crate::schemes::AmbientSpace;

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
    fn conic_image_of_the_affine_line_squared_map() {
        let d = Deadline::none();
        // A^2 -> P^2 by (1, s, s^2) restricted to the line t = s... use
        // the affine line inside A^2 cut by t - s, mapped by (1, s, t*s):
        // the image is the conic u0*u2 = u1^2, degree 2.
        let r = qring(&["s", "t"]);
        let a2 = AmbientSpace::affine(&r);
        let line = Scheme::new(
            &a2,
            Ideal::new(&r, vec![r.parse("t-s").unwrap()]).unwrap(),
        )
        .unwrap();
        let map = RationalMap::new(
            line,
            vec![
                r.parse("1").unwrap(),
                r.parse("s").unwrap(),
                r.parse("t*s").unwrap(),
            ],
        )
        .unwrap();
        // the source is a curve, so the exact route must refuse
        let err = image_degree_elimination(&map, &d).unwrap_err();
        assert!(err.to_string().contains("dimension"));
    }

    #[test]
    fn quartic_surface_under_identity_embedding() {
        let d = Deadline::none();
        // affine patch of a quartic in P^3, mapped by (1, x, y, z):
        // the image is the quartic itself, degree 4
        let r = qring(&["x", "y", "z"]);
        let a3 = AmbientSpace::affine(&r);
        let q = Scheme::new(
            &a3,
            Ideal::new(&r, vec![r.parse("x^4+y^4+z^4+x*y*z-1").unwrap()]).unwrap(),
        )
        .unwrap();
        let map = RationalMap::new(
            q.clone(),
            vec![
                r.parse("1").unwrap(),
                r.parse("x").unwrap(),
                r.parse("y").unwrap(),
                r.parse("z").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(image_degree_elimination(&map, &d).unwrap(), 4);
        assert_eq!(image_degree_slices(&map, 99, &d).unwrap(), 4);
    }

    #[test]
    fn veronese_image_degree_from_both_routes() {
        let d = Deadline::none();
        // A^2 embedded by the full quadratic Veronese of P^2 restricted to
        // an affine chart: image is the Veronese surface, degree 4.
        let r = qring(&["x", "y"]);
        let a2 = AmbientSpace::affine(&r);
        let plane = Scheme::new(&a2, Ideal::new(&r, vec![]).unwrap()).unwrap();
        let sections = ["1", "x", "y", "x^2", "x*y", "y^2"]
            .iter()
            .map(|s| r.parse(s).unwrap())
            .collect();
        let map = RationalMap::new(plane, sections).unwrap();
        assert_eq!(image_degree_elimination(&map, &d).unwrap(), 4);
        assert_eq!(image_degree_slices(&map, 7, &d).unwrap(), 4);
    }

    #[test]
    fn local_length_counts_fat_point_multiplicity() {
        let d = Deadline::none();
        let r = qring(&["x", "y"]);
        let f = NumberField::rationals();
        let origin = vec![f.zero(), f.zero()];
        let off = vec![f.from_int(5), f.from_int(5)];
        // node of x*y at origin inside the zero-dim scheme x*y, x^2-x, ...
        let i = Ideal::new(
            &r,
            vec![r.parse("x*y").unwrap(), r.parse("x^2*(x-1)").unwrap(), r.parse("y^2").unwrap()],
        )
        .unwrap();
        // at the origin x-1 is a unit, so the local ideal is (xy, x^2, y^2)
        // with monomial basis 1, x, y: length 3
        assert_eq!(local_length_at(&i, &origin, &d).unwrap(), 3);
        // at (1,0): basis 1, so length 1
        assert_eq!(
            local_length_at(&i, &[f.one(), f.zero()], &d).unwrap(),
            1
        );
        assert_eq!(local_length_at(&i, &off, &d).unwrap(), 0);
    }
}
