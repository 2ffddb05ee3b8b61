//! Ideal operations: elimination, intersection, colon, saturation.
//!
//! Intersections go through the standard tag-variable trick
//! I ∩ J = (t·I + (1−t)·J) ∩ K[x], colon ideals reduce to intersections
//! with principal ideals followed by exact division, and saturation
//! iterates the colon until it stabilizes.

use crate::error::{Error, Result};
use crate::multipoly::{MonomialOrder, Polynomial, PolyRing};

use super::{identity_assign, Deadline, Ideal};

/// I ∩ K[x_{k}, ..., x_{n-1}]: drops the first k ring variables. The
/// returned generators live in the original ring but do not involve the
/// eliminated variables.
pub fn elimination(ideal: &Ideal, k: usize, deadline: &Deadline) -> Result<Ideal> {
    let ring = ideal.ring();
    if k >= ring.nvars() {
        return Err(Error::invalid(
            "cannot eliminate all variables; k must be below the variable count",
        ));
    }
    if k == 0 {
        return Ok(ideal.clone());
    }
    let gb = ideal.groebner_basis_ordered(&MonomialOrder::block(k), deadline)?;
    let assign = identity_assign(ring);
    let mut gens = Vec::new();
    for g in gb.iter() {
        let support = g.support_vars();
        if support[..k].iter().all(|used| !used) {
            gens.push(g.map_vars(ring, &assign)?);
        }
    }
    Ideal::new(ring, gens)
}

/// Ring with a fresh tag variable prepended, plus the image of a
/// polynomial list under variable shift.
fn tagged_ring(ring: &PolyRing) -> Result<(PolyRing, Vec<Option<usize>>)> {
    let mut vars = vec!["_t".to_string()];
    vars.extend(ring.vars().iter().cloned());
    let mut weights = vec![1u64];
    weights.extend_from_slice(ring.weights());
    let tring = PolyRing::new(
        ring.field().clone(),
        vars,
        Some(weights),
        MonomialOrder::block(1),
    )?;
    let assign: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    Ok((tring, assign))
}

/// I ∩ J.
pub fn intersection(a: &Ideal, b: &Ideal, deadline: &Deadline) -> Result<Ideal> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().describe(),
            right: b.ring().describe(),
        });
    }
    let ring = a.ring();
    if a.is_zero() {
        return Ok(a.clone());
    }
    if b.is_zero() {
        return Ok(b.clone());
    }
    let (tring, assign) = tagged_ring(ring)?;
    let t = Polynomial::var(&tring, 0)?;
    let one_minus_t = Polynomial::one(&tring).sub(&t)?;
    let mut gens = Vec::new();
    for f in a.generators() {
        gens.push(f.map_vars(&tring, &assign)?.mul(&t)?);
    }
    for g in b.generators() {
        gens.push(g.map_vars(&tring, &assign)?.mul(&one_minus_t)?);
    }
    let tagged = Ideal::new(&tring, gens)?;
    let eliminated = elimination(&tagged, 1, deadline)?;
    // push back down into the original ring
    let mut down_assign = vec![None; tring.nvars()];
    for i in 0..ring.nvars() {
        down_assign[i + 1] = Some(i);
    }
    let gens = eliminated
        .generators()
        .iter()
        .map(|g| g.map_vars(ring, &down_assign))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// I : f = { g | g·f ∈ I } for a single nonzero divisor.
pub fn colon_single(ideal: &Ideal, f: &Polynomial, deadline: &Deadline) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = ideal.ring();
    let principal = Ideal::new(ring, vec![f.clone()])?;
    let both = intersection(ideal, &principal, deadline)?;
    let gens = both
        .generators()
        .iter()
        .map(|g| g.div_exact(f))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// I : J = ∩_f (I : f) over the generators of J.
pub fn colon(ideal: &Ideal, j: &Ideal, deadline: &Deadline) -> Result<Ideal> {
    if ideal.ring() != j.ring() {
        return Err(Error::RingMismatch {
            left: ideal.ring().describe(),
            right: j.ring().describe(),
        });
    }
    let mut acc: Option<Ideal> = None;
    for f in j.generators() {
        let part = colon_single(ideal, f, deadline)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersection(&prev, &part, deadline)?,
        });
    }
    acc.ok_or_else(|| Error::invalid("colon by the zero ideal"))
}

/// I : J^∞, reached when the colon chain stabilizes.
pub fn saturate(ideal: &Ideal, j: &Ideal, deadline: &Deadline) -> Result<Ideal> {
    let mut current = ideal.clone();
    for _ in 0..256 {
        deadline.check("saturation")?;
        let next = colon(&current, j, deadline)?;
        if next.equals(&current, deadline)? {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::inconsistent(
        "saturation did not stabilize within 256 steps",
    ))
}

/// I + J.
pub fn sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring().describe(),
            right: b.ring().describe(),
        });
    }
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Ideal::new(a.ring(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::NumberField;

    fn qring(vars: &[&str], weights: Option<Vec<u64>>) -> PolyRing {
        PolyRing::new(
            NumberField::rationals(),
            vars.iter().map(|s| s.to_string()).collect(),
            weights,
            MonomialOrder::grevlex(),
        )
        .unwrap()
    }

    fn ideal(ring: &PolyRing, gens: &[&str]) -> Ideal {
        Ideal::new(
            ring,
            gens.iter().map(|g| ring.parse(g).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn colon_and_saturation_examples() {
        let d = Deadline::none();
        let r = qring(&["x", "y"], None);
        let i = ideal(&r, &["x*y"]);
        let j = ideal(&r, &["x"]);
        let q = colon(&i, &j, &d).unwrap();
        assert!(q.equals(&ideal(&r, &["y"]), &d).unwrap());

        let i2 = ideal(&r, &["x^2"]);
        let s = saturate(&i2, &j, &d).unwrap();
        assert!(s.is_unit(&d).unwrap());
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let d = Deadline::none();
        let r = qring(&["x", "y"], None);
        let i = intersection(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &d).unwrap();
        assert!(i.equals(&ideal(&r, &["x*y"]), &d).unwrap());
    }

    #[test]
    fn eliminating_a_graph_variable_projects_onto_the_line() {
        let d = Deadline::none();
        let r = qring(&["x", "y"], None);
        let i = ideal(&r, &["x-y^2"]);
        let e = elimination(&i, 1, &d).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn elimination_recovers_the_quartic_from_the_unprojection_ideal() {
        // Weighted ring: z carries degree 3, so both generators are
        // homogeneous (degrees 4 and 3). Eliminating z must produce a
        // single quartic proportional to the known one.
        let d = Deadline::none();
        let r = PolyRing::new(
            NumberField::rationals(),
            vec!["z".into(), "s".into(), "x1".into(), "x2".into(), "x3".into()],
            Some(vec![3, 1, 1, 1, 1]),
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let i = ideal(
            &r,
            &[
                "s*(z-x1^3+x3^3)-4*(x1*x3-4*x2^2)^2",
                "s*(x1*x3-x2^2)-(z+x1^3-x3^3)",
            ],
        );
        for g in i.generators() {
            assert!(g.is_homogeneous());
        }
        let e = elimination(&i, 1, &d).unwrap();
        assert_eq!(e.generators().len(), 1);
        let f = r
            .parse("-s^2*x1*x3+s^2*x2^2+2*s*x1^3-2*s*x3^3+4*x1^2*x3^2-32*x1*x2^2*x3+64*x2^4")
            .unwrap();
        assert!(e.generators()[0].proportional_to(&f));
    }
}
