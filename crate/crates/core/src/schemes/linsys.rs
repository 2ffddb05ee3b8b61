//! Linear systems of forms through fat points, local multiplicities, and
//! row-space comparison of section lists.
//!
//! A multiplicity-m condition at a point imposes the vanishing of every
//! partial derivative of order below m. The system of a given degree is
//! the kernel of the evaluation matrix of those conditions on the monomial
//! basis, so sections come out as exact kernel vectors.

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Matrix};
use crate::multipoly::{Monomial, Polynomial, PolyRing};

use super::AmbientSpace;

/// Monomials of exact weighted degree `d`, in the ring's term order
/// (descending), so section coefficients line up deterministically.
pub fn monomials_of_degree(ring: &PolyRing, d: u64) -> Result<Vec<Monomial>> {
    let n = ring.nvars();
    let weights = ring.weights();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn walk(
        ring: &PolyRing,
        weights: &[u64],
        exps: &mut Vec<u32>,
        var: usize,
        left: u64,
        out: &mut Vec<Monomial>,
    ) -> Result<()> {
        if var + 1 == exps.len() {
            if left % weights[var] == 0 {
                let e = left / weights[var];
                exps[var] = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
                out.push(ring.monomial(exps.clone())?);
                exps[var] = 0;
            }
            return Ok(());
        }
        let mut used = 0u64;
        let mut e = 0u32;
        while used <= left {
            exps[var] = e;
            walk(ring, weights, exps, var + 1, left - used, out)?;
            e += 1;
            used += weights[var];
        }
        exps[var] = 0;
        Ok(())
    }
    walk(ring, weights, &mut exps, 0, d, &mut out)?;
    out.sort_by(|a, b| ring.cmp_monomials(ring.order(), b, a));
    Ok(out)
}

/// A point together with the vanishing order imposed on the system.
#[derive(Clone, Debug)]
pub struct PointCondition {
    pub point: Vec<FieldElement>,
    pub multiplicity: u32,
}

/// Multi-indices of total order strictly below `max`.
fn derivative_orders(nvars: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; nvars]];
    let mut frontier = out.clone();
    for _ in 1..max {
        let mut next = Vec::new();
        for base in &frontier {
            for v in 0..nvars {
                let mut idx = base.clone();
                idx[v] += 1;
                if !next.contains(&idx) {
                    next.push(idx);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Basis of degree-`d` forms on the ambient space vanishing to the given
/// multiplicity at every conditioned point. The empty basis is a valid
/// answer. Sections are returned with exact kernel coefficients over the
/// monomial basis of degree `d`.
pub fn linear_system(
    ambient: &AmbientSpace,
    degree: u64,
    conditions: &[PointCondition],
) -> Result<Vec<Polynomial>> {
    let ring = ambient.ring();
    let field = ring.field();
    let monomials = monomials_of_degree(ring, degree)?;
    if monomials.is_empty() {
        return Ok(Vec::new());
    }
    let basis: Vec<Polynomial> = monomials
        .iter()
        .map(|m| {
            Polynomial::from_terms(ring, vec![(m.clone(), field.one())])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for cond in conditions {
        if cond.point.len() != ring.nvars() {
            return Err(Error::invalid("condition point arity != ring arity"));
        }
        if cond.multiplicity == 0 {
            continue;
        }
        for order in derivative_orders(ring.nvars(), cond.multiplicity) {
            let mut row = Vec::with_capacity(basis.len());
            for b in &basis {
                let mut g = b.clone();
                for (v, &k) in order.iter().enumerate() {
                    for _ in 0..k {
                        g = g.derivative(v)?;
                    }
                }
                row.push(g.evaluate(&cond.point)?);
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(basis);
    }
    let mat = Matrix::from_rows(field, rows)?;
    let kernel = mat.kernel()?;
    let mut sections = Vec::with_capacity(kernel.len());
    for vec in kernel {
        let terms: Vec<(Monomial, FieldElement)> = monomials
            .iter()
            .cloned()
            .zip(vec)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        sections.push(Polynomial::from_terms(ring, terms)?);
    }
    Ok(sections)
}

/// Least order of a nonvanishing partial derivative at the point, read off
/// the translated polynomial's lowest plain-degree term.
pub fn multiplicity_at(f: &Polynomial, pt: &[FieldElement]) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::invalid("multiplicity of the zero polynomial"));
    }
    let ring = f.ring();
    if pt.len() != ring.nvars() {
        return Err(Error::invalid("point arity != ring arity"));
    }
    let mut g = f.clone();
    for (v, c) in pt.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rep = Polynomial::var(ring, v)?.add(&Polynomial::constant(ring, c.clone())?)?;
        g = g.substitute(v, &rep)?;
    }
    let min: u32 = g
        .terms()
        .iter()
        .map(|(m, _)| m.exps().iter().sum::<u32>())
        .min()
        .ok_or_else(|| Error::inconsistent("polynomial vanished under translation"))?;
    Ok(min)
}

/// Reduced row-echelon form of the coefficient matrix of equal-degree
/// sections over the degree's monomial basis. Two section lists span the
/// same space iff their row spaces are equal.
pub fn section_row_space(sections: &[Polynomial]) -> Result<Matrix> {
    let first = sections
        .first()
        .ok_or_else(|| Error::invalid("row space of an empty section list"))?;
    let ring = first.ring();
    let degree = first
        .weighted_degree()
        .ok_or_else(|| Error::invalid("zero section"))?;
    let monomials = monomials_of_degree(ring, degree)?;
    let index: std::collections::HashMap<&Monomial, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows = Vec::with_capacity(sections.len());
    for s in sections {
        if s.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring.describe(),
                right: s.ring().describe(),
            });
        }
        if !s.is_homogeneous() || s.weighted_degree() != Some(degree) {
            return Err(Error::invalid(
                "sections must be homogeneous of one common degree",
            ));
        }
        let mut row = vec![ring.field().zero(); monomials.len()];
        for (m, c) in s.terms() {
            row[index[m]] = c.clone();
        }
        rows.push(row);
    }
    let (rref, _) = Matrix::from_rows(ring.field(), rows)?.rref()?;
    Ok(rref)
}
