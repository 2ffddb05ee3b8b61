//! Exact solving of zero-dimensional polynomial systems over a declared
//! number field.
//!
//! The solver triangularizes back to front: a grevlex basis gives the
//! minimal polynomial of the last variable by linear algebra on normal
//! forms of its powers, roots of that polynomial in the coefficient field
//! are substituted, and the smaller system recurses. Roots inside a proper
//! extension come from restriction of scalars: writing the unknown root in
//! the power basis turns one equation over the field into a rational
//! system for the coordinates, which the same solver handles. Every
//! reported point is re-checked against the original generators, and the
//! degree of any eliminant factor that does not split over the field is
//! reported rather than silently dropped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField, Rational};
use crate::multipoly::{MonomialOrder, Polynomial, PolyRing};

use super::{buchberger, hilbert, univariate, Deadline, Ideal};

/// Affine points with coordinates in one field, ordered canonically by
/// their printed coordinates so equal sets list identically.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    field: NumberField,
    points: Vec<Vec<FieldElement>>,
}

impl PointSet {
    pub fn new(field: NumberField, mut points: Vec<Vec<FieldElement>>) -> PointSet {
        points.sort_by_key(point_key);
        points.dedup();
        PointSet { field, points }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[FieldElement]) -> bool {
        self.points.iter().any(|p| p.as_slice() == point)
    }

    /// Set equality regardless of listing order.
    pub fn same_points(&self, other: &PointSet) -> bool {
        self.field == other.field
            && self.len() == other.len()
            && self.points.iter().all(|p| other.contains(p))
    }
}

fn point_key(p: &Vec<FieldElement>) -> Vec<String> {
    p.iter().map(|c| format!("{c}")).collect()
}

/// Outcome of a solve: the points found over the requested field, plus the
/// degrees of squarefree eliminant factors that did not split over it.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub points: PointSet,
    /// One entry per recursion level where part of the eliminant stayed
    /// irreducible over the field; the entry is the unsplit degree.
    pub unsplit_degrees: Vec<u64>,
}

impl SolveReport {
    /// True when the variety is fully accounted for by the points found.
    pub fn is_complete(&self) -> bool {
        self.unsplit_degrees.is_empty()
    }
}

/// All solutions of the ideal with coordinates in `ext` (or in the ideal's
/// own coefficient field when `ext` is `None`). The ideal must be
/// zero-dimensional.
pub fn solve_zero_dim(
    ideal: &Ideal,
    ext: Option<&NumberField>,
    deadline: &Deadline,
) -> Result<SolveReport> {
    let base = ideal.ring();
    let field = match ext {
        None => base.field().clone(),
        Some(k) if k == base.field() => k.clone(),
        Some(k) if base.field().is_rationals() => k.clone(),
        Some(k) => {
            return Err(Error::invalid(format!(
                "cannot solve over {}: coefficients live in {}, which is not the rationals",
                k.describe(),
                base.field().describe()
            )))
        }
    };
    let ring = PolyRing::new(
        field.clone(),
        base.vars().to_vec(),
        Some(base.weights().to_vec()),
        MonomialOrder::grevlex(),
    )?;
    let same_field = &field == base.field();
    let assign = super::identity_assign(base);
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| {
            if same_field {
                g.map_vars(&ring, &assign)
            } else {
                g.lift_field(&ring)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut unsplit = Vec::new();
    let points = solve_rec(&ring, gens.clone(), deadline, &mut unsplit)?;
    for p in &points {
        for g in &gens {
            if !g.evaluate(p)?.is_zero() {
                return Err(Error::inconsistent(
                    "solver produced a point that fails a generator",
                ));
            }
        }
    }
    Ok(SolveReport {
        points: PointSet::new(field, points),
        unsplit_degrees: unsplit,
    })
}

fn solve_rec(
    ring: &PolyRing,
    gens: Vec<Polynomial>,
    deadline: &Deadline,
    unsplit: &mut Vec<u64>,
) -> Result<Vec<Vec<FieldElement>>> {
    deadline.check("zero-dimensional solve")?;
    let ideal = Ideal::new(ring, gens)?;
    let gb = ideal.groebner_basis(deadline)?;
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(Vec::new());
    }
    if gb.is_empty() {
        return Err(Error::inconsistent(
            "system is not zero-dimensional: it vanished after substitution",
        ));
    }
    let n = ring.nvars();
    if n == 1 {
        if gb.len() != 1 {
            return Err(Error::inconsistent("univariate basis with several generators"));
        }
        let mu = gb[0].univariate_coeffs(0)?;
        let roots = field_roots(&mu, ring.field(), deadline, unsplit)?;
        return Ok(roots.into_iter().map(|r| vec![r]).collect());
    }
    let bound = hilbert::zero_dim_degree(&ideal, deadline)? as usize;
    let mu = minimal_polynomial_of_var(gb[0].ring(), &gb, n - 1, bound, deadline)?;
    let roots = field_roots(&mu, ring.field(), deadline, unsplit)?;
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let sub_ring = PolyRing::new(
        ring.field().clone(),
        ring.vars()[..n - 1].to_vec(),
        Some(ring.weights()[..n - 1].to_vec()),
        MonomialOrder::grevlex(),
    )?;
    let mut assign: Vec<Option<usize>> = (0..n - 1).map(Some).collect();
    assign.push(None);
    let mut out = Vec::new();
    for alpha in roots {
        let sub_gens = gb
            .iter()
            .map(|g| g.eval_var(n - 1, &alpha)?.map_vars(&sub_ring, &assign))
            .collect::<Result<Vec<_>>>()?;
        for mut p in solve_rec(&sub_ring, sub_gens, deadline, unsplit)? {
            p.push(alpha.clone());
            out.push(p);
        }
    }
    Ok(out)
}

/// Minimal polynomial of a single variable modulo a zero-dimensional ideal,
/// as univariate coefficients low to high. Found by reducing successive
/// powers to normal form and watching for the first linear dependency;
/// `bound` is the vector-space dimension of the quotient, which caps the
/// degree.
pub fn minimal_polynomial_of_var(
    ring: &PolyRing,
    gb: &[Polynomial],
    var: usize,
    bound: usize,
    deadline: &Deadline,
) -> Result<Vec<FieldElement>> {
    let field = ring.field();
    let x = Polynomial::var(ring, var)?;
    let mut cols: HashMap<String, usize> = HashMap::new();
    // Each row: echelonized normal form plus its expression in powers of x.
    let mut rows: Vec<(usize, Vec<FieldElement>, Vec<FieldElement>)> = Vec::new();
    let mut power = Polynomial::one(ring);
    for k in 0..=bound + 1 {
        deadline.check("minimal polynomial")?;
        if k > bound {
            return Err(Error::inconsistent(
                "no linear dependency among powers within the quotient dimension",
            ));
        }
        let nf = buchberger::normal_form(&power, gb, deadline)?;
        let mut v = vec![field.zero(); cols.len()];
        for (m, c) in nf.terms() {
            let key = format!("{:?}", m.exps());
            let next = cols.len();
            let idx = *cols.entry(key).or_insert(next);
            if idx >= v.len() {
                v.resize(idx + 1, field.zero());
            }
            v[idx] = c.clone();
        }
        let mut combo = vec![field.zero(); k + 1];
        combo[k] = field.one();
        for (pivot, rvec, rcombo) in &rows {
            if *pivot < v.len() && !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (i, c) in rvec.iter().enumerate() {
                    if i < v.len() && !c.is_zero() {
                        v[i] = v[i].sub(&f.mul(c)?)?;
                    } else if !c.is_zero() {
                        v.resize(i + 1, field.zero());
                        v[i] = field.zero().sub(&f.mul(c)?)?;
                    }
                }
                for (i, c) in rcombo.iter().enumerate() {
                    combo[i] = combo[i].sub(&f.mul(c)?)?;
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return Ok(combo),
            Some(pivot) => {
                let inv = v[pivot].inv()?;
                let v: Vec<FieldElement> = v.iter().map(|c| c.mul(&inv)).collect::<Result<_>>()?;
                let combo: Vec<FieldElement> =
                    combo.iter().map(|c| c.mul(&inv)).collect::<Result<_>>()?;
                rows.push((pivot, v, combo));
            }
        }
        power = buchberger::normal_form(&power.mul(&x)?, gb, deadline)?;
    }
    unreachable!()
}

/// Roots of a univariate polynomial that lie in the coefficient field.
/// Appends the degree of the unsplit part (if any) to `unsplit`.
pub fn field_roots(
    f: &[FieldElement],
    field: &NumberField,
    deadline: &Deadline,
    unsplit: &mut Vec<u64>,
) -> Result<Vec<FieldElement>> {
    let mut sf = univariate::squarefree_part(f, field)?;
    let total = univariate::deg(&sf)
        .ok_or_else(|| Error::invalid("zero polynomial has every root"))?;
    if total == 0 {
        return Ok(Vec::new());
    }
    let mut roots: Vec<FieldElement> = Vec::new();
    // Rational roots are cheap and are field roots too.
    if sf.iter().all(|c| c.is_rational()) {
        let rat: Vec<Rational> = sf.iter().map(|c| c.as_rational().unwrap().clone()).collect();
        for r in univariate::rational_roots(&rat, deadline)? {
            roots.push(field.from_rational(r));
        }
        sf = divide_out_roots(&sf, &roots, field)?;
    }
    if field.degree() > 1 && univariate::deg(&sf).unwrap_or(0) > 0 {
        let more = extension_roots(&sf, field, deadline)?;
        sf = divide_out_roots(&sf, &more, field)?;
        roots.extend(more);
    }
    if let Some(d) = univariate::deg(&sf) {
        if d > 0 {
            unsplit.push(d as u64);
        }
    }
    Ok(roots)
}

fn divide_out_roots(
    f: &[FieldElement],
    roots: &[FieldElement],
    field: &NumberField,
) -> Result<Vec<FieldElement>> {
    let mut cur = f.to_vec();
    for r in roots {
        let lin = vec![r.neg(), field.one()];
        let (q, rem) = univariate::divmod(&cur, &lin, field)?;
        if !rem.iter().all(|c| c.is_zero()) {
            return Err(Error::inconsistent("claimed root does not divide"));
        }
        cur = q;
    }
    Ok(cur)
}

/// Roots in a proper extension of the rationals, by restriction of
/// scalars: the unknown root is written in the power basis with rational
/// unknowns, and the coordinates of f(root) give a rational system.
fn extension_roots(
    f: &[FieldElement],
    field: &NumberField,
    deadline: &Deadline,
) -> Result<Vec<FieldElement>> {
    let d = field.degree();
    let cring = PolyRing::new(
        NumberField::rationals(),
        (0..d).map(|i| format!("c{i}")).collect(),
        None,
        MonomialOrder::grevlex(),
    )?;
    // alpha = c0 + c1 g + ... in coordinates
    let alpha: Vec<Polynomial> = (0..d)
        .map(|i| Polynomial::var(&cring, i))
        .collect::<Result<_>>()?;
    // Horner: acc = acc * alpha + coeff, in K tensor Q[c] coordinates.
    let mut acc = vec![Polynomial::zero(&cring); d];
    for coeff in f.iter().rev() {
        acc = tensor_mul(&acc, &alpha, field, &cring)?;
        for (j, c) in coeff.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc[j] = acc[j].add(&Polynomial::constant_rational(&cring, c.clone()))?;
            }
        }
    }
    let mut ignored = Vec::new();
    let coords = solve_rec(&cring, acc, deadline, &mut ignored)?;
    let mut roots = Vec::new();
    for p in coords {
        let root = field.element(
            p.iter()
                .map(|c| {
                    c.as_rational()
                        .cloned()
                        .ok_or_else(|| Error::inconsistent("non-rational coordinate"))
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        if univariate::eval(f, &root)?.is_zero() {
            roots.push(root);
        } else {
            return Err(Error::inconsistent(
                "restriction of scalars produced a non-root",
            ));
        }
    }
    Ok(roots)
}

/// Coordinates of a * b where both are elements of K tensor R written in
/// the power basis of K over the rationals.
fn tensor_mul(
    a: &[Polynomial],
    b: &[Polynomial],
    field: &NumberField,
    cring: &PolyRing,
) -> Result<Vec<Polynomial>> {
    let d = field.degree();
    let mut conv = vec![Polynomial::zero(cring); 2 * d - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            conv[i + j] = conv[i + j].add(&ai.mul(bj)?)?;
        }
    }
    // reduce powers g^k for k >= d via the monic minimal polynomial
    let mp = field.min_poly();
    for k in (d..2 * d - 1).rev() {
        if conv[k].is_zero() {
            continue;
        }
        let top = conv[k].clone();
        conv[k] = Polynomial::zero(cring);
        for j in 0..d {
            if !mp[j].is_zero() {
                let shift = top.scale_rational(&(-mp[j].clone()));
                conv[k - d + j] = conv[k - d + j].add(&shift)?;
            }
        }
    }
    conv.truncate(d);
    Ok(conv)
}

/// Number of geometric points of a zero-dimensional ideal, i.e. points
/// over the algebraic closure counted without multiplicity. Adds the
/// squarefree part of each variable's minimal polynomial (which yields a
/// radical ideal) and counts the staircase.
pub fn geometric_point_count(ideal: &Ideal, deadline: &Deadline) -> Result<u64> {
    let gb = ideal.groebner_basis_ordered(&MonomialOrder::grevlex(), deadline)?;
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(0);
    }
    let bound = hilbert::zero_dim_degree(ideal, deadline)? as usize;
    let gb_ring = gb[0].ring();
    let mut gens: Vec<Polynomial> = gb.to_vec();
    for var in 0..gb_ring.nvars() {
        let mu = minimal_polynomial_of_var(gb_ring, &gb, var, bound, deadline)?;
        let sf = univariate::squarefree_part(&mu, gb_ring.field())?;
        gens.push(Polynomial::from_univariate(gb_ring, var, &sf)?);
    }
    let radical = Ideal::new(gb_ring, gens)?;
    hilbert::zero_dim_degree(&radical, deadline)
}
