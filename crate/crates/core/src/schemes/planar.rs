//! Squarefree parts of plane curves over any coefficient field.
//!
//! A polynomial in at most two effective variables splits as
//! content(u) * primitive_part(u, v): the content is handled by univariate
//! gcds, the primitive part by a pseudo-remainder Euclid in (K[u])[v] that
//! stays in the polynomial ring by stripping contents after each step.
//! Dividing by gcd(f, df/dv) then removes exactly the repeated factors,
//! which is all a radical needs in characteristic zero.

use crate::error::{Error, Result};
use crate::groebner::univariate;
use crate::multipoly::{Polynomial, PolyRing};

/// Indices of variables that actually occur.
pub fn effective_vars(f: &Polynomial) -> Vec<usize> {
    f.support_vars()
        .iter()
        .enumerate()
        .filter_map(|(i, used)| used.then_some(i))
        .collect()
}

/// Coefficients of f as a polynomial in `v`, each a polynomial free of `v`.
fn vcoeffs(f: &Polynomial, v: usize) -> Result<Vec<Polynomial>> {
    univariate::coeffs_in_var(f, v)
}

fn from_vcoeffs(ring: &PolyRing, v: usize, coeffs: &[Polynomial]) -> Result<Polynomial> {
    let mut out = Polynomial::zero(ring);
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let vk = Polynomial::var_pow(ring, v, k as u32)?;
        out = out.add(&c.mul(&vk)?)?;
    }
    Ok(out)
}

fn vdeg(coeffs: &[Polynomial]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Monic univariate gcd of all coefficients, as a polynomial in `u`.
fn content_in(coeffs: &[Polynomial], u: usize, ring: &PolyRing) -> Result<Polynomial> {
    let field = ring.field();
    let mut acc: Option<Vec<crate::exactfield::FieldElement>> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let uc = c.univariate_coeffs(u)?;
        acc = Some(match acc {
            None => uc,
            Some(prev) => univariate::gcd_monic(&prev, &uc, field)?,
        });
    }
    let g = acc.ok_or_else(|| Error::invalid("content of the zero polynomial"))?;
    Polynomial::from_univariate(ring, u, &g)
}

/// Pseudo-remainder of a by b in the variable v (as coefficient lists).
fn pseudo_rem(a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let db = vdeg(b).ok_or(Error::DivisionByZero)?;
    let lb = b[db].clone();
    let mut r: Vec<Polynomial> = a.to_vec();
    while let Some(dr) = vdeg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        // r := lb * r - lr * v^(dr-db) * b
        for c in r.iter_mut() {
            *c = c.mul(&lb)?;
        }
        for (i, bc) in b.iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            let idx = dr - db + i;
            r[idx] = r[idx].sub(&lr.mul(bc)?)?;
        }
        while r.len() > 1 && r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    Ok(r)
}

fn primitive_in(coeffs: &[Polynomial], u: usize, ring: &PolyRing) -> Result<Vec<Polynomial>> {
    let content = content_in(coeffs, u, ring)?;
    coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                Ok(c.clone())
            } else {
                c.div_exact(&content)
            }
        })
        .collect()
}

/// Primitive gcd in (K[u])[v] of two polynomials, the first primitive.
fn primitive_gcd(
    a: Vec<Polynomial>,
    b: Vec<Polynomial>,
    u: usize,
    ring: &PolyRing,
) -> Result<Vec<Polynomial>> {
    let mut a = a;
    let mut b = match vdeg(&b) {
        None => return Ok(a),
        Some(_) => primitive_in(&b, u, ring)?,
    };
    loop {
        let db = match vdeg(&b) {
            None => return Ok(a),
            Some(d) => d,
        };
        if db == 0 {
            // both primitive: a v-degree-zero remainder means coprimality
            return Ok(vec![Polynomial::one(ring)]);
        }
        let r = pseudo_rem(&a, &b)?;
        let r = if vdeg(&r).is_none() {
            r
        } else {
            primitive_in(&r, u, ring)?
        };
        a = b;
        b = r;
    }
}

/// Generator of the radical of a principal ideal in at most two effective
/// variables: repeated factors collapse to single ones.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::invalid("squarefree part of the zero polynomial"));
    }
    let ring = f.ring();
    let vars = effective_vars(f);
    match vars.len() {
        0 => Ok(Polynomial::one(ring)),
        1 => {
            let v = vars[0];
            let coeffs = f.univariate_coeffs(v)?;
            let sf = univariate::squarefree_part(&coeffs, ring.field())?;
            Polynomial::from_univariate(ring, v, &sf)
        }
        2 => {
            let (u, v) = (vars[0], vars[1]);
            let coeffs = vcoeffs(f, v)?;
            let content = content_in(&coeffs, u, ring)?;
            let pp: Vec<Polynomial> = coeffs
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        Ok(c.clone())
                    } else {
                        c.div_exact(&content)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            // squarefree part of the content (univariate in u)
            let c_coeffs = content.univariate_coeffs(u)?;
            let c_sf = univariate::squarefree_part(&c_coeffs, ring.field())?;
            let c_sf = Polynomial::from_univariate(ring, u, &c_sf)?;
            // squarefree part of the primitive part via gcd with d/dv
            let pp_poly = from_vcoeffs(ring, v, &pp)?;
            let dv = pp_poly.derivative(v)?;
            let sf_pp = if dv.is_zero() {
                pp_poly
            } else {
                let g = primitive_gcd(pp.clone(), vcoeffs(&dv, v)?, u, ring)?;
                let g_poly = from_vcoeffs(ring, v, &g)?;
                pp_poly.div_exact(&g_poly)?
            };
            c_sf.mul(&sf_pp)
        }
        _ => Err(Error::invalid(
            "squarefree part supports at most two effective variables",
        )),
    }
}
