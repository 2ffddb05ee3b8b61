//! Canonical compact text form for polynomials.
//!
//! Terms print in descending ring order, joined by single `+`/`-` signs with
//! no spaces. Monomials list variables in declaration order as `x` or `x^k`
//! joined by `*`. Rational and single-power coefficients print inline;
//! multi-term field coefficients are parenthesized so the output parses back
//! to exactly the same polynomial.

use std::fmt;

use crate::exactfield::FieldElement;

use super::poly::Polynomial;
use super::ring::{Monomial, PolyRing};

fn monomial_str(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], e)),
        }
    }
    parts.join("*")
}

fn term_str(ring: &PolyRing, m: &Monomial, c: &FieldElement) -> String {
    let mono = monomial_str(ring, m);
    let nonzero_coords = c.coeffs().iter().filter(|r| !r.is_zero()).count();
    let coeff = if let Some(r) = c.as_rational() {
        if mono.is_empty() {
            return r.to_string();
        }
        if r.is_one() {
            return mono;
        }
        if (-r).is_one() {
            return format!("-{mono}");
        }
        r.to_string()
    } else if nonzero_coords == 1 {
        // single power of the generator: already a product like -2*e^3
        c.to_string()
    } else {
        format!("({c})")
    };
    if mono.is_empty() {
        coeff
    } else {
        format!("{coeff}*{mono}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let t = term_str(self.ring(), m, c);
            if i == 0 {
                out.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push('-');
                out.push_str(rest);
            } else {
                out.push('+');
                out.push_str(&t);
            }
        }
        f.write_str(&out)
    }
}
