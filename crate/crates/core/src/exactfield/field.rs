//! Number fields Q[x]/(f) with dense coefficient vectors.
//!
//! # Design notes
//!
//! A `NumberField` is Q adjoined one root of a monic `min_poly`; degree 1 is Q
//! itself. The modulus is asserted irreducible by the caller: arithmetic never
//! checks primality up front, but a division that reveals a zero divisor
//! reports the discovered factor of the modulus instead of a generic failure.
//!
//! Elements are dense coefficient vectors in the power basis 1, x, .., x^(d-1).
//! Multiplication reduces with a table of x^(d+k) expansions precomputed at
//! field construction, so the hot path is plain vector arithmetic. Elements of
//! different fields never mix: every binary operation checks the fields match.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::rational::Rational;

#[derive(Debug)]
struct FieldInner {
    name: String,
    /// Monic modulus, low-to-high coefficients, length degree + 1.
    min_poly: Vec<Rational>,
    degree: usize,
    /// reduction[k] = x^(degree+k) expanded in the power basis.
    reduction: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldInner>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.name == other.0.name && self.0.min_poly == other.0.min_poly)
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Q adjoined a root of `min_poly` (monic, low-to-high coefficients).
    pub fn new(name: impl Into<String>, min_poly: Vec<Rational>) -> Result<Self> {
        let name = name.into();
        if min_poly.len() < 2 {
            return Err(Error::invalid("modulus must have degree at least 1"));
        }
        if min_poly.last().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(Error::invalid("modulus must be monic"));
        }
        let degree = min_poly.len() - 1;
        // x^degree = -(m_0 + m_1 x + ... + m_{d-1} x^{d-1}); higher powers by
        // shifting and reducing the overflow coefficient with the same row.
        let base: Vec<Rational> = min_poly[..degree].iter().map(|c| -c).collect();
        let mut reduction = vec![base.clone()];
        for _ in 1..degree.max(1) {
            let prev = reduction.last().unwrap();
            let mut next = vec![Rational::zero(); degree];
            let top = prev[degree - 1].clone();
            for i in 1..degree {
                next[i] = prev[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] = &next[i] + &(&top * &base[i]);
                }
            }
            reduction.push(next);
        }
        Ok(NumberField(Arc::new(FieldInner {
            name,
            min_poly,
            degree,
            reduction,
        })))
    }

    /// The rationals, modelled as the degree-1 field Q[x]/(x).
    pub fn rationals() -> Self {
        NumberField(Arc::new(FieldInner {
            name: String::new(),
            min_poly: vec![Rational::zero(), Rational::one()],
            degree: 1,
            reduction: vec![vec![Rational::zero()]],
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_rationals(&self) -> bool {
        self.0.degree == 1
    }

    pub fn generator_name(&self) -> &str {
        &self.0.name
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.0.min_poly
    }

    pub fn describe(&self) -> String {
        if self.is_rationals() {
            "Q".to_string()
        } else {
            format!("Q({})", self.0.name)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.0.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.0.degree];
        coeffs[0] = r;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_int(n))
    }

    /// The class of x, i.e. the adjoined root (zero in Q itself).
    pub fn generator(&self) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.0.degree];
        if self.0.degree > 1 {
            coeffs[1] = Rational::one();
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<FieldElement> {
        if coeffs.len() != self.0.degree {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                self.0.degree,
                coeffs.len()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    fn mismatch(&self, other: &NumberField) -> Error {
        Error::FieldMismatch {
            left: self.describe(),
            right: other.describe(),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in the prime field.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeffs[0])
    }

    fn check(&self, rhs: &FieldElement) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(self.field.mismatch(&rhs.field))
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check(rhs)?;
        let d = self.field.0.degree;
        if d == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            });
        }
        let mut wide = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[i + j] = &wide[i + j] + &(a * b);
            }
        }
        let mut coeffs: Vec<Rational> = wide[..d].to_vec();
        for k in d..2 * d - 1 {
            if wide[k].is_zero() {
                continue;
            }
            let row = &self.field.0.reduction[k - d];
            for i in 0..d {
                if !row[i].is_zero() {
                    coeffs[i] = &coeffs[i] + &(&wide[k] * &row[i]);
                }
            }
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// modulus. A nontrivial gcd means the modulus is reducible; the gcd is
    /// reported as the discovered factor.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.inv()?));
        }
        let m = &self.field.0.min_poly;
        let a = self.coeffs.clone();
        let (g, u) = uni_ext_gcd(m, &a);
        if uni_degree(&g) != Some(0) {
            return Err(Error::NotInvertible {
                factor: format_uni(&uni_monic(&g), self.field.generator_name()),
            });
        }
        let ginv = g[0].inv()?;
        let mut coeffs: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        coeffs.resize(self.field.0.degree, Rational::zero());
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check(rhs)?;
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }
}

/// Degree of a coefficient vector, None for zero.
fn uni_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn uni_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn uni_monic(p: &[Rational]) -> Vec<Rational> {
    match uni_degree(p) {
        None => vec![],
        Some(d) => {
            let lead = p[d].inv().expect("nonzero lead");
            p[..=d].iter().map(|c| c * &lead).collect()
        }
    }
}

/// Remainder-producing division step: returns (q, r) with a = q*b + r.
fn uni_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = uni_degree(b).expect("division by zero polynomial");
    let mut r = uni_trim(a.to_vec());
    let mut q = vec![Rational::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = uni_degree(&r) {
        if dr < db {
            break;
        }
        let coef = r[dr].checked_div(&b[db]).expect("nonzero lead");
        let shift = dr - db;
        for i in 0..=db {
            let t = &b[i] * &coef;
            r[i + shift] = &r[i + shift] - &t;
        }
        q[shift] = coef;
        r = uni_trim(r);
    }
    (uni_trim(q), r)
}

/// Extended gcd specialised for inversion: returns (g, u) with u*a = g (mod m).
fn uni_ext_gcd(m: &[Rational], a: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = uni_trim(m.to_vec());
    let mut r1 = uni_trim(a.to_vec());
    let mut t0: Vec<Rational> = vec![];
    let mut t1 = vec![Rational::one()];
    while uni_degree(&r1).is_some() {
        let (q, rem) = uni_divmod(&r0, &r1);
        let t2 = uni_sub(&t0, &uni_mul(&q, &t1));
        r0 = r1;
        r1 = rem;
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, t0)
}

fn uni_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    uni_trim(out)
}

fn uni_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        *slot = &x - &y;
    }
    uni_trim(out)
}

fn format_uni(p: &[Rational], name: &str) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{i}"),
        };
        let term = if mono.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        };
        if parts.is_empty() || term.starts_with('-') {
            parts.push(term);
        } else {
            parts.push(format!("+{term}"));
        }
    }
    parts.concat()
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            format_uni(&uni_trim(self.coeffs.clone()), self.field.generator_name())
        )
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
