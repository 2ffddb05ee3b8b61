//! Sparse multivariate polynomials over a number field.
//!
//! Terms are kept sorted in strictly descending ring order with no zero
//! coefficients, so equality is structural and formatting is canonical.
//! All binary operations check that both operands live in the same ring.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, Rational};

use super::ring::{Monomial, PolyRing};

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &PolyRing) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &PolyRing) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(ring.unit_monomial(), ring.field().one())],
        }
    }

    pub fn constant(ring: &PolyRing, c: FieldElement) -> Result<Polynomial> {
        if c.field() != ring.field() {
            return Err(Error::FieldMismatch {
                left: ring.field().describe(),
                right: c.field().describe(),
            });
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(ring));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(ring.unit_monomial(), c)],
        })
    }

    pub fn constant_rational(ring: &PolyRing, r: Rational) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_rational(r)).expect("same field")
    }

    pub fn var(ring: &PolyRing, idx: usize) -> Result<Polynomial> {
        Polynomial::var_pow(ring, idx, 1)
    }

    pub fn var_pow(ring: &PolyRing, idx: usize, exp: u32) -> Result<Polynomial> {
        if idx >= ring.nvars() {
            return Err(Error::invalid("variable index out of range"));
        }
        let mut exps = vec![0u32; ring.nvars()];
        exps[idx] = exp;
        Ok(Polynomial {
            ring: ring.clone(),
            terms: vec![(ring.monomial(exps)?, ring.field().one())],
        })
    }

    /// Build from arbitrary (monomial, coefficient) pairs: sorts, merges
    /// duplicates, and drops zeros.
    pub fn from_terms(ring: &PolyRing, terms: Vec<(Monomial, FieldElement)>) -> Result<Polynomial> {
        for (m, c) in &terms {
            if m.exps().len() != ring.nvars() {
                return Err(Error::invalid("monomial arity != ring arity"));
            }
            if c.field() != ring.field() {
                return Err(Error::FieldMismatch {
                    left: ring.field().describe(),
                    right: c.field().describe(),
                });
            }
        }
        let mut terms = terms;
        let order = ring.order().clone();
        terms.sort_by(|a, b| ring.cmp_monomials(&order, &b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.add(&c)?;
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_unit())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_unit() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn constant_term(&self) -> FieldElement {
        match self.terms.last() {
            Some((m, c)) if m.is_unit() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.describe(),
                right: other.ring.describe(),
            });
        }
        Ok(())
    }

    /// Merge two descending term lists with coefficient addition.
    fn merged(&self, rhs_terms: Vec<(Monomial, FieldElement)>) -> Result<Polynomial> {
        let order = self.ring.order().clone();
        let mut out = Vec::with_capacity(self.terms.len() + rhs_terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = rhs_terms.into_iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => {
                    match self.ring.cmp_monomials(&order, ma, mb) {
                        std::cmp::Ordering::Greater => out.push(a.next().unwrap()),
                        std::cmp::Ordering::Less => out.push(b.next().unwrap()),
                        std::cmp::Ordering::Equal => {
                            let (m, ca) = a.next().unwrap();
                            let (_, cb) = b.next().unwrap();
                            let c = ca.add(&cb)?;
                            if !c.is_zero() {
                                out.push((m, c));
                            }
                        }
                    }
                }
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: out,
        })
    }

    pub fn add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rhs)?;
        self.merged(rhs.terms.clone())
    }

    pub fn sub(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rhs)?;
        let negated: Vec<_> = rhs
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        self.merged(negated)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, a) in &self.terms {
            let p = a.mul(c)?;
            if !p.is_zero() {
                terms.push((m.clone(), p));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> Polynomial {
        if r.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.scale(r)))
                .collect(),
        }
    }

    /// self * (c * m) for a single scaled monomial.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            let p = tc.mul(c)?;
            if !p.is_zero() {
                terms.push((tm.mul(m)?, p));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// self - c * m * g in one merge pass; the reduction workhorse.
    pub fn sub_scaled(&self, c: &FieldElement, m: &Monomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_ring(g)?;
        let mut shifted = Vec::with_capacity(g.terms.len());
        for (tm, tc) in &g.terms {
            let p = tc.mul(c)?.neg();
            if !p.is_zero() {
                shifted.push((tm.mul(m)?, p));
            }
        }
        self.merged(shifted)
    }

    pub fn mul(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: HashMap<Monomial, FieldElement> =
            HashMap::with_capacity(small.terms.len() * big.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb)?;
                let c = ca.mul(cb)?;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c)?;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        let order = self.ring.order().clone();
        terms.sort_by(|a, b| self.ring.cmp_monomials(&order, &b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, exp: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient self / d; fails if d does not divide self.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut q_terms = Vec::new();
        while let Some((lm, lc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&lm) {
                return Err(Error::invalid("polynomial division is not exact"));
            }
            let qm = dm.div_into(&lm);
            let qc = lc.div(&dc)?;
            rem = rem.sub_scaled(&qc, &qm, d)?;
            q_terms.push((qm, qc));
        }
        Polynomial::from_terms(&self.ring, q_terms)
    }

    pub fn derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.ring.nvars() {
            return Err(Error::invalid("variable index out of range"));
        }
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            let coeff = c.scale(&Rational::from_int(e as i64));
            terms.push((self.ring.monomial(exps)?, coeff));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Full evaluation at a point (one field element per ring variable).
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.nvars() {
            return Err(Error::invalid("point arity != ring arity"));
        }
        let field = self.ring.field();
        for v in point {
            if v.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.describe(),
                    right: v.field().describe(),
                });
            }
        }
        // Per-variable power tables up to the max exponent that occurs.
        let mut max_exp = vec![0u32; point.len()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<FieldElement>> = Vec::with_capacity(point.len());
        for (i, v) in point.iter().enumerate() {
            let mut col = vec![field.one()];
            for _ in 0..max_exp[i] {
                let next = col.last().unwrap().mul(v)?;
                col.push(next);
            }
            powers.push(col);
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Replace one variable by a polynomial in the same ring.
    pub fn substitute(&self, var: usize, rep: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rep)?;
        if var >= self.ring.nvars() {
            return Err(Error::invalid("variable index out of range"));
        }
        let max_e = self
            .terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .max()
            .unwrap_or(0);
        // Bucket terms by the exponent of `var`, with that exponent removed.
        let mut buckets: Vec<Vec<(Monomial, FieldElement)>> =
            vec![Vec::new(); max_e as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            buckets[e as usize].push((self.ring.monomial(exps)?, c.clone()));
        }
        let mut result = Polynomial::zero(&self.ring);
        let mut rep_pow = Polynomial::one(&self.ring);
        for (e, bucket) in buckets.into_iter().enumerate() {
            if e > 0 {
                rep_pow = rep_pow.mul(rep)?;
            }
            if bucket.is_empty() {
                continue;
            }
            let part = Polynomial::from_terms(&self.ring, bucket)?;
            result = result.add(&part.mul(&rep_pow)?)?;
        }
        Ok(result)
    }

    /// Specialize one variable to a field constant.
    pub fn eval_var(&self, var: usize, value: &FieldElement) -> Result<Polynomial> {
        if var >= self.ring.nvars() {
            return Err(Error::invalid("variable index out of range"));
        }
        let field = self.ring.field();
        if value.field() != field {
            return Err(Error::FieldMismatch {
                left: field.describe(),
                right: value.field().describe(),
            });
        }
        let max_e = self
            .terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .max()
            .unwrap_or(0);
        let mut powers = vec![field.one()];
        for _ in 0..max_e {
            let next = powers.last().unwrap().mul(value)?;
            powers.push(next);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            terms.push((self.ring.monomial(exps)?, c.mul(&powers[e as usize])?));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Max weighted degree of a term; None for the zero polynomial.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.wdeg()).max()
    }

    /// All terms share one weighted degree (vacuously true for zero).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.wdeg();
                self.terms.iter().all(|(m, _)| m.wdeg() == d)
            }
        }
    }

    /// Max exponent of one variable; None for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    /// Which variables actually occur.
    pub fn support_vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    /// Coefficient list low to high if the polynomial involves only `var`.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<FieldElement>> {
        let support = self.support_vars();
        for (i, &u) in support.iter().enumerate() {
            if u && i != var {
                return Err(Error::invalid(format!(
                    "polynomial is not univariate in `{}`: also involves `{}`",
                    self.ring.vars()[var],
                    self.ring.vars()[i]
                )));
            }
        }
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![self.ring.field().zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Ok(coeffs)
    }

    pub fn from_univariate(
        ring: &PolyRing,
        var: usize,
        coeffs: &[FieldElement],
    ) -> Result<Polynomial> {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; ring.nvars()];
            exps[var] = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            terms.push((ring.monomial(exps)?, c.clone()));
        }
        Polynomial::from_terms(ring, terms)
    }

    /// Positive rational content: gcd of all numerators over lcm of all
    /// denominators across every coordinate of every coefficient.
    pub fn content(&self) -> Rational {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Zero};
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            for r in c.coeffs() {
                if r.is_zero() {
                    continue;
                }
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
        }
        if num_gcd.is_zero() {
            return Rational::from_int(0);
        }
        Rational::new(num_gcd, den_lcm).expect("nonzero denominator")
    }

    /// Divide out the content and fix the sign so the leading coefficient's
    /// first nonzero coordinate is positive. Returns (primitive, factor)
    /// with self = factor * primitive.
    pub fn make_primitive(&self) -> (Polynomial, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::from_int(1));
        }
        let mut factor = self.content();
        let lead = &self.terms[0].1;
        let lead_sign_neg = lead
            .coeffs()
            .iter()
            .find(|r| !r.is_zero())
            .map(|r| r.is_negative())
            .unwrap_or(false);
        if lead_sign_neg {
            factor = -factor;
        }
        let inv = factor.inv().expect("nonzero content");
        (self.scale_rational(&inv), factor)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        match self.leading_coeff() {
            None => Ok(self.clone()),
            Some(c) => self.scale(&c.inv()?),
        }
    }

    /// Equal up to a nonzero field scalar.
    pub fn proportional_to(&self, other: &Polynomial) -> bool {
        if self.ring != other.ring || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let ratio = match self.terms[0].1.div(&other.terms[0].1) {
            Ok(r) => r,
            Err(_) => return false,
        };
        self.terms.iter().zip(other.terms.iter()).all(|(a, b)| {
            a.0 == b.0
                && match b.1.mul(&ratio) {
                    Ok(p) => p == a.1,
                    Err(_) => false,
                }
        })
    }

    /// Rebuild in another ring, sending old variable i to `assign[i]`.
    /// Variables mapped to None must not occur.
    pub fn map_vars(&self, target: &PolyRing, assign: &[Option<usize>]) -> Result<Polynomial> {
        if assign.len() != self.ring.nvars() {
            return Err(Error::invalid("assignment length != variable count"));
        }
        if target.field() != self.ring.field() {
            return Err(Error::FieldMismatch {
                left: self.ring.field().describe(),
                right: target.field().describe(),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assign[i] {
                    Some(j) => {
                        exps[j] = exps[j].checked_add(e).ok_or(Error::ExponentOverflow)?;
                    }
                    None => {
                        return Err(Error::invalid(format!(
                            "variable `{}` occurs but has no image",
                            self.ring.vars()[i]
                        )));
                    }
                }
            }
            terms.push((target.monomial(exps)?, c.clone()));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Rebuild over a larger coefficient field; variables are matched by
    /// name and every coefficient must be rational.
    pub fn lift_field(&self, target: &PolyRing) -> Result<Polynomial> {
        let mut assign = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            match target.var_index(v) {
                Some(j) => assign.push(j),
                None => {
                    return Err(Error::invalid(format!(
                        "target ring is missing variable `{v}`"
                    )))
                }
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let r = c.as_rational().ok_or_else(|| {
                Error::invalid("coefficient is not rational; cannot lift the field")
            })?;
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[assign[i]] = e;
            }
            terms.push((target.monomial(exps)?, target.field().from_rational(r.clone())));
        }
        Polynomial::from_terms(target, terms)
    }
}
