//! Dense univariate helpers: Euclidean arithmetic over a number field,
//! squarefree parts, Sylvester resultants, and exact rational root
//! extraction.
//!
//! # Root extraction
//!
//! Candidate roots come from the rational root theorem on the primitive
//! integer model when the outer coefficients are small enough to factor by
//! trial division. For large coefficients the same root set is found
//! without any integer factoring: pick a prime p keeping the polynomial
//! squarefree mod p, scan the roots mod p, Hensel-lift each to a modulus
//! exceeding twice the square of the coefficient bound, and run rational
//! reconstruction. Every candidate from either route is verified exactly,
//! so the shortcut can only miss nothing and admit nothing false.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{FieldElement, NumberField, Rational};
use crate::multipoly::Polynomial;

use super::Deadline;

pub fn deg(f: &[FieldElement]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn trim(mut f: Vec<FieldElement>) -> Vec<FieldElement> {
    while f.last().map(|c| c.is_zero()).unwrap_or(false) {
        f.pop();
    }
    f
}

pub fn eval(f: &[FieldElement], x: &FieldElement) -> Result<FieldElement> {
    let field = x.field();
    let mut acc = field.zero();
    for c in f.iter().rev() {
        acc = acc.mul(x)?.add(c)?;
    }
    Ok(acc)
}

pub fn derivative(f: &[FieldElement]) -> Vec<FieldElement> {
    if f.len() <= 1 {
        return Vec::new();
    }
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rational::from_int(i as i64)))
            .collect(),
    )
}

/// Quotient and remainder of f by nonzero g.
pub fn divmod(
    f: &[FieldElement],
    g: &[FieldElement],
    field: &NumberField,
) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let dg = deg(g).ok_or(Error::DivisionByZero)?;
    let glead_inv = g[dg].inv()?;
    let mut r: Vec<FieldElement> = trim(f.to_vec());
    let mut q = vec![field.zero(); r.len().saturating_sub(dg).max(1)];
    while let Some(dr) = deg(&r) {
        if dr < dg {
            break;
        }
        let c = r[dr].mul(&glead_inv)?;
        let shift = dr - dg;
        q[shift] = c.clone();
        for (i, gc) in g.iter().enumerate().take(dg + 1) {
            let delta = gc.mul(&c)?;
            r[i + shift] = r[i + shift].sub(&delta)?;
        }
    }
    Ok((trim(q), trim(r)))
}

/// Monic greatest common divisor; empty vec for gcd(0, 0).
pub fn gcd_monic(
    f: &[FieldElement],
    g: &[FieldElement],
    field: &NumberField,
) -> Result<Vec<FieldElement>> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let (_, r) = divmod(&a, &b, field)?;
        a = b;
        b = r;
    }
    if a.is_empty() {
        return Ok(a);
    }
    let lead_inv = a[deg(&a).unwrap()].inv()?;
    a.iter_mut().try_for_each(|c| -> Result<()> {
        *c = c.mul(&lead_inv)?;
        Ok(())
    })?;
    Ok(a)
}

/// f divided by gcd(f, f'): same roots, all simple. Monic.
pub fn squarefree_part(f: &[FieldElement], field: &NumberField) -> Result<Vec<FieldElement>> {
    let f = trim(f.to_vec());
    if deg(&f).unwrap_or(0) == 0 {
        return Ok(f);
    }
    let fp = derivative(&f);
    let g = gcd_monic(&f, &fp, field)?;
    let (q, r) = divmod(&f, &g, field)?;
    debug_assert!(r.is_empty(), "gcd must divide f");
    let dq = deg(&q).unwrap();
    let lead_inv = q[dq].inv()?;
    Ok(trim(
        q.iter().map(|c| c.mul(&lead_inv)).collect::<Result<Vec<_>>>()?,
    ))
}

/// Coefficients of f with respect to `var`: entry k holds the var-free
/// cofactor of var^k (in the same ring, with var zeroed out).
pub fn coeffs_in_var(f: &Polynomial, var: usize) -> Result<Vec<Polynomial>> {
    let ring = f.ring();
    let d = f.degree_in(var).unwrap_or(0) as usize;
    let mut out = vec![Polynomial::zero(ring); d + 1];
    for (m, c) in f.terms() {
        let e = m.exp(var) as usize;
        let mut exps = m.exps().to_vec();
        exps[var] = 0;
        let t = Polynomial::from_terms(ring, vec![(ring.monomial(exps)?, c.clone())])?;
        out[e] = out[e].add(&t)?;
    }
    Ok(out)
}

/// Determinant by fraction-free Bareiss elimination; entries may live in
/// any polynomial ring (exact divisions by previous pivots stay in the
/// ring).
pub fn bareiss_det(mut m: Vec<Vec<Polynomial>>, deadline: &Deadline) -> Result<Polynomial> {
    let n = m.len();
    if n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    let ring = m[0][0].ring().clone();
    let mut sign = false;
    let mut prev = Polynomial::one(&ring);
    for k in 0..n {
        deadline.check("determinant")?;
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(Polynomial::zero(&ring)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k]
                    .mul(&m[i][j])?
                    .sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = Polynomial::zero(&ring);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Resultant of f and g with respect to one variable, as a polynomial in
/// the remaining variables (Sylvester determinant).
pub fn resultant(
    f: &Polynomial,
    g: &Polynomial,
    var: usize,
    deadline: &Deadline,
) -> Result<Polynomial> {
    let ring = f.ring().clone();
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(&ring));
    }
    let fc = coeffs_in_var(f, var)?;
    let gc = coeffs_in_var(g, var)?;
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    if m == 0 {
        return fc[0].pow(n as u32);
    }
    if n == 0 {
        return gc[0].pow(m as u32);
    }
    let size = m + n;
    let zero = Polynomial::zero(&ring);
    let mut mat = vec![vec![zero; size]; size];
    for row in 0..n {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in gc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    bareiss_det(mat, deadline)
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Divisors of |n| for n with all prime factors reachable by trial
/// division; None if a cofactor above the bound remains.
fn divisors_by_trial(n: &BigInt, bound: u64) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while &BigInt::from(p) * BigInt::from(p) <= n && p <= bound {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            let mut e = 0u32;
            while (&n % &bp).is_zero() {
                n /= &bp;
                e += 1;
            }
            factors.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        if n <= BigInt::from(bound) * BigInt::from(bound) {
            // remaining cofactor is prime (no factor below sqrt)
            factors.push((n, 1));
        } else {
            return None;
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Some(divs)
}

/// Primitive integer model: clear denominators and content.
fn integer_model(f: &[Rational]) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in f {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = f
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    ints
}

/// f(p/q) * q^deg for an integer polynomial: zero iff p/q is a root.
fn eval_int_at_fraction(f: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = f.len() - 1;
    let mut total = BigInt::zero();
    let mut ppow = BigInt::one();
    for (i, c) in f.iter().enumerate() {
        total += c * &ppow * q.pow((n - i) as u32);
        ppow *= p;
    }
    total
}

/// All rational roots of f (given by rational coefficients, low to high),
/// each exactly verified. The input need not be squarefree.
pub fn rational_roots(coeffs: &[Rational], deadline: &Deadline) -> Result<Vec<Rational>> {
    let field = NumberField::rationals();
    let as_elems: Vec<FieldElement> = coeffs
        .iter()
        .map(|c| field.from_rational(c.clone()))
        .collect();
    let sf = squarefree_part(&as_elems, &field)?;
    let sf_q: Vec<Rational> = sf
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    if sf_q.is_empty() {
        return Err(Error::invalid("the zero polynomial has every root"));
    }
    if sf_q.len() == 1 {
        return Ok(Vec::new());
    }
    let mut f = integer_model(&sf_q);
    let mut roots = Vec::new();
    // strip x^k
    let k = f.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if k > 0 {
        roots.push(Rational::zero());
        f.drain(..k);
    }
    if f.len() <= 1 {
        roots.sort();
        return Ok(roots);
    }
    let a0 = f[0].clone();
    let alead = f.last().unwrap().clone();
    let exact_root =
        |cand: &Rational| -> bool { eval_int_at_fraction(&f, cand.numer(), cand.denom()).is_zero() };
    const TRIAL_BOUND: u64 = 1_000_000;
    let small = divisors_by_trial(&a0, TRIAL_BOUND)
        .and_then(|ds| divisors_by_trial(&alead, TRIAL_BOUND).map(|dl| (ds, dl)));
    match small {
        Some((num_divs, den_divs)) => {
            for p in &num_divs {
                for q in &den_divs {
                    deadline.check("rational roots")?;
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    for signed in [p.clone(), -p] {
                        let cand = Rational::new(signed, q.clone())?;
                        if exact_root(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        None => {
            roots.extend(hensel_rational_roots(&f, deadline)?);
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Root finding for big-coefficient integer polynomials: roots mod p,
/// Hensel lifting, rational reconstruction, exact verification.
fn hensel_rational_roots(f: &[BigInt], deadline: &Deadline) -> Result<Vec<Rational>> {
    let n = f.len() - 1;
    let bound = f
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::one);
    let target: BigInt = BigInt::from(2) * &bound * &bound + 1;
    // choose a prime keeping f squarefree with unit leading coefficient
    let mut p = 10007u64;
    let chosen = loop {
        deadline.check("prime selection")?;
        while !is_prime_u64(p) {
            p += 2;
        }
        let fp: Vec<u64> = f.iter().map(|c| big_mod(c, p)).collect();
        if *fp.last().unwrap() != 0 && gfp_squarefree(&fp, p) {
            break p;
        }
        p += 2;
    };
    let p = chosen;
    // roots mod p by scanning
    let fp: Vec<u64> = f.iter().map(|c| big_mod(c, p)).collect();
    let mut roots = Vec::new();
    for r0 in 0..p {
        if gfp_eval(&fp, r0, p) != 0 {
            continue;
        }
        deadline.check("hensel lifting")?;
        // Newton lift: modulus squares each round
        let mut modulus = BigInt::from(p);
        let mut r = BigInt::from(r0);
        while modulus < target {
            modulus = &modulus * &modulus;
            let fr = eval_int_mod(f, &r, &modulus);
            let fpr = eval_int_deriv_mod(f, &r, &modulus);
            let inv = match mod_inverse(&fpr, &modulus) {
                Some(i) => i,
                None => break, // lift failed; candidate dies at verification
            };
            r = ((&r - fr * inv) % &modulus + &modulus) % &modulus;
        }
        if let Some((num, den)) = rational_reconstruct(&r, &modulus) {
            if let Ok(cand) = Rational::new(num, den) {
                let nn = cand.numer().clone();
                let dd = cand.denom().clone();
                let mut total = BigInt::zero();
                let mut ppow = BigInt::one();
                for (i, c) in f.iter().enumerate() {
                    total += c * &ppow * dd.pow((n - i) as u32);
                    ppow *= &nn;
                }
                if total.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

fn big_mod(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    m.to_u64().unwrap()
}

fn gfp_eval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for c in f.iter().rev() {
        acc = (mod_mul(acc, x, p) + c) % p;
    }
    acc
}

fn gfp_squarefree(f: &[u64], p: u64) -> bool {
    // gcd(f, f') constant in GF(p)[x]
    let fp: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| mod_mul(*c, (i as u64) % p, p))
        .collect();
    let mut a = trim_u64(f.to_vec());
    let mut b = trim_u64(fp);
    while !b.is_empty() {
        let r = gfp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn trim_u64(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn gfp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mod_mul(r[dr], lead_inv, p);
        if c != 0 {
            let shift = dr - db;
            for (i, bc) in b.iter().enumerate() {
                let sub = mod_mul(c, *bc, p);
                r[i + shift] = (r[i + shift] + p - sub) % p;
            }
        }
        r.pop();
        r = trim_u64(r);
        if r.is_empty() {
            break;
        }
    }
    trim_u64(r)
}

fn eval_int_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn eval_int_deriv_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, c) in f.iter().enumerate().skip(1).rev() {
        acc = (acc * x + c * BigInt::from(i)).mod_floor(m);
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Wang rational reconstruction: find p/q with r = p/q mod m and
/// |p|, |q| <= sqrt(m/2).
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{MonomialOrder, PolyRing};

    fn felems(field: &NumberField, vals: &[i64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| field.from_int(v)).collect()
    }

    #[test]
    fn divmod_and_gcd() {
        let q = NumberField::rationals();
        // (x-1)(x-2) = x^2 - 3x + 2, (x-1)(x+3) = x^2 + 2x - 3
        let a = felems(&q, &[2, -3, 1]);
        let b = felems(&q, &[-3, 2, 1]);
        let g = gcd_monic(&a, &b, &q).unwrap();
        assert_eq!(g, felems(&q, &[-1, 1]));
        let (quot, rem) = divmod(&a, &g, &q).unwrap();
        assert!(rem.is_empty());
        assert_eq!(quot, felems(&q, &[-2, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let q = NumberField::rationals();
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = felems(&q, &[2, -3, 0, 1]);
        let sf = squarefree_part(&f, &q).unwrap();
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(sf, felems(&q, &[-2, 1, 1]));
    }

    #[test]
    fn resultant_matches_hand_sylvester() {
        // Res_x(x^2 - y, x - y) = y^2 - y (substitute x = y)
        let ring = PolyRing::new(
            NumberField::rationals(),
            vec!["x".into(), "y".into()],
            None,
            MonomialOrder::lex(),
        )
        .unwrap();
        let d = Deadline::none();
        let f = ring.parse("x^2-y").unwrap();
        let g = ring.parse("x-y").unwrap();
        let r = resultant(&f, &g, 0, &d).unwrap();
        assert_eq!(r, ring.parse("y^2-y").unwrap());
        // shared root: resultant vanishes
        let h = ring.parse("x^2-2*x*y+y^2").unwrap(); // (x-y)^2
        assert!(resultant(&h, &g, 0, &d).unwrap().is_zero());
    }

    #[test]
    fn rational_roots_small_coefficients() {
        let d = Deadline::none();
        // 6x^3 - 5x^2 - 2x + 1 = (x-1)(3x-1)(2x+1)
        let coeffs: Vec<Rational> = ["1", "-2", "-5", "6"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let roots = rational_roots(&coeffs, &d).unwrap();
        let expect: Vec<Rational> = ["-1/2", "1/3", "1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(roots, expect);
    }

    #[test]
    fn rational_roots_with_multiplicity_and_zero_root() {
        let d = Deadline::none();
        // x^2 (x - 3)^2
        let coeffs: Vec<Rational> = ["0", "0", "9", "-6", "1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let roots = rational_roots(&coeffs, &d).unwrap();
        let expect: Vec<Rational> = ["0", "3"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(roots, expect);
    }

    #[test]
    fn rational_roots_beyond_trial_division() {
        let d = Deadline::none();
        // root p/q with 15-digit prime p and prime q, times an irreducible
        // quadratic: (q x - p)(x^2 + 1)
        let p: BigInt = "100000000000000003".parse().unwrap();
        let q: BigInt = "1000003".parse().unwrap();
        let lin = [
            Rational::new(-p.clone(), BigInt::one()).unwrap(),
            Rational::new(q.clone(), BigInt::one()).unwrap(),
        ];
        // multiply (q x - p)(x^2 + 1) = q x^3 - p x^2 + q x - p
        let coeffs = vec![
            lin[0].clone(),
            lin[1].clone(),
            lin[0].clone(),
            lin[1].clone(),
        ];
        let roots = rational_roots(&coeffs, &d).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0], Rational::new(p, q).unwrap());
    }

    #[test]
    fn primality_test_agrees_with_known_values() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(10007));
        assert!(is_prime_u64(1_000_003));
        assert!(is_prime_u64(100_000_000_000_000_003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(10009 * 10007));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }
}
