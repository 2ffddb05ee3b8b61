//! Combinatorics of leading-term ideals: Krull dimension, staircase
//! counts for zero-dimensional quotients, and Hilbert series degrees.
//!
//! Everything here reduces to the monomial ideal of leading terms of a
//! Groebner basis. Dimension is the largest variable subset that meets no
//! leading support, the vector-space dimension of a zero-dimensional
//! quotient is the number of standard monomials under the staircase, and
//! projective degree comes from the Hilbert series numerator evaluated at 1
//! after cancelling its (1-t) factors. The numerator uses the plain total
//! degree of each monomial regardless of ring weights.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{Deadline, Ideal};

/// Affine Krull dimension of the quotient by the ideal. The unit ideal
/// has dimension -1 by convention.
pub fn dimension(ideal: &Ideal, deadline: &Deadline) -> Result<i64> {
    let n = ideal.ring().nvars();
    if n > 63 {
        return Err(Error::invalid("dimension supports at most 63 variables"));
    }
    let gb = ideal.groebner_basis(deadline)?;
    if gb.is_empty() {
        return Ok(n as i64);
    }
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(-1);
    }
    let supports: Vec<u64> = gb
        .iter()
        .map(|g| {
            let mut mask = 0u64;
            for (i, e) in g.leading_monomial().unwrap().exps().iter().enumerate() {
                if *e > 0 {
                    mask |= 1 << i;
                }
            }
            mask
        })
        .collect();
    // A variable subset S is independent when no leading support lies
    // inside S; the dimension is the largest such S.
    let mut best = 0i64;
    for subset in 0u64..(1 << n) {
        let size = subset.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Exponent bounds from pure-power leading terms. `None` for a variable
/// with no pure power among the leading monomials.
fn staircase_bounds(lms: &[Vec<u32>], n: usize) -> Vec<Option<u32>> {
    let mut bounds: Vec<Option<u32>> = vec![None; n];
    for exps in lms {
        let mut support = exps.iter().enumerate().filter(|(_, e)| **e > 0);
        if let Some((i, e)) = support.next() {
            if support.next().is_none() {
                bounds[i] = Some(match bounds[i] {
                    None => *e,
                    Some(b) => b.min(*e),
                });
            }
        }
    }
    bounds
}

/// Vector-space dimension of R/I for a zero-dimensional ideal: the number
/// of monomials under the staircase of leading terms.
pub fn zero_dim_degree(ideal: &Ideal, deadline: &Deadline) -> Result<u64> {
    let n = ideal.ring().nvars();
    let gb = ideal.groebner_basis(deadline)?;
    if gb.is_empty() {
        return Err(Error::inconsistent(
            "the zero ideal is not zero-dimensional",
        ));
    }
    if gb.len() == 1 && gb[0].is_constant() {
        return Ok(0);
    }
    let lms: Vec<Vec<u32>> = gb
        .iter()
        .map(|g| g.leading_monomial().unwrap().exps().to_vec())
        .collect();
    let bounds = staircase_bounds(&lms, n);
    let mut fixed = Vec::with_capacity(n);
    for (i, b) in bounds.iter().enumerate() {
        match b {
            Some(b) => fixed.push(*b),
            None => {
                return Err(Error::inconsistent(format!(
                    "ideal is not zero-dimensional: no pure power of `{}` among leading terms",
                    ideal.ring().vars()[i]
                )))
            }
        }
    }
    // Walk the exponent box, counting tuples no leading term divides.
    let mut count = 0u64;
    let mut exp = vec![0u32; n];
    let mut steps = 0u64;
    loop {
        steps += 1;
        if steps % 4096 == 0 {
            deadline.check("staircase enumeration")?;
        }
        if !lms
            .iter()
            .any(|m| m.iter().zip(&exp).all(|(a, b)| a <= b))
        {
            count += 1;
        }
        // increment odometer
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            exp[i] += 1;
            if exp[i] < fixed[i] {
                break;
            }
            exp[i] = 0;
            i += 1;
        }
    }
}

type HPoly = Vec<BigInt>;

fn hp_trim(p: &mut HPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn hp_add_shifted(p: &mut HPoly, q: &HPoly, shift: usize) {
    if p.len() < q.len() + shift {
        p.resize(q.len() + shift, BigInt::zero());
    }
    for (i, c) in q.iter().enumerate() {
        p[i + shift] += c;
    }
    hp_trim(p);
}

fn monomial_total_degree(m: &[u32]) -> usize {
    m.iter().map(|e| *e as usize).sum()
}

/// Drop generators divisible by another generator.
fn minimize(gens: &mut Vec<Vec<u32>>) {
    gens.sort_by_key(|m| monomial_total_degree(m));
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for m in gens.drain(..) {
        if !kept
            .iter()
            .any(|k| k.iter().zip(&m).all(|(a, b)| a <= b))
        {
            kept.push(m);
        }
    }
    *gens = kept;
}

/// Hilbert series numerator N(t) of the monomial ideal, so that the
/// Hilbert series of the quotient is N(t) / (1-t)^n.
fn numerator(mut gens: Vec<Vec<u32>>, deadline: &Deadline) -> Result<HPoly> {
    deadline.check("hilbert numerator")?;
    minimize(&mut gens);
    if gens.is_empty() {
        return Ok(vec![BigInt::one()]);
    }
    if gens.iter().any(|m| m.iter().all(|e| *e == 0)) {
        return Ok(Vec::new());
    }
    // Pairwise coprime supports: the numerator is a product of binomials.
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..]
            .iter()
            .all(|b| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0))
    });
    if pairwise_coprime {
        let mut acc: HPoly = vec![BigInt::one()];
        for m in &gens {
            let d = monomial_total_degree(m);
            let mut out = vec![BigInt::zero(); acc.len() + d];
            for (i, c) in acc.iter().enumerate() {
                out[i] += c;
                out[i + d] -= c;
            }
            acc = out;
            hp_trim(&mut acc);
        }
        return Ok(acc);
    }
    // Pivot on the most shared variable x_j:
    //   N(J) = N(J + <x_j>) + t * N(J : x_j).
    let n = gens[0].len();
    let mut freq = vec![0usize; n];
    for m in &gens {
        for (i, e) in m.iter().enumerate() {
            if *e > 0 {
                freq[i] += 1;
            }
        }
    }
    let pivot = (0..n).max_by_key(|i| freq[*i]).unwrap();
    let mut plus: Vec<Vec<u32>> = gens
        .iter()
        .filter(|m| m[pivot] == 0)
        .cloned()
        .collect();
    let mut unit = vec![0u32; n];
    unit[pivot] = 1;
    plus.push(unit);
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|m| {
            let mut c = m.clone();
            c[pivot] = c[pivot].saturating_sub(1);
            c
        })
        .collect();
    let mut out = numerator(plus, deadline)?;
    let tail = numerator(colon, deadline)?;
    hp_add_shifted(&mut out, &tail, 1);
    Ok(out)
}

/// Hilbert series numerator of the ideal's leading-term ideal, using
/// unweighted total degrees.
pub fn hilbert_numerator(ideal: &Ideal, deadline: &Deadline) -> Result<HPoly> {
    let gb = ideal.groebner_basis(deadline)?;
    let gens: Vec<Vec<u32>> = gb
        .iter()
        .map(|g| g.leading_monomial().unwrap().exps().to_vec())
        .collect();
    numerator(gens, deadline)
}

/// Dimension of the affine cone and degree of the projective scheme cut
/// out by a homogeneous ideal: the Hilbert series is N~(t) / (1-t)^d with
/// N~(1) != 0, and the degree is N~(1).
pub fn projective_degree(ideal: &Ideal, deadline: &Deadline) -> Result<(usize, u64)> {
    let n = ideal.ring().nvars();
    let mut num = hilbert_numerator(ideal, deadline)?;
    if num.is_empty() {
        return Err(Error::inconsistent(
            "unit ideal defines the empty projective scheme",
        ));
    }
    let mut cancels = 0usize;
    loop {
        let at_one: BigInt = num.iter().sum();
        if !at_one.is_zero() {
            let deg: u64 = at_one.try_into().map_err(|_| {
                Error::inconsistent("hilbert numerator evaluates to a negative degree")
            })?;
            return Ok((n - cancels, deg));
        }
        // divide by (1-t): quotient q with q_i = sum of num_0..=num_i
        let mut q = vec![BigInt::zero(); num.len().saturating_sub(1)];
        let mut acc = BigInt::zero();
        for i in 0..q.len() {
            acc += &num[i];
            q[i] = acc.clone();
        }
        num = q;
        hp_trim(&mut num);
        cancels += 1;
        if cancels > n {
            return Err(Error::inconsistent(
                "hilbert numerator had more (1-t) factors than variables",
            ));
        }
    }
}

/// Values of the Hilbert function of the quotient at degrees 0..=max_deg,
/// from the numerator: h(d) is the t^d coefficient of N(t) / (1-t)^n.
pub fn hilbert_function_values(num: &HPoly, nvars: usize, max_deg: usize) -> Vec<BigInt> {
    // 1/(1-t)^n has t^k coefficient C(n-1+k, n-1)
    let mut binom = vec![BigInt::one(); max_deg + 1];
    for k in 1..=max_deg {
        binom[k] = &binom[k - 1] * BigInt::from(nvars as u64 - 1 + k as u64)
            / BigInt::from(k as u64);
    }
    (0..=max_deg)
        .map(|d| {
            let mut h = BigInt::zero();
            for (j, c) in num.iter().enumerate() {
                if j <= d {
                    h += c * &binom[d - j];
                }
            }
            h
        })
        .collect()
}
