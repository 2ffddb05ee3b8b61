//! Polynomial rings, monomials, and monomial orders.
//!
//! # Design notes
//!
//! A ring fixes the coefficient field, an ordered list of variable names,
//! per-variable positive weights (all 1 unless stated), and a default
//! monomial order. Monomials cache their weighted degree so that graded
//! comparisons are a single integer compare in the common case.
//!
//! Orders: `Lex`, weighted `GrevLex`, and `Block(k)` which compares the first
//! k ranked variables as a grevlex block before the remaining variables (the
//! usual elimination order). An optional ranking permutes variable
//! significance without renaming anything.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::NumberField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Eliminate the first k ranked variables: any monomial containing one of
    /// them sorts above every monomial in the remaining variables.
    Block(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Permutation of variable indices, most significant first. `None` means
    /// declaration order.
    pub ranking: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            ranking: None,
        }
    }

    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            ranking: None,
        }
    }

    pub fn block(k: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Block(k),
            ranking: None,
        }
    }

    pub fn with_ranking(mut self, ranking: Vec<usize>) -> Self {
        self.ranking = Some(ranking);
        self
    }

    fn validate(&self, nvars: usize) -> Result<()> {
        if let Some(r) = &self.ranking {
            let mut seen = vec![false; nvars];
            if r.len() != nvars {
                return Err(Error::invalid("ranking length != variable count"));
            }
            for &i in r {
                if i >= nvars || seen[i] {
                    return Err(Error::invalid("ranking is not a permutation"));
                }
                seen[i] = true;
            }
        }
        if let OrderKind::Block(k) = self.kind {
            if k == 0 || k > nvars {
                return Err(Error::invalid("block size out of range"));
            }
        }
        Ok(())
    }

    /// Stable textual key, used to index Groebner basis caches.
    pub fn cache_key(&self) -> String {
        let kind = match self.kind {
            OrderKind::Lex => "lex".to_string(),
            OrderKind::GrevLex => "grevlex".to_string(),
            OrderKind::Block(k) => format!("block{k}"),
        };
        match &self.ranking {
            None => kind,
            Some(r) => format!(
                "{kind}:{}",
                r.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

#[derive(Debug)]
struct RingInner {
    field: NumberField,
    vars: Vec<String>,
    weights: Vec<u64>,
    order: MonomialOrder,
}

#[derive(Clone, Debug)]
pub struct PolyRing(Arc<RingInner>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.vars == other.0.vars
                && self.0.weights == other.0.weights
                && self.0.order == other.0.order)
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(
        field: NumberField,
        vars: Vec<String>,
        weights: Option<Vec<u64>>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
        if weights.len() != vars.len() {
            return Err(Error::invalid("weights length != variable count"));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::invalid("weights must be positive"));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            if v.is_empty() {
                return Err(Error::invalid("empty variable name"));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::invalid(format!("duplicate variable `{v}`")));
            }
            if !field.is_rationals() && v == field.generator_name() {
                return Err(Error::invalid(format!(
                    "variable `{v}` shadows the field generator"
                )));
            }
        }
        order.validate(vars.len())?;
        Ok(PolyRing(Arc::new(RingInner {
            field,
            vars,
            weights,
            order,
        })))
    }

    pub fn field(&self) -> &NumberField {
        &self.0.field
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.0.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn is_weighted(&self) -> bool {
        self.0.weights.iter().any(|&w| w != 1)
    }

    pub fn describe(&self) -> String {
        format!("{}[{}]", self.0.field.describe(), self.0.vars.join(","))
    }

    /// Same ring with a different default order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<PolyRing> {
        order.validate(self.nvars())?;
        Ok(PolyRing(Arc::new(RingInner {
            field: self.0.field.clone(),
            vars: self.0.vars.clone(),
            weights: self.0.weights.clone(),
            order,
        })))
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(Error::invalid("exponent vector length != variable count"));
        }
        let mut wdeg: u64 = 0;
        for (e, w) in exps.iter().zip(&self.0.weights) {
            wdeg = wdeg
                .checked_add((*e as u64).checked_mul(*w).ok_or(Error::ExponentOverflow)?)
                .ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial {
            wdeg,
            exps: exps.into_boxed_slice(),
        })
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial {
            wdeg: 0,
            exps: vec![0; self.nvars()].into_boxed_slice(),
        }
    }

    /// Compare two monomials under `order` in this ring's weighting.
    pub fn cmp_monomials(&self, order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.nvars();
        let rank = |pos: usize| -> usize {
            match &order.ranking {
                None => pos,
                Some(r) => r[pos],
            }
        };
        match order.kind {
            OrderKind::Lex => {
                for pos in 0..n {
                    let i = rank(pos);
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => self.cmp_grevlex(order, a, b, 0, n),
            OrderKind::Block(k) => {
                match self.cmp_grevlex(order, a, b, 0, k) {
                    Ordering::Equal => self.cmp_grevlex(order, a, b, k, n),
                    other => other,
                }
            }
        }
    }

    /// Weighted grevlex on the ranked positions [lo, hi): higher block degree
    /// wins; on ties the smaller exponent at the least significant differing
    /// variable wins.
    fn cmp_grevlex(
        &self,
        order: &MonomialOrder,
        a: &Monomial,
        b: &Monomial,
        lo: usize,
        hi: usize,
    ) -> Ordering {
        let rank = |pos: usize| -> usize {
            match &order.ranking {
                None => pos,
                Some(r) => r[pos],
            }
        };
        let full = lo == 0 && hi == self.nvars();
        let (da, db) = if full {
            (a.wdeg, b.wdeg)
        } else {
            let mut da = 0u64;
            let mut db = 0u64;
            for pos in lo..hi {
                let i = rank(pos);
                da += a.exps[i] as u64 * self.0.weights[i];
                db += b.exps[i] as u64 * self.0.weights[i];
            }
            (da, db)
        };
        match da.cmp(&db) {
            Ordering::Equal => {}
            other => return other,
        }
        for pos in (lo..hi).rev() {
            let i = rank(pos);
            match a.exps[i].cmp(&b.exps[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// Exponent vector with cached weighted degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    wdeg: u64,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn wdeg(&self) -> u64 {
        self.wdeg
    }

    pub fn is_unit(&self) -> bool {
        self.wdeg == 0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn mul(&self, rhs: &Monomial) -> Result<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(rhs.exps.iter()) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial {
            wdeg: self
                .wdeg
                .checked_add(rhs.wdeg)
                .ok_or(Error::ExponentOverflow)?,
            exps: exps.into_boxed_slice(),
        })
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.wdeg <= rhs.wdeg && self.exps.iter().zip(rhs.exps.iter()).all(|(a, b)| a <= b)
    }

    /// rhs / self, assuming divisibility.
    pub fn div_into(&self, rhs: &Monomial) -> Monomial {
        let exps: Vec<u32> = rhs
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Monomial {
            wdeg: rhs.wdeg - self.wdeg,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn lcm(&self, rhs: &Monomial, weights: &[u64]) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(rhs.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let wdeg = exps
            .iter()
            .zip(weights)
            .map(|(e, w)| *e as u64 * *w)
            .sum();
        Monomial {
            wdeg,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn is_coprime_with(&self, rhs: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(rhs.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every variable with positive exponent lies in `vars`.
    pub fn supported_on(&self, vars: &[bool]) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || vars[i])
    }
}
