//! Groebner basis engine: Buchberger with pair criteria, elimination,
//! dimension and degree of zero-dimensional schemes, ideal quotients, and
//! exact solving of zero-dimensional systems over a declared number field.

pub mod buchberger;
pub mod hilbert;
pub mod ops;
pub mod solve;
pub mod univariate;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::multipoly::{MonomialOrder, Polynomial, PolyRing};

pub use solve::{PointSet, SolveReport};

/// Cooperative cancellation: long computations poll this between reduction
/// steps and bail out with `Error::DeadlineExceeded`.
#[derive(Clone, Debug)]
pub struct Deadline {
    expires: Option<Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Deadline { expires: None }
    }

    pub fn after(d: Duration) -> Self {
        Deadline {
            expires: Some(Instant::now() + d),
        }
    }

    pub fn after_secs(secs: f64) -> Self {
        Deadline::after(Duration::from_secs_f64(secs))
    }

    pub fn check(&self, what: &str) -> Result<()> {
        if let Some(t) = self.expires {
            if Instant::now() > t {
                return Err(Error::DeadlineExceeded(what.to_string()));
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct IdealInner {
    ring: PolyRing,
    gens: Vec<Polynomial>,
    gb_cache: Mutex<HashMap<String, Arc<Vec<Polynomial>>>>,
}

/// An ideal given by generators, with cached reduced Groebner bases keyed by
/// monomial order. Values are immutable; clones share the cache.
#[derive(Clone, Debug)]
pub struct Ideal(Arc<IdealInner>);

impl Ideal {
    /// Zero generators are dropped; an empty list yields the zero ideal.
    pub fn new(ring: &PolyRing, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring.describe(),
                    right: g.ring().describe(),
                });
            }
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal(Arc::new(IdealInner {
            ring: ring.clone(),
            gens,
            gb_cache: Mutex::new(HashMap::new()),
        })))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.0.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.0.gens
    }

    /// Reduced Groebner basis under the ring's own order.
    pub fn groebner_basis(&self, deadline: &Deadline) -> Result<Arc<Vec<Polynomial>>> {
        self.groebner_basis_ordered(&self.0.ring.order().clone(), deadline)
    }

    /// Reduced Groebner basis under an arbitrary order. The returned
    /// polynomials live in a ring equal to this ideal's ring except for the
    /// order, so their term sequences reflect `order`.
    pub fn groebner_basis_ordered(
        &self,
        order: &MonomialOrder,
        deadline: &Deadline,
    ) -> Result<Arc<Vec<Polynomial>>> {
        let key = order.cache_key();
        if let Some(hit) = self.0.gb_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let basis = buchberger::reduced_groebner_basis(&self.0.ring, &self.0.gens, order, deadline)?;
        let arc = Arc::new(basis);
        let mut cache = self.0.gb_cache.lock().unwrap();
        // First write wins so concurrent computations agree on one value.
        Ok(cache.entry(key).or_insert(arc).clone())
    }

    /// Ideal membership via normal form against the reduced basis.
    pub fn contains(&self, f: &Polynomial, deadline: &Deadline) -> Result<bool> {
        let gb = self.groebner_basis(deadline)?;
        if gb.is_empty() {
            return Ok(f.is_zero());
        }
        let g = f.map_vars(gb[0].ring(), &identity_assign(self.ring()))?;
        Ok(buchberger::normal_form(&g, &gb, deadline)?.is_zero())
    }

    pub fn is_unit(&self, deadline: &Deadline) -> Result<bool> {
        let gb = self.groebner_basis(deadline)?;
        Ok(gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.gens.is_empty()
    }

    /// Two ideals are equal iff their reduced bases coincide.
    pub fn equals(&self, other: &Ideal, deadline: &Deadline) -> Result<bool> {
        if self.ring() != other.ring() {
            return Ok(false);
        }
        let a = self.groebner_basis(deadline)?;
        let b = other.groebner_basis(deadline)?;
        Ok(*a == *b)
    }
}

/// The identity variable assignment for `map_vars` between rings that differ
/// only in monomial order.
pub(crate) fn identity_assign(ring: &PolyRing) -> Vec<Option<usize>> {
    (0..ring.nvars()).map(Some).collect()
}

/// Rebuild polynomials in a ring identical except for the order.
pub(crate) fn with_order(
    ring: &PolyRing,
    polys: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(PolyRing, Vec<Polynomial>)> {
    if ring.order() == order {
        return Ok((ring.clone(), polys.to_vec()));
    }
    let target = ring.with_order(order.clone())?;
    let assign = identity_assign(ring);
    let moved = polys
        .iter()
        .map(|p| p.map_vars(&target, &assign))
        .collect::<Result<Vec<_>>>()?;
    Ok((target, moved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::NumberField;

    fn ring2() -> PolyRing {
        PolyRing::new(
            NumberField::rationals(),
            vec!["x".into(), "y".into()],
            None,
            MonomialOrder::grevlex(),
        )
        .unwrap()
    }

    #[test]
    fn cache_returns_same_basis_object() {
        let r = ring2();
        let i = Ideal::new(&r, vec![r.parse("x^2+y").unwrap(), r.parse("x*y").unwrap()]).unwrap();
        let a = i.groebner_basis(&Deadline::none()).unwrap();
        let b = i.groebner_basis(&Deadline::none()).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn deadline_already_expired_is_reported() {
        let r = ring2();
        let i = Ideal::new(&r, vec![r.parse("x^3-y").unwrap(), r.parse("x*y-1").unwrap()]).unwrap();
        let d = Deadline::after(Duration::from_secs(0));
        std::thread::sleep(Duration::from_millis(5));
        let err = i.groebner_basis(&d).unwrap_err();
        assert!(err.is_deadline());
    }

    #[test]
    fn membership_and_unit_detection() {
        let r = ring2();
        let d = Deadline::none();
        let i = Ideal::new(&r, vec![r.parse("x-y").unwrap()]).unwrap();
        assert!(i.contains(&r.parse("x^2-y^2").unwrap(), &d).unwrap());
        assert!(!i.contains(&r.parse("x+y").unwrap(), &d).unwrap());
        let u = Ideal::new(&r, vec![r.parse("x").unwrap(), r.parse("x-1").unwrap()]).unwrap();
        assert!(u.is_unit(&d).unwrap());
    }
}
