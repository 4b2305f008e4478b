use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::involutive::{enumerate_inv_morphisms, enumerate_inv_posets_upto};
use crate::order::{enumerate_monotone_maps, enumerate_posets_upto, lattice_report};
use crate::projectivity::{is_projective_inv, Structure, Variety};
use crate::search::MapSearch;

use super::Unifier;

/// Largest domain size accepted by [`enumerate_unifiers_bounded`].
pub const UNIFIER_BOUND_LIMIT: usize = 5;

/// Whether `u1` is at least as general as `u2`: some morphism `g` from the
/// domain of `u2` to the domain of `u1` has `u1 ∘ g = u2`.
pub fn more_general(u1: &Unifier, u2: &Unifier) -> Result<bool> {
    if u1.codomain() != u2.codomain() {
        return Err(Error::Precondition("unifiers compared must share their codomain".into()));
    }
    let (d1, d2) = (u1.domain(), u2.domain());
    let m = d1.base().len();
    let allowed = u2
        .map()
        .iter()
        .map(|&v| Bits::from_iter(m, (0..m).filter(|&s| u1.map()[s] == v)))
        .collect();
    let inv = match (&d2, &d1) {
        (Structure::Involutive(a), Structure::Involutive(b)) => Some((a.inv(), b.inv())),
        (Structure::Plain(_), Structure::Plain(_)) => None,
        _ => return Err(Error::VarietyMismatch("unifiers of different kinds".into())),
    };
    Ok(MapSearch::new(d2.base(), d1.base(), inv, Some(allowed)).next().is_some())
}

/// Duals of projective algebras with at most `k` elements, one per isomorphism class.
pub fn projective_domains(variety: Variety, k: usize) -> Result<Vec<Structure>> {
    if k > UNIFIER_BOUND_LIMIT {
        return Err(Error::SizeGuard { what: "domain size bound", got: k, limit: UNIFIER_BOUND_LIMIT });
    }
    static CACHE: OnceLock<Mutex<HashMap<(Variety, usize), Vec<Structure>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache").get(&(variety, k)) {
        return Ok(v.clone());
    }
    let domains: Vec<Structure> = match variety {
        Variety::Bdl => enumerate_posets_upto(k)
            .filter(|p| lattice_report(p).is_nonempty_lattice)
            .map(Structure::Plain)
            .collect(),
        Variety::Kleene => enumerate_inv_posets_upto(k)
            .filter(|p| p.is_kleene() && is_projective_inv(p, variety))
            .map(Structure::Involutive)
            .collect(),
        Variety::DeMorgan => enumerate_inv_posets_upto(k)
            .filter(|p| is_projective_inv(p, variety))
            .map(Structure::Involutive)
            .collect(),
    };
    cache.lock().expect("cache").insert((variety, k), domains.clone());
    Ok(domains)
}

/// Every unifier into `s` whose domain has at most `k` elements, up to
/// isomorphism of the domain.
pub fn enumerate_unifiers_bounded(s: &Structure, variety: Variety, k: usize) -> Result<impl Iterator<Item = Unifier>> {
    s.expect(variety)?;
    let domains = projective_domains(variety, k)?;
    let target = s.clone();
    Ok(domains.into_iter().flat_map(move |d| -> Box<dyn Iterator<Item = Unifier>> {
        match (d, &target) {
            (Structure::Plain(p), Structure::Plain(q)) => Box::new(enumerate_monotone_maps(&p, q).map(Unifier::Plain)),
            (Structure::Involutive(p), Structure::Involutive(q)) => {
                Box::new(enumerate_inv_morphisms(&p, q).map(Unifier::Involutive))
            }
            _ => Box::new(std::iter::empty()),
        }
    }))
}
