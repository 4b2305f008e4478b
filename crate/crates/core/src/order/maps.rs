use super::Poset;
use crate::error::{Error, Result};
use crate::search::MapSearch;

/// An order-preserving map between posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    dom: Poset,
    cod: Poset,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: &Poset, cod: &Poset, map: Vec<usize>) -> Result<Self> {
        check_total(dom, cod, &map)?;
        for (a, b) in dom.relation() {
            if !cod.le(map[a], map[b]) {
                return Err(Error::NotMonotone { lower: dom.name(a).into(), upper: dom.name(b).into() });
            }
        }
        Ok(MonotoneMap { dom: dom.clone(), cod: cod.clone(), map })
    }

    /// Builds a map from `(source, target)` name pairs.
    pub fn from_names(dom: &Poset, cod: &Poset, pairs: &[(&str, &str)]) -> Result<Self> {
        MonotoneMap::new(dom, cod, map_from_names(dom, cod, pairs)?)
    }

    pub fn identity(p: &Poset) -> Self {
        MonotoneMap { dom: p.clone(), cod: p.clone(), map: p.elements().collect() }
    }

    pub(crate) fn new_unchecked(dom: &Poset, cod: &Poset, map: Vec<usize>) -> Self {
        debug_assert!(MonotoneMap::new(dom, cod, map.clone()).is_ok());
        MonotoneMap { dom: dom.clone(), cod: cod.clone(), map }
    }

    pub fn dom(&self) -> &Poset {
        &self.dom
    }

    pub fn cod(&self) -> &Poset {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        if self.cod != next.dom {
            return Err(Error::Precondition("composed maps do not meet".into()));
        }
        Ok(MonotoneMap {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }
}

pub(crate) fn check_total(dom: &Poset, cod: &Poset, map: &[usize]) -> Result<()> {
    if map.len() < dom.len() {
        return Err(Error::NotTotal(dom.name(map.len()).into()));
    }
    if map.len() > dom.len() {
        return Err(Error::Precondition("map has more entries than its domain".into()));
    }
    match map.iter().position(|&v| v >= cod.len()) {
        Some(x) => Err(Error::OutsideCodomain { element: dom.name(x).into() }),
        None => Ok(()),
    }
}

pub(crate) fn map_from_names(dom: &Poset, cod: &Poset, pairs: &[(&str, &str)]) -> Result<Vec<usize>> {
    let mut map = vec![usize::MAX; dom.len()];
    for (a, b) in pairs {
        map[dom.lookup(a)?] = cod.lookup(b)?;
    }
    match map.iter().position(|&v| v == usize::MAX) {
        Some(x) => Err(Error::NotTotal(dom.name(x).into())),
        None => Ok(map),
    }
}

/// Every monotone map `p -> q`, each once.
pub fn enumerate_monotone_maps(p: &Poset, q: &Poset) -> impl Iterator<Item = MonotoneMap> {
    let (p, q) = (p.clone(), q.clone());
    MapSearch::new(&p, &q, None, None).map(move |map| MonotoneMap { dom: p.clone(), cod: q.clone(), map })
}
