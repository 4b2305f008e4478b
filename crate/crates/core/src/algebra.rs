//! Finite bounded distributive lattices, optionally with a De Morgan negation.

use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::order::{check_total, lattice_report, map_from_names, Poset};
use crate::search::MapSearch;

/// Varieties an algebra belongs to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VarietyTags {
    pub bounded_distributive: bool,
    pub de_morgan: bool,
    pub kleene: bool,
    pub boolean: bool,
}

/// A finite bounded distributive lattice given by its order, with an optional negation.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    carrier: Poset,
    neg: Option<Vec<usize>>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    tags: VarietyTags,
}

impl FiniteAlgebra {
    pub fn new(carrier: Poset, neg: Option<Vec<usize>>) -> Result<Self> {
        let n = carrier.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let report = lattice_report(&carrier);
        if let Some((a, b)) = report.witness {
            return Err(Error::NotALattice(carrier.name(a).into(), carrier.name(b).into()));
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = carrier.join(a, b).expect("lattice");
                meet[a * n + b] = carrier.meet(a, b).expect("lattice");
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if meet[a * n + join[b * n + c]] != join[meet[a * n + b] * n + meet[a * n + c]] {
                        let name = |x: usize| carrier.name(x).to_string();
                        return Err(Error::NotDistributive(name(a), name(b), name(c)));
                    }
                }
            }
        }
        if let Some(neg) = &neg {
            check_total(&carrier, &carrier, neg)?;
            if let Some(a) = carrier.elements().find(|&a| neg[neg[a]] != a) {
                return Err(Error::NotInvolutive(carrier.name(a).into()));
            }
            if let Some((a, b)) = carrier.relation().into_iter().find(|&(a, b)| !carrier.le(neg[b], neg[a])) {
                return Err(Error::NotAntitone { lower: carrier.name(a).into(), upper: carrier.name(b).into() });
            }
        }
        let bottom = carrier.bottom().expect("lattice");
        let top = carrier.top().expect("lattice");
        let mut alg = FiniteAlgebra { carrier, neg, join, meet, bottom, top, tags: VarietyTags::default() };
        alg.tags = alg.compute_tags();
        Ok(alg)
    }

    /// Builds the negation from `(a, a')` name pairs.
    pub fn from_names(carrier: Poset, neg: Option<&[(&str, &str)]>) -> Result<Self> {
        let neg = neg.map(|pairs| map_from_names(&carrier, &carrier, pairs)).transpose()?;
        FiniteAlgebra::new(carrier, neg)
    }

    /// The two-element Boolean algebra `0 < 1`.
    pub fn two() -> Self {
        FiniteAlgebra::new(Poset::chain(&["0", "1"]), Some(vec![1, 0])).expect("valid")
    }

    fn compute_tags(&self) -> VarietyTags {
        let mut tags = VarietyTags { bounded_distributive: true, ..VarietyTags::default() };
        if let Some(neg) = &self.neg {
            tags.de_morgan = true;
            let low: Vec<usize> = self.elements().map(|a| self.meet(a, neg[a])).collect();
            let high: Vec<usize> = self.elements().map(|a| self.join(a, neg[a])).collect();
            tags.kleene = low.iter().all(|&l| high.iter().all(|&h| self.carrier.le(l, h)));
            tags.boolean = tags.kleene && low.iter().all(|&l| l == self.bottom);
        }
        tags
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.carrier.elements()
    }

    pub fn name(&self, a: usize) -> &str {
        self.carrier.name(a)
    }

    pub fn neg(&self) -> Option<&[usize]> {
        self.neg.as_deref()
    }

    pub fn tags(&self) -> VarietyTags {
        self.tags
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.carrier.le(a, b)
    }

    /// The lattice reduct.
    pub fn without_neg(&self) -> FiniteAlgebra {
        let mut a = self.clone();
        a.neg = None;
        a.tags = a.compute_tags();
        a
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("carrier", &self.carrier)
            .field("neg", &self.neg)
            .field("tags", &self.tags)
            .finish()
    }
}

/// A map preserving meet, join, the bounds, and the negation when both sides have one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    dom: FiniteAlgebra,
    cod: FiniteAlgebra,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: Vec<usize>) -> Result<Self> {
        check_total(dom.carrier(), cod.carrier(), &map)?;
        let name = |a: usize| dom.name(a).to_string();
        if map[dom.bottom()] != cod.bottom() {
            return Err(Error::OperationNotPreserved { op: "0", args: vec![] });
        }
        if map[dom.top()] != cod.top() {
            return Err(Error::OperationNotPreserved { op: "1", args: vec![] });
        }
        for a in dom.elements() {
            for b in dom.elements() {
                if map[dom.meet(a, b)] != cod.meet(map[a], map[b]) {
                    return Err(Error::OperationNotPreserved { op: "meet", args: vec![name(a), name(b)] });
                }
                if map[dom.join(a, b)] != cod.join(map[a], map[b]) {
                    return Err(Error::OperationNotPreserved { op: "join", args: vec![name(a), name(b)] });
                }
            }
        }
        if let (Some(dn), Some(cn)) = (dom.neg(), cod.neg()) {
            if let Some(a) = dom.elements().find(|&a| map[dn[a]] != cn[map[a]]) {
                return Err(Error::OperationNotPreserved { op: "neg", args: vec![name(a)] });
            }
        }
        Ok(Homomorphism { dom: dom.clone(), cod: cod.clone(), map })
    }

    pub fn from_names(dom: &FiniteAlgebra, cod: &FiniteAlgebra, pairs: &[(&str, &str)]) -> Result<Self> {
        Homomorphism::new(dom, cod, map_from_names(dom.carrier(), cod.carrier(), pairs)?)
    }

    pub fn identity(a: &FiniteAlgebra) -> Self {
        Homomorphism { dom: a.clone(), cod: a.clone(), map: a.elements().collect() }
    }

    pub(crate) fn new_unchecked(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: Vec<usize>) -> Self {
        debug_assert!(Homomorphism::new(dom, cod, map.clone()).is_ok());
        Homomorphism { dom: dom.clone(), cod: cod.clone(), map }
    }

    pub fn dom(&self) -> &FiniteAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteAlgebra {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if self.cod != next.dom {
            return Err(Error::Precondition("composed maps do not meet".into()));
        }
        let map = self.map.iter().map(|&a| next.map[a]).collect();
        Ok(Homomorphism { dom: self.dom.clone(), cod: next.cod.clone(), map })
    }
}

/// Every homomorphism `a -> b`.
pub fn enumerate_homomorphisms(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Homomorphism> {
    let mut allowed = vec![Bits::full(b.len()); a.len()];
    allowed[a.bottom()] = Bits::from_iter(b.len(), [b.bottom()]);
    allowed[a.top()] = Bits::from_iter(b.len(), [b.top()]);
    if a.bottom() == a.top() && b.bottom() != b.top() {
        return Vec::new();
    }
    let inv = a.neg().zip(b.neg());
    MapSearch::new(a.carrier(), b.carrier(), inv, Some(allowed))
        .filter_map(|map| Homomorphism::new(a, b, map).ok())
        .collect()
}
