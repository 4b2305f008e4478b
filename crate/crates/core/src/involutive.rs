//! Finite posets with an antitone involution, their morphisms, and the
//! four-element object D whose powers are the duals of free algebras.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::{canonical_form, check_total, enumerate_posets_upto, map_from_names, MonotoneMap, Poset};
use crate::search::MapSearch;

/// A finite poset with an order-reversing involution.
#[derive(Clone, PartialEq, Eq)]
pub struct InvPoset {
    base: Poset,
    inv: Vec<usize>,
    kleene: bool,
}

impl InvPoset {
    pub fn new(base: Poset, inv: Vec<usize>) -> Result<Self> {
        if inv.len() < base.len() {
            return Err(Error::NotTotal(base.name(inv.len()).into()));
        }
        if let Some(x) = inv.iter().position(|&v| v >= base.len()) {
            return Err(Error::OutsideCodomain { element: base.name(x).into() });
        }
        if let Some(x) = base.elements().find(|&x| inv[inv[x]] != x) {
            return Err(Error::NotInvolutive(base.name(x).into()));
        }
        if let Some((a, b)) = base.relation().into_iter().find(|&(a, b)| !base.le(inv[b], inv[a])) {
            return Err(Error::NotAntitone { lower: base.name(a).into(), upper: base.name(b).into() });
        }
        let kleene = base.elements().all(|x| base.comparable(x, inv[x]));
        Ok(InvPoset { base, inv, kleene })
    }

    /// Builds the involution from `(x, inv(x))` name pairs.
    pub fn from_names(base: Poset, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut inv = vec![usize::MAX; base.len()];
        for (a, b) in pairs {
            inv[base.lookup(a)?] = base.lookup(b)?;
        }
        if let Some(x) = inv.iter().position(|&v| v == usize::MAX) {
            return Err(Error::NotTotal(base.name(x).into()));
        }
        InvPoset::new(base, inv)
    }

    pub(crate) fn new_unchecked(base: Poset, inv: Vec<usize>) -> Self {
        let kleene = base.elements().all(|x| base.comparable(x, inv[x]));
        let p = InvPoset { base, inv, kleene };
        debug_assert!(InvPoset::new(p.base.clone(), p.inv.clone()).is_ok());
        p
    }

    pub fn empty() -> Self {
        InvPoset { base: Poset::empty(), inv: Vec::new(), kleene: true }
    }

    /// The one-element object, its point fixed.
    pub fn point(name: &str) -> Self {
        InvPoset::new_unchecked(Poset::antichain(&[name]), vec![0])
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn inv(&self) -> &[usize] {
        &self.inv
    }

    #[inline]
    pub fn i(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Every element is comparable with its image.
    pub fn is_kleene(&self) -> bool {
        self.kleene
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.base.le(a, b)
    }

    pub fn name(&self, x: usize) -> &str {
        self.base.name(x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.base.elements()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.inv[x] == x).collect()
    }

    /// Elements below their image, `x <= i(x)`.
    pub fn lower_half(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.le(x, self.inv[x])).collect()
    }

    /// The substructure on an involution-closed selection, kept in the order given.
    pub fn induced(&self, sel: &[usize]) -> Result<InvPoset> {
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &x) in sel.iter().enumerate() {
            pos[x] = k;
        }
        let inv = sel
            .iter()
            .map(|&x| match pos[self.inv[x]] {
                usize::MAX => Err(Error::Precondition(format!("selection not closed under inv at `{}`", self.name(x)))),
                k => Ok(k),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InvPoset::new_unchecked(self.base.induced(sel), inv))
    }

    /// The same structure under a different order relation on the same carrier.
    pub(crate) fn with_base(&self, base: Poset) -> Result<InvPoset> {
        InvPoset::new(base, self.inv.clone())
    }

    pub fn renamed(&self, names: Vec<String>) -> InvPoset {
        InvPoset::new_unchecked(self.base.renamed(names), self.inv.clone())
    }
}

impl fmt::Debug for InvPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv: Vec<_> = self.elements().map(|x| format!("{}->{}", self.name(x), self.name(self.i(x)))).collect();
        f.debug_struct("InvPoset").field("base", &self.base).field("inv", &inv).finish()
    }
}

/// D: elements 2, 0, 1, 3 ordered `2 <= 0, 1 <= 3`; the involution fixes 0 and 1 and swaps 2 and 3.
pub fn diamond() -> InvPoset {
    let base = Poset::from_covers(&["2", "0", "1", "3"], &[("2", "0"), ("2", "1"), ("0", "3"), ("1", "3")])
        .expect("valid order");
    InvPoset::new(base, vec![3, 1, 2, 0]).expect("valid involution")
}

/// Coordinatewise product. Names concatenate when both factors use digit strings
/// of uniform length, and are written `(p,q)` otherwise.
pub fn product(p: &InvPoset, q: &InvPoset) -> InvPoset {
    let (n, m) = (p.len(), q.len());
    let concat = digit_names(p.base()) && digit_names(q.base());
    let names = (0..n * m)
        .map(|k| {
            let (a, b) = (p.name(k / m), q.name(k % m));
            if concat { format!("{a}{b}") } else { format!("({a},{b})") }
        })
        .collect();
    let base = Poset::from_fn(names, |x, y| p.le(x / m, y / m) && q.le(x % m, y % m));
    let inv = (0..n * m).map(|k| p.i(k / m) * m + q.i(k % m)).collect();
    InvPoset::new_unchecked(base, inv)
}

fn digit_names(p: &Poset) -> bool {
    let len = p.names().first().map_or(0, String::len);
    len > 0 && p.names().iter().all(|s| s.len() == len && s.bytes().all(|c| c.is_ascii_digit()))
}

/// The `n`-fold product; the empty product is a single fixed point.
pub fn power(p: &InvPoset, n: usize) -> InvPoset {
    match n {
        0 => InvPoset::point("()"),
        _ => (1..n).fold(p.clone(), |acc, _| product(&acc, p)),
    }
}

/// The largest substructure in which every element is comparable with its image.
pub fn kleene_part(p: &InvPoset) -> InvPoset {
    let sel: Vec<_> = p.elements().filter(|&x| p.base().comparable(x, p.i(x))).collect();
    p.induced(&sel).expect("comparability with the image is symmetric under inv")
}

/// A monotone map commuting with the involutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvMorphism {
    dom: InvPoset,
    cod: InvPoset,
    map: Vec<usize>,
}

impl InvMorphism {
    pub fn new(dom: &InvPoset, cod: &InvPoset, map: Vec<usize>) -> Result<Self> {
        check_total(dom.base(), cod.base(), &map)?;
        if let Some(x) = dom.elements().find(|&x| map[dom.i(x)] != cod.i(map[x])) {
            return Err(Error::InvolutionNotPreserved(dom.name(x).into()));
        }
        MonotoneMap::new(dom.base(), cod.base(), map.clone())?;
        Ok(InvMorphism { dom: dom.clone(), cod: cod.clone(), map })
    }

    pub fn from_names(dom: &InvPoset, cod: &InvPoset, pairs: &[(&str, &str)]) -> Result<Self> {
        let map = map_from_names(dom.base(), cod.base(), pairs)?;
        InvMorphism::new(dom, cod, map)
    }

    pub fn identity(p: &InvPoset) -> Self {
        InvMorphism { dom: p.clone(), cod: p.clone(), map: p.elements().collect() }
    }

    pub fn dom(&self) -> &InvPoset {
        &self.dom
    }

    pub fn cod(&self) -> &InvPoset {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &InvMorphism) -> Result<InvMorphism> {
        if self.cod != next.dom {
            return Err(Error::Precondition("composed maps do not meet".into()));
        }
        let map = self.map.iter().map(|&x| next.map[x]).collect();
        Ok(InvMorphism { dom: self.dom.clone(), cod: next.cod.clone(), map })
    }

    pub fn as_monotone(&self) -> MonotoneMap {
        MonotoneMap::new_unchecked(self.dom.base(), self.cod.base(), self.map.clone())
    }
}

/// Every morphism `p -> q`, each once, in a deterministic order.
pub fn enumerate_inv_morphisms(p: &InvPoset, q: &InvPoset) -> impl Iterator<Item = InvMorphism> {
    let (p, q) = (p.clone(), q.clone());
    MapSearch::new(p.base(), q.base(), Some((p.inv(), q.inv())), None)
        .map(move |map| InvMorphism { dom: p.clone(), cod: q.clone(), map })
}

/// Every antitone involution of `p`.
pub fn antitone_involutions(p: &Poset) -> Vec<Vec<usize>> {
    MapSearch::new(p, &p.dual(), None, None)
        .filter(|f| p.elements().all(|x| f[f[x]] == x))
        .collect()
}

/// One involutive poset per isomorphism class with at most `k` elements.
pub fn enumerate_inv_posets_upto(k: usize) -> impl Iterator<Item = InvPoset> {
    let mut out = Vec::new();
    for p in enumerate_posets_upto(k) {
        let mut seen = HashSet::new();
        for inv in antitone_involutions(&p) {
            if seen.insert(canonical_form(&p, Some(&inv)).code) {
                out.push(InvPoset::new_unchecked(p.clone(), inv));
            }
        }
    }
    out.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_pair() -> InvPoset {
        InvPoset::new(Poset::antichain(&["a", "b"]), vec![1, 0]).unwrap()
    }

    #[test]
    fn diamond_facts() {
        let d = diamond();
        assert!(d.is_kleene());
        assert_eq!(d.fixed_points().iter().map(|&x| d.name(x)).collect::<Vec<_>>(), ["0", "1"]);
        assert!(crate::order::lattice_report(d.base()).is_nonempty_lattice);
    }

    #[test]
    fn validation_examples() {
        assert!(!swap_pair().is_kleene());
        let c2 = Poset::chain(&["a", "b"]);
        assert_eq!(
            InvPoset::new(c2.clone(), vec![0, 1]).unwrap_err(),
            Error::NotAntitone { lower: "a".into(), upper: "b".into() }
        );
        let a3 = Poset::antichain(&["a", "b", "c"]);
        assert_eq!(InvPoset::new(a3, vec![1, 2, 0]).unwrap_err(), Error::NotInvolutive("a".into()));
    }

    #[test]
    fn powers_of_diamond() {
        let d = diamond();
        assert_eq!(power(&d, 1), d);
        let d2 = power(&d, 2);
        assert_eq!(d2.len(), 16);
        assert_eq!(d2.name(0), "22");
        assert_eq!(d2.fixed_points().len(), 4);
        let d3 = power(&d, 3);
        assert_eq!((d3.len(), d3.fixed_points().len()), (64, 8));
        let pt = InvPoset::point("p");
        assert_eq!(product(&pt, &pt).len(), 1);
        assert_eq!(product(&pt, &pt).fixed_points().len(), 1);
    }

    #[test]
    fn kleene_parts() {
        let d = diamond();
        let k2 = kleene_part(&power(&d, 2));
        assert_eq!(k2.len(), 14);
        assert!(k2.is_kleene());
        let all: HashSet<_> = power(&d, 2).base().names().iter().cloned().collect();
        let kept: HashSet<_> = k2.base().names().iter().cloned().collect();
        let mut removed: Vec<_> = all.difference(&kept).cloned().collect();
        removed.sort();
        assert_eq!(removed, ["23", "32"]);
        assert_eq!(kleene_part(&d), d);
        assert!(kleene_part(&swap_pair()).is_empty());
    }

    #[test]
    fn morphism_validation() {
        let d = diamond();
        assert!(InvMorphism::new(&d, &d, vec![0, 1, 2, 3]).is_ok());
        let pt = InvPoset::point("p");
        assert!(InvMorphism::new(&d, &pt, vec![0; 4]).is_ok());
        let err = InvMorphism::from_names(&d, &d, &[("2", "0"), ("0", "0"), ("1", "1"), ("3", "3")]).unwrap_err();
        assert_eq!(err, Error::InvolutionNotPreserved("2".into()));
    }

    #[test]
    fn morphism_enumeration() {
        let d = diamond();
        let pt = InvPoset::point("p");
        let to: Vec<_> = enumerate_inv_morphisms(&pt, &d).map(|f| d.name(f.apply(0)).to_string()).collect();
        assert_eq!(to, ["0", "1"]);
        assert_eq!(enumerate_inv_morphisms(&d, &pt).count(), 1);
        // a -> v forces b -> i(v); every v works on an antichain
        let maps: Vec<_> = enumerate_inv_morphisms(&swap_pair(), &d).map(|f| f.map().to_vec()).collect();
        let mut brute = Vec::new();
        for code in 0..16 {
            let map = vec![code / 4, code % 4];
            if InvMorphism::new(&swap_pair(), &d, map.clone()).is_ok() {
                brute.push(map);
            }
        }
        let mut sorted = maps.clone();
        sorted.sort();
        assert_eq!(sorted, brute);
        assert_eq!(maps.len(), 4);
    }

    #[test]
    fn corpus_counts_are_stable() {
        let mut by_size = [0usize; 5];
        for p in enumerate_inv_posets_upto(4) {
            by_size[p.len()] += 1;
        }
        assert_eq!(by_size[0], 1);
        assert_eq!(by_size[1], 1);
        assert_eq!(by_size[2], 3);
    }
}
