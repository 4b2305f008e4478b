//! Projectivity of finite algebras decided on their duals: the conditions
//! M1–M3 and K1–K2, the embedding of an involutive poset into a power of D,
//! the retractions built from the conditions, and exhaustive retraction oracles.

use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::involutive::{diamond, kleene_part, power, InvMorphism, InvPoset};
use crate::order::{is_three_complete, lattice_report, three_complete_in_lattice, MonotoneMap, Poset};
use crate::search::MapSearch;

/// The varieties handled throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variety {
    /// Bounded distributive lattices.
    Bdl,
    Kleene,
    DeMorgan,
}

impl Variety {
    pub fn tag(self) -> &'static str {
        match self {
            Variety::Bdl => "bdl",
            Variety::Kleene => "kleene",
            Variety::DeMorgan => "dm",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A dual object: a plain poset for lattices, an involutive poset otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Plain(Poset),
    Involutive(InvPoset),
}

impl Structure {
    pub fn base(&self) -> &Poset {
        match self {
            Structure::Plain(p) => p,
            Structure::Involutive(p) => p.base(),
        }
    }

    /// Checks that the structure is the right kind of dual for `variety`.
    pub fn expect(&self, variety: Variety) -> Result<()> {
        match (self, variety) {
            (Structure::Plain(_), Variety::Bdl) => Ok(()),
            (Structure::Involutive(p), Variety::Kleene) if !p.is_kleene() => {
                Err(Error::VarietyMismatch("kleene requires every element to be comparable with its image".into()))
            }
            (Structure::Involutive(_), Variety::Kleene | Variety::DeMorgan) => Ok(()),
            (Structure::Plain(_), v) => Err(Error::VarietyMismatch(format!("{v} requires an involutive poset"))),
            (Structure::Involutive(_), _) => Err(Error::VarietyMismatch("bdl requires a plain poset".into())),
        }
    }
}

/// Outcome of one condition. A failure carries the elements violating it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Vec<usize>),
    NotApplicable,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    fn from_option(w: Option<Vec<usize>>) -> Verdict {
        w.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// The five conditions with their witnesses.
///
/// M1: nonempty lattice, witness a pair without join or meet (empty when the poset is empty).
/// M2: every `x ≤ i(x)` lies below a fixed point, witness `x`.
/// M3: `{x ≤ i(x)}` is 3-complete, witness the set without a supremum.
/// K1: `{x ≤ i(x)}` is a nonempty meet semilattice, witness a pair without meet.
/// K2: any `x, y ≤ i(x), i(y)` have an upper bound in `{x ≤ i(x)}`, witness the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub m1: Verdict,
    pub m2: Verdict,
    pub m3: Verdict,
    pub k1: Verdict,
    pub k2: Verdict,
}

impl ConditionReport {
    pub fn entries(&self) -> [(&'static str, &Verdict); 5] {
        [("M1", &self.m1), ("M2", &self.m2), ("M3", &self.m3), ("K1", &self.k1), ("K2", &self.k2)]
    }
}

fn m1(p: &Poset) -> Verdict {
    let report = lattice_report(p);
    match (report.is_nonempty_lattice, report.witness) {
        (true, _) => Verdict::Holds,
        (false, Some((a, b))) => Verdict::Fails(vec![a, b]),
        (false, None) => Verdict::Fails(Vec::new()),
    }
}

/// The condition report of an involutive poset.
pub fn condition_report(p: &InvPoset) -> ConditionReport {
    let base = p.base();
    let s = p.lower_half();
    let sub = base.induced(&s);
    let fixed = p.fixed_points();

    let m2 = s.iter().copied().find(|&x| !fixed.iter().any(|&y| base.le(x, y))).map(|x| vec![x]);

    let m3 = is_three_complete(&sub).counterexample.map(|xs| xs.into_iter().map(|x| s[x]).collect());

    let k1 = if s.is_empty() {
        Verdict::Fails(Vec::new())
    } else {
        Verdict::from_option(lattice_report(&sub).meet_witness.map(|(a, b)| vec![s[a], s[b]]))
    };

    let mut k2 = None;
    'pairs: for (i, &x) in s.iter().enumerate() {
        for &y in &s[i + 1..] {
            if base.le(x, p.i(y)) && !s.iter().any(|&z| base.le(x, z) && base.le(y, z)) {
                k2 = Some(vec![x, y]);
                break 'pairs;
            }
        }
    }

    ConditionReport {
        m1: m1(base),
        m2: Verdict::from_option(m2),
        m3: Verdict::from_option(m3),
        k1,
        k2: Verdict::from_option(k2),
    }
}

/// The report for a plain poset: only M1 applies.
pub fn poset_report(p: &Poset) -> ConditionReport {
    ConditionReport {
        m1: m1(p),
        m2: Verdict::NotApplicable,
        m3: Verdict::NotApplicable,
        k1: Verdict::NotApplicable,
        k2: Verdict::NotApplicable,
    }
}

/// M3 through the triple-wise check, available when the base is a lattice.
pub fn m3_in_lattice(p: &InvPoset) -> Option<Verdict> {
    three_complete_in_lattice(p.base(), &p.lower_half()).map(|t| Verdict::from_option(t.counterexample))
}

/// A projectivity decision with the report behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    pub projective: bool,
    pub report: ConditionReport,
}

/// Whether `s` is the dual of a projective algebra of `variety`.
pub fn is_projective_dual(s: &Structure, variety: Variety) -> Result<Projectivity> {
    s.expect(variety)?;
    let report = match s {
        Structure::Plain(p) => poset_report(p),
        Structure::Involutive(p) => condition_report(p),
    };
    let projective = decide(&report, variety);
    Ok(Projectivity { projective, report })
}

pub(crate) fn decide(r: &ConditionReport, variety: Variety) -> bool {
    match variety {
        Variety::Bdl => r.m1.holds(),
        Variety::DeMorgan => r.m1.holds() && r.m2.holds() && r.m3.holds(),
        Variety::Kleene => r.m2.holds() && r.m3.holds() && r.k1.holds() && r.k2.holds(),
    }
}

pub(crate) fn is_projective_inv(p: &InvPoset, variety: Variety) -> bool {
    decide(&condition_report(p), variety)
}

// Indices of the elements of D as built by `diamond()`.
const D2: usize = 0;
const D0: usize = 1;
const D1: usize = 2;
const D3: usize = 3;
const D_NAMES: [char; 4] = ['2', '0', '1', '3'];
const D_INV: [usize; 4] = [D3, D0, D1, D2];

fn d_le(a: usize, b: usize) -> bool {
    a == b || a == D2 || b == D3
}

/// Largest `n` for which powers of D are materialized.
pub const MAX_POWER: usize = 6;

/// An order embedding of an involutive poset into a power of D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: InvPoset,
    coordinates: Vec<usize>,
    points: Vec<Vec<usize>>,
}

impl Embedding {
    fn with_coordinates(p: &InvPoset, coordinates: Vec<usize>) -> Embedding {
        let base = p.base();
        let columns: Vec<Vec<usize>> = coordinates
            .iter()
            .map(|&q| {
                let x: Vec<bool> = p.elements().map(|a| base.le(a, q)).collect();
                // X' = P \ i(X)
                let x_neg: Vec<bool> = p.elements().map(|a| !x[p.i(a)]).collect();
                p.elements()
                    .map(|a| match (x[a], x_neg[a]) {
                        (true, true) => D2,
                        (true, false) => D0,
                        (false, true) => D1,
                        (false, false) => D3,
                    })
                    .collect()
            })
            .collect();
        let points = p.elements().map(|a| columns.iter().map(|c| c[a]).collect()).collect();
        Embedding { source: p.clone(), coordinates, points }
    }

    pub fn source(&self) -> &InvPoset {
        &self.source
    }

    /// The exponent `n`.
    pub fn n(&self) -> usize {
        self.coordinates.len()
    }

    /// The element of the source behind each coordinate.
    pub fn coordinates(&self) -> &[usize] {
        &self.coordinates
    }

    /// The image of `x` as indices into D, one per coordinate.
    pub fn point(&self, x: usize) -> &[usize] {
        &self.points[x]
    }

    /// The image of `x` written as a digit string.
    pub fn label(&self, x: usize) -> String {
        self.points[x].iter().map(|&d| D_NAMES[d]).collect()
    }

    fn le(&self, x: usize, y: usize) -> bool {
        self.points[x].iter().zip(&self.points[y]).all(|(&a, &b)| d_le(a, b))
    }

    /// Checks that the map is injective, monotone, order-reflecting and commutes with the involutions.
    pub fn verify(&self) -> Result<()> {
        let p = &self.source;
        for x in p.elements() {
            let mirrored: Vec<usize> = self.points[x].iter().map(|&d| D_INV[d]).collect();
            if self.points[p.i(x)] != mirrored {
                return Err(Error::InvolutionNotPreserved(p.name(x).into()));
            }
            for y in p.elements() {
                if p.le(x, y) != self.le(x, y) {
                    let (lower, upper) = (p.name(x).into(), p.name(y).into());
                    return Err(if p.le(x, y) {
                        Error::NotMonotone { lower, upper }
                    } else {
                        Error::Precondition(format!("embedding does not reflect the order at ({lower}, {upper})"))
                    });
                }
            }
        }
        Ok(())
    }

    /// Index of `x`'s image in `power(diamond(), n)`.
    pub fn index(&self, x: usize) -> usize {
        self.points[x].iter().fold(0, |acc, &d| acc * 4 + d)
    }

    /// The embedding as a morphism into `power(diamond(), n)`.
    pub fn morphism(&self) -> Result<InvMorphism> {
        let target = guarded_power(self.n())?;
        InvMorphism::new(&self.source, &target, self.source.elements().map(|x| self.index(x)).collect())
    }
}

fn guarded_power(n: usize) -> Result<InvPoset> {
    if n > MAX_POWER {
        return Err(Error::SizeGuard { what: "power of D", got: n, limit: MAX_POWER });
    }
    Ok(power(&diamond(), n))
}

/// One coordinate per element `q`, read off the principal downset `(q]`.
pub fn canonical_embedding(p: &InvPoset) -> Result<Embedding> {
    if p.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let e = Embedding::with_coordinates(p, p.elements().collect());
    e.verify().map_err(|err| Error::Internal(format!("canonical embedding: {err}")))?;
    Ok(e)
}

/// The canonical embedding with coordinates dropped greedily, last first, while
/// the embedding contract still holds. At least one coordinate is kept.
pub fn pruned_embedding(p: &InvPoset) -> Result<Embedding> {
    let mut e = canonical_embedding(p)?;
    for k in (0..e.n()).rev() {
        if e.n() == 1 {
            break;
        }
        let mut coords = e.coordinates.clone();
        coords.remove(k);
        let candidate = Embedding::with_coordinates(p, coords);
        if candidate.verify().is_ok() {
            e = candidate;
        }
    }
    Ok(e)
}

fn first_fixed(p: &InvPoset, lo: usize, hi: Option<usize>) -> Option<usize> {
    p.elements().find(|&y| p.i(y) == y && p.le(lo, y) && hi.map_or(true, |h| p.le(y, h)))
}

/// The retraction of `power(D, n)` (its Kleene part for `Kleene`) onto the image
/// of `e`, built from the projectivity conditions. The result is validated.
pub fn build_retraction(e: &Embedding, variety: Variety) -> Result<InvMorphism> {
    let p = e.source();
    let s = Structure::Involutive(p.clone());
    if variety == Variety::Bdl {
        return Err(Error::VarietyMismatch("retractions are built for kleene and dm".into()));
    }
    if !is_projective_dual(&s, variety)?.projective {
        return Err(Error::Precondition(format!("not the dual of a projective {variety} algebra")));
    }
    let full = guarded_power(e.n())?;
    let dom = match variety {
        Variety::Kleene => kleene_part(&full),
        _ => full,
    };
    let digits = |x: usize| -> Vec<usize> {
        let name = dom.name(x);
        name.chars().map(|c| D_NAMES.iter().position(|&d| d == c).expect("digit")).collect()
    };
    let point_le = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(&u, &v)| d_le(u, v));
    let lower = |x: &[usize]| -> Vec<usize> { p.elements().filter(|&q| point_le(e.point(q), x)).collect() };
    let upper = |x: &[usize]| -> Vec<usize> { p.elements().filter(|&q| point_le(x, e.point(q))).collect() };
    let base = p.base();
    let missing = |what: &str, x: usize| Error::Internal(format!("{what} missing at {}", dom.name(x)));

    let mut map = vec![usize::MAX; dom.len()];
    match variety {
        Variety::DeMorgan => {
            for x in dom.elements() {
                let d = digits(x);
                let join = base.join_of(&lower(&d)).ok_or_else(|| missing("join", x))?;
                let meet = base.meet_of(&upper(&d)).ok_or_else(|| missing("meet", x))?;
                map[x] = match d.iter().find(|&&c| c == D2 || c == D3) {
                    None => first_fixed(p, join, Some(meet)).ok_or_else(|| missing("fixed point", x))?,
                    Some(&D2) => join,
                    Some(_) => meet,
                };
            }
        }
        _ => {
            let half = p.lower_half();
            let sub = base.induced(&half);
            let join_in_half = |xs: &[usize]| -> Option<usize> {
                let local: Vec<usize> = xs.iter().map(|x| half.binary_search(x).expect("in lower half")).collect();
                sub.join_of(&local).map(|j| half[j])
            };
            for x in dom.elements() {
                let d = digits(x);
                if d.contains(&D3) {
                    continue;
                }
                let join = join_in_half(&lower(&d)).ok_or_else(|| missing("join", x))?;
                map[x] = if d.contains(&D2) {
                    join
                } else {
                    first_fixed(p, join, None).ok_or_else(|| missing("fixed point", x))?
                };
            }
            for x in dom.elements() {
                if map[x] == usize::MAX {
                    map[x] = p.i(map[dom.i(x)]);
                }
            }
        }
    }
    let r = InvMorphism::new(&dom, p, map).map_err(|err| Error::Internal(format!("retraction: {err}")))?;
    check_fixes(e, &dom, r.map())?;
    Ok(r)
}

fn image_index(e: &Embedding, dom: &InvPoset, x: usize) -> usize {
    dom.base().index_of(&e.label(x)).expect("the image lies in the domain")
}

fn check_fixes(e: &Embedding, dom: &InvPoset, r: &[usize]) -> Result<()> {
    match e.source().elements().find(|&x| r[image_index(e, dom, x)] != x) {
        Some(x) => Err(Error::Internal(format!("retraction moves {}", e.source().name(x)))),
        None => Ok(()),
    }
}

/// Largest exponent the oracles accept.
pub const ORACLE_LIMIT: usize = 4;

/// Exhaustive search for a morphism from `power(D, n)` (or its Kleene part)
/// onto the image of `e` fixing it pointwise.
pub fn oracle_retraction_search(e: &Embedding, variety: Variety) -> Result<Option<InvMorphism>> {
    if e.n() > ORACLE_LIMIT {
        return Err(Error::SizeGuard { what: "oracle exponent", got: e.n(), limit: ORACLE_LIMIT });
    }
    let full = power(&diamond(), e.n());
    let dom = match variety {
        Variety::Kleene => kleene_part(&full),
        Variety::DeMorgan => full,
        Variety::Bdl => return Err(Error::VarietyMismatch("use the lattice oracle for bdl".into())),
    };
    let p = e.source();
    let mut allowed = vec![Bits::full(p.len()); dom.len()];
    for x in p.elements() {
        allowed[image_index(e, &dom, x)] = Bits::from_iter(p.len(), [x]);
    }
    let found = MapSearch::new(dom.base(), p.base(), Some((dom.inv(), p.inv())), Some(allowed)).next();
    Ok(found.map(|map| InvMorphism::new(&dom, p, map).expect("search yields morphisms")))
}

/// The retraction oracle for an arbitrary involutive poset, through the pruned
/// embedding. The empty poset is never a retract.
pub fn has_retraction(p: &InvPoset, variety: Variety) -> Result<bool> {
    if p.is_empty() {
        return Ok(false);
    }
    Ok(oracle_retraction_search(&pruned_embedding(p)?, variety)?.is_some())
}

/// `2^n` as bitstrings ordered coordinatewise.
pub fn boolean_power(n: usize) -> Poset {
    let names = (0..1usize << n)
        .map(|m| (0..n).map(|k| if m >> (n - 1 - k) & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    Poset::from_fn(names, |a, b| a & b == a)
}

/// Exhaustive search for a monotone retraction of `2^|P|` onto `P` embedded by
/// `x ↦ {q : q ≤ x}`.
pub fn lattice_oracle(p: &Poset) -> Result<Option<MonotoneMap>> {
    let n = p.len();
    if n > ORACLE_LIMIT {
        return Err(Error::SizeGuard { what: "oracle exponent", got: n, limit: ORACLE_LIMIT });
    }
    let cube = boolean_power(n);
    let embed = |x: usize| p.elements().filter(|&q| p.le(q, x)).fold(0, |acc, q| acc | 1 << (n - 1 - q));
    let mut allowed = vec![Bits::full(n); cube.len()];
    for x in p.elements() {
        allowed[embed(x)] = Bits::from_iter(n, [x]);
    }
    let found = MapSearch::new(&cube, p, None, Some(allowed)).next();
    Ok(found.map(|map| MonotoneMap::new(&cube, p, map).expect("search yields monotone maps")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutive::enumerate_inv_posets_upto;

    fn swap_pair() -> InvPoset {
        InvPoset::new(Poset::antichain(&["a", "b"]), vec![1, 0]).unwrap()
    }

    fn chain3() -> InvPoset {
        InvPoset::from_names(Poset::chain(&["2", "0", "3"]), &[("2", "3"), ("0", "0"), ("3", "2")]).unwrap()
    }

    fn all_hold(r: &ConditionReport) -> bool {
        r.entries().iter().all(|(_, v)| v.holds())
    }

    #[test]
    fn reports() {
        assert!(all_hold(&condition_report(&diamond())));
        assert!(all_hold(&condition_report(&chain3())));
        let r = condition_report(&swap_pair());
        assert_eq!(r.m1, Verdict::Fails(vec![0, 1]));
        assert!(r.m2.holds() && r.m3.holds());
        assert_eq!(r.k1, Verdict::Fails(vec![]));
        // no element lies below its image, so K2 holds vacuously
        assert!(r.k2.holds());
    }

    #[test]
    fn deciders() {
        let d = Structure::Involutive(diamond());
        assert!(is_projective_dual(&d, Variety::DeMorgan).unwrap().projective);
        let s = Structure::Involutive(swap_pair());
        assert!(!is_projective_dual(&s, Variety::DeMorgan).unwrap().projective);
        assert!(matches!(is_projective_dual(&s, Variety::Kleene), Err(Error::VarietyMismatch(_))));
        let k2 = Structure::Involutive(kleene_part(&power(&diamond(), 2)));
        assert!(is_projective_dual(&k2, Variety::Kleene).unwrap().projective);
        assert!(is_projective_dual(&Structure::Plain(diamond().base().clone()), Variety::Bdl).unwrap().projective);
    }

    #[test]
    fn embeddings() {
        let point = InvPoset::point("p");
        let e = canonical_embedding(&point).unwrap();
        assert_eq!((e.n(), e.label(0)), (1, "0".to_string()));
        let d = canonical_embedding(&diamond()).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.morphism().unwrap().map().len(), 4);
        let pruned = pruned_embedding(&diamond()).unwrap();
        assert_eq!(pruned.coordinates(), [1]);
        assert_eq!((0..4).map(|x| pruned.label(x)).collect::<Vec<_>>(), ["2", "0", "1", "3"]);
        let s = canonical_embedding(&swap_pair()).unwrap();
        assert_eq!((s.label(0), s.label(1)), ("23".to_string(), "32".to_string()));
        assert!(canonical_embedding(&InvPoset::empty()).is_err());
    }

    #[test]
    fn retraction_examples() {
        let c = chain3();
        let e = pruned_embedding(&c).unwrap();
        assert_eq!((0..3).map(|x| e.label(x)).collect::<Vec<_>>(), ["2", "1", "3"]);
        let r = build_retraction(&e, Variety::DeMorgan).unwrap();
        let names: Vec<&str> = r.map().iter().map(|&x| c.name(x)).collect();
        // domain order is 2, 0, 1, 3
        assert_eq!(names, ["2", "0", "0", "3"]);
        let d = pruned_embedding(&diamond()).unwrap();
        assert_eq!(build_retraction(&d, Variety::DeMorgan).unwrap().map(), [0, 1, 2, 3]);
        let p = pruned_embedding(&InvPoset::point("p")).unwrap();
        assert_eq!(build_retraction(&p, Variety::DeMorgan).unwrap().map(), [0, 0, 0, 0]);
        let s = canonical_embedding(&swap_pair()).unwrap();
        assert!(matches!(build_retraction(&s, Variety::DeMorgan), Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_examples() {
        let d = pruned_embedding(&diamond()).unwrap();
        assert!(oracle_retraction_search(&d, Variety::DeMorgan).unwrap().is_some());
        let s = canonical_embedding(&swap_pair()).unwrap();
        assert!(oracle_retraction_search(&s, Variety::DeMorgan).unwrap().is_none());
        let c = pruned_embedding(&chain3()).unwrap();
        let r = oracle_retraction_search(&c, Variety::DeMorgan).unwrap().unwrap();
        assert_eq!(r.map()[1], 1);
        assert!(lattice_oracle(diamond().base()).unwrap().is_some());
        assert!(lattice_oracle(&Poset::antichain(&["a", "b"])).unwrap().is_none());
    }

    #[test]
    fn small_corpus_agreement() {
        for p in enumerate_inv_posets_upto(4) {
            let dm = is_projective_inv(&p, Variety::DeMorgan);
            assert_eq!(dm, has_retraction(&p, Variety::DeMorgan).unwrap(), "{p:?}");
            if dm {
                let e = canonical_embedding(&p).unwrap();
                build_retraction(&e, Variety::DeMorgan).unwrap();
            }
            if p.is_kleene() {
                let k = is_projective_inv(&p, Variety::Kleene);
                assert_eq!(k, has_retraction(&p, Variety::Kleene).unwrap(), "{p:?}");
                if k {
                    let e = canonical_embedding(&p).unwrap();
                    build_retraction(&e, Variety::Kleene).unwrap();
                }
            }
        }
    }
}
