//! Finite duality: join-irreducibles and downset lattices, with the De Morgan
//! versions carrying the involution, on objects and on morphisms.

use std::collections::HashMap;

use crate::algebra::{FiniteAlgebra, Homomorphism};
use crate::error::{Error, Result};
use crate::involutive::{InvMorphism, InvPoset};
use crate::order::{MonotoneMap, Poset};

/// Indices of the join-irreducible elements of `a`, in canonical order.
pub fn join_irreducible_indices(a: &FiniteAlgebra) -> Vec<usize> {
    let p = a.carrier();
    // in a finite lattice x is join-irreducible iff it has exactly one lower cover
    p.elements()
        .filter(|&x| p.elements().filter(|&y| p.lt(y, x) && p.interval(y, x).len() == 2).count() == 1)
        .collect()
}

/// The poset of join-irreducible elements with the inherited order.
pub fn join_irreducibles(a: &FiniteAlgebra) -> Poset {
    a.carrier().induced(&join_irreducible_indices(a))
}

/// Downsets of `p` as sorted index lists, smallest first and lexicographically within a size.
pub fn downsets(p: &Poset) -> Vec<Vec<usize>> {
    let order = p.linear_extension();
    let mut out = Vec::new();
    let mut current = vec![false; p.len()];
    grow(p, &order, 0, &mut current, &mut out);
    for d in &mut out {
        d.sort_unstable();
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn grow(p: &Poset, order: &[usize], k: usize, current: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    let Some(&x) = order.get(k) else {
        out.push(p.elements().filter(|&y| current[y]).collect());
        return;
    };
    grow(p, order, k + 1, current, out);
    if p.elements().all(|y| !p.lt(y, x) || current[y]) {
        current[x] = true;
        grow(p, order, k + 1, current, out);
        current[x] = false;
    }
}

fn downset_name(p: &Poset, d: &[usize]) -> String {
    let names: Vec<&str> = d.iter().map(|&x| p.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

/// The downset lattice together with the downset behind each of its elements.
struct DownsetLattice {
    algebra: FiniteAlgebra,
    sets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl DownsetLattice {
    fn new(p: &Poset, neg: Option<&dyn Fn(&[usize]) -> Vec<usize>>) -> DownsetLattice {
        let sets = downsets(p);
        let index: HashMap<_, _> = sets.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let names = sets.iter().map(|d| downset_name(p, d)).collect();
        let member: Vec<Vec<bool>> = sets
            .iter()
            .map(|d| {
                let mut m = vec![false; p.len()];
                d.iter().for_each(|&x| m[x] = true);
                m
            })
            .collect();
        let carrier = Poset::from_fn(names, |a, b| sets[a].iter().all(|&x| member[b][x]));
        let neg = neg.map(|f| sets.iter().map(|d| index[&f(d)]).collect());
        let algebra = FiniteAlgebra::new(carrier, neg).expect("downset lattices are distributive");
        DownsetLattice { algebra, sets, index }
    }

    fn of_inv(p: &InvPoset) -> DownsetLattice {
        let neg = |d: &[usize]| {
            let mut image = vec![false; p.len()];
            d.iter().for_each(|&x| image[p.i(x)] = true);
            p.elements().filter(|&x| !image[x]).collect::<Vec<_>>()
        };
        DownsetLattice::new(p.base(), Some(&neg))
    }
}

/// The lattice of downsets of `p` ordered by inclusion. Elements are named
/// `{a,b}` after their members in canonical order.
pub fn downset_algebra(p: &Poset) -> FiniteAlgebra {
    DownsetLattice::new(p, None).algebra
}

/// The dual involutive poset of a De Morgan algebra.
pub fn demorgan_dual(a: &FiniteAlgebra) -> Result<InvPoset> {
    let neg = a.neg().ok_or_else(|| Error::VarietyMismatch("the algebra has no negation".into()))?;
    let ji = join_irreducible_indices(a);
    let pos: HashMap<usize, usize> = ji.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let base = a.carrier().induced(&ji);
    let mut inv = Vec::with_capacity(ji.len());
    for &x in &ji {
        let mut excluded = vec![false; a.len()];
        a.elements().filter(|&b| a.le(x, b)).for_each(|b| excluded[neg[b]] = true);
        let m = a.meet_all(a.elements().filter(|&b| !excluded[b]));
        let k = *pos.get(&m).ok_or_else(|| Error::Internal(format!("i({}) is not join-irreducible", a.name(x))))?;
        inv.push(k);
    }
    InvPoset::new(base, inv).map_err(|e| Error::Internal(format!("dual involution: {e}")))
}

/// The De Morgan algebra of downsets with `X' = P \ i(X)`.
pub fn demorgan_from_dual(p: &InvPoset) -> FiniteAlgebra {
    DownsetLattice::of_inv(p).algebra
}

fn dual_map(h: &Homomorphism) -> Result<Vec<usize>> {
    let (a, b) = (h.dom(), h.cod());
    let src = join_irreducible_indices(b);
    let tgt = join_irreducible_indices(a);
    let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    src.iter()
        .map(|&x| {
            let m = a.meet_all(a.elements().filter(|&y| b.le(x, h.apply(y))));
            pos.get(&m).copied().ok_or_else(|| Error::Internal(format!("dual image of {} is join-reducible", b.name(x))))
        })
        .collect()
}

/// The dual of a lattice homomorphism `h: A -> B`, a monotone map `J(B) -> J(A)`.
pub fn dual_of_hom(h: &Homomorphism) -> Result<MonotoneMap> {
    let map = dual_map(h)?;
    MonotoneMap::new(&join_irreducibles(h.cod()), &join_irreducibles(h.dom()), map)
        .map_err(|e| Error::Internal(format!("dual map: {e}")))
}

/// The dual of a De Morgan homomorphism, a morphism of involutive posets.
pub fn demorgan_dual_of_hom(h: &Homomorphism) -> Result<InvMorphism> {
    let map = dual_map(h)?;
    InvMorphism::new(&demorgan_dual(h.cod())?, &demorgan_dual(h.dom())?, map)
        .map_err(|e| Error::Internal(format!("dual morphism: {e}")))
}

fn preimage_hom(src: &DownsetLattice, tgt: &DownsetLattice, f: &[usize]) -> Homomorphism {
    let map = src
        .sets
        .iter()
        .map(|d| {
            let pre: Vec<usize> = (0..f.len()).filter(|&x| d.binary_search(&f[x]).is_ok()).collect();
            tgt.index[&pre]
        })
        .collect();
    Homomorphism::new_unchecked(&src.algebra, &tgt.algebra, map)
}

/// Preimage along `f: P -> Q`, a homomorphism `D(Q) -> D(P)`.
pub fn hom_of_map(f: &MonotoneMap) -> Homomorphism {
    let src = DownsetLattice::new(f.cod(), None);
    let tgt = DownsetLattice::new(f.dom(), None);
    preimage_hom(&src, &tgt, f.map())
}

/// Preimage along a morphism of involutive posets; preserves the negation.
pub fn demorgan_hom_of_map(f: &InvMorphism) -> Homomorphism {
    let src = DownsetLattice::of_inv(f.cod());
    let tgt = DownsetLattice::of_inv(f.dom());
    preimage_hom(&src, &tgt, f.map())
}

/// The isomorphism `A -> D(J(A))`, `a ↦ {j ∈ J(A) : j ≤ a}`; De Morgan when `A` has a negation.
pub fn canonical_iso(a: &FiniteAlgebra) -> Result<Homomorphism> {
    let ji = join_irreducible_indices(a);
    let target = match a.neg() {
        Some(_) => DownsetLattice::of_inv(&demorgan_dual(a)?),
        None => DownsetLattice::new(&a.carrier().induced(&ji), None),
    };
    let map = a
        .elements()
        .map(|x| {
            let below: Vec<usize> = (0..ji.len()).filter(|&k| a.le(ji[k], x)).collect();
            target.index[&below]
        })
        .collect();
    Homomorphism::new(a, &target.algebra, map)
}

/// The isomorphism `P -> J(D(P))`, `p ↦ (p]`.
pub fn principal_downsets(p: &Poset) -> Result<MonotoneMap> {
    let lattice = DownsetLattice::new(p, None);
    let ji = join_irreducible_indices(&lattice.algebra);
    let pos: HashMap<usize, usize> = ji.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let map = p.elements().map(|x| pos[&lattice.index[&p.downset(&[x])]]).collect();
    MonotoneMap::new(p, &join_irreducibles(&lattice.algebra), map)
}
