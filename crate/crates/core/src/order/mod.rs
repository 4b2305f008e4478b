//! Finite posets: validation, subposets, bounds and the enumeration machinery
//! shared by every other module.
//!
//! Elements are addressed by index into the element list. Names are kept only
//! for input and output; the input order of the names is the canonical order
//! used for every tie-break downstream.

mod enumerate;
mod iso;
mod lattice;
mod maps;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};

pub use enumerate::{canonical_form, enumerate_posets_upto};
pub use iso::{find_isomorphism, find_isomorphism_with};
pub use lattice::{
    is_three_complete, lattice_report, three_complete_in_lattice, LatticeReport, ThreeCompleteness,
};
pub use maps::{enumerate_monotone_maps, MonotoneMap};
pub(crate) use maps::{check_total, map_from_names};

/// How the pairs of a [`RawOrder`] are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// The pairs list the whole relation.
    Full,
    /// The pairs list the covering relation (a Hasse diagram).
    Covers,
}

/// Unvalidated order data.
#[derive(Clone, Debug)]
pub struct RawOrder {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String)>,
    pub closure: Closure,
}

/// Ways of picking a subset of a poset.
#[derive(Clone, Debug)]
pub enum Selector {
    Explicit(Vec<usize>),
    DownsetOf(Vec<usize>),
    UpsetOf(Vec<usize>),
    Interval(usize, usize),
    Minimals,
    Maximals,
}

/// A finite partial order. Cheap to clone.
#[derive(Clone)]
pub struct Poset {
    inner: Arc<Inner>,
}

struct Inner {
    names: Vec<String>,
    index: HashMap<String, usize>,
    le: Vec<bool>,
    up: Vec<Bits>,
    down: Vec<Bits>,
}

impl Inner {
    fn new(names: Vec<String>, index: HashMap<String, usize>, le: Vec<bool>) -> Inner {
        let n = names.len();
        let up = (0..n).map(|a| Bits::from_iter(n, (0..n).filter(|&b| le[a * n + b]))).collect();
        let down = (0..n).map(|a| Bits::from_iter(n, (0..n).filter(|&b| le[b * n + a]))).collect();
        Inner { names, index, le, up, down }
    }
}

impl Poset {
    /// Validates raw order data, closing it reflexively and transitively.
    pub fn validate(raw: &RawOrder) -> Result<Poset> {
        let n = raw.elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in raw.elements.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut edges = Vec::with_capacity(raw.pairs.len());
        for (a, b) in &raw.pairs {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            edges.push((ia, ib));
        }
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in &edges {
            le[a * n + b] = true;
        }
        close(&mut le, n);
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    let mut cycle = path(&edges, n, i, j);
                    let back = path(&edges, n, j, i);
                    cycle.extend_from_slice(&back[1..]);
                    let cycle = cycle.into_iter().map(|k| raw.elements[k].clone()).collect();
                    return Err(Error::Antisymmetry { cycle });
                }
            }
        }
        Ok(Poset { inner: Arc::new(Inner::new(raw.elements.clone(), index, le)) })
    }

    /// Builds a poset from a list of elements and covering pairs.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
        Poset::validate(&raw(elements, covers, Closure::Covers))
    }

    /// Builds a poset from a list of elements and the (possibly unclosed) order relation.
    pub fn from_le<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Poset> {
        Poset::validate(&raw(elements, pairs, Closure::Full))
    }

    /// Builds a poset from an order matrix that is already known to be a partial order
    /// up to reflexive-transitive closure.
    pub(crate) fn from_matrix(names: Vec<String>, mut le: Vec<bool>) -> Poset {
        let n = names.len();
        assert_eq!(le.len(), n * n);
        for i in 0..n {
            le[i * n + i] = true;
        }
        close(&mut le, n);
        debug_assert!((0..n).all(|i| (0..n).all(|j| i == j || !(le[i * n + j] && le[j * n + i]))));
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect::<HashMap<_, _>>();
        assert_eq!(index.len(), n, "duplicate names");
        Poset { inner: Arc::new(Inner::new(names, index, le)) }
    }

    pub(crate) fn from_fn(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Poset {
        let n = names.len();
        let mut m = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = le(i, j);
            }
        }
        Poset::from_matrix(names, m)
    }

    pub fn empty() -> Poset {
        Poset::from_matrix(Vec::new(), Vec::new())
    }

    /// An antichain on the given names.
    pub fn antichain<S: AsRef<str>>(names: &[S]) -> Poset {
        Poset::from_fn(names.iter().map(|s| s.as_ref().to_string()).collect(), |i, j| i == j)
    }

    /// A chain in the given order.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Poset {
        Poset::from_fn(names.iter().map(|s| s.as_ref().to_string()).collect(), |i, j| i <= j)
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.index.get(name).copied()
    }

    /// Looks up a name, failing with [`Error::UnknownElement`].
    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.inner.le[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// All pairs `(a, b)` with `a <= b`, in canonical order.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.le(a, b)).collect()
    }

    /// The covering pairs `(a, b)`, `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The order dual, with the same names.
    pub fn dual(&self) -> Poset {
        Poset::from_fn(self.names().to_vec(), |i, j| self.le(j, i))
    }

    /// The same order under new names.
    pub fn renamed(&self, names: Vec<String>) -> Poset {
        assert_eq!(names.len(), self.len());
        Poset::from_matrix(names, self.inner.le.clone())
    }

    /// The subposet induced on `sel`, listed in the order given.
    pub fn induced(&self, sel: &[usize]) -> Poset {
        let names = sel.iter().map(|&i| self.name(i).to_string()).collect();
        Poset::from_fn(names, |a, b| self.le(sel[a], sel[b]))
    }

    /// Selects a subset and returns the induced subposet with the selection, in canonical order.
    pub fn subposet(&self, selector: &Selector) -> Result<(Poset, Vec<usize>)> {
        let check = |xs: &[usize]| -> Result<()> {
            match xs.iter().find(|&&x| x >= self.len()) {
                Some(x) => Err(Error::UnknownElement(format!("#{x}"))),
                None => Ok(()),
            }
        };
        let sel = match selector {
            Selector::Explicit(xs) => {
                check(xs)?;
                let mut v = xs.clone();
                v.sort_unstable();
                v.dedup();
                v
            }
            Selector::DownsetOf(xs) => {
                check(xs)?;
                self.downset(xs)
            }
            Selector::UpsetOf(xs) => {
                check(xs)?;
                self.upset(xs)
            }
            Selector::Interval(x, y) => {
                check(&[*x, *y])?;
                self.interval(*x, *y)
            }
            Selector::Minimals => self.minimals(),
            Selector::Maximals => self.maximals(),
        };
        Ok((self.induced(&sel), sel))
    }

    /// `(X]`: everything below some element of `xs`.
    pub fn downset(&self, xs: &[usize]) -> Vec<usize> {
        self.elements().filter(|&y| xs.iter().any(|&x| self.le(y, x))).collect()
    }

    /// `[X)`: everything above some element of `xs`.
    pub fn upset(&self, xs: &[usize]) -> Vec<usize> {
        self.elements().filter(|&y| xs.iter().any(|&x| self.le(x, y))).collect()
    }

    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        self.elements().filter(|&z| self.le(x, z) && self.le(z, y)).collect()
    }

    pub fn minimals(&self) -> Vec<usize> {
        self.elements().filter(|&x| !self.elements().any(|y| self.lt(y, x))).collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        self.elements().filter(|&x| !self.elements().any(|y| self.lt(x, y))).collect()
    }

    pub fn is_downset(&self, xs: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in xs {
            member[x] = true;
        }
        xs.iter().all(|&x| self.elements().all(|y| !self.le(y, x) || member[y]))
    }

    /// Common upper bounds of `xs`.
    pub fn upper_bounds(&self, xs: &[usize]) -> Vec<usize> {
        self.elements().filter(|&u| xs.iter().all(|&x| self.le(x, u))).collect()
    }

    /// Common lower bounds of `xs`.
    pub fn lower_bounds(&self, xs: &[usize]) -> Vec<usize> {
        self.elements().filter(|&l| xs.iter().all(|&x| self.le(l, x))).collect()
    }

    /// The least element of `xs`, if any.
    pub fn least_of(&self, xs: &[usize]) -> Option<usize> {
        xs.iter().copied().find(|&m| xs.iter().all(|&x| self.le(m, x)))
    }

    /// The greatest element of `xs`, if any.
    pub fn greatest_of(&self, xs: &[usize]) -> Option<usize> {
        xs.iter().copied().find(|&m| xs.iter().all(|&x| self.le(x, m)))
    }

    /// Least upper bound of `xs`; the join of the empty set is the bottom.
    pub fn join_of(&self, xs: &[usize]) -> Option<usize> {
        let mut ub = Bits::full(self.len());
        for &x in xs {
            ub.intersect_with(&self.inner.up[x]);
        }
        // the least upper bound u is the one whose upset is exactly the bound set
        let k = ub.count();
        let least = ub.iter().find(|&u| self.inner.up[u].count() == k);
        least
    }

    /// Greatest lower bound of `xs`; the meet of the empty set is the top.
    pub fn meet_of(&self, xs: &[usize]) -> Option<usize> {
        let mut lb = Bits::full(self.len());
        for &x in xs {
            lb.intersect_with(&self.inner.down[x]);
        }
        let k = lb.count();
        let greatest = lb.iter().find(|&l| self.inner.down[l].count() == k);
        greatest
    }

    pub(crate) fn up_bits(&self, x: usize) -> &Bits {
        &self.inner.up[x]
    }

    pub(crate) fn down_bits(&self, x: usize) -> &Bits {
        &self.inner.down[x]
    }

    /// Whether `a` and `b` have a common upper bound.
    pub fn bounded_above(&self, a: usize, b: usize) -> bool {
        let mut ub = self.inner.up[a].clone();
        ub.intersect_with(&self.inner.up[b]);
        !ub.is_empty()
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join_of(&[a, b])
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet_of(&[a, b])
    }

    pub fn bottom(&self) -> Option<usize> {
        self.join_of(&[])
    }

    pub fn top(&self) -> Option<usize> {
        self.meet_of(&[])
    }

    /// Indices of elements in a linear extension, stable on canonical order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&x| (self.elements().filter(|&y| self.lt(y, x)).count(), x));
        order
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.inner.names == other.inner.names && self.inner.le == other.inner.le
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> =
            self.covers().into_iter().map(|(a, b)| format!("{}<{}", self.name(a), self.name(b))).collect();
        f.debug_struct("Poset").field("elements", &self.inner.names).field("covers", &covers).finish()
    }
}

fn raw<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)], closure: Closure) -> RawOrder {
    RawOrder {
        elements: elements.iter().map(|s| s.as_ref().to_string()).collect(),
        pairs: pairs.iter().map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string())).collect(),
        closure,
    }
}

/// Warshall closure of an `n`-by-`n` relation.
fn close(le: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if le[i * n + k] {
                for j in 0..n {
                    if le[k * n + j] {
                        le[i * n + j] = true;
                    }
                }
            }
        }
    }
}

/// A shortest path from `from` to `to` along the raw edges.
fn path(edges: &[(usize, usize)], n: usize, from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(a, b) in edges {
            if a == v && prev[b] == usize::MAX {
                prev[b] = v;
                queue.push_back(b);
            }
        }
    }
    let mut out = vec![to];
    let mut v = to;
    while v != from {
        v = prev[v];
        out.push(v);
    }
    out.reverse();
    out
}
