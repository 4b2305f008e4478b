use crate::error::{Error, Result};
use crate::involutive::{InvMorphism, InvPoset};
use crate::order::{MonotoneMap, Poset};
use crate::projectivity::Structure;

use super::patterns::Family;
use super::Unifier;

/// Largest `n` accepted by [`witness_family`]; the bit-string family is capped lower.
pub const MAX_WITNESS_N: usize = 24;
pub const MAX_WITNESS_N_M2: usize = 9;

/// The unifier family `u_n: T_n -> Q` attached to a null pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamily {
    family: Family,
    n: usize,
    structure: Structure,
    schema: Vec<(usize, bool)>,
}

impl WitnessFamily {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The domain `T_n`.
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// For each element of `T_n`, the pattern slot it is sent to and whether
    /// the image is the involution of that slot.
    pub fn schema(&self) -> &[(usize, bool)] {
        &self.schema
    }

    /// The map `u_n` into `target` given a pattern tuple found there.
    pub fn instantiate(&self, target: &Structure, tuple: &[usize]) -> Result<Unifier> {
        if tuple.len() != self.family.slots().len() {
            return Err(Error::Precondition(format!("the {} pattern has {} slots", self.family, self.family.slots().len())));
        }
        if let Some(&x) = tuple.iter().find(|&&x| x >= target.base().len()) {
            return Err(Error::OutsideCodomain { element: format!("#{x}") });
        }
        match (&self.structure, target) {
            (Structure::Plain(t), Structure::Plain(q)) => {
                let map = self.schema.iter().map(|&(slot, _)| tuple[slot]).collect();
                MonotoneMap::new(t, q, map).map(Unifier::Plain)
            }
            (Structure::Involutive(t), Structure::Involutive(q)) => {
                let map = self
                    .schema
                    .iter()
                    .map(|&(slot, inverted)| if inverted { q.i(tuple[slot]) } else { tuple[slot] })
                    .collect();
                InvMorphism::new(t, q, map).map(Unifier::Involutive)
            }
            _ => Err(Error::VarietyMismatch(format!("the {} family does not map into this structure", self.family))),
        }
    }
}

type Node = (usize, bool);

/// Lower-half elements with their images under the involution appended.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    schema: Vec<(usize, bool)>,
    fixed: Vec<bool>,
    pairs: Vec<(Node, Node)>,
}

impl Builder {
    fn add(&mut self, name: String, slot: usize, fixed: bool) -> usize {
        self.names.push(name);
        self.schema.push((slot, false));
        self.fixed.push(fixed);
        self.names.len() - 1
    }

    fn le(&mut self, a: Node, b: Node) {
        self.pairs.push((a, b));
    }

    fn plain(self) -> WitnessFamily {
        let pairs: Vec<(&str, &str)> =
            self.pairs.iter().map(|&((a, _), (b, _))| (self.names[a].as_str(), self.names[b].as_str())).collect();
        let p = Poset::from_le(&self.names.iter().map(String::as_str).collect::<Vec<_>>(), &pairs).expect("witness order");
        WitnessFamily { family: Family::Bdl, n: 0, structure: Structure::Plain(p), schema: self.schema }
    }

    fn involutive(mut self, family: Family) -> WitnessFamily {
        let lower = self.names.len();
        let mut bar = vec![usize::MAX; lower];
        for x in 0..lower {
            if self.fixed[x] {
                bar[x] = x;
            } else {
                bar[x] = self.names.len();
                self.names.push(format!("~{}", self.names[x]));
                self.schema.push((self.schema[x].0, true));
            }
        }
        let node = |(x, barred): Node| if barred { bar[x] } else { x };
        let mut inv: Vec<usize> = (0..self.names.len()).collect();
        for x in 0..lower {
            inv[x] = bar[x];
            inv[bar[x]] = x;
        }
        let n = self.names.len();
        let mut m = vec![false; n * n];
        for &(a, b) in &self.pairs {
            let (a, b) = (node(a), node(b));
            m[a * n + b] = true;
            m[inv[b] * n + inv[a]] = true;
        }
        let p = Poset::from_fn(self.names, |a, b| m[a * n + b]);
        let structure = Structure::Involutive(InvPoset::new(p, inv).expect("witness involution"));
        WitnessFamily { family, n: 0, structure, schema: self.schema }
    }
}

const LOW: bool = false;
const HIGH: bool = true;

/// `T_n` with its schema.
///
/// Sizes: bdl `n + 2 + ⌊n²/4⌋`, k1 `2 + 2n + 3⌊n²/4⌋`, k2/m3 `2 + 2n + 13n(n-1)/2`,
/// m1 `3 + 2n + 2⌊n²/4⌋`, m2 `2ⁿ + 1`.
pub fn witness_family(family: Family, n: usize) -> Result<WitnessFamily> {
    let min = match family {
        Family::K1 | Family::K2 | Family::M3 => 2,
        _ => 1,
    };
    if n < min {
        return Err(Error::Precondition(format!("the {family} family needs n >= {min}")));
    }
    if family == Family::M2 && n % 2 == 0 {
        return Err(Error::Precondition("the m2 family needs odd n".into()));
    }
    let limit = if family == Family::M2 { MAX_WITNESS_N_M2 } else { MAX_WITNESS_N };
    if n > limit {
        return Err(Error::SizeGuard { what: "witness n", got: n, limit });
    }
    let mut w = match family {
        Family::Bdl => bdl(n),
        Family::K1 => k1(n),
        Family::K2 | Family::M3 => k2(n, family),
        Family::M1 => m1(n),
        Family::M2 => m2(n),
    };
    w.n = n;
    Ok(w)
}

fn odd_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (j, k))).filter(|(j, k)| (j + k) % 2 == 1)
}

// slots: x a b c d y
fn bdl(n: usize) -> WitnessFamily {
    let mut b = Builder::default();
    let bot = b.add("⊥".into(), 0, false);
    let atoms: Vec<usize> = (1..=n).map(|j| b.add(j.to_string(), if j % 2 == 1 { 1 } else { 2 }, false)).collect();
    let top_slot = 5;
    let mut tops = Vec::new();
    for (j, k) in odd_pairs(n) {
        let e = b.add(format!("{j}·{k}"), if j % 2 == 1 { 3 } else { 4 }, false);
        b.le((atoms[j - 1], LOW), (e, LOW));
        b.le((atoms[k - 1], LOW), (e, LOW));
        tops.push(e);
    }
    let top = b.add("⊤".into(), top_slot, false);
    for &a in &atoms {
        b.le((bot, LOW), (a, LOW));
        b.le((a, LOW), (top, LOW));
    }
    for e in tops {
        b.le((e, LOW), (top, LOW));
    }
    b.plain()
}

// slots: x a b c d y z
fn k1(n: usize) -> WitnessFamily {
    let mut b = Builder::default();
    let bot = b.add("⊥".into(), 0, false);
    let atoms: Vec<usize> = (1..=n).map(|j| b.add(j.to_string(), if j % 2 == 1 { 1 } else { 2 }, false)).collect();
    let mut mids = Vec::new();
    for (j, k) in odd_pairs(n) {
        let e = b.add(format!("{j}·{k}"), if j % 2 == 1 { 3 } else { 4 }, false);
        b.le((atoms[j - 1], LOW), (e, LOW));
        b.le((atoms[k - 1], LOW), (e, LOW));
        mids.push((j, k, e));
    }
    for (j, k, e) in mids {
        let f = b.add(format!("{j}◇{k}"), if j % 2 == 1 { 5 } else { 6 }, true);
        b.le((e, LOW), (f, LOW));
    }
    for &a in &atoms {
        b.le((bot, LOW), (a, LOW));
    }
    b.involutive(Family::K1)
}

// slots: x a b c d e f y z w
fn k2(n: usize, family: Family) -> WitnessFamily {
    let mut b = Builder::default();
    let bot = b.add("⊥".into(), 0, false);
    let atoms: Vec<usize> = (1..=n).map(|j| b.add(j.to_string(), 1, false)).collect();
    let mut dot = vec![usize::MAX; (n + 1) * (n + 1)];
    for j in 1..=n {
        for k in (1..=n).filter(|&k| k != j) {
            dot[j * (n + 1) + k] = b.add(format!("{j}·{k}"), if j < k { 2 } else { 3 }, false);
        }
    }
    let jk = |j: usize, k: usize| dot[j * (n + 1) + k];
    let mut circ = Vec::new();
    for j in 1..=n {
        for k in (1..=n).filter(|&k| k != j) {
            let e = b.add(format!("{j}∘{j}·{k}"), if j < k { 4 } else { 5 }, false);
            circ.push((format!("{j}◇{j}·{k}"), if j < k { 7 } else { 8 }, e));
        }
    }
    for j in 1..=n {
        for k in j + 1..=n {
            let e = b.add(format!("{j}·{k}∘{k}·{j}"), 6, false);
            circ.push((format!("{j}·{k}◇{k}·{j}"), 9, e));
        }
    }
    for (name, slot, e) in circ {
        let f = b.add(name, slot, true);
        b.le((e, LOW), (f, LOW));
    }
    for j in 1..=n {
        b.le((bot, LOW), (atoms[j - 1], LOW));
        for k in (1..=n).filter(|&k| k != j) {
            b.le((bot, LOW), (jk(j, k), LOW));
        }
    }
    let name_of = |b: &Builder, s: &str| b.names.iter().position(|x| x == s).expect("element");
    for j in 1..=n {
        for k in (1..=n).filter(|&k| k != j) {
            let e = name_of(&b, &format!("{j}∘{j}·{k}"));
            b.le((atoms[j - 1], LOW), (e, LOW));
            b.le((jk(j, k), LOW), (e, LOW));
            if j < k {
                let e = name_of(&b, &format!("{j}·{k}∘{k}·{j}"));
                b.le((jk(j, k), LOW), (e, LOW));
                b.le((jk(k, j), LOW), (e, LOW));
            }
        }
    }
    b.involutive(family)
}

// slots: x a b c d y
fn m1(n: usize) -> WitnessFamily {
    let mut b = Builder::default();
    let bot = b.add("⊥".into(), 0, false);
    let zero = b.add("0".into(), 5, true);
    let atoms: Vec<usize> = (1..=n).map(|j| b.add(j.to_string(), if j % 2 == 1 { 1 } else { 2 }, false)).collect();
    for (j, k) in odd_pairs(n).collect::<Vec<_>>() {
        let e = b.add(format!("{j}·{k}"), if j % 2 == 1 { 3 } else { 4 }, false);
        b.le((atoms[j - 1], LOW), (e, LOW));
        b.le((atoms[k - 1], LOW), (e, LOW));
        b.le((bot, LOW), (e, HIGH));
    }
    b.le((bot, LOW), (zero, LOW));
    for &a in &atoms {
        b.le((bot, LOW), (a, LOW));
        b.le((a, LOW), (bot, HIGH));
    }
    b.involutive(Family::M1)
}

// slots: x a b
fn m2(n: usize) -> WitnessFamily {
    let mut names: Vec<String> = (0..1usize << n).map(|v| format!("{v:0n$b}")).collect();
    names.push("d".into());
    let d = 1 << n;
    let full = d - 1;
    let le = |a: usize, b: usize| {
        a == b || (a < d && b < d && a & b == a) || (a == 0 && b == d) || (a == d && b == full)
    };
    let p = Poset::from_fn(names, le);
    let inv = (0..d).map(|v| full ^ v).chain([d]).collect();
    let schema = (0..d)
        .map(|v| {
            let w = v.count_ones() as usize;
            match (v, 2 * w < n) {
                (0, _) => (0, false),
                (v, _) if v == full => (0, true),
                (_, true) => (1, false),
                (_, false) => (1, true),
            }
        })
        .chain([(2, false)])
        .collect();
    let structure = Structure::Involutive(InvPoset::new(p, inv).expect("bit-string involution"));
    WitnessFamily { family: Family::M2, n, structure, schema }
}

/// The involutive poset generated by a lower part: each non-fixed element `p`
/// gets a partner `~p`, the order is mirrored, and each cross pair `(p, q)`
/// adds `p ≤ ~q`.
pub fn inv_closure(elements: &[&str], covers: &[(&str, &str)], fixed: &[&str], cross: &[(&str, &str)]) -> Result<InvPoset> {
    let mut names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
    let bar = |s: &str| if fixed.contains(&s) { s.to_string() } else { format!("~{s}") };
    if let Some(f) = fixed.iter().find(|f| !elements.contains(f)) {
        return Err(Error::UnknownElement(f.to_string()));
    }
    names.extend(elements.iter().filter(|s| !fixed.contains(s)).map(|s| bar(s)));
    let mut pairs: Vec<(String, String)> = Vec::new();
    for &(a, b) in covers {
        pairs.push((a.into(), b.into()));
        pairs.push((bar(b), bar(a)));
    }
    for &(p, q) in cross {
        pairs.push((p.into(), bar(q)));
        pairs.push((q.into(), bar(p)));
    }
    let base = Poset::from_le(&names, &pairs)?;
    let inv = names.iter().map(|s| {
        let t = s.strip_prefix('~').map_or_else(|| bar(s), str::to_string);
        base.lookup(&t)
    });
    InvPoset::new(base.clone(), inv.collect::<Result<Vec<_>>>()?)
}

/// The smallest instance carrying each null pattern, its elements listed in slot order.
pub fn pattern_instance(family: Family) -> Structure {
    let crown = [("x", "a"), ("x", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")];
    let with = |extra: &[(&'static str, &'static str)]| crown.iter().chain(extra).copied().collect::<Vec<_>>();
    let p = match family {
        Family::Bdl => {
            let p = Poset::from_covers(&["x", "a", "b", "c", "d", "y"], &with(&[("c", "y"), ("d", "y")]));
            return Structure::Plain(p.expect("crown"));
        }
        Family::K1 => inv_closure(&["x", "a", "b", "c", "d", "y", "z"], &with(&[("c", "y"), ("d", "z")]), &["y", "z"], &[]),
        Family::K2 | Family::M3 => inv_closure(
            &["x", "a", "b", "c", "d", "e", "f", "y", "z", "w"],
            &[
                ("x", "a"),
                ("x", "b"),
                ("x", "c"),
                ("a", "d"),
                ("a", "e"),
                ("b", "d"),
                ("b", "f"),
                ("c", "e"),
                ("c", "f"),
                ("d", "y"),
                ("e", "z"),
                ("f", "w"),
            ],
            &["y", "z", "w"],
            &[],
        ),
        Family::M1 => inv_closure(&["x", "a", "b", "c", "d", "y"], &with(&[("x", "y")]), &["y"], &[("c", "x"), ("d", "x")]),
        Family::M2 => inv_closure(&["x", "a", "b"], &[("x", "a"), ("x", "b")], &["b"], &[("a", "a")]),
    };
    Structure::Involutive(p.expect("pattern instance"))
}
