use std::collections::HashSet;

use super::Poset;

/// A canonical relabelling: `order[k]` is the element placed at position `k`, and
/// `code` is the lexicographically least encoding over all relabellings that
/// preserve the per-element invariants. Two structures are isomorphic iff
/// their codes agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub order: Vec<usize>,
    pub code: Vec<u32>,
}

/// Canonical form of a poset, optionally with an involution that must be respected.
pub fn canonical_form(p: &Poset, inv: Option<&[usize]>) -> Canonical {
    let n = p.len();
    let key = |x: usize| {
        let below = p.elements().filter(|&y| p.le(y, x)).count();
        let above = p.elements().filter(|&y| p.le(x, y)).count();
        let tag = inv.map_or(0, |i| (i[x] == x) as usize * 4 + p.le(x, i[x]) as usize * 2 + p.le(i[x], x) as usize);
        (below, above, tag)
    };
    let keys: Vec<_> = p.elements().map(key).collect();
    let mut slots: Vec<_> = keys.clone();
    slots.sort();
    let mut state = Canon {
        p,
        inv,
        keys: &keys,
        slots: &slots,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::new(),
        best: None,
    };
    state.run();
    let (code, order) = state.best.expect("at least one relabelling");
    Canonical { order, code }
}

struct Canon<'a> {
    p: &'a Poset,
    inv: Option<&'a [usize]>,
    keys: &'a [(usize, usize, usize)],
    slots: &'a [(usize, usize, usize)],
    perm: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Canon<'_> {
    fn run(&mut self) {
        let k = self.perm.len();
        if let Some((best, _)) = &self.best {
            let len = self.code.len();
            if self.code[..] > best[..len] {
                return;
            }
        }
        if k == self.keys.len() {
            let better = match &self.best {
                None => true,
                Some((best, _)) => self.code < *best,
            };
            if better {
                self.best = Some((self.code.clone(), self.perm.clone()));
            }
            return;
        }
        for x in 0..self.keys.len() {
            if self.used[x] || self.keys[x] != self.slots[k] {
                continue;
            }
            let mark = self.code.len();
            for &y in &self.perm {
                self.code.push(self.p.le(x, y) as u32);
                self.code.push(self.p.le(y, x) as u32);
            }
            if let Some(inv) = self.inv {
                let pos = if inv[x] == x { k } else { self.perm.iter().position(|&y| y == inv[x]).unwrap_or(self.keys.len()) };
                self.code.push(pos as u32);
            }
            self.perm.push(x);
            self.used[x] = true;
            self.run();
            self.used[x] = false;
            self.perm.pop();
            self.code.truncate(mark);
        }
    }
}

/// One poset per isomorphism class with at most `k` elements, by increasing size.
///
/// Each class of size `s` is reached from a class of size `s - 1` by adding a
/// new maximal element above some downset.
pub fn enumerate_posets_upto(k: usize) -> impl Iterator<Item = Poset> {
    let mut levels = vec![vec![Poset::empty()]];
    for s in 1..=k {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &levels[s - 1] {
            for down in downsets(p) {
                let q = Poset::from_fn(names(s), |a, b| match (a == s - 1, b == s - 1) {
                    (false, false) => p.le(a, b),
                    (false, true) => down.contains(&a),
                    (true, false) => false,
                    (true, true) => true,
                });
                let canon = canonical_form(&q, None);
                if seen.insert(canon.code) {
                    next.push(Poset::from_fn(names(s), |a, b| q.le(canon.order[a], canon.order[b])));
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten()
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every downset of `p`, by subset filtering (small posets only).
pub(crate) fn downsets(p: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    assert!(n < 24, "downsets by subset filtering");
    (0u32..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|xs| p.is_downset(xs))
        .collect()
}
