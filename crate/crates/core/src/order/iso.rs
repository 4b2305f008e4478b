use super::Poset;

/// An order isomorphism `p -> q`, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    find_isomorphism_with(p, q, None)
}

/// As [`find_isomorphism`], additionally commuting with the given involutions.
pub fn find_isomorphism_with(p: &Poset, q: &Poset, inv: Option<(&[usize], &[usize])>) -> Option<Vec<usize>> {
    let n = p.len();
    if n != q.len() {
        return None;
    }
    let pk = keys(p, inv.map(|(a, _)| a));
    let qk = keys(q, inv.map(|(_, b)| b));
    let mut ps = pk.clone();
    let mut qs = qk.clone();
    ps.sort();
    qs.sort();
    if ps != qs {
        return None;
    }
    let order = p.linear_extension();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut search = Search { p, q, inv, pk: &pk, qk: &qk, order: &order, map: &mut map, used: &mut used };
    search.run(0).then_some(map)
}

/// Per-element invariants preserved by isomorphisms.
fn keys(p: &Poset, inv: Option<&[usize]>) -> Vec<(usize, usize, u8)> {
    p.elements()
        .map(|x| {
            let below = p.elements().filter(|&y| p.le(y, x)).count();
            let above = p.elements().filter(|&y| p.le(x, y)).count();
            let tag = inv.map_or(0, |i| 1 + (i[x] == x) as u8 * 4 + p.le(x, i[x]) as u8 * 2 + p.le(i[x], x) as u8);
            (below, above, tag)
        })
        .collect()
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    inv: Option<(&'a [usize], &'a [usize])>,
    pk: &'a [(usize, usize, u8)],
    qk: &'a [(usize, usize, u8)],
    order: &'a [usize],
    map: &'a mut Vec<usize>,
    used: &'a mut Vec<bool>,
}

impl Search<'_> {
    fn fits(&self, x: usize, y: usize) -> bool {
        !self.used[y]
            && self.pk[x] == self.qk[y]
            && self.order.iter().all(|&a| {
                let b = self.map[a];
                b == usize::MAX || (self.p.le(a, x) == self.q.le(b, y) && self.p.le(x, a) == self.q.le(y, b))
            })
    }

    fn place(&mut self, x: usize, y: usize) {
        self.map[x] = y;
        self.used[y] = true;
    }

    fn unplace(&mut self, x: usize) {
        self.used[self.map[x]] = false;
        self.map[x] = usize::MAX;
    }

    fn run(&mut self, k: usize) -> bool {
        let Some(&x) = self.order.get(k) else {
            return true;
        };
        if self.map[x] != usize::MAX {
            return self.run(k + 1);
        }
        for y in self.q.elements() {
            if !self.fits(x, y) {
                continue;
            }
            self.place(x, y);
            let partner = self.inv.map(|(pi, qi)| (pi[x], qi[y]));
            let ok = match partner {
                Some((px, qy)) if px != x => {
                    if self.fits(px, qy) {
                        self.place(px, qy);
                        let ok = self.run(k + 1);
                        if !ok {
                            self.unplace(px);
                        }
                        ok
                    } else {
                        false
                    }
                }
                Some((_, qy)) if qy != y => false,
                _ => self.run(k + 1),
            };
            if ok {
                return true;
            }
            self.unplace(x);
        }
        false
    }
}
