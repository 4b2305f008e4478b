//! Backtracking search for order-preserving maps, optionally commuting with
//! involutions, with per-element candidate sets.
//!
//! Every assignment narrows the candidates of all comparable unassigned
//! elements (forward checking); the next element is the one with the fewest
//! candidates left. Solutions come out in a deterministic order.

use crate::bits::Bits;
use crate::order::Poset;

const NONE: usize = usize::MAX;

pub(crate) struct MapSearch {
    cod: Poset,
    dinv: Option<Vec<usize>>,
    cinv: Option<Vec<usize>>,
    related: Vec<Vec<(usize, bool)>>,
    domains: Vec<Bits>,
    assign: Vec<usize>,
    stack: Vec<Frame>,
    state: State,
}

struct Frame {
    var: usize,
    cands: Vec<usize>,
    pos: usize,
    domains: Vec<Bits>,
    assign: Vec<usize>,
}

#[derive(PartialEq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl MapSearch {
    /// Searches monotone maps `dom -> cod`. When both involutions are given the
    /// maps must also commute with them. `allowed[x]` restricts the image of `x`.
    pub fn new(
        dom: &Poset,
        cod: &Poset,
        inv: Option<(&[usize], &[usize])>,
        allowed: Option<Vec<Bits>>,
    ) -> Self {
        let n = dom.len();
        let m = cod.len();
        let mut domains = allowed.unwrap_or_else(|| vec![Bits::full(m); n]);
        assert_eq!(domains.len(), n);
        let (dinv, cinv) = match inv {
            Some((d, c)) => (Some(d.to_vec()), Some(c.to_vec())),
            None => (None, None),
        };
        if let (Some(di), Some(ci)) = (&dinv, &cinv) {
            let fixed = Bits::from_iter(m, (0..m).filter(|&v| ci[v] == v));
            let low = Bits::from_iter(m, (0..m).filter(|&v| cod.le(v, ci[v])));
            let high = Bits::from_iter(m, (0..m).filter(|&v| cod.le(ci[v], v)));
            for x in 0..n {
                if di[x] == x {
                    domains[x].intersect_with(&fixed);
                }
                if dom.le(x, di[x]) {
                    domains[x].intersect_with(&low);
                }
                if dom.le(di[x], x) {
                    domains[x].intersect_with(&high);
                }
            }
            for x in 0..n {
                let mirrored = Bits::from_iter(m, domains[di[x]].iter().map(|v| ci[v]));
                domains[x].intersect_with(&mirrored);
            }
        }
        let related = (0..n)
            .map(|x| (0..n).filter(|&y| y != x && dom.comparable(x, y)).map(|y| (y, dom.le(x, y))).collect())
            .collect();
        let state = if domains.iter().any(Bits::is_empty) { State::Done } else { State::Fresh };
        MapSearch {
            cod: cod.clone(),
            dinv,
            cinv,
            related,
            domains,
            assign: vec![NONE; n],
            stack: Vec::new(),
            state,
        }
    }

    fn set(&mut self, x: usize, v: usize) -> bool {
        self.assign[x] = v;
        self.domains[x] = Bits::from_iter(self.cod.len(), [v]);
        for &(y, x_le_y) in &self.related[x] {
            let w = self.assign[y];
            if w != NONE {
                let ok = if x_le_y { self.cod.le(v, w) } else { self.cod.le(w, v) };
                if !ok {
                    return false;
                }
                continue;
            }
            let bound = if x_le_y { self.cod.up_bits(v) } else { self.cod.down_bits(v) };
            self.domains[y].intersect_with(bound);
            if self.domains[y].is_empty() {
                return false;
            }
        }
        true
    }

    fn try_assign(&mut self, x: usize, v: usize) -> bool {
        if !self.set(x, v) {
            return false;
        }
        let (Some(di), Some(ci)) = (&self.dinv, &self.cinv) else {
            return true;
        };
        let (p, pv) = (di[x], ci[v]);
        if p == x {
            return pv == v;
        }
        if self.assign[p] != NONE {
            return self.assign[p] == pv;
        }
        if !self.domains[p].contains(pv) {
            return false;
        }
        self.set(p, pv)
    }

    fn pick(&self) -> Option<usize> {
        (0..self.assign.len())
            .filter(|&x| self.assign[x] == NONE)
            .min_by_key(|&x| (self.domains[x].count(), x))
    }

    fn push(&mut self, var: usize) {
        self.stack.push(Frame {
            var,
            cands: self.domains[var].iter().collect(),
            pos: 0,
            domains: self.domains.clone(),
            assign: self.assign.clone(),
        });
    }
}

impl Iterator for MapSearch {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                match self.pick() {
                    None => {
                        self.state = State::Done;
                        return Some(self.assign.clone());
                    }
                    Some(v) => self.push(v),
                }
            }
            State::Running => {}
        }
        loop {
            let Some(frame) = self.stack.last_mut() else {
                self.state = State::Done;
                return None;
            };
            if frame.pos == frame.cands.len() {
                self.stack.pop();
                continue;
            }
            let (var, val) = (frame.var, frame.cands[frame.pos]);
            frame.pos += 1;
            self.domains.clone_from(&frame.domains);
            self.assign.clone_from(&frame.assign);
            if !self.try_assign(var, val) {
                continue;
            }
            match self.pick() {
                None => return Some(self.assign.clone()),
                Some(v) => self.push(v),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_monotone_maps_between_small_posets() {
        let c2 = Poset::chain(&["0", "1"]);
        let a2 = Poset::antichain(&["a", "b"]);
        assert_eq!(MapSearch::new(&c2, &c2, None, None).count(), 3);
        assert_eq!(MapSearch::new(&a2, &c2, None, None).count(), 4);
        assert_eq!(MapSearch::new(&Poset::empty(), &c2, None, None).count(), 1);
        assert_eq!(MapSearch::new(&c2, &Poset::empty(), None, None).count(), 0);
    }

    #[test]
    fn maps_are_distinct_and_monotone() {
        let c3 = Poset::chain(&["0", "1", "2"]);
        let maps: Vec<_> = MapSearch::new(&c3, &c3, None, None).collect();
        // non-decreasing words of length 3 over 3 letters
        assert_eq!(maps.len(), 10);
        let mut sorted = maps.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
        assert!(maps.iter().all(|f| f[0] <= f[1] && f[1] <= f[2]));
    }
}
