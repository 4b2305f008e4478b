use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::projectivity::Structure;

/// The configurations that force nullary unification type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Crown `x ≤ a, b ≤ c, d ≤ y` without a middle element (lattices).
    Bdl,
    /// Two fixed points above a crown without a middle element (Kleene).
    K1,
    /// Three pairwise bounded elements without a common bound below its image (Kleene).
    K2,
    /// Crown below `i(x)` with a fixed point above `x`, no middle element (De Morgan).
    M1,
    /// An element below its image with no fixed point above it (De Morgan).
    M2,
    /// Same shape as K2, for De Morgan.
    M3,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::Bdl, Family::K1, Family::K2, Family::M1, Family::M2, Family::M3];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Bdl => "bdl",
            Family::K1 => "k1",
            Family::K2 => "k2",
            Family::M1 => "m1",
            Family::M2 => "m2",
            Family::M3 => "m3",
        }
    }

    /// Names of the tuple slots, in order.
    pub fn slots(self) -> &'static [&'static str] {
        match self {
            Family::Bdl | Family::M1 => &["x", "a", "b", "c", "d", "y"],
            Family::K1 => &["x", "a", "b", "c", "d", "y", "z"],
            Family::K2 | Family::M3 => &["x", "a", "b", "c", "d", "e", "f", "y", "z", "w"],
            Family::M2 => &["x", "a", "b"],
        }
    }

    fn involutive(self) -> bool {
        self != Family::Bdl
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown family `{s}`")))
    }
}

struct Ctx<'a> {
    p: &'a Poset,
    inv: Option<&'a [usize]>,
}

impl Ctx<'_> {
    fn le(&self, a: usize, b: usize) -> bool {
        self.p.le(a, b)
    }

    fn i(&self, x: usize) -> usize {
        self.inv.map_or(x, |inv| inv[x])
    }

    fn fixed(&self, x: usize) -> bool {
        self.i(x) == x
    }

    /// No `e` with every low below it and every high above it.
    fn nothing_between(&self, lows: &[usize], highs: &[usize]) -> bool {
        !self.p.elements().any(|e| lows.iter().all(|&l| self.le(l, e)) && highs.iter().all(|&h| self.le(e, h)))
    }

    fn no_fixed_above(&self, a: usize) -> bool {
        !self.p.elements().any(|c| self.fixed(c) && self.le(a, c))
    }

    fn no_bound_below_image(&self, xs: &[usize]) -> bool {
        !self.p.elements().any(|g| xs.iter().all(|&x| self.le(x, g)) && self.le(g, self.i(g)))
    }

    /// The clauses whose last variable sits at position `t.len() - 1`.
    fn newest(&self, family: Family, t: &[usize]) -> bool {
        let k = t.len();
        let le = |a: usize, b: usize| self.le(t[a], t[b]);
        match family {
            Family::Bdl | Family::K1 | Family::M1 => match k {
                1 => true,
                2 => le(0, 1),
                3 => le(0, 2),
                4 => le(1, 3) && le(2, 3) && (family != Family::M1 || self.le(t[3], self.i(t[0]))),
                5 => {
                    le(1, 4)
                        && le(2, 4)
                        && (family != Family::M1 || self.le(t[4], self.i(t[0])))
                        && self.nothing_between(&t[1..3], &t[3..5])
                }
                6 => match family {
                    Family::Bdl => le(3, 5) && le(4, 5),
                    Family::K1 => le(3, 5) && self.fixed(t[5]),
                    _ => le(0, 5) && self.fixed(t[5]),
                },
                _ => le(4, 6) && self.fixed(t[6]),
            },
            Family::K2 | Family::M3 => match k {
                1 => true,
                2 => le(0, 1),
                3 => le(0, 2),
                4 => le(0, 3) && self.no_bound_below_image(&t[1..4]),
                5 => le(1, 4) && le(2, 4),
                6 => le(1, 5) && le(3, 5),
                7 => le(2, 6) && le(3, 6),
                8 => le(4, 7) && self.fixed(t[7]),
                9 => le(5, 8) && self.fixed(t[8]),
                _ => le(6, 9) && self.fixed(t[9]),
            },
            Family::M2 => match k {
                1 => true,
                2 => le(0, 1) && self.le(t[1], self.i(t[1])) && self.no_fixed_above(t[1]),
                _ => le(0, 2) && self.fixed(t[2]),
            },
        }
    }

    fn search(&self, family: Family, t: &mut Vec<usize>) -> bool {
        if t.len() == family.slots().len() {
            return true;
        }
        for v in self.p.elements() {
            t.push(v);
            if self.newest(family, t) && self.search(family, t) {
                return true;
            }
            t.pop();
        }
        false
    }
}

fn context(s: &Structure, family: Family) -> Result<Ctx<'_>> {
    match s {
        Structure::Plain(p) if !family.involutive() => Ok(Ctx { p, inv: None }),
        Structure::Involutive(p) if family.involutive() => Ok(Ctx { p: p.base(), inv: Some(p.inv()) }),
        Structure::Plain(_) => Err(Error::VarietyMismatch(format!("the {family} pattern needs an involutive poset"))),
        Structure::Involutive(_) => Err(Error::VarietyMismatch("the bdl pattern needs a plain poset".into())),
    }
}

/// The lexicographically first tuple satisfying every clause of the family, if any.
pub fn find_null_pattern(s: &Structure, family: Family) -> Result<Option<Vec<usize>>> {
    let ctx = context(s, family)?;
    let mut t = Vec::with_capacity(family.slots().len());
    Ok(ctx.search(family, &mut t).then_some(t))
}

/// Re-checks every clause of the family on a complete tuple.
pub fn verify_null_pattern(s: &Structure, family: Family, tuple: &[usize]) -> Result<bool> {
    let ctx = context(s, family)?;
    if tuple.len() != family.slots().len() {
        return Err(Error::Precondition(format!("the {family} pattern has {} slots", family.slots().len())));
    }
    if tuple.iter().any(|&x| x >= s.base().len()) {
        return Err(Error::OutsideCodomain { element: "pattern slot".into() });
    }
    Ok((1..=tuple.len()).all(|k| ctx.newest(family, &tuple[..k])))
}
