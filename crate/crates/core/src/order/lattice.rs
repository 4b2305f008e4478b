//! Lattice diagnostics and 3-completeness.

use super::Poset;

/// Whether a poset is a (nonempty) lattice or meet semilattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub is_nonempty_lattice: bool,
    /// Nonempty, and every pair has a meet.
    pub is_meet_semilattice: bool,
    /// First pair in canonical order lacking a join or a meet.
    pub witness: Option<(usize, usize)>,
    /// First pair in canonical order lacking a meet.
    pub meet_witness: Option<(usize, usize)>,
}

pub fn lattice_report(p: &Poset) -> LatticeReport {
    let mut witness = None;
    let mut meet_witness = None;
    'outer: for a in p.elements() {
        for b in (a + 1)..p.len() {
            let no_meet = p.meet(a, b).is_none();
            if no_meet && meet_witness.is_none() {
                meet_witness = Some((a, b));
            }
            if witness.is_none() && (no_meet || p.join(a, b).is_none()) {
                witness = Some((a, b));
            }
            if witness.is_some() && meet_witness.is_some() {
                break 'outer;
            }
        }
    }
    let nonempty = !p.is_empty();
    LatticeReport {
        is_nonempty_lattice: nonempty && witness.is_none(),
        is_meet_semilattice: nonempty && meet_witness.is_none(),
        witness,
        meet_witness,
    }
}

/// Outcome of a 3-completeness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCompleteness {
    pub holds: bool,
    /// A set whose pairs are bounded but which has no supremum.
    pub counterexample: Option<Vec<usize>>,
}

impl ThreeCompleteness {
    fn holds() -> Self {
        ThreeCompleteness { holds: true, counterexample: None }
    }

    fn fails(x: Vec<usize>) -> Self {
        ThreeCompleteness { holds: false, counterexample: Some(x) }
    }
}

/// Checks that every subset whose subsets of size below three have an upper
/// bound has a supremum.
///
/// A set has a supremum iff its set of maximal elements does, and its pairs are
/// bounded iff those of its maximal elements are, so only antichains are visited.
/// Nonempty antichains are tried first; the empty set (which needs a bottom once
/// the poset is nonempty) last.
pub fn is_three_complete(p: &Poset) -> ThreeCompleteness {
    let n = p.len();
    let mut bounded = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            bounded[a * n + b] = p.bounded_above(a, b);
        }
    }
    let mut chosen = Vec::new();
    for start in 0..n {
        chosen.push(start);
        if let Some(x) = extend(p, &bounded, &mut chosen) {
            return ThreeCompleteness::fails(x);
        }
        chosen.pop();
    }
    if n > 0 && p.bottom().is_none() {
        return ThreeCompleteness::fails(Vec::new());
    }
    ThreeCompleteness::holds()
}

fn extend(p: &Poset, bounded: &[bool], chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
    let n = p.len();
    if chosen.len() >= 2 && p.join_of(chosen).is_none() {
        return Some(chosen.clone());
    }
    let last = *chosen.last().unwrap();
    for next in (last + 1)..n {
        if chosen.iter().all(|&c| !p.comparable(c, next) && bounded[c * n + next]) {
            chosen.push(next);
            if let Some(x) = extend(p, bounded, chosen) {
                return Some(x);
            }
            chosen.pop();
        }
    }
    None
}

/// The triple-wise form of [`is_three_complete`] for a downset `s` of a lattice `p`:
/// whenever the three pairwise joins of `x, y, z` lie in `s`, so does `x ∨ y ∨ z`.
///
/// Returns `None` when `p` is not a lattice or `s` is not a downset.
pub fn three_complete_in_lattice(p: &Poset, s: &[usize]) -> Option<ThreeCompleteness> {
    if !lattice_report(p).is_nonempty_lattice || !p.is_downset(s) {
        return None;
    }
    let mut member = vec![false; p.len()];
    for &x in s {
        member[x] = true;
    }
    let join = |a: usize, b: usize| p.join(a, b).expect("lattice");
    for (i, &x) in s.iter().enumerate() {
        for (j, &y) in s.iter().enumerate().skip(i + 1) {
            let xy = join(x, y);
            if !member[xy] {
                continue;
            }
            for &z in &s[j + 1..] {
                if member[join(x, z)] && member[join(y, z)] && !member[join(xy, z)] {
                    return Some(ThreeCompleteness::fails(vec![x, y, z]));
                }
            }
        }
    }
    Some(ThreeCompleteness::holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::tests::{crown, diamond_poset};

    #[test]
    fn lattice_reports() {
        assert!(lattice_report(&diamond_poset()).is_nonempty_lattice);
        let ab = Poset::antichain(&["a", "b"]);
        let r = lattice_report(&ab);
        assert!(!r.is_nonempty_lattice);
        assert_eq!(r.witness, Some((0, 1)));
        let r = lattice_report(&crown());
        assert_eq!(r.witness, Some((1, 2)));
        assert_eq!(r.meet_witness, Some((3, 4)));
        assert!(!lattice_report(&Poset::empty()).is_nonempty_lattice);
        assert!(!lattice_report(&Poset::empty()).is_meet_semilattice);
    }

    #[test]
    fn three_completeness_examples() {
        assert!(is_three_complete(&Poset::chain(&["a", "b", "c"])).holds);
        let d = diamond_poset();
        let (s, _) = d.subposet(&crate::order::Selector::Explicit(vec![0, 1, 2])).unwrap();
        assert!(is_three_complete(&s).holds);
        let bowtie =
            Poset::from_covers(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap();
        assert_eq!(is_three_complete(&bowtie).counterexample, Some(vec![0, 1]));
        assert!(is_three_complete(&Poset::empty()).holds);
        // two incomparable points with no upper bound: only the empty set can fail
        assert_eq!(is_three_complete(&Poset::antichain(&["a", "b"])).counterexample, Some(vec![]));
    }

    #[test]
    fn triple_form_on_diamond_downsets() {
        let d = diamond_poset();
        assert_eq!(three_complete_in_lattice(&d, &[0, 1, 2]), Some(ThreeCompleteness::holds()));
        assert_eq!(three_complete_in_lattice(&d, &[1]), None);
        assert_eq!(three_complete_in_lattice(&crown(), &[0]), None);
    }
}
