use crate::involutive::{InvMorphism, InvPoset};
use crate::order::Poset;

/// The substructure of an instance through which every unifier factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    instance: InvPoset,
    structure: InvPoset,
    carrier: Vec<usize>,
    closure_pairs_added: usize,
}

impl Core {
    pub fn structure(&self) -> &InvPoset {
        &self.structure
    }

    pub fn instance(&self) -> &InvPoset {
        &self.instance
    }

    /// The instance element behind each core element.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    /// Pairs the transitive closure added to the clause-defined order.
    pub fn closure_pairs_added(&self) -> usize {
        self.closure_pairs_added
    }

    /// The inclusion of the core into the instance.
    pub fn inclusion(&self) -> InvMorphism {
        InvMorphism::new(&self.structure, &self.instance, self.carrier.clone()).expect("the core order refines the instance order")
    }

    /// Index in the core of an instance element, if it belongs to the core.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.carrier.binary_search(&x).ok()
    }
}

/// The Kleene core: elements `x, i(x)` with `x` below a fixed point, ordered by
/// `x ≤ y` restricted to pairs both in the lower half, both in the upper half,
/// or separated by a fixed point; then closed transitively.
pub fn kleene_core(q: &InvPoset) -> Core {
    let fixed = q.fixed_points();
    let below_fixed = |x: usize| fixed.iter().any(|&z| q.le(x, z));
    let carrier: Vec<usize> = q.elements().filter(|&x| below_fixed(x) || below_fixed(q.i(x))).collect();
    let clause = |x: usize, y: usize| {
        q.le(x, y)
            && ((q.le(x, q.i(x)) && q.le(y, q.i(y)))
                || (q.le(q.i(x), x) && q.le(q.i(y), y))
                || fixed.iter().any(|&z| q.le(x, z) && q.le(z, y)))
    };
    let n = carrier.len();
    let before = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| clause(carrier[a], carrier[b])).count();
    let names = carrier.iter().map(|&x| q.name(x).to_string()).collect();
    let base = Poset::from_fn(names, |a, b| clause(carrier[a], carrier[b]));
    let closure_pairs_added = base.relation().len() - before;
    finish(q, base, carrier, closure_pairs_added)
}

/// The De Morgan core: elements `x` such that a single `y` lies below `x`,
/// `i(x)` and some fixed point, with the restricted order.
pub fn demorgan_core(q: &InvPoset) -> Core {
    let fixed = q.fixed_points();
    let carrier: Vec<usize> = q
        .elements()
        .filter(|&x| q.elements().any(|y| q.le(y, x) && q.le(y, q.i(x)) && fixed.iter().any(|&z| q.le(y, z))))
        .collect();
    let base = q.base().induced(&carrier);
    finish(q, base, carrier, 0)
}

fn finish(q: &InvPoset, base: Poset, carrier: Vec<usize>, closure_pairs_added: usize) -> Core {
    let structure = q
        .induced(&carrier)
        .and_then(|c| c.with_base(base))
        .expect("the core is an involutive poset");
    Core { instance: q.clone(), structure, carrier, closure_pairs_added }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projectivity::condition_report;

    fn build(elements: &[&str], covers: &[(&str, &str)], inv: &[(&str, &str)]) -> InvPoset {
        InvPoset::from_names(Poset::from_covers(elements, covers).unwrap(), inv).unwrap()
    }

    #[test]
    fn kleene_core_examples() {
        let swap = build(&["a", "b"], &[("a", "b")], &[("a", "b"), ("b", "a")]);
        assert!(kleene_core(&swap).structure().is_empty());

        let chain = build(&["x", "z", "y"], &[("x", "z"), ("z", "y")], &[("x", "y"), ("z", "z"), ("y", "x")]);
        let core = kleene_core(&chain);
        assert_eq!(core.structure().base(), chain.base());

        // x < z1 < x' and y' < z2 < y with x < y: no fixed point separates x from y
        let q = build(
            &["x", "z1", "x'", "y'", "z2", "y"],
            &[("x", "z1"), ("z1", "x'"), ("y'", "z2"), ("z2", "y"), ("x", "y"), ("y'", "x'")],
            &[("x", "x'"), ("x'", "x"), ("z1", "z1"), ("y", "y'"), ("y'", "y"), ("z2", "z2")],
        );
        let core = kleene_core(&q);
        let c = core.structure();
        assert_eq!(c.len(), 6);
        assert!(q.le(0, 5) && !c.le(0, 5));
        assert!(q.le(3, 2) && !c.le(3, 2));
        assert_eq!(core.closure_pairs_added(), 0);
        let r = condition_report(c);
        assert!(r.m2.holds() && r.k2.holds());
        core.inclusion();
    }

    #[test]
    fn demorgan_core_examples() {
        let point = InvPoset::point("z");
        assert_eq!(demorgan_core(&point).structure(), &point);
        let swap = build(&["a", "b"], &[], &[("a", "b"), ("b", "a")]);
        assert!(demorgan_core(&swap).structure().is_empty());
        let q = build(
            &["y", "z", "a", "a'", "y'"],
            &[("y", "z"), ("y", "a"), ("y", "a'"), ("z", "y'"), ("a", "y'"), ("a'", "y'")],
            &[("y", "y'"), ("y'", "y"), ("z", "z"), ("a", "a'"), ("a'", "a")],
        );
        assert_eq!(demorgan_core(&q).carrier(), [0, 1, 2, 3, 4]);
        // a point off every fixed point's downset drops out
        let r = build(
            &["z", "p", "p'"],
            &[("p", "p'")],
            &[("z", "z"), ("p", "p'"), ("p'", "p")],
        );
        assert_eq!(demorgan_core(&r).carrier(), [0]);
    }
}
