use std::collections::BTreeSet;

use morgan_unify::duality::{canonical_iso, demorgan_dual, demorgan_from_dual, downset_algebra, join_irreducibles, principal_downsets};
use morgan_unify::involutive::{enumerate_inv_posets_upto, product, InvMorphism, InvPoset};
use morgan_unify::order::{canonical_form, enumerate_posets_upto, find_isomorphism, find_isomorphism_with, Poset};
use morgan_unify::projectivity::is_projective_dual;
use morgan_unify::unification::{classify, core_of, more_general, verify_null_pattern, Certificate, Structure, UnifType, Variety};
use proptest::prelude::*;

/// A poset on `n` points whose order extends the index order, from a bitmask over pairs i < j.
fn poset_from_bits(n: usize, bits: u64) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                pairs.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    Poset::from_le(&names, &pairs).unwrap()
}

fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max, any::<u64>()).prop_map(|(n, bits)| poset_from_bits(n, bits))
}

fn arb_invposet() -> impl Strategy<Value = InvPoset> {
    let small: Vec<InvPoset> = enumerate_inv_posets_upto(3).filter(|q| !q.is_empty()).collect();
    let all: Vec<InvPoset> = enumerate_inv_posets_upto(5).collect();
    prop_oneof![
        proptest::sample::select(all),
        (proptest::sample::select(small.clone()), proptest::sample::select(small)).prop_map(|(a, b)| product(&a, &b)),
    ]
}

fn is_bijection(map: &[usize]) -> bool {
    let set: BTreeSet<usize> = map.iter().copied().collect();
    set.len() == map.len() && map.iter().all(|&x| x < map.len())
}

/// Unlabelled posets of each size, by brute force over transitive relations compatible with
/// the index order, reduced modulo relabelling.
fn brute_force_counts(max: usize) -> Vec<usize> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for slot in 0..n {
                let mut q = p.clone();
                q.insert(slot, n - 1);
                out.push(q);
            }
        }
        out
    }
    (0..=max)
        .map(|n| {
            let perms = permutations(n);
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut classes = BTreeSet::new();
            for mask in 0u32..(1 << pairs.len()) {
                let mut lt = vec![vec![false; n]; n];
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    lt[i][j] = mask >> k & 1 == 1;
                }
                let transitive = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(lt[a][b] && lt[b][c]) || lt[a][c])));
                if !transitive {
                    continue;
                }
                let code = perms
                    .iter()
                    .map(|p| {
                        let mut m = vec![vec![false; n]; n];
                        for a in 0..n {
                            for b in 0..n {
                                m[p[a]][p[b]] = lt[a][b];
                            }
                        }
                        m
                    })
                    .min()
                    .unwrap();
                classes.insert(code);
            }
            classes.len()
        })
        .collect()
}

#[test]
fn poset_counts_match_brute_force() {
    let oracle = brute_force_counts(5);
    assert_eq!(oracle, vec![1, 1, 2, 5, 16, 63]);
    let mut counts = vec![0; 6];
    for p in enumerate_posets_upto(5) {
        counts[p.len()] += 1;
    }
    assert_eq!(counts, oracle);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labelling(p in arb_poset(6), seed in any::<u64>()) {
        let n = p.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let names: Vec<String> = order.iter().map(|&i| p.name(i).to_string()).collect();
        let pairs: Vec<(String, String)> = p.relation().into_iter().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect();
        let q = Poset::from_le(&names, &pairs).unwrap();
        prop_assert_eq!(canonical_form(&p, None).code, canonical_form(&q, None).code);
        prop_assert!(find_isomorphism(&p, &q).is_some());
    }

    #[test]
    fn distributive_duality_round_trips(p in arb_poset(6)) {
        let u = principal_downsets(&p).unwrap();
        prop_assert!(is_bijection(u.map()));
        let a = downset_algebra(&p);
        prop_assert!(find_isomorphism(&join_irreducibles(&a), &p).is_some());
        prop_assert!(is_bijection(canonical_iso(&a).unwrap().map()));
    }

    #[test]
    fn demorgan_duality_round_trips(q in arb_invposet()) {
        prop_assume!(q.len() <= 6);
        let a = demorgan_from_dual(&q);
        let back = demorgan_dual(&a).unwrap();
        prop_assert!(find_isomorphism_with(back.base(), q.base(), Some((back.inv(), q.inv()))).is_some());
        let iso = canonical_iso(&a).unwrap();
        prop_assert!(is_bijection(iso.map()));
        prop_assert_eq!(a.tags().kleene, q.is_kleene());
    }

    #[test]
    fn plain_classification_is_consistent(p in arb_poset(5)) {
        let c = classify(&Structure::Plain(p.clone()), Variety::Bdl).unwrap();
        prop_assert_eq!(c.solvable, !p.is_empty());
        check_certificate(&c.utype, c.certificate.as_ref(), Variety::Bdl)?;
    }

    #[test]
    fn involutive_classification_is_consistent(q in arb_invposet()) {
        let mut varieties = vec![Variety::DeMorgan];
        if q.is_kleene() {
            varieties.push(Variety::Kleene);
        }
        for v in varieties {
            let c = classify(&Structure::Involutive(q.clone()), v).unwrap();
            prop_assert_eq!(c.solvable, c.certificate.is_some());
            if let Some(core) = &c.core {
                let carrier = core.carrier();
                prop_assert!(carrier.iter().all(|&x| carrier.contains(&q.i(x))));
                if v == Variety::Kleene {
                    prop_assert_eq!(core.closure_pairs_added(), 0);
                }
            }
            check_certificate(&c.utype, c.certificate.as_ref(), v)?;
        }
    }

    #[test]
    fn core_inclusion_is_a_morphism(q in arb_invposet()) {
        prop_assume!(!q.fixed_points().is_empty());
        let core = core_of(&q, Variety::DeMorgan).unwrap();
        let inc = core.inclusion();
        prop_assert!(InvMorphism::new(inc.dom(), &q, inc.map().to_vec()).is_ok());
    }
}

fn check_certificate(utype: &Option<UnifType>, cert: Option<&Certificate>, v: Variety) -> Result<(), TestCaseError> {
    match (utype, cert) {
        (None, None) => {}
        (Some(UnifType::Unitary), Some(Certificate::MostGeneral(u))) => {
            prop_assert!(is_projective_dual(&u.domain(), v).unwrap().projective);
        }
        (Some(UnifType::Finitary), Some(Certificate::MuSet(mu))) => {
            prop_assert!(mu.len() > 1);
            for a in mu {
                for b in mu {
                    if !std::ptr::eq(a, b) {
                        prop_assert!(!more_general(a, b).unwrap());
                    }
                }
            }
        }
        (Some(UnifType::Nullary), Some(Certificate::NullPattern { family, tuple, within })) => {
            prop_assert!(verify_null_pattern(within, *family, tuple).unwrap());
        }
        (t, c) => prop_assert!(false, "type {:?} with certificate {:?}", t, c.is_some()),
    }
    Ok(())
}
