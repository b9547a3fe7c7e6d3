use std::collections::BTreeSet;

use fischer_core::constructions::{
    affine_as_fs, affine_space, dual_affine_plane, fano_plane, fischer_from_involutions,
    hall_triple_81, sym_fischer,
};
use fischer_core::incidence::{isomorphic, TauCommutation, DEFAULT_RANK_CAP};
use fischer_core::{Permutation, PlaneClass, Rank, TripleSystem};
use proptest::prelude::*;

/// Closure by repeated passes over all lines.
fn naive_closure(s: &TripleSystem, seed: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let before = set.len();
        for &[a, b, c] in s.lines() {
            let count = [a, b, c].iter().filter(|p| set.contains(p)).count();
            if count >= 2 {
                set.extend([a, b, c]);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// Smallest `k` with a `k`-subset generating everything, by trying subsets.
fn brute_rank(s: &TripleSystem) -> usize {
    let n = s.n_points();
    fn search(s: &TripleSystem, chosen: &mut Vec<usize>, start: usize, k: usize) -> bool {
        if chosen.len() == k {
            return naive_closure(s, chosen).len() == s.n_points();
        }
        for p in start..s.n_points() {
            chosen.push(p);
            if search(s, chosen, p + 1, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    (1..=n).find(|&k| search(s, &mut Vec::new(), 0, k)).unwrap()
}

fn binomial3(n: usize) -> usize {
    n * n.saturating_sub(1) * n.saturating_sub(2) / 6
}

fn fischer_spaces() -> Vec<(String, TripleSystem)> {
    let mut out = vec![("DA(2,2)".to_string(), dual_affine_plane())];
    for n in 1..=3 {
        out.push((format!("AG({n},3)"), affine_space(n)));
    }
    for n in 3..=7 {
        out.push((format!("Sym({n})"), sym_fischer(n)));
    }
    out.push(("Hall-81".to_string(), hall_triple_81().unwrap()));
    out
}

#[test]
fn tau_axioms_hold_on_every_construction() {
    for (name, s) in fischer_spaces() {
        let r = s.tau_axiom_check();
        assert!(r.passed(), "{name}: {:?}", r.failure);
        assert_eq!(r.pairs_checked, s.n_points() * (s.n_points() - 1));
    }
    assert!(!fano_plane().tau_axiom_check().passed());
}

#[test]
fn planes_are_dual_affine_or_affine() {
    for (name, s) in fischer_spaces() {
        for plane in s.planes() {
            assert!(
                matches!(plane.class, PlaneClass::DA22 | PlaneClass::AG23),
                "{name}: {:?}",
                plane.class
            );
        }
        assert!(s.is_fischer(), "{name}");
    }
    assert!(!fano_plane().is_fischer());
    assert!(affine_space(3).is_affine_type());
    assert!(hall_triple_81().unwrap().is_affine_type());
    assert!(!sym_fischer(5).is_affine_type());
    assert_eq!(sym_fischer(4).fischer_plane_classes(), Some((1, 0)));
}

#[test]
fn sym_line_counts() {
    for n in 2..=7 {
        let s = sym_fischer(n);
        assert_eq!(s.n_points(), n * (n - 1) / 2);
        assert_eq!(s.n_lines(), binomial3(n), "n = {n}");
    }
}

#[test]
fn ranks_against_brute_force() {
    for n in 3..=6 {
        let s = sym_fischer(n);
        assert_eq!(s.rank(DEFAULT_RANK_CAP), Rank::Exact(brute_rank(&s)));
        assert_eq!(s.rank(DEFAULT_RANK_CAP), Rank::Exact(n - 1));
    }
    for n in 1..=3 {
        let s = affine_space(n);
        assert_eq!(s.rank(DEFAULT_RANK_CAP), Rank::Exact(brute_rank(&s)));
        assert_eq!(s.rank(DEFAULT_RANK_CAP), Rank::Exact(n + 1));
    }
}

#[test]
fn tau_commutation_separates_affine_spaces() {
    for n in 1..=3 {
        assert_eq!(affine_space(n).affine_tau_commutation(), TauCommutation::Holds);
    }
    // Sym(3) gives a single line, i.e. AG(1,3)
    assert_eq!(sym_fischer(3).affine_tau_commutation(), TauCommutation::Holds);
    for n in 4..=7 {
        assert!(matches!(sym_fischer(n).affine_tau_commutation(), TauCommutation::Witness(..)));
    }
    let hall = hall_triple_81().unwrap();
    let TauCommutation::Witness(x, y, z) = hall.affine_tau_commutation() else {
        panic!("Hall system satisfies the identity");
    };
    let t = |p| hall.tau(p).unwrap();
    assert_ne!(t(x).then(&t(y)).then(&t(z)), t(z).then(&t(y)).then(&t(x)));
}

#[test]
fn constructions_from_involutions() {
    for n in 3..=6 {
        let gens: Vec<Permutation> = (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect();
        let fs = fischer_from_involutions(&gens).unwrap();
        assert_eq!(fs.class.len(), n * (n - 1) / 2);
        assert!(isomorphic(&fs.system, &sym_fischer(n)).unwrap().is_some());
    }
    for n in 1..=3 {
        let s = affine_as_fs(n).unwrap();
        assert!(isomorphic(&s, &affine_space(n)).unwrap().is_some());
    }
    assert!(isomorphic(&dual_affine_plane(), &sym_fischer(4)).unwrap().is_some());
}

#[test]
fn disjoint_unions() {
    let s = sym_fischer(4).disjoint_union(&affine_space(2));
    assert_eq!(s.n_points(), 15);
    assert_eq!(s.connected_components().len(), 2);
    assert!(s.tau_axiom_check().passed());
    assert_eq!(s.rank(DEFAULT_RANK_CAP), Rank::Exact(3 + 3));
}

fn system_strategy() -> impl Strategy<Value = TripleSystem> {
    prop_oneof![
        Just(affine_space(2)),
        Just(affine_space(3)),
        Just(sym_fischer(5)),
        Just(sym_fischer(6)),
        Just(dual_affine_plane().disjoint_union(&affine_space(1))),
    ]
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_monotone(
        s in system_strategy(),
        seed in prop::collection::vec(0usize..1000, 0..5),
        extra in 0usize..1000,
    ) {
        let n = s.n_points();
        let seed: Vec<usize> = seed.into_iter().map(|p| p % n).collect();
        let c = s.closure(&seed).unwrap();
        let as_set: BTreeSet<usize> = c.iter().copied().collect();
        prop_assert_eq!(&as_set, &naive_closure(&s, &seed));
        prop_assert_eq!(s.closure(&c).unwrap().len(), c.len());
        let mut bigger = seed.clone();
        bigger.push(extra % n);
        let d: BTreeSet<usize> = s.closure(&bigger).unwrap().into_iter().collect();
        prop_assert!(as_set.is_subset(&d));
    }

    #[test]
    fn tau_is_an_involutive_automorphism(s in system_strategy(), p in 0usize..1000) {
        let t = s.tau(p % s.n_points()).unwrap();
        prop_assert!(t.then(&t).is_identity());
        prop_assert!(s.is_automorphism(&t));
    }
}

#[test]
fn invalid_inputs() {
    assert!(TripleSystem::new(3, [[0, 1, 3]]).is_err());
    assert!(TripleSystem::new(3, [[0, 1, 1]]).is_err());
    assert!(TripleSystem::new(4, [[0, 1, 2], [0, 1, 3]]).is_err());
    assert!(affine_space(1).closure(&[5]).is_err());
}
