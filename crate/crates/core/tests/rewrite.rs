use std::collections::BTreeSet;

use fischer_core::constructions::{affine_space, f3_index};
use fischer_core::incidence::isomorphic;
use fischer_core::rewrite::{
    build_q, count_t, enumerate_normal, prop1_check, reduce, rho_apply, Equivalence, Move, Word,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Position labels -1, 1, 2, …, m of a word of the given length.
fn positions(len: usize) -> Vec<i64> {
    std::iter::once(-1).chain(1..len as i64).collect()
}

/// The normal-form conditions, read off position by position.
fn oracle_normal(w: &[u8]) -> bool {
    let pos = positions(w.len());
    let at = |j: i64| pos.iter().position(|&p| p == j).map(|i| w[i]);
    let m = *pos.last().unwrap();
    for s in w {
        if w.iter().filter(|t| *t == s).count() > 2 {
            return false;
        }
    }
    for &j in pos.iter().filter(|&&j| j <= m - 2) {
        let next = if j == -1 { 1 } else { j + 2 };
        if at(j) > at(next) {
            return false;
        }
    }
    for (a, &j) in pos.iter().enumerate() {
        for (b, &k) in pos.iter().enumerate() {
            if a == b || w[a] != w[b] {
                continue;
            }
            let odd_max = pos.iter().filter(|&&l| l.rem_euclid(2) == 1).map(|&l| at(l).unwrap()).max();
            if (j - k).abs() != 2 || j % 2 != 0 || odd_max.is_some_and(|o| w[a] <= o) {
                return false;
            }
        }
    }
    true
}

/// The point of `AG(n-1,3)` a word stands for: `e_head`, then `v -> -e_s - v`
/// per later symbol, with `e_n = 0`.
fn affine_value(n: usize, w: &[u8]) -> usize {
    let unit = |s: u8| {
        let mut v = vec![0u8; n - 1];
        if (s as usize) < n {
            v[s as usize - 1] = 1;
        }
        v
    };
    let mut v = unit(w[0]);
    for &s in &w[1..] {
        let e = unit(s);
        v = v.iter().zip(&e).map(|(a, b)| (6 - a - b) % 3).collect();
    }
    f3_index(&v)
}

fn all_words(n: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=n as u8).map(move |s| [w.as_slice(), &[s]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=4 {
        let brute: BTreeSet<Vec<u8>> =
            all_words(n, 2 * n).into_iter().filter(|w| oracle_normal(w)).collect();
        let listed: BTreeSet<Vec<u8>> = enumerate_normal(n)
            .unwrap()
            .into_iter()
            .map(|w| w.word().symbols().to_vec())
            .collect();
        assert_eq!(brute, listed, "n = {n}");
    }
}

#[test]
fn enumeration_sizes_and_order() {
    for n in 1..=8 {
        let words = enumerate_normal(n).unwrap();
        assert_eq!(words.len(), 3usize.pow(n as u32 - 1), "n = {n}");
        let keys: Vec<_> = words.iter().map(|w| (w.word().symbols().len(), w.word().symbols().to_vec())).collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
        if n <= 6 {
            assert!(words.iter().all(|w| oracle_normal(w.word().symbols())));
        }
    }
}

#[test]
fn t_counts_closed_form() {
    for n in 1..=8 {
        for k in 1..=n {
            let expected = (2i64.pow(k as u32) - (-1i64).pow(k as u32)) / 3;
            assert_eq!(count_t(n, k).unwrap() as i64, expected, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn normal_forms_are_distinct_points() {
    for n in 2..=6 {
        let images: BTreeSet<usize> = enumerate_normal(n)
            .unwrap()
            .iter()
            .map(|w| affine_value(n, w.word().symbols()))
            .collect();
        assert_eq!(images.len(), 3usize.pow(n as u32 - 1));
    }
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new(n, (0..len).map(|_| rng.gen_range(1..=n as u8)).collect()).unwrap()
}

/// A random move or inverse move.
fn perturb(rng: &mut ChaCha8Rng, n: usize, w: &mut Vec<u8>) {
    let len = w.len();
    match rng.gen_range(0..6) {
        0 => {
            Move::ChainSwap { at: rng.gen_range(0..len) }.apply(w);
        }
        1 => {
            Move::DropHeadEcho.apply(w);
        }
        2 => {
            let at = rng.gen_range(1..=len);
            let s = rng.gen_range(1..=n as u8);
            w.splice(at..at, [s, s]);
        }
        3 => {
            Move::Cancel { at: rng.gen_range(1..len.max(2)) }.apply(w);
        }
        4 => {
            Move::Braid { at: rng.gen_range(1..len.max(2)) }.apply(w);
        }
        _ => {
            let head = w[0];
            w.insert(1, head);
        }
    }
}

#[test]
fn reduction_is_confluent_under_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..10_000 {
        let n = rng.gen_range(2..=6);
        let w = random_word(&mut rng, n, 10);
        let mut v = w.symbols().to_vec();
        for _ in 0..rng.gen_range(1..8) {
            perturb(&mut rng, n, &mut v);
        }
        let v = Word::new(n, v).unwrap();
        assert_eq!(affine_value(n, w.symbols()), affine_value(n, v.symbols()), "move changed the point");
        let (a, b) = (reduce(&w).unwrap(), reduce(&v).unwrap());
        assert_eq!(a, b, "trial {trial}: {w} vs {v}");
        assert_eq!(affine_value(n, a.word().symbols()), affine_value(n, w.symbols()));
    }
}

#[test]
fn reduction_respects_generating_equivalences() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2_500 {
        for eq in Equivalence::ALL {
            let n = rng.gen_range(2..=5);
            let k = eq.min_words() + rng.gen_range(0..2);
            let xs: Vec<Word> = (0..k).map(|_| random_word(&mut rng, n, 3)).collect();
            let (l, r) = eq.instantiate(&xs).unwrap();
            assert_eq!(reduce(&l).unwrap(), reduce(&r).unwrap(), "{eq:?}: {l} vs {r}");
        }
    }
}

proptest! {
    #[test]
    fn reduce_is_idempotent(n in 1usize..7, raw in prop::collection::vec(1u8..7, 1..14)) {
        let raw: Vec<u8> = raw.into_iter().map(|s| (s - 1) % n as u8 + 1).collect();
        let w = Word::new(n, raw).unwrap();
        let r = reduce(&w).unwrap();
        prop_assert!(r.word().is_normal());
        prop_assert_eq!(reduce(r.word()).unwrap(), r.clone());
        prop_assert_eq!(affine_value(n, r.word().symbols()), affine_value(n, w.symbols()));
    }

    #[test]
    fn rho_is_an_involution_up_to_reduction(n in 2usize..6, a in prop::collection::vec(1u8..6, 1..5), b in prop::collection::vec(1u8..6, 1..5)) {
        let fix = |v: Vec<u8>| Word::new(n, v.into_iter().map(|s| (s - 1) % n as u8 + 1).collect()).unwrap();
        let (x, y) = (fix(a), fix(b));
        let twice = rho_apply(&y, &rho_apply(&y, &x).unwrap()).unwrap();
        prop_assert_eq!(reduce(&twice).unwrap(), reduce(&x).unwrap());
    }
}

#[test]
fn q_spaces_are_affine() {
    for n in 2..=5 {
        let report = prop1_check(n).unwrap();
        assert!(report.well_defined && report.bijective && report.lines_preserved, "n = {n}");
        let q = build_q(n).unwrap();
        let ag = affine_space(n - 1);
        assert_eq!(q.system.n_lines(), ag.n_lines());
        if ag.n_points() <= 100 {
            assert!(isomorphic(&q.system, &ag).unwrap().is_some());
        }
        // the generator q_i goes to e_i, q_n to 0
        for i in 1..n {
            assert_eq!(report.generator_images[i - 1], 3usize.pow(i as u32 - 1));
        }
        assert_eq!(report.generator_images[n - 1], 0);
    }
}

#[test]
fn q6_is_affine_of_rank_six() {
    let q = build_q(6).unwrap();
    assert_eq!(q.system.n_points(), 243);
    assert!(q.system.is_affine_type());
    assert!(prop1_check(6).unwrap().passed());
}
