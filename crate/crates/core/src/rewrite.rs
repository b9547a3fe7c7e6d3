//! Words over `{1, …, n}` presenting the affine space `AG(n-1, 3)`.
//!
//! A word `(i_-1, i_1, …, i_m)` stands for the point obtained from generator
//! `i_-1` by applying the reflections `i_1, …, i_m` in turn. Storage puts the
//! head `i_-1` at index 0 and `i_k` at index `k`. Positions two apart in the
//! original numbering (`-1 ~ 1`, `k ~ k+2`) split a word into two chains:
//!
//! * the *odd* chain: indices `0, 1, 3, 5, …`
//! * the *even* chain: indices `2, 4, 6, …`
//!
//! Elements of the same chain may be swapped freely, which is what makes the
//! normal forms below a matter of choosing two sorted lists.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{affine_size, affine_space};
use crate::incidence::TripleSystem;
use crate::perm::Permutation;

/// Largest alphabet accepted by [`enumerate_normal`].
pub const MAX_ENUMERATION: usize = 8;
/// Largest alphabet accepted by [`build_q`].
pub const MAX_QSPACE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("symbol {symbol} outside 1..={n}")]
    InvalidSymbol { symbol: u8, n: usize },
    #[error("a word needs at least its head symbol")]
    EmptyWord,
    #[error("words over alphabets of size {0} and {1}")]
    AlphabetMismatch(usize, usize),
    #[error("alphabet size {n} outside the supported range ..={max}")]
    TooLarge { n: usize, max: usize },
    #[error("reduction did not terminate within {0} steps")]
    StepLimit(usize),
    #[error("point map not well defined: {0}")]
    NotWellDefined(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    n: usize,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(n: usize, symbols: Vec<u8>) -> Result<Self, RewriteError> {
        if symbols.is_empty() {
            return Err(RewriteError::EmptyWord);
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s == 0 || s as usize > n) {
            return Err(RewriteError::InvalidSymbol { symbol, n });
        }
        Ok(Word { n, symbols })
    }

    /// The one-letter word `(i)`, i.e. the generator `q_i`.
    pub fn generator(n: usize, i: u8) -> Result<Self, RewriteError> {
        Word::new(n, vec![i])
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn head(&self) -> u8 {
        self.symbols[0]
    }

    /// `m`, the number of symbols after the head.
    pub fn length(&self) -> usize {
        self.symbols.len() - 1
    }

    /// Membership in the set of normal forms.
    pub fn is_normal(&self) -> bool {
        let w = &self.symbols;
        let mut counts = [0usize; 256];
        for &s in w {
            counts[s as usize] += 1;
            if counts[s as usize] > 2 {
                return false;
            }
        }
        // i_j <= i_{j+2}
        if w.len() > 1 && w[0] > w[1] {
            return false;
        }
        if (1..w.len().saturating_sub(2)).any(|k| w[k] > w[k + 2]) {
            return false;
        }
        let max_odd = odd_chain(w.len()).map(|k| w[k]).max().unwrap_or(0);
        for j in 0..w.len() {
            for k in j + 1..w.len() {
                if w[j] == w[k] && !(j >= 2 && j % 2 == 0 && k == j + 2 && w[j] > max_odd) {
                    return false;
                }
            }
        }
        true
    }
}

impl core::fmt::Display for Word {
    /// Space-separated symbols, head first.
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A word in normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalWord(Word);

impl NormalWord {
    pub fn new(word: Word) -> Option<Self> {
        word.is_normal().then_some(NormalWord(word))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

fn odd_chain(len: usize) -> impl Iterator<Item = usize> {
    (0..len).filter(|&k| k == 0 || k % 2 == 1)
}

fn even_chain(len: usize) -> impl Iterator<Item = usize> {
    (2..len).step_by(2)
}

fn is_odd_index(k: usize) -> bool {
    k == 0 || k % 2 == 1
}

/// `rho(y)(x)`: `x`, then the tail of `y` reversed, the head of `y`, and the
/// tail of `y`.
pub fn rho_apply(y: &Word, x: &Word) -> Result<Word, RewriteError> {
    if x.n != y.n {
        return Err(RewriteError::AlphabetMismatch(x.n, y.n));
    }
    let tail = &y.symbols[1..];
    let mut symbols = x.symbols.clone();
    symbols.extend(tail.iter().rev());
    symbols.push(y.symbols[0]);
    symbols.extend_from_slice(tail);
    Ok(Word { n: x.n, symbols })
}

/// Applies `rho(ys[0])` first, then `rho(ys[1])`, and so on.
pub fn rho_chain(start: &Word, ys: &[&Word]) -> Result<Word, RewriteError> {
    ys.iter().try_fold(start.clone(), |acc, y| rho_apply(y, &acc))
}

/// The generating equivalences of the presentation, as explicit word pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    /// `rho(x_k)…rho(x_1)(x_1) ≈ rho(x_k)…rho(x_2)(x_1)`, `k >= 1`.
    SelfAction,
    /// `rho(x_k)…rho(x_2)rho(x_2)(x_1) ≈ rho(x_k)…rho(x_3)(x_1)`, `k >= 2`.
    DoubleAction,
    /// `rho(x_k)…rho(x_2)(x_1) ≈ rho(x_k)…rho(x_3)rho(x_1)(x_2)`, `k >= 2`.
    Exchange,
    /// `rho(x_k)…rho(x_2)(x_1) ≈ rho(x_k)…rho(x_5)rho(x_2)rho(x_3)rho(x_4)(x_1)`,
    /// `k >= 4`.
    Reversal,
}

impl Equivalence {
    pub const ALL: [Equivalence; 4] = [
        Equivalence::SelfAction,
        Equivalence::DoubleAction,
        Equivalence::Exchange,
        Equivalence::Reversal,
    ];

    pub fn min_words(self) -> usize {
        match self {
            Equivalence::SelfAction => 1,
            Equivalence::DoubleAction | Equivalence::Exchange => 2,
            Equivalence::Reversal => 4,
        }
    }

    /// Both sides for `xs = [x_1, …, x_k]`.
    pub fn instantiate(self, xs: &[Word]) -> Result<(Word, Word), RewriteError> {
        assert!(xs.len() >= self.min_words(), "too few words for {self:?}");
        let refs: Vec<&Word> = xs.iter().collect();
        let x1 = &xs[0];
        Ok(match self {
            Equivalence::SelfAction => (rho_chain(x1, &refs)?, rho_chain(x1, &refs[1..])?),
            Equivalence::DoubleAction => {
                let mut twice = vec![refs[1]];
                twice.extend_from_slice(&refs[1..]);
                (rho_chain(x1, &twice)?, rho_chain(x1, &refs[2..])?)
            }
            Equivalence::Exchange => {
                let mut swapped = vec![refs[0]];
                swapped.extend_from_slice(&refs[2..]);
                (rho_chain(x1, &refs[1..])?, rho_chain(&xs[1], &swapped)?)
            }
            Equivalence::Reversal => {
                let mut reversed = vec![refs[3], refs[2], refs[1]];
                reversed.extend_from_slice(&refs[4..]);
                (rho_chain(x1, &refs[1..])?, rho_chain(x1, &reversed)?)
            }
        })
    }
}

/// Single rewriting moves on stored words. Each one replaces a word by an
/// equivalent one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Swap two neighbours of one chain: indices `(0, 1)` for `at == 0`,
    /// otherwise `(at, at + 2)`.
    ChainSwap { at: usize },
    /// `(s, s, …) -> (s, …)`.
    DropHeadEcho,
    /// `(…, s, s, …) -> (…, …)` at indices `at, at + 1`, `at >= 1`.
    Cancel { at: usize },
    /// `(…, a, b, a, …) -> (…, b, a, b, …)` at indices `at..at + 3`, `at >= 1`.
    Braid { at: usize },
}

impl Move {
    /// Applies the move if its pattern matches.
    pub fn apply(self, w: &mut Vec<u8>) -> bool {
        match self {
            Move::ChainSwap { at: 0 } if w.len() >= 2 => w.swap(0, 1),
            Move::ChainSwap { at } if at >= 1 && at + 2 < w.len() => w.swap(at, at + 2),
            Move::DropHeadEcho if w.len() >= 2 && w[0] == w[1] => {
                w.remove(1);
            }
            Move::Cancel { at } if at >= 1 && at + 1 < w.len() && w[at] == w[at + 1] => {
                w.drain(at..at + 2);
            }
            Move::Braid { at } if at >= 1 && at + 2 < w.len() && w[at] == w[at + 2] => {
                let (a, b) = (w[at], w[at + 1]);
                w[at] = b;
                w[at + 1] = a;
                w[at + 2] = b;
            }
            _ => return false,
        }
        true
    }
}

/// Moves the entry at chain index `from` to chain index `to` (same chain) by
/// neighbour swaps.
fn slide(w: &mut Vec<u8>, from: usize, to: usize, steps: &mut usize) {
    debug_assert_eq!(is_odd_index(from), is_odd_index(to));
    let prev = |k: usize| if k == 1 { 0 } else { k - 2 };
    let next = |k: usize| if k == 0 { 1 } else { k + 2 };
    let mut k = from;
    while k != to {
        let (at, nk) = if k < to { (k, next(k)) } else { (prev(k), prev(k)) };
        let done = Move::ChainSwap { at }.apply(w);
        debug_assert!(done);
        *steps += 1;
        k = nk;
    }
}

fn find_in(w: &[u8], idx: impl Iterator<Item = usize>, s: u8) -> Vec<usize> {
    idx.filter(|&k| w[k] == s).collect()
}

/// Reduces `w` to its normal form using the moves of [`Move`] only.
///
/// Stages, repeated until none applies: cancel a symbol occurring in both
/// chains; fold a repeated odd-chain symbol into the head; push a third
/// even-chain occurrence into the odd chain; lift an even-chain double above
/// any larger odd-chain symbol. Finally both chains are sorted.
pub fn reduce(word: &Word) -> Result<NormalWord, RewriteError> {
    let mut w = word.symbols.clone();
    let limit = 64 + 16 * w.len() * w.len();
    let mut steps = 0usize;
    loop {
        if steps > limit {
            return Err(RewriteError::StepLimit(limit));
        }
        if !reduce_once(&mut w, &mut steps) {
            break;
        }
    }
    let len = w.len();
    sort_chain(&mut w, odd_chain(len).collect(), &mut steps);
    sort_chain(&mut w, even_chain(len).collect(), &mut steps);
    let out = Word {
        n: word.n,
        symbols: w,
    };
    NormalWord::new(out).ok_or(RewriteError::NotWellDefined("reduction left a non-normal word"))
}

fn reduce_once(w: &mut Vec<u8>, steps: &mut usize) -> bool {
    let len = w.len();
    let symbols: BTreeSet<u8> = w.iter().copied().collect();
    for &s in &symbols {
        let odd = find_in(w, odd_chain(len), s);
        let even = find_in(w, even_chain(len), s);
        if !odd.is_empty() && !even.is_empty() {
            slide(w, odd[0], 1, steps);
            slide(w, even[0], 2, steps);
            *steps += 1;
            return Move::Cancel { at: 1 }.apply(w);
        }
        if odd.len() >= 2 {
            slide(w, odd[0], 0, steps);
            let again = find_in(w, odd_chain(len).skip(1), s);
            slide(w, again[0], 1, steps);
            *steps += 1;
            return Move::DropHeadEcho.apply(w);
        }
        if even.len() >= 3 {
            slide(w, even[0], 2, steps);
            let again = find_in(w, even_chain(len).skip(1), s);
            slide(w, again[0], 4, steps);
            *steps += 1;
            return Move::Braid { at: 2 }.apply(w);
        }
    }
    for &s in &symbols {
        let even = find_in(w, even_chain(len), s);
        if even.len() != 2 {
            continue;
        }
        let larger = odd_chain(len).find(|&k| w[k] > s);
        if let Some(t_at) = larger {
            slide(w, t_at, 3, steps);
            slide(w, even[0], 2, steps);
            let again = find_in(w, even_chain(len).skip(1), s);
            slide(w, again[0], 4, steps);
            *steps += 1;
            return Move::Braid { at: 2 }.apply(w);
        }
    }
    false
}

fn sort_chain(w: &mut Vec<u8>, chain: Vec<usize>, steps: &mut usize) {
    for pass in 0..chain.len() {
        for i in 0..chain.len().saturating_sub(1 + pass) {
            if w[chain[i]] > w[chain[i + 1]] {
                Move::ChainSwap { at: chain[i] }.apply(w);
                *steps += 1;
            }
        }
    }
}

/// All normal forms over `{1, …, n}`, ordered by length then symbols.
///
/// Each symbol is absent, in the odd chain once, in the even chain once, or
/// in the even chain twice (only above every odd-chain symbol); the chain
/// lengths must satisfy `odd - even ∈ {1, 2}`.
pub fn enumerate_normal(n: usize) -> Result<Vec<NormalWord>, RewriteError> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(RewriteError::TooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let (mut odd, mut even, mut doubled) = (Vec::new(), Vec::new(), Vec::new());
        for s in 1..=n as u8 {
            match code / 4usize.pow(s as u32 - 1) % 4 {
                1 => odd.push(s),
                2 => even.push(s),
                3 => doubled.push(s),
                _ => {}
            }
        }
        let max_odd = odd.iter().copied().max().unwrap_or(0);
        if odd.is_empty() || doubled.iter().any(|&d| d < max_odd) {
            continue;
        }
        for &d in &doubled {
            even.push(d);
            even.push(d);
        }
        even.sort_unstable();
        let (a, b) = (odd.len(), even.len());
        if a < b + 1 || a > b + 2 {
            continue;
        }
        let mut symbols = vec![odd[0]];
        for k in 1..a + b {
            symbols.push(if k % 2 == 1 { odd[k.div_ceil(2)] } else { even[k / 2 - 1] });
        }
        let word = Word { n, symbols };
        out.push(NormalWord::new(word).expect("generated words satisfy the conditions"));
    }
    out.sort_by(|x, y| {
        (x.0.symbols.len(), &x.0.symbols).cmp(&(y.0.symbols.len(), &y.0.symbols))
    });
    Ok(out)
}

/// Normal forms using exactly the symbols `{1, …, k}`, counted by brute
/// enumeration.
pub fn count_t(n: usize, k: usize) -> Result<usize, RewriteError> {
    assert!(1 <= k && k <= n, "need 1 <= k <= n");
    let words = enumerate_normal(n)?;
    Ok(words
        .iter()
        .filter(|w| {
            let used: BTreeSet<u8> = w.0.symbols.iter().copied().collect();
            used.len() == k && used.iter().all(|&s| (s as usize) <= k)
        })
        .count())
}

/// The quotient of all words by the equivalence, on normal-form
/// representatives, with the induced reflections and lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSpace {
    pub n: usize,
    pub points: Vec<NormalWord>,
    /// `sigma[q]` maps `p` to the normal form of `rho(q)(p)`.
    pub sigma: Vec<Permutation>,
    pub system: TripleSystem,
}

impl QSpace {
    /// Point id of the generator `q_i`.
    pub fn generator(&self, i: u8) -> usize {
        let w = Word::generator(self.n, i).expect("valid generator");
        self.index_of(&w).expect("generators are normal")
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.points.iter().position(|p| p.word() == w)
    }
}

pub fn build_q(n: usize) -> Result<QSpace, RewriteError> {
    if n > MAX_QSPACE {
        return Err(RewriteError::TooLarge { n, max: MAX_QSPACE });
    }
    let points = enumerate_normal(n)?;
    let index: BTreeMap<&[u8], usize> = points
        .iter()
        .enumerate()
        .map(|(i, w)| (w.0.symbols.as_slice(), i))
        .collect();
    let mut sigma = Vec::with_capacity(points.len());
    let mut lines = BTreeSet::new();
    for (q, wq) in points.iter().enumerate() {
        let mut image = Vec::with_capacity(points.len());
        for (p, wp) in points.iter().enumerate() {
            let r = reduce(&rho_apply(wq.word(), wp.word())?)?;
            let r = index[r.0.symbols.as_slice()];
            if p != q {
                if r == p || r == q {
                    return Err(RewriteError::NotWellDefined("sigma(q) fixes a point p != q"));
                }
                let mut line = [p, q, r];
                line.sort_unstable();
                lines.insert(line);
            }
            image.push(r);
        }
        let perm = Permutation::from_images(image)
            .ok_or(RewriteError::NotWellDefined("sigma(q) is not a bijection"))?;
        sigma.push(perm);
    }
    let system = TripleSystem::new(points.len(), lines)
        .map_err(|_| RewriteError::NotWellDefined("lines overlap in two points"))?;
    Ok(QSpace {
        n,
        points,
        sigma,
        system,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Report {
    pub n: usize,
    /// `map[q]` = index of the image in `AG(n-1,3)`.
    pub map: Vec<usize>,
    /// Images of the generators `q_1, …, q_n`.
    pub generator_images: Vec<usize>,
    pub well_defined: bool,
    pub bijective: bool,
    pub lines_preserved: bool,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.well_defined && self.bijective && self.lines_preserved
    }
}

/// Builds the map `q_i^{sigma(q_j)…} -> e_i^{tau(e_j)…}` onto `AG(n-1,3)`
/// (with `e_n = 0`) by walking from the generators, and checks it is a
/// line-preserving bijection.
pub fn prop1_check(n: usize) -> Result<Prop1Report, RewriteError> {
    if n < 2 {
        return Err(RewriteError::TooLarge { n, max: MAX_QSPACE });
    }
    let q = build_q(n)?;
    let ag = affine_space(n - 1);
    let taus: Vec<Permutation> = (0..ag.n_points()).map(|p| ag.tau_unchecked(p)).collect();
    let unit = |i: usize| if i == n { 0 } else { 3usize.pow(i as u32 - 1) };

    let mut map = vec![usize::MAX; q.points.len()];
    let mut well_defined = true;
    let gens: Vec<usize> = (1..=n as u8).map(|i| q.generator(i)).collect();
    let mut queue = Vec::new();
    for (i, &g) in gens.iter().enumerate() {
        map[g] = unit(i + 1);
        queue.push(g);
    }
    while let Some(p) = queue.pop() {
        for (j, &g) in gens.iter().enumerate() {
            let next = q.sigma[g].apply(p);
            let image = taus[unit(j + 1)].apply(map[p]);
            if map[next] == usize::MAX {
                map[next] = image;
                queue.push(next);
            } else if map[next] != image {
                well_defined = false;
            }
        }
    }
    let mut hit = vec![false; affine_size(n - 1)];
    let mut bijective = map.len() == hit.len();
    for &v in &map {
        if v == usize::MAX || hit[v] {
            bijective = false;
            break;
        }
        hit[v] = true;
    }
    let lines_preserved = bijective
        && q
            .system
            .lines()
            .iter()
            .all(|&[a, b, c]| ag.third(map[a], map[b]) == Some(map[c]));
    Ok(Prop1Report {
        n,
        generator_images: gens.iter().map(|&g| map[g]).collect(),
        map,
        well_defined,
        bijective,
        lines_preserved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &[u8]) -> Word {
        Word::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_apply(&w(3, &[2]), &w(3, &[1])).unwrap(), w(3, &[1, 2]));
        assert_eq!(rho_apply(&w(3, &[3, 1]), &w(3, &[2])).unwrap(), w(3, &[2, 1, 3, 1]));
        let x = w(3, &[2, 3]);
        let xx = rho_apply(&x, &x).unwrap();
        assert_eq!(reduce(&xx).unwrap(), reduce(&x).unwrap());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w(2, &[1])).unwrap().word(), &w(2, &[1]));
        assert_eq!(reduce(&w(2, &[1, 1])).unwrap().word(), &w(2, &[1]));
        assert_eq!(reduce(&w(3, &[2, 1])).unwrap().word(), &w(3, &[1, 2]));
    }

    #[test]
    fn word_validation() {
        assert_eq!(Word::new(2, vec![]), Err(RewriteError::EmptyWord));
        assert!(matches!(
            Word::new(2, vec![3]),
            Err(RewriteError::InvalidSymbol { symbol: 3, n: 2 })
        ));
        assert!(rho_apply(&w(2, &[1]), &w(3, &[1])).is_err());
    }

    #[test]
    fn membership() {
        assert!(w(3, &[1, 2]).is_normal());
        assert!(!w(3, &[2, 1]).is_normal());
        assert!(!w(3, &[1, 1]).is_normal());
        assert!(!w(3, &[1, 2, 3, 3, 3]).is_normal());
        // doubled 4 in the even chain, above every odd-chain symbol
        assert!(Word::new(4, vec![1, 2, 4, 3, 4]).unwrap().is_normal());
        assert!(!Word::new(4, vec![1, 4, 2, 4, 2]).unwrap().is_normal());
    }

    #[test]
    fn small_enumerations() {
        let s1 = enumerate_normal(1).unwrap();
        assert_eq!(s1.len(), 1);
        assert_eq!(s1[0].word(), &w(1, &[1]));
        let s2: Vec<Word> = enumerate_normal(2).unwrap().into_iter().map(|x| x.into_word()).collect();
        assert_eq!(s2, vec![w(2, &[1]), w(2, &[2]), w(2, &[1, 2])]);
        assert_eq!(enumerate_normal(3).unwrap().len(), 9);
        assert_eq!(enumerate_normal(4).unwrap().len(), 27);
        assert!(enumerate_normal(9).is_err());
    }

    #[test]
    fn t_counts() {
        assert_eq!(count_t(3, 1).unwrap(), 1);
        assert_eq!(count_t(3, 2).unwrap(), 1);
        assert_eq!(count_t(3, 3).unwrap(), 3);
    }

    #[test]
    fn q2_is_a_line() {
        let q = build_q(2).unwrap();
        assert_eq!((q.system.n_points(), q.system.n_lines()), (3, 1));
    }

    #[test]
    fn prop1_small() {
        for n in 2..=3 {
            let r = prop1_check(n).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.generator_images[n - 1], 0);
        }
    }

    #[test]
    fn moves() {
        let mut v = vec![1, 2, 3, 2];
        assert!(Move::Braid { at: 1 }.apply(&mut v));
        assert_eq!(v, vec![1, 3, 2, 3]);
        assert!(!Move::Cancel { at: 1 }.apply(&mut v));
        assert!(!Move::DropHeadEcho.apply(&mut v));
        assert!(Move::ChainSwap { at: 0 }.apply(&mut v));
        assert_eq!(v, vec![3, 1, 2, 3]);
    }
}
