//! Minimum generating sets.
//!
//! The search is breadth-first over *closed* sets rather than over seed
//! subsets: the sets generated by `k + 1` points are exactly the closures of
//! `C ∪ {p}` for `C` generated by `k` points. Distinct closed sets are far
//! fewer than seed subsets, so exact ranks of the spaces used here come out
//! in a few thousand closures.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::TripleSystem;

pub const DEFAULT_RANK_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Exact(usize),
    /// The search cap was hit: no generating set of size `< lower` exists,
    /// and one of size `upper` does.
    AtLeast { lower: usize, upper: usize },
}

impl Rank {
    pub fn exact(self) -> Option<usize> {
        match self {
            Rank::Exact(k) => Some(k),
            Rank::AtLeast { .. } => None,
        }
    }
}

impl core::ops::Add for Rank {
    type Output = Rank;

    fn add(self, other: Rank) -> Rank {
        match (self, other) {
            (Rank::Exact(a), Rank::Exact(b)) => Rank::Exact(a + b),
            (a, b) => {
                let bounds = |r: Rank| match r {
                    Rank::Exact(k) => (k, k),
                    Rank::AtLeast { lower, upper } => (lower, upper),
                };
                let ((l1, u1), (l2, u2)) = (bounds(a), bounds(b));
                Rank::AtLeast {
                    lower: l1 + l2,
                    upper: u1 + u2,
                }
            }
        }
    }
}

type Bits = Vec<u64>;

fn to_bits(n: usize, members: &[usize]) -> Bits {
    let mut bits = vec![0u64; n.div_ceil(64)];
    for &p in members {
        bits[p / 64] |= 1 << (p % 64);
    }
    bits
}

fn has(bits: &Bits, p: usize) -> bool {
    bits[p / 64] >> (p % 64) & 1 == 1
}

impl TripleSystem {
    /// Minimum size of a generating set; for a disconnected system, the sum
    /// over components. `cap` bounds the number of closure computations.
    pub fn rank(&self, cap: u64) -> Rank {
        let comps = self.connected_components();
        if comps.len() == 1 {
            return self.rank_connected(cap);
        }
        comps
            .iter()
            .map(|c| self.induced(c).rank_connected(cap))
            .fold(Rank::Exact(0), |a, b| a + b)
    }

    fn rank_connected(&self, cap: u64) -> Rank {
        let n = self.n_points;
        if n <= 1 {
            return Rank::Exact(n);
        }
        // Under a point-transitive automorphism group every minimal generating
        // set can be moved to contain point 0.
        let starts: Vec<usize> = if self.tau_transitive() {
            vec![0]
        } else {
            (0..n).collect()
        };
        let mut layer: BTreeSet<Bits> = starts.iter().map(|&p| to_bits(n, &[p])).collect();
        let mut closures = 0u64;
        let mut k = 1;
        let mut inside = vec![false; n];
        loop {
            let mut next = BTreeSet::new();
            for closed in &layer {
                let base: Vec<usize> = (0..n).filter(|&p| has(closed, p)).collect();
                let mut covered = closed.clone();
                for p in 0..n {
                    if has(&covered, p) {
                        continue;
                    }
                    closures += 1;
                    if closures > cap {
                        return Rank::AtLeast {
                            lower: k + 1,
                            upper: self.greedy_generating_set().len(),
                        };
                    }
                    let mut members = base.clone();
                    members.push(p);
                    for &q in &members {
                        inside[q] = true;
                    }
                    self.close_from(&mut members, &mut inside, base.len());
                    for &q in &members {
                        inside[q] = false;
                    }
                    if members.len() == n {
                        return Rank::Exact(k + 1);
                    }
                    let bits = to_bits(n, &members);
                    // every point of the new closure generates the same set
                    for (w, c) in covered.iter_mut().zip(&bits) {
                        *w |= c;
                    }
                    next.insert(bits);
                }
            }
            layer = next;
            k += 1;
        }
    }

    /// A generating set built by repeatedly adding the point that enlarges
    /// the closure most.
    pub fn greedy_generating_set(&self) -> Vec<usize> {
        let n = self.n_points;
        let mut chosen = Vec::new();
        let mut closed: Vec<usize> = Vec::new();
        let mut inside = vec![false; n];
        while closed.len() < n {
            let mut best: Option<(usize, Vec<usize>)> = None;
            for p in (0..n).filter(|&p| !inside[p]) {
                let mut members = closed.clone();
                members.push(p);
                let mut scratch = inside.clone();
                scratch[p] = true;
                self.close_from(&mut members, &mut scratch, closed.len());
                if best.as_ref().is_none_or(|(_, m)| members.len() > m.len()) {
                    best = Some((p, members));
                }
            }
            let (p, members) = best.expect("some point lies outside a proper closure");
            chosen.push(p);
            for &q in &members {
                inside[q] = true;
            }
            closed = members;
        }
        chosen
    }
}
