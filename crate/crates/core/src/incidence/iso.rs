//! Isomorphism of small triple systems by backtracking.
//!
//! Once two collinear points are mapped, the image of their third point is
//! forced; assignments are propagated along these forced pairs, so after a
//! generating set is placed the whole map is determined.

use alloc::vec;
use alloc::vec::Vec;

use super::{IncidenceError, Rank, TripleSystem};

pub const ISO_POINT_LIMIT: usize = 100;

const NODE_BUDGET: u64 = 5_000_000;
const INVARIANT_RANK_CAP: u64 = 200_000;
const UNMAPPED: usize = usize::MAX;

/// A bijection `f` (as `f[p]`) from the points of `a` onto the points of `b`
/// carrying lines onto lines, or `None` if the systems are not isomorphic.
pub fn isomorphic(a: &TripleSystem, b: &TripleSystem) -> Result<Option<Vec<usize>>, IncidenceError> {
    for s in [a, b] {
        if s.n_points > ISO_POINT_LIMIT {
            return Err(IncidenceError::TooLarge {
                n_points: s.n_points,
                limit: ISO_POINT_LIMIT,
            });
        }
    }
    if !same_invariants(a, b) {
        return Ok(None);
    }
    let mut search = Search {
        a,
        b,
        forward: vec![UNMAPPED; a.n_points],
        backward: vec![UNMAPPED; b.n_points],
        trail: Vec::new(),
        order: search_order(a),
        nodes: 0,
    };
    if search.extend(0)? {
        Ok(Some(search.forward))
    } else {
        Ok(None)
    }
}

fn sorted_degrees(s: &TripleSystem) -> Vec<usize> {
    let mut d: Vec<usize> = (0..s.n_points).map(|p| s.degree(p)).collect();
    d.sort_unstable();
    d
}

fn component_sizes(s: &TripleSystem) -> Vec<usize> {
    let mut c: Vec<usize> = s.connected_components().iter().map(Vec::len).collect();
    c.sort_unstable();
    c
}

fn same_invariants(a: &TripleSystem, b: &TripleSystem) -> bool {
    if a.n_points != b.n_points
        || a.n_lines() != b.n_lines()
        || sorted_degrees(a) != sorted_degrees(b)
        || component_sizes(a) != component_sizes(b)
    {
        return false;
    }
    // Rank separates e.g. AG(4,3) from the 81-point Hall system, where plain
    // backtracking would have to exhaust tens of millions of placements.
    match (a.rank(INVARIANT_RANK_CAP), b.rank(INVARIANT_RANK_CAP)) {
        (Rank::Exact(x), Rank::Exact(y)) => x == y,
        _ => true,
    }
}

/// Greedy generators first, each followed by the rest of its closure.
fn search_order(s: &TripleSystem) -> Vec<usize> {
    let mut order = s.greedy_generating_set();
    let mut seen = vec![false; s.n_points];
    for &p in &order {
        seen[p] = true;
    }
    let generators = order.clone();
    for i in 1..=generators.len() {
        for p in s.closure(&generators[..i]).expect("valid points") {
            if !seen[p] {
                seen[p] = true;
                order.push(p);
            }
        }
    }
    order
}

struct Search<'a> {
    a: &'a TripleSystem,
    b: &'a TripleSystem,
    forward: Vec<usize>,
    backward: Vec<usize>,
    trail: Vec<usize>,
    order: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn extend(&mut self, from: usize) -> Result<bool, IncidenceError> {
        let Some(pos) = (from..self.order.len()).find(|&i| self.forward[self.order[i]] == UNMAPPED)
        else {
            return Ok(true);
        };
        let p = self.order[pos];
        for q in 0..self.b.n_points {
            if self.backward[q] != UNMAPPED || self.b.degree(q) != self.a.degree(p) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(IncidenceError::SearchBudget(NODE_BUDGET));
            }
            let mark = self.trail.len();
            if self.assign(p, q) && self.extend(pos + 1)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail above mark");
            self.backward[self.forward[p]] = UNMAPPED;
            self.forward[p] = UNMAPPED;
        }
    }

    /// Maps `p -> q` and everything it forces; false on contradiction (the
    /// caller undoes the partial work).
    fn assign(&mut self, p: usize, q: usize) -> bool {
        let mut queue = vec![(p, q)];
        while let Some((p, q)) = queue.pop() {
            if self.forward[p] == q {
                continue;
            }
            if self.forward[p] != UNMAPPED
                || self.backward[q] != UNMAPPED
                || self.a.degree(p) != self.b.degree(q)
            {
                return false;
            }
            for &r in &self.trail {
                let fr = self.forward[r];
                match (self.a.third(p, r), self.b.third(q, fr)) {
                    (None, None) => {}
                    (Some(x), Some(y)) => queue.push((x, y)),
                    _ => return false,
                }
            }
            self.forward[p] = q;
            self.backward[q] = p;
            self.trail.push(p);
        }
        true
    }
}
