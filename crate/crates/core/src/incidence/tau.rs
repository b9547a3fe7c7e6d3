use alloc::vec::Vec;

use super::{IncidenceError, TripleSystem};
use crate::perm::Permutation;

/// The four identities satisfied by the transposition map of a Fischer
/// space, plus the precondition that each `tau(p)` is an automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauAxiom {
    Automorphism,
    /// `tau(p)^2 = 1`.
    Involution,
    /// Non-collinear `p, q`: `tau(p) tau(q) = tau(q) tau(p)`.
    CommuteWhenNotCollinear,
    /// Collinear `p, q`: `tau(p)^tau(q) = tau(q)^tau(p)`.
    ConjugateWhenCollinear,
    /// `tau(p^tau(q)) = tau(p)^tau(q)`.
    Equivariance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: TauAxiom,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauAxiomReport {
    pub pairs_checked: usize,
    pub failure: Option<AxiomFailure>,
}

impl TauAxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Outcome of scanning `tau(x) tau(y) tau(z) = tau(z) tau(y) tau(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauCommutation {
    Holds,
    Witness(usize, usize, usize),
}

impl TripleSystem {
    /// Fixes `p` and every point not collinear with it, swaps the other two
    /// points of each line through `p`. No automorphism check.
    pub fn tau_unchecked(&self, p: usize) -> Permutation {
        let mut image: Vec<usize> = (0..self.n_points).collect();
        for &[a, b, c] in self.lines_through(p) {
            let (q, r) = if a == p {
                (b, c)
            } else if b == p {
                (a, c)
            } else {
                (a, b)
            };
            image[q] = r;
            image[r] = q;
        }
        Permutation::from_images(image).expect("disjoint swaps form a permutation")
    }

    pub fn tau(&self, p: usize) -> Result<Permutation, IncidenceError> {
        self.check_point(p)?;
        let t = self.tau_unchecked(p);
        if self.is_automorphism(&t) {
            Ok(t)
        } else {
            Err(IncidenceError::NotAutomorphism(p))
        }
    }

    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.n_points
            && self
                .lines
                .iter()
                .all(|&[a, b, c]| self.third(g.apply(a), g.apply(b)) == Some(g.apply(c)))
    }

    /// Checks every `tau` identity over all ordered point pairs and reports
    /// the first failure.
    pub fn tau_axiom_check(&self) -> TauAxiomReport {
        let taus: Vec<Permutation> = (0..self.n_points).map(|p| self.tau_unchecked(p)).collect();
        let fail = |axiom, p, q, pairs_checked| TauAxiomReport {
            pairs_checked,
            failure: Some(AxiomFailure { axiom, p, q }),
        };
        for (p, t) in taus.iter().enumerate() {
            if !self.is_automorphism(t) {
                return fail(TauAxiom::Automorphism, p, p, 0);
            }
            if !t.then(t).is_identity() {
                return fail(TauAxiom::Involution, p, p, 0);
            }
        }
        let mut pairs = 0;
        for p in 0..self.n_points {
            for q in 0..self.n_points {
                if p == q {
                    continue;
                }
                pairs += 1;
                let (tp, tq) = (&taus[p], &taus[q]);
                if self.collinear(p, q) {
                    if tp.conjugate_by(tq) != tq.conjugate_by(tp) {
                        return fail(TauAxiom::ConjugateWhenCollinear, p, q, pairs);
                    }
                } else if tp.then(tq) != tq.then(tp) {
                    return fail(TauAxiom::CommuteWhenNotCollinear, p, q, pairs);
                }
                if taus[tq.apply(p)] != tp.conjugate_by(tq) {
                    return fail(TauAxiom::Equivariance, p, q, pairs);
                }
            }
        }
        TauAxiomReport {
            pairs_checked: pairs,
            failure: None,
        }
    }

    /// Scans ordered triples in lexicographic order for a violation of
    /// `tau(x) tau(y) tau(z) = tau(z) tau(y) tau(x)`.
    pub fn affine_tau_commutation(&self) -> TauCommutation {
        let n = self.n_points;
        let taus: Vec<Permutation> = (0..n).map(|p| self.tau_unchecked(p)).collect();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if x == z {
                        continue;
                    }
                    let (tx, ty, tz) = (&taus[x], &taus[y], &taus[z]);
                    let differs = (0..n)
                        .any(|pt| tz.apply(ty.apply(tx.apply(pt))) != tx.apply(ty.apply(tz.apply(pt))));
                    if differs {
                        return TauCommutation::Witness(x, y, z);
                    }
                }
            }
        }
        TauCommutation::Holds
    }

    /// True iff the group generated by the `tau(p)` moves point 0 to every
    /// point and every `tau(p)` is an automorphism.
    pub fn tau_transitive(&self) -> bool {
        let n = self.n_points;
        if n == 0 {
            return true;
        }
        let taus: Vec<Permutation> = (0..n).map(|p| self.tau_unchecked(p)).collect();
        if !taus.iter().all(|t| self.is_automorphism(t)) {
            return false;
        }
        let mut seen = alloc::vec![false; n];
        seen[0] = true;
        let mut orbit = alloc::vec![0];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for t in &taus {
                let q = t.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.len() == n
    }
}
