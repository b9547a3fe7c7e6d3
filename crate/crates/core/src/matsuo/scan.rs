//! The Jordan decision: an exhaustive scan of the linearized identity over
//! basis quadruples, then random sampling of the Jordan defect.
//!
//! `J` is multilinear, so it vanishes identically iff it vanishes on basis
//! quadruples. Over characteristic 0 (or `p > 3`) that is equivalent to the
//! Jordan identity. Over characteristic 3 it still is, because a Matsuo
//! algebra is spanned by idempotents.
//!
//! `J(x, y, z, w)` is symmetric in `x, z, w`. Once that has been confirmed on
//! random elements, the scan only visits `x <= z <= w`. The sorted rearrangement
//! of a quadruple is lexicographically no larger, so the first hit is still the
//! lexicographically least violating quadruple overall.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraElement, MatsuoAlgebra, MatsuoError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Jordan,
    NotJordan,
    BudgetExhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Jordan => "jordan",
            Verdict::NotJordan => "not_jordan",
            Verdict::BudgetExhausted => "budget_exhausted",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A basis quadruple with nonzero `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
    pub defect: AlgebraElement,
}

impl Witness {
    /// Recomputes `J` and compares with the stored defect.
    pub fn reverify(&self, alg: &MatsuoAlgebra) -> bool {
        let j = alg.j_basis(self.x, self.y, self.z, self.w);
        !j.is_zero() && j == self.defect
    }
}

/// Result of scanning the quadruples with one fixed first coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceOutcome {
    pub x: usize,
    /// Quadruples evaluated, including the witness if there is one.
    pub checked: u64,
    pub witness: Option<Witness>,
    /// Stopped at the evaluation limit before finishing.
    pub truncated: bool,
    /// Stopped because `cancel` returned true.
    pub cancelled: bool,
}

/// Scans `(x, y, z, w)` in lexicographic order for fixed `x`, with
/// `x <= z <= w` when `prune` is set. Evaluates at most `limit` quadruples;
/// `cancel` is polled once per `y`.
pub fn scan_slice(
    alg: &MatsuoAlgebra,
    x: usize,
    prune: bool,
    limit: u64,
    cancel: &dyn Fn() -> bool,
) -> SliceOutcome {
    let n = alg.dim();
    let mut out = SliceOutcome {
        x,
        checked: 0,
        witness: None,
        truncated: false,
        cancelled: false,
    };
    let bx = alg.basis(x);
    for y in 0..n {
        if cancel() {
            out.cancelled = true;
            return out;
        }
        let by = alg.basis(y);
        for z in if prune { x } else { 0 }..n {
            let bz = alg.basis(z);
            let xz = alg.mul(&bx, &bz);
            let xzy = alg.mul(&xz, &by);
            let zy = alg.mul(&bz, &by);
            for w in if prune { z } else { 0 }..n {
                if out.checked == limit {
                    out.truncated = true;
                    return out;
                }
                out.checked += 1;
                let bw = alg.basis(w);
                let zw = alg.mul(&bz, &bw);
                let wx = alg.mul(&bw, &bx);
                let yw = alg.mul(&by, &bw);
                let yx = alg.mul(&by, &bx);
                let j = alg
                    .mul(&xzy, &bw)
                    .add(&alg.mul(&alg.mul(&zw, &by), &bx))
                    .add(&alg.mul(&alg.mul(&wx, &by), &bz))
                    .sub(&alg.mul(&xz, &yw))
                    .sub(&alg.mul(&zw, &yx))
                    .sub(&alg.mul(&wx, &zy));
                if !j.is_zero() {
                    out.witness = Some(Witness {
                        x,
                        y,
                        z,
                        w,
                        defect: j,
                    });
                    return out;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub checked: u64,
    pub pruned: bool,
}

impl ScanOutcome {
    /// Merges slice results given in increasing `x`, as if the slices had
    /// been scanned one after another under a single `budget`.
    pub fn combine(slices: impl IntoIterator<Item = SliceOutcome>, budget: u64, pruned: bool) -> Self {
        let mut total = 0u64;
        let exhausted = |checked| ScanOutcome {
            verdict: Verdict::BudgetExhausted,
            witness: None,
            checked,
            pruned,
        };
        for s in slices {
            assert!(!s.cancelled, "slice {} cancelled without an earlier witness", s.x);
            if total + s.checked > budget {
                return exhausted(budget);
            }
            total += s.checked;
            if s.witness.is_some() {
                return ScanOutcome {
                    verdict: Verdict::NotJordan,
                    witness: s.witness,
                    checked: total,
                    pruned,
                };
            }
            if s.truncated {
                return exhausted(total);
            }
        }
        ScanOutcome {
            verdict: Verdict::Jordan,
            witness: None,
            checked: total,
            pruned,
        }
    }
}

/// Checks `J(x,y,z,w) = J(σ(x,z,w), y)` for every permutation `σ` on
/// `trials` random quadruples of elements.
pub fn verify_j_symmetry(alg: &MatsuoAlgebra, rng: &mut ChaCha8Rng, trials: usize) -> bool {
    (0..trials).all(|_| {
        let [x, y, z, w] = core::array::from_fn(|_| alg.random_element(rng));
        let base = alg.linearized_j(&x, &y, &z, &w);
        [(&x, &w, &z), (&z, &x, &w), (&z, &w, &x), (&w, &x, &z), (&w, &z, &x)]
            .iter()
            .all(|(a, b, c)| alg.linearized_j(a, &y, b, c) == base)
    })
}

const SYMMETRY_TRIALS: usize = 2;

/// Sequential scan. Pruning is used only if the symmetry check (seeded by
/// `seed`) passes.
pub fn scan_basis_quadruples(alg: &MatsuoAlgebra, budget: u64, seed: u64) -> ScanOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prune = verify_j_symmetry(alg, &mut rng, SYMMETRY_TRIALS);
    sequential_scan(alg, prune, budget)
}

fn sequential_scan(alg: &MatsuoAlgebra, prune: bool, budget: u64) -> ScanOutcome {
    let mut slices = Vec::new();
    let mut used = 0u64;
    for x in 0..alg.dim() {
        let s = scan_slice(alg, x, prune, budget - used, &|| false);
        used += s.checked;
        let stop = s.witness.is_some() || s.truncated;
        slices.push(s);
        if stop {
            break;
        }
    }
    ScanOutcome::combine(slices, budget, prune)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanOptions {
    pub budget: u64,
    pub seed: u64,
    /// Random `(a, b)` pairs for the defect cross-check.
    pub samples: usize,
}

impl Default for JordanOptions {
    fn default() -> Self {
        JordanOptions {
            budget: 1_000_000_000,
            seed: 1,
            samples: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingReport {
    pub pairs: usize,
    pub nonzero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub quadruples_checked: u64,
    /// Whether the `x <= z <= w` restriction was used.
    pub pruned: bool,
    pub sampling: SamplingReport,
    pub budget: u64,
    pub seed: u64,
    /// Characteristic 0 or 3, where the classification applies.
    pub in_theorem_scope: bool,
}

impl JordanReport {
    /// False if the scan found nothing but sampling produced a nonzero
    /// defect.
    pub fn consistent(&self) -> bool {
        !(self.verdict == Verdict::Jordan && self.sampling.nonzero > 0)
    }
}

pub fn is_jordan(alg: &MatsuoAlgebra, options: JordanOptions) -> Result<JordanReport, MatsuoError> {
    is_jordan_with(alg, options, sequential_scan)
}

/// [`is_jordan`] with a caller-supplied quadruple scan, e.g. a parallel one
/// built on [`scan_slice`] and [`ScanOutcome::combine`].
pub fn is_jordan_with<F>(
    alg: &MatsuoAlgebra,
    options: JordanOptions,
    scan: F,
) -> Result<JordanReport, MatsuoError>
where
    F: FnOnce(&MatsuoAlgebra, bool, u64) -> ScanOutcome,
{
    if !alg.system().is_connected() {
        return Err(MatsuoError::Disconnected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let prune = verify_j_symmetry(alg, &mut rng, SYMMETRY_TRIALS);
    let outcome = scan(alg, prune, options.budget);
    let mut nonzero = 0;
    for _ in 0..options.samples {
        let a = alg.random_element(&mut rng);
        let b = alg.random_element(&mut rng);
        if !alg.jordan_defect(&a, &b).is_zero() {
            nonzero += 1;
        }
    }
    Ok(JordanReport {
        verdict: outcome.verdict,
        witness: outcome.witness,
        quadruples_checked: outcome.checked,
        pruned: outcome.pruned,
        sampling: SamplingReport {
            pairs: options.samples,
            nonzero,
        },
        budget: options.budget,
        seed: options.seed,
        in_theorem_scope: matches!(alg.field().characteristic(), 0 | 3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{affine_space, dual_affine_plane};
    use crate::scalar::FieldSpec;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn ag2_over_f3_is_jordan() {
        let alg = MatsuoAlgebra::with_default_delta(affine_space(2), f3());
        let r = is_jordan(&alg, JordanOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Jordan);
        assert!(r.pruned);
        // x <= z <= w: 9 * C(11, 3)
        assert_eq!(r.quadruples_checked, 9 * 165);
        assert!(r.consistent());
    }

    #[test]
    fn ag3_over_q_is_not_jordan() {
        let alg = MatsuoAlgebra::with_default_delta(affine_space(3), FieldSpec::Rational);
        let options = JordanOptions {
            samples: 20,
            ..JordanOptions::default()
        };
        let r = is_jordan(&alg, options).unwrap();
        assert_eq!(r.verdict, Verdict::NotJordan);
        let w = r.witness.unwrap();
        assert!(w.reverify(&alg));
        assert!(w.x <= w.z && w.z <= w.w);
    }

    #[test]
    fn unpruned_finds_same_witness() {
        let alg = MatsuoAlgebra::with_default_delta(affine_space(3), FieldSpec::Rational);
        let pruned = sequential_scan(&alg, true, u64::MAX);
        let full = sequential_scan(&alg, false, u64::MAX);
        let (a, b) = (pruned.witness.unwrap(), full.witness.unwrap());
        assert_eq!((a.x, a.y, a.z, a.w), (b.x, b.y, b.z, b.w));
    }

    #[test]
    fn budget_exhaustion() {
        let alg = MatsuoAlgebra::with_default_delta(dual_affine_plane(), f3());
        let s = scan_basis_quadruples(&alg, 10, 7);
        assert_eq!(s.verdict, Verdict::BudgetExhausted);
        assert_eq!(s.checked, 10);
        let full = scan_basis_quadruples(&alg, u64::MAX, 7);
        assert_eq!(full.verdict, Verdict::Jordan);
        // exactly enough budget
        let exact = scan_basis_quadruples(&alg, full.checked, 7);
        assert_eq!(exact.verdict, Verdict::Jordan);
    }

    #[test]
    fn disconnected_rejected() {
        let s = affine_space(1).disjoint_union(&affine_space(1));
        let alg = MatsuoAlgebra::with_default_delta(s, f3());
        assert_eq!(is_jordan(&alg, JordanOptions::default()), Err(MatsuoError::Disconnected));
    }
}
