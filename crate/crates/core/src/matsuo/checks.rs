//! Structural checks on Matsuo algebras: the component decomposition, the
//! adjoint spectrum of an axis, the characteristic 3 sampling check, and the
//! six-conjugate expression for `J`.

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::scan::{scan_basis_quadruples, Verdict};
use super::{AlgebraElement, MatsuoAlgebra, MatsuoError};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumReport {
    pub components: Vec<Vec<usize>>,
    pub products_checked: u64,
    /// A basis pair whose product leaks out of the expected component, or is
    /// nonzero across components.
    pub failure: Option<(usize, usize)>,
}

impl DirectSumReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Products across components vanish, and products inside a component stay
/// in it.
pub fn direct_sum_check(alg: &MatsuoAlgebra) -> DirectSumReport {
    let components = alg.system().connected_components();
    let mut comp_of = vec![0; alg.dim()];
    for (i, c) in components.iter().enumerate() {
        for &p in c {
            comp_of[p] = i;
        }
    }
    let mut checked = 0;
    for p in 0..alg.dim() {
        for q in p..alg.dim() {
            checked += 1;
            let prod = alg.mul(&alg.basis(p), &alg.basis(q));
            let ok = if comp_of[p] == comp_of[q] {
                prod.terms().iter().all(|(r, _)| comp_of[*r] == comp_of[p])
            } else {
                prod.is_zero()
            };
            if !ok {
                return DirectSumReport {
                    components,
                    products_checked: checked,
                    failure: Some((p, q)),
                };
            }
        }
    }
    DirectSumReport {
        components,
        products_checked: checked,
        failure: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub axis: usize,
    pub basis_checked: usize,
    /// First basis vector not annihilated.
    pub failure: Option<usize>,
}

impl SpectrumReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `(ad - 1) ad (ad - 2δ) = 0` on every basis vector, with `ad`
/// multiplication by the axis `a(p)`.
pub fn axis_spectrum_check(alg: &MatsuoAlgebra, p: usize) -> Result<SpectrumReport, MatsuoError> {
    if p >= alg.dim() {
        return Err(MatsuoError::InvalidPoint {
            point: p,
            n_points: alg.dim(),
        });
    }
    let two_delta = alg.delta() + alg.delta();
    if two_delta.is_zero() || two_delta.is_one() {
        return Err(MatsuoError::Unsupported("2δ must differ from 0 and 1"));
    }
    let axis = alg.basis(p);
    let ad = |v: &AlgebraElement| alg.mul(&axis, v);
    for b in 0..alg.dim() {
        let v = alg.basis(b);
        let v = ad(&v).sub(&v.scale(&two_delta));
        let v = ad(&v);
        let v = ad(&v).sub(&v);
        if !v.is_zero() {
            return Ok(SpectrumReport {
                axis: p,
                basis_checked: b + 1,
                failure: Some(b),
            });
        }
    }
    Ok(SpectrumReport {
        axis: p,
        basis_checked: alg.dim(),
        failure: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char3Report {
    pub scan: Verdict,
    pub quadruples_checked: u64,
    pub samples: usize,
    pub nonzero_defects: usize,
}

impl Char3Report {
    /// True when the scan found every basis `J` zero yet some sampled pair
    /// has a nonzero Jordan defect.
    pub fn counterexample(&self) -> bool {
        self.scan == Verdict::Jordan && self.nonzero_defects > 0
    }
}

/// Over characteristic 3: a full basis scan, then `samples` random Jordan
/// defects.
pub fn char3_lemma_check(
    alg: &MatsuoAlgebra,
    samples: usize,
    seed: u64,
) -> Result<Char3Report, MatsuoError> {
    if alg.field().characteristic() != 3 {
        return Err(MatsuoError::Unsupported("the sampling check needs characteristic 3"));
    }
    let scan = scan_basis_quadruples(alg, u64::MAX, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut nonzero = 0;
    for _ in 0..samples {
        let a = alg.random_element(&mut rng);
        let b = alg.random_element(&mut rng);
        if !alg.jordan_defect(&a, &b).is_zero() {
            nonzero += 1;
        }
    }
    Ok(Char3Report {
        scan: scan.verdict,
        quadruples_checked: scan.checked,
        samples,
        nonzero_defects: nonzero,
    })
}

fn conjugate(taus: &[Permutation], p: usize, by: &[usize]) -> usize {
    by.iter().fold(p, |acc, &t| taus[t].apply(acc))
}

/// `(1/64)(a(x^zwyw) + a(x^wzyz) + a(x^yzwz) - a(x^zyw) - a(x^wyz) - a(z^wyx))`,
/// where `x^zw…` applies `tau(z)`, then `tau(w)`, and so on.
pub fn six_term_expression(
    alg: &MatsuoAlgebra,
    taus: &[Permutation],
    x: usize,
    y: usize,
    z: usize,
    w: usize,
) -> AlgebraElement {
    let f = alg.field();
    let sixty_fourth = f
        .one()
        .checked_div(&f.from_i64(64))
        .expect("64 is invertible in an odd field");
    let plus = [
        conjugate(taus, x, &[z, w, y, w]),
        conjugate(taus, x, &[w, z, y, z]),
        conjugate(taus, x, &[y, z, w, z]),
    ];
    let minus = [
        conjugate(taus, x, &[z, y, w]),
        conjugate(taus, x, &[w, y, z]),
        conjugate(taus, z, &[w, y, x]),
    ];
    let terms = plus
        .into_iter()
        .map(|p| (p, sixty_fourth.clone()))
        .chain(minus.into_iter().map(|p| (p, -&sixty_fourth)));
    AlgebraElement::from_terms(f, terms)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixTermComparison {
    pub compared: u64,
    pub agreeing: u64,
    pub first_divergence: Option<[usize; 4]>,
}

/// Evaluates `J` and the six-conjugate expression on the given basis
/// quadruples and records where they differ. Nothing is asserted.
pub fn compare_six_term(
    alg: &MatsuoAlgebra,
    quadruples: impl IntoIterator<Item = [usize; 4]>,
) -> SixTermComparison {
    let taus: Vec<Permutation> = (0..alg.dim()).map(|p| alg.system().tau_unchecked(p)).collect();
    let mut out = SixTermComparison {
        compared: 0,
        agreeing: 0,
        first_divergence: None,
    };
    for [x, y, z, w] in quadruples {
        out.compared += 1;
        if alg.j_basis(x, y, z, w) == six_term_expression(alg, &taus, x, y, z, w) {
            out.agreeing += 1;
        } else if out.first_divergence.is_none() {
            out.first_divergence = Some([x, y, z, w]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{affine_space, sym_fischer};
    use crate::scalar::FieldSpec;

    #[test]
    fn spectrum_on_small_spaces() {
        let f3 = FieldSpec::prime(3).unwrap();
        let alg = MatsuoAlgebra::with_default_delta(affine_space(2), f3);
        for p in 0..9 {
            assert!(axis_spectrum_check(&alg, p).unwrap().passed());
        }
        let q = MatsuoAlgebra::with_default_delta(sym_fischer(5), FieldSpec::Rational);
        assert!(axis_spectrum_check(&q, 3).unwrap().passed());
        assert!(axis_spectrum_check(&q, 10).is_err());
    }

    #[test]
    fn spectrum_rejects_half() {
        let f = FieldSpec::Rational;
        let alg = MatsuoAlgebra::new(affine_space(1), f, f.parse_scalar("1/2").unwrap()).unwrap();
        assert!(matches!(axis_spectrum_check(&alg, 0), Err(MatsuoError::Unsupported(_))));
    }

    #[test]
    fn direct_sum_of_lines() {
        let s = affine_space(1).disjoint_union(&affine_space(1));
        let alg = MatsuoAlgebra::with_default_delta(s, FieldSpec::Rational);
        let r = direct_sum_check(&alg);
        assert!(r.passed());
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.products_checked, 21);
    }

    #[test]
    fn char3_only() {
        let alg = MatsuoAlgebra::with_default_delta(affine_space(1), FieldSpec::Rational);
        assert!(char3_lemma_check(&alg, 1, 0).is_err());
        let f3 = FieldSpec::prime(3).unwrap();
        let alg = MatsuoAlgebra::with_default_delta(affine_space(2), f3);
        let r = char3_lemma_check(&alg, 50, 3).unwrap();
        assert_eq!(r.scan, Verdict::Jordan);
        assert!(!r.counterexample());
        assert_eq!(r.nonzero_defects, 0);
    }
}
