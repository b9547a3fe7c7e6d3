//! Matsuo algebras of triple systems over exact fields.
//!
//! The algebra has basis `a(p)`, one vector per point, with
//!
//! * `a(p)a(p) = a(p)`,
//! * `a(p)a(q) = 0` for non-collinear `p != q`,
//! * `a(p)a(q) = δ(a(p) + a(q) - a(r))` when `{p, q, r}` is a line.
//!
//! [`scan`] decides the Jordan property; [`checks`] holds the auxiliary
//! structural checks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::incidence::TripleSystem;
use crate::scalar::{FieldSpec, Scalar};

pub mod checks;
pub mod scan;

pub use checks::{
    axis_spectrum_check, char3_lemma_check, compare_six_term, direct_sum_check, six_term_expression,
    Char3Report, DirectSumReport, SixTermComparison, SpectrumReport,
};
pub use scan::{
    is_jordan, is_jordan_with, scan_basis_quadruples, scan_slice, verify_j_symmetry, JordanOptions,
    JordanReport, SamplingReport, ScanOutcome, SliceOutcome, Verdict, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatsuoError {
    #[error("delta must be nonzero")]
    ZeroDelta,
    #[error("delta belongs to {found}, the algebra is over {expected}")]
    DeltaField { expected: FieldSpec, found: FieldSpec },
    #[error("point {point} outside 0..{n_points}")]
    InvalidPoint { point: usize, n_points: usize },
    #[error("the system is disconnected; check its components separately")]
    Disconnected,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// `M(system, δ, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatsuoAlgebra {
    system: TripleSystem,
    field: FieldSpec,
    delta: Scalar,
}

impl MatsuoAlgebra {
    pub fn new(system: TripleSystem, field: FieldSpec, delta: Scalar) -> Result<Self, MatsuoError> {
        if delta.field() != field {
            return Err(MatsuoError::DeltaField {
                expected: field,
                found: delta.field(),
            });
        }
        if delta.is_zero() {
            return Err(MatsuoError::ZeroDelta);
        }
        Ok(MatsuoAlgebra {
            system,
            field,
            delta,
        })
    }

    /// `δ = 1/4`.
    pub fn with_default_delta(system: TripleSystem, field: FieldSpec) -> Self {
        let delta = field.delta_default();
        MatsuoAlgebra::new(system, field, delta).expect("1/4 is a nonzero element of an odd field")
    }

    pub fn system(&self) -> &TripleSystem {
        &self.system
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.system.n_points()
    }

    pub fn basis(&self, p: usize) -> AlgebraElement {
        assert!(p < self.dim(), "point {p} outside the basis");
        AlgebraElement::basis(self.field, p)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.field)
    }

    /// The product `uv`.
    pub fn mul(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        assert!(
            u.field == self.field && v.field == self.field,
            "element over a different field"
        );
        // Short operands (the basis scans) accumulate into a small list, long
        // ones into a dense array.
        let pairs = u.terms.len() * v.terms.len();
        let terms = if pairs <= 16 {
            let mut acc: Vec<(usize, Scalar)> = Vec::with_capacity(3 * pairs);
            self.expand(u, v, |p, c, negate| match acc.iter_mut().find(|(q, _)| *q == p) {
                Some((_, x)) if negate => *x -= c,
                Some((_, x)) => *x += c,
                None => acc.push((p, if negate { -c } else { c.clone() })),
            });
            acc.retain(|(_, c)| !c.is_zero());
            acc.sort_unstable_by_key(|(p, _)| *p);
            acc
        } else {
            let mut acc: Vec<Option<Scalar>> = vec![None; self.dim()];
            self.expand(u, v, |p, c, negate| match (&mut acc[p], negate) {
                (Some(x), false) => *x += c,
                (Some(x), true) => *x -= c,
                (slot, false) => *slot = Some(c.clone()),
                (slot, true) => *slot = Some(-c),
            });
            acc.into_iter()
                .enumerate()
                .filter_map(|(p, c)| c.filter(|c| !c.is_zero()).map(|c| (p, c)))
                .collect()
        };
        AlgebraElement {
            field: self.field,
            terms,
        }
    }

    /// Feeds every structure-constant contribution of `uv` to `add(point,
    /// coefficient, negate)`.
    fn expand(&self, u: &AlgebraElement, v: &AlgebraElement, mut add: impl FnMut(usize, &Scalar, bool)) {
        for (p, a) in &u.terms {
            for (q, b) in &v.terms {
                let c = a * b;
                if p == q {
                    add(*p, &c, false);
                } else if let Some(r) = self.system.third(*p, *q) {
                    let c = c * &self.delta;
                    add(*p, &c, false);
                    add(*q, &c, false);
                    add(r, &c, true);
                }
            }
        }
    }

    /// `(a²b)a - a²(ba)`; zero iff the Jordan identity holds at `(a, b)`.
    pub fn jordan_defect(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let aa = self.mul(a, a);
        let left = self.mul(&self.mul(&aa, b), a);
        let right = self.mul(&aa, &self.mul(b, a));
        left.sub(&right)
    }

    /// `((xz)y)w + ((zw)y)x + ((wx)y)z - (xz)(yw) - (zw)(yx) - (wx)(yz)`.
    pub fn linearized_j(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        z: &AlgebraElement,
        w: &AlgebraElement,
    ) -> AlgebraElement {
        let xz = self.mul(x, z);
        let zw = self.mul(z, w);
        let wx = self.mul(w, x);
        let mut out = self.mul(&self.mul(&xz, y), w);
        out = out.add(&self.mul(&self.mul(&zw, y), x));
        out = out.add(&self.mul(&self.mul(&wx, y), z));
        out = out.sub(&self.mul(&xz, &self.mul(y, w)));
        out = out.sub(&self.mul(&zw, &self.mul(y, x)));
        out.sub(&self.mul(&wx, &self.mul(y, z)))
    }

    /// `J` on basis vectors.
    pub fn j_basis(&self, x: usize, y: usize, z: usize, w: usize) -> AlgebraElement {
        let b = |p| self.basis(p);
        self.linearized_j(&b(x), &b(y), &b(z), &b(w))
    }

    /// Coefficients uniform in `F_p`, or integers in `[-9, 9]` over `Q`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        let draw = |rng: &mut R| match self.field {
            FieldSpec::Prime(p) => rng.gen_range(0..p as i64),
            FieldSpec::Rational => rng.gen_range(-9..=9),
        };
        let coeffs: Vec<Scalar> = (0..self.dim()).map(|_| self.field.from_i64(draw(rng))).collect();
        AlgebraElement::from_dense(self.field, coeffs)
    }
}

/// A sparse vector in the span of the `a(p)`: sorted by point, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    field: FieldSpec,
    terms: Vec<(usize, Scalar)>,
}

impl AlgebraElement {
    pub fn zero(field: FieldSpec) -> Self {
        AlgebraElement {
            field,
            terms: Vec::new(),
        }
    }

    pub fn basis(field: FieldSpec, p: usize) -> Self {
        AlgebraElement {
            field,
            terms: vec![(p, field.one())],
        }
    }

    /// Sums repeated points and drops zeros. Panics if a coefficient is over
    /// another field.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut sorted: Vec<(usize, Scalar)> = terms.into_iter().collect();
        assert!(
            sorted.iter().all(|(_, c)| c.field() == field),
            "coefficient over a different field"
        );
        sorted.sort_by_key(|(p, _)| *p);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(sorted.len());
        for (p, c) in sorted {
            match merged.last_mut() {
                Some((q, acc)) if *q == p => *acc += &c,
                _ => merged.push((p, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        AlgebraElement {
            field,
            terms: merged,
        }
    }

    pub fn from_dense(field: FieldSpec, coeffs: Vec<Scalar>) -> Self {
        AlgebraElement::from_terms(field, coeffs.into_iter().enumerate())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: usize) -> Scalar {
        match self.terms.binary_search_by_key(&p, |(q, _)| *q) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.combine(other, true)
    }

    fn combine(&self, other: &AlgebraElement, negate: bool) -> AlgebraElement {
        assert_eq!(self.field, other.field, "elements over different fields");
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let signed = |c: &Scalar| if negate { -c } else { c.clone() };
        while i < self.terms.len() || j < other.terms.len() {
            let left = self.terms.get(i).map(|t| t.0);
            let right = other.terms.get(j).map(|t| t.0);
            match (left, right) {
                (Some(p), Some(q)) if p == q => {
                    let c = if negate {
                        &self.terms[i].1 - &other.terms[j].1
                    } else {
                        &self.terms[i].1 + &other.terms[j].1
                    };
                    if !c.is_zero() {
                        terms.push((p, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(p), Some(q)) if p < q => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                (_, Some(q)) => {
                    terms.push((q, signed(&other.terms[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        AlgebraElement {
            field: self.field,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.field);
        }
        AlgebraElement {
            field: self.field,
            terms: self.terms.iter().map(|(p, a)| (*p, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            field: self.field,
            terms: self.terms.iter().map(|(p, a)| (*p, -a)).collect(),
        }
    }
}

impl fmt::Display for AlgebraElement {
    /// `c·a(p) + …`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})a({p})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{affine_space, sym_fischer, transposition_index};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn line_product() {
        let alg = MatsuoAlgebra::with_default_delta(affine_space(1), q());
        let prod = alg.mul(&alg.basis(0), &alg.basis(1));
        let quarter = q().parse_scalar("1/4").unwrap();
        let expected =
            AlgebraElement::from_terms(q(), [(0, quarter.clone()), (1, quarter.clone()), (2, -quarter)]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn idempotent_and_orthogonal() {
        let alg = MatsuoAlgebra::with_default_delta(sym_fischer(4), q());
        for p in 0..6 {
            assert_eq!(alg.mul(&alg.basis(p), &alg.basis(p)), alg.basis(p));
        }
        let (a, b) = (transposition_index(4, 0, 1), transposition_index(4, 2, 3));
        assert!(alg.mul(&alg.basis(a), &alg.basis(b)).is_zero());
    }

    #[test]
    fn rejects_bad_delta() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(
            MatsuoAlgebra::new(affine_space(1), f3, f3.zero()),
            Err(MatsuoError::ZeroDelta)
        );
        assert!(matches!(
            MatsuoAlgebra::new(affine_space(1), f3, q().one()),
            Err(MatsuoError::DeltaField { .. })
        ));
    }

    #[test]
    fn quarter_is_one_mod_three() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = MatsuoAlgebra::new(affine_space(2), f3, f3.parse_scalar("1/4").unwrap()).unwrap();
        let b = MatsuoAlgebra::new(affine_space(2), f3, f3.one()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn element_arithmetic() {
        let f = q();
        let u = AlgebraElement::from_terms(f, [(2, f.from_i64(1)), (0, f.from_i64(3)), (2, f.from_i64(-1))]);
        assert_eq!(u.terms(), &[(0, f.from_i64(3))]);
        let v = AlgebraElement::basis(f, 1);
        assert_eq!(u.add(&v).sub(&v), u);
        assert!(u.sub(&u).is_zero());
        assert_eq!(u.scale(&f.zero()), AlgebraElement::zero(f));
        assert_eq!(u.neg().coefficient(0), f.from_i64(-3));
        assert_eq!(u.coefficient(5), f.zero());
    }

    #[test]
    fn j_of_idempotent_vanishes() {
        let alg = MatsuoAlgebra::with_default_delta(sym_fischer(4), q());
        assert!(alg.j_basis(2, 2, 2, 2).is_zero());
        assert!(alg.jordan_defect(&alg.basis(3), &alg.basis(3)).is_zero());
    }
}
