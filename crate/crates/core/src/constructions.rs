//! Builders for the concrete Fischer spaces: transpositions of `Sym(n)`,
//! affine spaces over `F_3`, the dual affine plane of order 2, the 81-point
//! Hall triple system, and the generic Fischer space of a set of
//! 3-transpositions.
//!
//! Point order is fixed so emitted files are reproducible: vectors of `F_3^n`
//! by little-endian base-3 value, transpositions `(i j)`, `i < j`,
//! lexicographically.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::incidence::{isomorphic, TauCommutation, TripleSystem};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("generators act on domains of different sizes")]
    DomainMismatch,
    #[error("conjugacy class element {0} is not an involution")]
    NotInvolution(usize),
    #[error("elements {c} and {d} have product of order {order}")]
    ProductOrder { c: usize, d: usize, order: u64 },
    #[error("constructed system failed validation: {0}")]
    Validation(&'static str),
}

/// Number of points of `AG(n,3)`, panicking on overflow.
pub fn affine_size(n: usize) -> usize {
    3usize
        .checked_pow(n as u32)
        .expect("3^n overflows usize")
}

/// Little-endian base-3 digits of `index`.
pub fn f3_vector(n: usize, mut index: usize) -> Vec<u8> {
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push((index % 3) as u8);
        index /= 3;
    }
    v
}

pub fn f3_index(v: &[u8]) -> usize {
    v.iter().rev().fold(0, |acc, &d| acc * 3 + d as usize)
}

/// `AG(n,3)`: points `F_3^n`, lines `{x, y, -x-y}`.
pub fn affine_space(n: usize) -> TripleSystem {
    let size = affine_size(n);
    let mut lines = Vec::with_capacity(size * size.saturating_sub(1) / 6);
    for x in 0..size {
        let vx = f3_vector(n, x);
        for y in x + 1..size {
            let vy = f3_vector(n, y);
            let z: Vec<u8> = vx.iter().zip(&vy).map(|(a, b)| (6 - a - b) % 3).collect();
            let z = f3_index(&z);
            if z > y {
                lines.push([x, y, z]);
            }
        }
    }
    TripleSystem::new(size, lines).expect("affine lines are valid")
}

/// Index of the transposition `(i j)`, `i < j < n`, in lexicographic order.
pub fn transposition_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// `FS(Sym(n), (1,2)^Sym(n))`: one line `{(ij), (jk), (ik)}` per 3-subset.
pub fn sym_fischer(n: usize) -> TripleSystem {
    assert!(n >= 2, "Sym(n) needs n >= 2 for a transposition");
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                lines.push([
                    transposition_index(n, i, j),
                    transposition_index(n, j, k),
                    transposition_index(n, i, k),
                ]);
            }
        }
    }
    TripleSystem::new(n * (n - 1) / 2, lines).expect("transposition lines are valid")
}

/// `DA(2,2)` on points p q r s t u = 0..6.
pub fn dual_affine_plane() -> TripleSystem {
    TripleSystem::new(6, [[0, 2, 3], [0, 4, 5], [1, 2, 4], [1, 3, 5]]).expect("valid")
}

/// The Fano plane `PG(2,2)`; a triple system that is not Fischer.
pub fn fano_plane() -> TripleSystem {
    TripleSystem::new(
        7,
        [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
    )
    .expect("valid")
}

/// A normal set of 3-transpositions and its Fischer space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSet {
    /// Closure of the generators under conjugation, sorted by image array.
    pub class: Vec<Permutation>,
    pub system: TripleSystem,
}

/// Closes `generators` under conjugation, checks the 3-transposition axioms,
/// and builds the lines `{c, d, c^d}` for `|cd| = 3`.
pub fn fischer_from_involutions(
    generators: &[Permutation],
) -> Result<InvolutionSet, ConstructionError> {
    let Some(first) = generators.first() else {
        return Ok(InvolutionSet {
            class: Vec::new(),
            system: TripleSystem::new(0, []).expect("empty system"),
        });
    };
    if generators.iter().any(|g| g.degree() != first.degree()) {
        return Err(ConstructionError::DomainMismatch);
    }
    for (i, g) in generators.iter().enumerate() {
        if g.is_identity() || !g.then(g).is_identity() {
            return Err(ConstructionError::NotInvolution(i));
        }
    }
    let mut seen: BTreeSet<Permutation> = generators.iter().cloned().collect();
    let mut queue: Vec<Permutation> = seen.iter().cloned().collect();
    while let Some(d) = queue.pop() {
        for g in generators {
            let c = d.conjugate_by(g);
            if seen.insert(c.clone()) {
                queue.push(c);
            }
        }
    }
    let class: Vec<Permutation> = seen.into_iter().collect();
    let index: BTreeMap<&Permutation, usize> =
        class.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let mut lines = Vec::new();
    for (a, c) in class.iter().enumerate() {
        for (b, d) in class.iter().enumerate().skip(a + 1) {
            match c.then(d).order() {
                2 => {}
                3 => {
                    let e = index[&c.conjugate_by(d)];
                    if e > b {
                        lines.push([a, b, e]);
                    }
                }
                order => return Err(ConstructionError::ProductOrder { c: a, d: b, order }),
            }
        }
    }
    let system = TripleSystem::new(class.len(), lines)
        .map_err(|_| ConstructionError::Validation("lines {c, d, c^d} overlap"))?;
    Ok(InvolutionSet { class, system })
}

/// The point reflection `x -> v - x` of `F_3^n`, as a permutation of indices.
pub fn affine_reflection(n: usize, v: &[u8]) -> Permutation {
    let image = (0..affine_size(n))
        .map(|x| {
            let w: Vec<u8> = f3_vector(n, x)
                .iter()
                .zip(v)
                .map(|(xi, vi)| (vi + 3 - xi) % 3)
                .collect();
            f3_index(&w)
        })
        .collect();
    Permutation::from_images(image).expect("reflection is a bijection")
}

/// `FS(F_3^n ⋊ F_3^×, {(v,-1)})`, generated by the reflections in `0` and
/// the unit vectors; checked isomorphic to `AG(n,3)`.
pub fn affine_as_fs(n: usize) -> Result<TripleSystem, ConstructionError> {
    let mut gens = vec![affine_reflection(n, &vec![0; n])];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        gens.push(affine_reflection(n, &e));
    }
    let fs = fischer_from_involutions(&gens)?.system;
    match isomorphic(&fs, &affine_space(n)) {
        Ok(Some(_)) => Ok(fs),
        _ => Err(ConstructionError::Validation("not isomorphic to AG(n,3)")),
    }
}

/// Product of the commutative Moufang loop of order 81 on `F_3^4`.
pub fn hall_loop_product(x: [u8; 4], y: [u8; 4]) -> [u8; 4] {
    let s = |a: u8, b: u8| (a + b) % 3;
    let det = (x[1] * y[2] + 2 * x[2] * y[1]) % 3;
    let diff = (x[0] + 3 - y[0]) % 3;
    [
        s(x[0], y[0]),
        s(x[1], y[1]),
        s(x[2], y[2]),
        (x[3] + y[3] + diff * det) % 3,
    ]
}

/// The 81-point Hall triple system: lines `{x, y, -(x∘y)}` for the loop
/// product above. Validated as a connected Fischer space of affine type on
/// which the tau-commutation identity fails, so it is not an affine space.
pub fn hall_triple_81() -> Result<TripleSystem, ConstructionError> {
    let mut lines = BTreeSet::new();
    for x in 0..81 {
        for y in x + 1..81 {
            let vx: [u8; 4] = f3_vector(4, x).try_into().expect("four digits");
            let vy: [u8; 4] = f3_vector(4, y).try_into().expect("four digits");
            let z = hall_loop_product(vx, vy).map(|c| (3 - c) % 3);
            let mut line = [x, y, f3_index(&z)];
            line.sort_unstable();
            lines.insert(line);
        }
    }
    let system = TripleSystem::new(81, lines)
        .map_err(|_| ConstructionError::Validation("loop lines overlap"))?;
    if system.n_lines() != 81 * 80 / 6 {
        return Err(ConstructionError::Validation("some pair is not collinear"));
    }
    if !system.is_connected() || !system.is_affine_type() {
        return Err(ConstructionError::Validation("not a Fischer space of affine type"));
    }
    if system.affine_tau_commutation() == TauCommutation::Holds {
        return Err(ConstructionError::Validation("tau commutation holds"));
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_counts() {
        let s4 = sym_fischer(4);
        assert_eq!((s4.n_points(), s4.n_lines()), (6, 4));
        assert!(isomorphic(&s4, &dual_affine_plane()).unwrap().is_some());
        let s2 = sym_fischer(2);
        assert_eq!((s2.n_points(), s2.n_lines()), (1, 0));
        assert_eq!(sym_fischer(5).n_points(), 10);
    }

    #[test]
    fn transposition_indices_are_lexicographic() {
        let n = 5;
        let mut expected = 0;
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(transposition_index(n, i, j), expected);
                expected += 1;
            }
        }
    }

    #[test]
    fn affine_counts() {
        let a1 = affine_space(1);
        assert_eq!((a1.n_points(), a1.n_lines()), (3, 1));
        let a2 = affine_space(2);
        assert_eq!((a2.n_points(), a2.n_lines()), (9, 12));
        assert!(a2.is_affine_type());
    }

    #[test]
    fn dual_affine_plane_shape() {
        let da = dual_affine_plane();
        assert_eq!((da.n_points(), da.n_lines()), (6, 4));
        assert!(!da.collinear(0, 1));
        let plane = &sym_fischer(4).planes()[0];
        assert!(isomorphic(&da, &plane.subsystem.system).unwrap().is_some());
    }

    #[test]
    fn involutions_of_sym4() {
        let t = |a, b| Permutation::transposition(4, a, b);
        let built = fischer_from_involutions(&[t(0, 1), t(1, 2), t(2, 3)]).unwrap();
        assert_eq!((built.system.n_points(), built.system.n_lines()), (6, 4));
        assert!(isomorphic(&built.system, &sym_fischer(4)).unwrap().is_some());
        let one = fischer_from_involutions(&[t(0, 1)]).unwrap();
        assert_eq!(one.system.n_points(), 1);
    }

    #[test]
    fn product_of_order_four_is_rejected() {
        // (0 1) and (0 3)(1 2): product is a 4-cycle
        let g = Permutation::transposition(4, 0, 1);
        let h = Permutation::from_images(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(g.then(&h).order(), 4);
        assert!(matches!(
            fischer_from_involutions(&[g, h]),
            Err(ConstructionError::ProductOrder { order: 4, .. })
        ));
    }

    #[test]
    fn affine_reflections() {
        let r = affine_reflection(2, &[1, 2]);
        assert!(r.then(&r).is_identity());
        assert!(isomorphic(&affine_as_fs(1).unwrap(), &affine_space(1)).unwrap().is_some());
        assert!(isomorphic(&affine_as_fs(2).unwrap(), &affine_space(2)).unwrap().is_some());
    }

    #[test]
    fn hall_loop_with_zero() {
        let y = [1, 2, 0, 1];
        assert_eq!(hall_loop_product([0; 4], y), y);
    }

    #[test]
    fn hall_system_validates() {
        let hall = hall_triple_81().unwrap();
        assert_eq!(hall.n_points(), 81);
        assert_eq!(hall.n_lines(), 1080);
        // line through 0 and y is {0, y, -y}
        let y = f3_index(&[1, 2, 0, 1]);
        assert_eq!(hall.third(0, y), Some(f3_index(&[2, 1, 0, 2])));
    }
}
