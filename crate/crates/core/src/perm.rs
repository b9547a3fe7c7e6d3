//! Permutations of `0..n`, acting on the right: `p^(gh) = (p^g)^h`.

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Returns `None` unless `image` is a bijection of `0..image.len()`.
    pub fn from_images(image: Vec<usize>) -> Option<Self> {
        let mut seen = alloc::vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// The transposition swapping `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Permutation { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut image = alloc::vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Permutation { image }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "permutation degrees differ");
        Permutation {
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        }
    }

    /// `self^h = h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Self {
        h.inverse().then(self).then(h)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = alloc::vec![false; self.image.len()];
        let mut order = 1u64;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
