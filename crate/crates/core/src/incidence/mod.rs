//! Partial triple systems: points `0..n` and 3-point lines, any two of which
//! share at most one point.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

mod iso;
mod rank;
mod tau;

pub use iso::{isomorphic, ISO_POINT_LIMIT};
pub use rank::{Rank, DEFAULT_RANK_CAP};
pub use tau::{AxiomFailure, TauAxiom, TauAxiomReport, TauCommutation};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IncidenceError {
    #[error("point {point} out of range for a system with {n_points} points")]
    InvalidPoint { point: usize, n_points: usize },
    #[error("expected two distinct points, got {0} twice")]
    SamePoint(usize),
    #[error("line {0:?} does not have three distinct points")]
    DegenerateLine([usize; 3]),
    #[error("points {0} and {1} lie on two different lines")]
    RepeatedPair(usize, usize),
    #[error("tau({0}) is not an automorphism")]
    NotAutomorphism(usize),
    #[error("isomorphism search is limited to {limit} points, got {n_points}")]
    TooLarge { n_points: usize, limit: usize },
    #[error("isomorphism search gave up after {0} nodes")]
    SearchBudget(u64),
}

/// A partial triple system with a dense pair → third-point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    n_points: usize,
    /// Each line ascending; the list sorted.
    lines: Vec<[usize; 3]>,
    third: Vec<u32>,
    /// Line indices through each point.
    incident: Vec<Vec<usize>>,
}

impl TripleSystem {
    pub fn new<I>(n_points: usize, lines: I) -> Result<Self, IncidenceError>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut sorted = Vec::new();
        for mut line in lines {
            for &p in &line {
                if p >= n_points {
                    return Err(IncidenceError::InvalidPoint { point: p, n_points });
                }
            }
            line.sort_unstable();
            if line[0] == line[1] || line[1] == line[2] {
                return Err(IncidenceError::DegenerateLine(line));
            }
            sorted.push(line);
        }
        sorted.sort_unstable();

        let mut third = vec![NONE; n_points * n_points];
        let mut incident = vec![Vec::new(); n_points];
        for (idx, &[a, b, c]) in sorted.iter().enumerate() {
            for (p, q, r) in [(a, b, c), (a, c, b), (b, c, a)] {
                if third[p * n_points + q] != NONE {
                    return Err(IncidenceError::RepeatedPair(p, q));
                }
                third[p * n_points + q] = r as u32;
                third[q * n_points + p] = r as u32;
            }
            for p in [a, b, c] {
                incident[p].push(idx);
            }
        }
        Ok(TripleSystem {
            n_points,
            lines: sorted,
            third,
            incident,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    /// Number of lines through `p`.
    pub fn degree(&self, p: usize) -> usize {
        self.incident[p].len()
    }

    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = &[usize; 3]> + '_ {
        self.incident[p].iter().map(move |&i| &self.lines[i])
    }

    fn check_point(&self, p: usize) -> Result<(), IncidenceError> {
        if p < self.n_points {
            Ok(())
        } else {
            Err(IncidenceError::InvalidPoint {
                point: p,
                n_points: self.n_points,
            })
        }
    }

    /// The third point of the line through `p` and `q`, if they are collinear.
    pub fn third_point(&self, p: usize, q: usize) -> Result<Option<usize>, IncidenceError> {
        self.check_point(p)?;
        self.check_point(q)?;
        if p == q {
            return Err(IncidenceError::SamePoint(p));
        }
        Ok(self.third(p, q))
    }

    /// Unchecked variant of [`third_point`](Self::third_point); `p == q`
    /// yields `None`.
    #[inline]
    pub fn third(&self, p: usize, q: usize) -> Option<usize> {
        match self.third[p * self.n_points + q] {
            NONE => None,
            r => Some(r as usize),
        }
    }

    #[inline]
    pub fn collinear(&self, p: usize, q: usize) -> bool {
        self.third[p * self.n_points + q] != NONE
    }

    /// Disjoint union; the points of `other` are shifted by `self.n_points()`.
    pub fn disjoint_union(&self, other: &TripleSystem) -> TripleSystem {
        let shift = self.n_points;
        let lines = self
            .lines
            .iter()
            .copied()
            .chain(other.lines.iter().map(|l| l.map(|p| p + shift)));
        TripleSystem::new(self.n_points + other.n_points, lines)
            .expect("disjoint union of valid systems is valid")
    }

    /// Restriction to `points` (sorted, distinct), relabelled `0..points.len()`
    /// in order, keeping lines with all three points inside.
    pub fn induced(&self, points: &[usize]) -> TripleSystem {
        let mut index = vec![NONE; self.n_points];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i as u32;
        }
        let lines = self.lines.iter().filter_map(|l| {
            let m = l.map(|p| index[p]);
            m.iter()
                .all(|&i| i != NONE)
                .then(|| m.map(|i| i as usize))
        });
        TripleSystem::new(points.len(), lines).expect("restriction of a valid system is valid")
    }

    /// Sorted closure of `seed` under "two points of a line force the third".
    pub fn closure(&self, seed: &[usize]) -> Result<Vec<usize>, IncidenceError> {
        for &p in seed {
            self.check_point(p)?;
        }
        let mut members = Vec::new();
        let mut inside = vec![false; self.n_points];
        for &p in seed {
            if !inside[p] {
                inside[p] = true;
                members.push(p);
            }
        }
        self.close_from(&mut members, &mut inside, 0);
        members.sort_unstable();
        Ok(members)
    }

    /// Closes `members` assuming `members[..closed]` is already closed.
    pub(crate) fn close_from(&self, members: &mut Vec<usize>, inside: &mut [bool], closed: usize) {
        let mut i = closed.max(1);
        while i < members.len() {
            let p = members[i];
            for j in 0..i {
                if let Some(r) = self.third(p, members[j]) {
                    if !inside[r] {
                        inside[r] = true;
                        members.push(r);
                    }
                }
            }
            i += 1;
        }
    }

    /// The subsystem generated by `seed`.
    pub fn generate_subsystem(&self, seed: &[usize]) -> Result<Subsystem, IncidenceError> {
        let points = self.closure(seed)?;
        let system = self.induced(&points);
        Ok(Subsystem { points, system })
    }

    /// Classes of the equivalence relation generated by collinearity, each
    /// sorted, ordered by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n_points];
        let mut out = Vec::new();
        for start in 0..self.n_points {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut class = vec![start];
            let mut i = 0;
            while i < class.len() {
                let p = class[i];
                for line in self.lines_through(p) {
                    for &q in line {
                        if comp[q] == usize::MAX {
                            comp[q] = id;
                            class.push(q);
                        }
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// One entry per unordered pair of distinct lines meeting in a point.
    pub fn planes(&self) -> Vec<Plane> {
        let mut out = Vec::new();
        for p in 0..self.n_points {
            let through = &self.incident[p];
            for (i, &l1) in through.iter().enumerate() {
                for &l2 in &through[i + 1..] {
                    let mut seed = Vec::with_capacity(6);
                    seed.extend_from_slice(&self.lines[l1]);
                    seed.extend_from_slice(&self.lines[l2]);
                    let subsystem = self.generate_subsystem(&seed).expect("valid points");
                    let class = PlaneClass::from_counts(
                        subsystem.system.n_points(),
                        subsystem.system.n_lines(),
                    );
                    out.push(Plane {
                        lines: (l1, l2),
                        subsystem,
                        class,
                    });
                }
            }
        }
        out
    }

    /// Point sets of the distinct planes.
    pub fn distinct_planes(&self) -> BTreeSet<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut inside = vec![false; self.n_points];
        for p in 0..self.n_points {
            let through = &self.incident[p];
            for (i, &l1) in through.iter().enumerate() {
                for &l2 in &through[i + 1..] {
                    let mut members: Vec<usize> = self.lines[l1].to_vec();
                    for &q in &self.lines[l2] {
                        if q != p {
                            members.push(q);
                        }
                    }
                    for &q in &members {
                        inside[q] = true;
                    }
                    self.close_from(&mut members, &mut inside, 0);
                    for &q in &members {
                        inside[q] = false;
                    }
                    members.sort_unstable();
                    seen.insert(members);
                }
            }
        }
        seen
    }

    /// True iff every plane is isomorphic to DA(2,2) or AG(2,3).
    ///
    /// The count signature picks the candidate; each distinct plane is then
    /// confirmed by an explicit isomorphism to the reference plane.
    pub fn is_fischer(&self) -> bool {
        self.fischer_plane_classes().is_some()
    }

    /// True iff the system is Fischer, has at least one plane, and every
    /// plane is AG(2,3).
    pub fn is_affine_type(&self) -> bool {
        matches!(self.fischer_plane_classes(), Some((0, ag)) if ag > 0)
    }

    /// `(number of DA(2,2) planes, number of AG(2,3) planes)` over distinct
    /// planes, or `None` if some plane is neither.
    pub fn fischer_plane_classes(&self) -> Option<(usize, usize)> {
        let da_ref = crate::constructions::dual_affine_plane();
        let ag_ref = crate::constructions::affine_space(2);
        let (mut da, mut ag) = (0, 0);
        for points in self.distinct_planes() {
            let plane = self.induced(&points);
            let class = PlaneClass::from_counts(plane.n_points(), plane.n_lines());
            let reference = match class {
                PlaneClass::DA22 => &da_ref,
                PlaneClass::AG23 => &ag_ref,
                PlaneClass::Other { .. } => return None,
            };
            if !matches!(isomorphic(&plane, reference), Ok(Some(_))) {
                return None;
            }
            match class {
                PlaneClass::DA22 => da += 1,
                _ => ag += 1,
            }
        }
        Some((da, ag))
    }
}

/// A generated subsystem together with its embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    /// Sorted ids in the parent; point `i` of `system` is `points[i]`.
    pub points: Vec<usize>,
    pub system: TripleSystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneClass {
    DA22,
    AG23,
    Other { points: usize, lines: usize },
}

impl PlaneClass {
    pub fn from_counts(points: usize, lines: usize) -> Self {
        match (points, lines) {
            (6, 4) => PlaneClass::DA22,
            (9, 12) => PlaneClass::AG23,
            (points, lines) => PlaneClass::Other { points, lines },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    /// Indices into [`TripleSystem::lines`].
    pub lines: (usize, usize),
    pub subsystem: Subsystem,
    pub class: PlaneClass,
}
