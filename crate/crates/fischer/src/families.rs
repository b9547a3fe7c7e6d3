//! Named families of triple systems, as used on the command line and in
//! `.pts` manifests.

use clap::ValueEnum;
use fischer_core::constructions::{affine_space, dual_affine_plane, hall_triple_81, sym_fischer};
use fischer_core::rewrite::{build_q, MAX_QSPACE};
use fischer_core::TripleSystem;

use crate::pts::Manifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Transpositions of Sym(n).
    Sym,
    /// AG(n,3).
    Affine,
    /// The dual affine plane of order 2.
    Da22,
    /// The 81-point Hall triple system.
    Hall81,
    /// The word model of AG(n-1,3).
    Qspace,
}

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("family {0} needs --n")]
    MissingN(&'static str),
    #[error("family {0} takes no --n")]
    UnexpectedN(&'static str),
    #[error("family {family}: n = {n} outside {range}")]
    OutOfRange {
        family: &'static str,
        n: usize,
        range: &'static str,
    },
    #[error("construction failed: {0}")]
    Build(String),
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sym => "sym",
            Family::Affine => "affine",
            Family::Da22 => "da22",
            Family::Hall81 => "hall81",
            Family::Qspace => "qspace",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Family::value_variants().iter().copied().find(|f| f.name() == name)
    }

    fn takes_n(self) -> bool {
        matches!(self, Family::Sym | Family::Affine | Family::Qspace)
    }

    pub fn build(self, n: Option<usize>) -> Result<TripleSystem, FamilyError> {
        let name = self.name();
        let n = match (self.takes_n(), n) {
            (true, None) => return Err(FamilyError::MissingN(name)),
            (false, Some(_)) => return Err(FamilyError::UnexpectedN(name)),
            (_, n) => n,
        };
        let out_of_range = |n, range| FamilyError::OutOfRange { family: name, n, range };
        Ok(match (self, n) {
            (Family::Sym, Some(n)) if (2..=40).contains(&n) => sym_fischer(n),
            (Family::Sym, Some(n)) => return Err(out_of_range(n, "2..=40")),
            (Family::Affine, Some(n)) if (1..=7).contains(&n) => affine_space(n),
            (Family::Affine, Some(n)) => return Err(out_of_range(n, "1..=7")),
            (Family::Qspace, Some(n)) if (1..=MAX_QSPACE).contains(&n) => {
                build_q(n).map_err(|e| FamilyError::Build(e.to_string()))?.system
            }
            (Family::Qspace, Some(n)) => return Err(out_of_range(n, "1..=6")),
            (Family::Da22, _) => dual_affine_plane(),
            (Family::Hall81, _) => hall_triple_81().map_err(|e| FamilyError::Build(e.to_string()))?,
            _ => unreachable!("parameter presence checked above"),
        })
    }

    pub fn manifest(self, n: Option<usize>) -> Manifest {
        Manifest::new(self.name(), n.filter(|_| self.takes_n()))
    }

    /// A short human label such as `Sym(5)` or `AG(3,3)`.
    pub fn label(self, n: Option<usize>) -> String {
        let n = n.unwrap_or(0);
        match self {
            Family::Sym => format!("Sym({n})"),
            Family::Affine => format!("AG({n},3)"),
            Family::Da22 => "DA(2,2)".to_string(),
            Family::Hall81 => "Hall-81".to_string(),
            Family::Qspace => format!("Q({n})"),
        }
    }
}
