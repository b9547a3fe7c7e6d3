//! Fischer spaces, Matsuo algebras, and exact Jordan-identity checks.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! * [`scalar`]: exact field elements over `F_p` (odd `p`) and `Q`.
//! * [`perm`]: permutations acting on the right.
//! * [`incidence`]: partial triple systems, closure, planes, rank,
//!   the transposition map `tau`, and isomorphism testing.
//! * [`constructions`]: `Sym(n)`, `AG(n,3)`, `DA(2,2)`, the Hall system on 81
//!   points, and the Fischer space of a set of 3-transpositions.
//! * [`rewrite`]: the word presentation of `AG(n-1,3)` and its normal forms.
//! * [`matsuo`]: Matsuo algebras and the Jordan decision procedure.

#![no_std]

extern crate alloc;

pub mod constructions;
pub mod incidence;
pub mod matsuo;
pub mod perm;
pub mod rewrite;
pub mod scalar;

pub use incidence::{PlaneClass, Rank, Subsystem, TripleSystem};
pub use perm::Permutation;
pub use scalar::{FieldSpec, Scalar};
