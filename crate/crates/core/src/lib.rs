//! Exact three-term progression counting and character-theoretic mixing
//! bounds on finite groups.
//!
//! The crate enumerates small groups (alternating, symmetric, cyclic,
//! `SL_d(F_q)`, `PSL_d(F_q)` and permutation groups from generators),
//! computes conjugacy classes and complex character tables, and evaluates
//! progression counts `(x, xy, xy²)` against the explicit bound
//! `2^{1/4} (Σ_{ρ≠1} 1/d_ρ)^{1/8} |G|²`.

pub mod characters;
pub mod cli;
pub mod error;
pub mod exec;
pub mod group;
pub mod harmonic;
pub mod mixing;
pub mod report;
pub mod sampling;
pub mod verify;

pub use characters::{CharacterTable, ConjugacyData, GroupData};
pub use error::{Error, Result};
pub use group::{enumerate_group, parse_group_spec, ElementId, GroupSpec, GroupTable};
