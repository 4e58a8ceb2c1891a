//! Conjugacy classes, class multiplication coefficients and character tables.

pub mod conjugacy;
pub mod table;

pub use conjugacy::{class_coefficients, conjugacy_classes, ClassCoefficients, ConjugacyData};
pub use table::{character_table, CharacterTable, C64};

use crate::error::Result;
use crate::group::{enumerate_group, GroupSpec, GroupTable};

/// A group together with its classes and character table.
#[derive(Debug)]
pub struct GroupData {
    pub group: GroupTable,
    pub classes: ConjugacyData,
    pub table: CharacterTable,
}

impl GroupData {
    pub fn build(spec: &GroupSpec, seed: u64) -> Result<Self> {
        let group = enumerate_group(spec)?;
        Self::from_group(group, seed)
    }

    pub fn from_group(group: GroupTable, seed: u64) -> Result<Self> {
        let classes = conjugacy_classes(&group);
        let coeffs = class_coefficients(&group, &classes);
        let table = character_table(&group, &classes, &coeffs, seed)?;
        Ok(Self {
            group,
            classes,
            table,
        })
    }
}
