//! Finite groups: fields, element encodings, specs and enumerated tables.

pub mod element;
pub mod field;
pub mod spec;
pub mod table;

pub use field::FieldTable;
pub use spec::{parse_group_spec, GroupSpec};
pub use table::{enumerate_group, ElementId, GroupTable, ENUMERATION_CAP, TABLE_CAP};
