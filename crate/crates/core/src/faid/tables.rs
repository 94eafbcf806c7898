//! The two 7-level NLT maps shipped as fixtures.

use super::{parse_faid, VnMap};

pub const TABLE_ONE: &str = include_str!("../../fixtures/table1.faid");
pub const TABLE_TWO: &str = include_str!("../../fixtures/table2.faid");

/// The 7-level map used on the (155,64), (2388,1793) and (5184,4322) codes.
pub fn table_one() -> VnMap {
    parse_faid(TABLE_ONE).expect("fixture parses").map
}

/// The 7-level map used on the (504,252) code.
pub fn table_two() -> VnMap {
    parse_faid(TABLE_TWO).expect("fixture parses").map
}
