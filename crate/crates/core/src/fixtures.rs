//! Shipped inputs: the (155,64) Tanner code, a single parity check, and two
//! trapping-set topologies.

use crate::graph::{parse_alist, Code};
use crate::ts::{parse_ts, TsTopology};

pub const TANNER_155_64: &str = include_str!("../fixtures/tanner_155_64.alist");
pub const SPC3: &str = include_str!("../fixtures/spc3.alist");
pub const T6_2: &str = include_str!("../fixtures/t6_2.ts");
pub const T5_3: &str = include_str!("../fixtures/t5_3.ts");

/// The (155,64) Tanner code: column weight 3, row weight 5, girth 8.
pub fn tanner_code() -> Code {
    parse_alist(TANNER_155_64, "tanner-155-64")
        .expect("fixture parses")
        .with_rate_hint(64.0 / 155.0)
        .expect("rate in range")
}

/// `K_{3,3}` minus one edge: six variables, eight degree-two checks and two
/// degree-one checks, on variables 3 and 6.
pub fn t6_2() -> TsTopology {
    parse_ts(T6_2, "T(6,2)").expect("fixture parses")
}

/// A (5,3) set: a four-cycle of variables 1..4 with a chord through variable
/// 5 joining 1 and 3; degree-one checks on 2, 4 and 5.
pub fn t5_3() -> TsTopology {
    parse_ts(T5_3, "T(5,3)").expect("fixture parses")
}
