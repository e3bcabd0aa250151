//! Bundled example case bases and problems.
//!
//! `table1` holds a single tax-law decision encoded in full. `table2` holds
//! five decisions of the same court that each state a different second-order
//! directive. `chain` and `diamond` are small citation structures.

use crate::case_base::{CaseBase, ParseMode};
use crate::problem::ProblemFrame;

pub const TABLE1_JSON: &str = include_str!("../../../fixtures/table1.json");
pub const TABLE2_JSON: &str = include_str!("../../../fixtures/table2.json");
pub const CHAIN_JSON: &str = include_str!("../../../fixtures/chain.json");
pub const DIAMOND_JSON: &str = include_str!("../../../fixtures/diamond.json");
pub const CHAIN_BAD_DATES_JSON: &str = include_str!("../../../fixtures/chain-bad-dates.json");
pub const PROBLEM_TABLE1_JSON: &str = include_str!("../../../fixtures/problem-table1.json");
pub const PROBLEM_TABLE2_JSON: &str = include_str!("../../../fixtures/problem-table2.json");

fn load(src: &str) -> CaseBase {
    CaseBase::load(src, ParseMode::Strict).expect("bundled fixture loads")
}

fn problem(src: &str) -> ProblemFrame {
    serde_json::from_str(src).expect("bundled problem parses")
}

pub fn table1() -> CaseBase {
    load(TABLE1_JSON)
}

pub fn table2() -> CaseBase {
    load(TABLE2_JSON)
}

pub fn chain() -> CaseBase {
    load(CHAIN_JSON)
}

pub fn diamond() -> CaseBase {
    load(DIAMOND_JSON)
}

/// A problem asking how "incurring the cost" should be read.
pub fn table1_problem() -> ProblemFrame {
    problem(PROBLEM_TABLE1_JSON)
}

/// A problem sharing exactly one characteristic with each `table2` case.
pub fn table2_problem() -> ProblemFrame {
    problem(PROBLEM_TABLE2_JSON)
}
