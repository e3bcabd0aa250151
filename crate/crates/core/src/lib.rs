//! Case Frames and case-based arguments for statutory interpretation.
//!
//! The crate represents decided cases as [`CaseFrame`]s, builds arguments that
//! appeal to a prior case for a new [`ProblemFrame`], attacks them with
//! critical questions, weighs conflicting arguments under second-order
//! interpretive directives, and evaluates the result as an abstract
//! argumentation framework.
//!
//! ```
//! use caseframe::{fixtures, engine};
//!
//! let base = fixtures::table1();
//! let problem = fixtures::table1_problem();
//! let analysis = engine::analyze(&problem, &base, &engine::Extras::default()).unwrap();
//! assert!(!analysis.framework.arguments.is_empty());
//! ```
//!
//! The guide in `book/` walks through each concept; its code listings are
//! compiled and run as part of `cargo test`.

pub mod case_base;
pub mod engine;
pub mod fixtures;
pub mod frame;
pub mod normalize;
pub mod problem;
pub mod session;

pub use case_base::{load_case_base, CaseBase, CaseBaseError, CaseQuery, OpinionLine, ParseMode};
pub use frame::{frame_elements, validate_frame, CaseFrame, SlotElementRef, ValidationReport};
pub use normalize::{normalize_term, Aliases};
pub use problem::{validate_problem, ProblemFrame};
pub use session::Session;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/case-frames.md")]
    mod case_frames {}
    #[doc = include_str!("../../../book/src/case-base.md")]
    mod case_base {}
    #[doc = include_str!("../../../book/src/arguments.md")]
    mod arguments {}
    #[doc = include_str!("../../../book/src/critical-questions.md")]
    mod critical_questions {}
    #[doc = include_str!("../../../book/src/directives.md")]
    mod directives {}
    #[doc = include_str!("../../../book/src/semantics.md")]
    mod semantics {}
    #[doc = include_str!("../../../book/src/sessions.md")]
    mod sessions {}
    #[doc = include_str!("../../../book/src/cli-and-service.md")]
    mod cli_and_service {}
}
