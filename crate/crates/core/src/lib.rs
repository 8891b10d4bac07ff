//! Order-isomorphic pattern containment on words, superpattern enumeration,
//! and the exact distribution of the time a random word takes to contain
//! every preferential arrangement of a given length.
//!
//! Modules:
//! - [`word`], [`patterns`]: words, dense ranking, containment, arrangements.
//! - [`superpatterns`], [`exhaustive`], [`counts`], [`structure`]:
//!   classification, exhaustive searches, closed-form counts and structural checks.
//! - [`series`]: exact rationals, polynomials and rational generating functions.
//! - [`waiting_time`]: PMFs, the online detector and the simulator.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod counts;
pub mod error;
pub mod exhaustive;
pub mod oeis;
pub mod patterns;
pub mod series;
pub mod structure;
pub mod superpatterns;
pub mod tracker;
pub mod waiting_time;
pub mod word;

pub use error::{Error, Result};
pub use exhaustive::Budget;
pub use superpatterns::{classify, ClassFlags};
pub use word::{Letter, LetterPermutation, Pattern, Word};
