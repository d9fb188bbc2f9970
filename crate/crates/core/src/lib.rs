//! Exact computation of complete weight enumerators for two families of
//! p-ary cyclic codes, together with the Gauss-sum and exponential-sum
//! machinery they are built from.
//!
//! Everything is integer arithmetic: character sums are evaluated in the
//! ring of cyclotomic integers and classified into symbolic
//! sign-times-power-of-p values, so equality checks between closed-form
//! results and exhaustive enumeration are exact decisions, never float
//! comparisons.

pub mod cwe;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod report;
pub mod sums;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldDescriptor, FieldElement, DEFAULT_FIELD_CAP};
