//! Generalized Schreier-Fibonacci sequences.
//!
//! For `p >= 1`, `M_{p,n}` is the family of finite sets `S` of positive
//! integers with `max S = n` and `min S >= p|S|`; `M_{p,q,n}` additionally
//! requires `min2 S >= q|S|`. This crate counts these families three ways:
//!
//! * by brute-force enumeration ([`enumerate`]), which serves as the oracle,
//! * by explicit summation formulas ([`closed_form`]),
//! * by linear recurrences ([`recurrence`]), coupled to the single-parameter
//!   sequence or self-contained,
//!
//! and cross-checks them: [`identities`] tests the recurrences index by
//! index, [`partition`] runs the bijections behind them on explicit sets,
//! and [`detect`] recovers the minimal recurrence of a raw prefix.

pub mod closed_form;
pub mod detect;
pub mod enumerate;
pub mod error;
pub mod identities;
pub mod partition;
pub mod recurrence;
pub mod set;

pub use closed_form::{binomial, count_order_p, count_order_pq, TermValue};
pub use detect::{
    characteristic_coefficients, detect_minimal, verify_annihilates, Detection, DetectionResult,
};
pub use enumerate::{enumerate_with_max, oracle_count, Oracle, DEFAULT_CEILING};
pub use error::{Error, Result};
pub use partition::{verify_partition_order_p, verify_partition_order_pq, PartitionReport};
pub use recurrence::{
    check_recurrence, seq_order_p, seq_order_pq_coupled, seq_order_pq_uncoupled, step_linear,
    LinearRecurrence, Method, SequenceTable,
};
pub use set::{is_member, min2, FamilyParams, FiniteSet};
