//! Ordering finite utility streams.
//!
//! A utility stream is a non-empty finite sequence over a finite domain of
//! labeled integer utilities. Any comparator defined between streams of
//! equal length extends to arbitrary lengths by replicating both streams to
//! a common length and comparing the replications. This crate provides the
//! sequence algebra, the lifting construction, a catalogue of evaluators
//! (compliant and deliberately non-compliant), and an audit engine that
//! exhaustively checks a comparator against the axiom system on a bounded
//! universe, emitting deterministic counterexample witnesses.

pub mod audit;
pub mod controls;
pub mod domain;
pub mod error;
pub mod evaluators;
pub mod lifting;

pub use audit::{run_audit, AuditOptions, AuditReport, CheckId, CheckStatus, UniverseBound};
pub use domain::{DomainSpec, Ordering, Sequence};
pub use error::{Error, Result};
pub use evaluators::{make_comparator, EvaluatorSpec, Rational};
pub use lifting::{
    common_length, EqualLengthComparator, LiftedComparator, Strategy, TableComparator,
};
