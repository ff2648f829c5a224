//! Finite automata over a group alphabet and the loop-elimination argument
//! against regular languages of geodesics, with re-checkable witnesses.

pub mod audit;
pub mod corpus;
pub mod dfa;
pub mod pump;
pub mod search;
pub mod witness;

pub use audit::{bounded_language_audit, AuditOutcome};
pub use dfa::{dfa_validate, excise, Dfa, DfaSpec, Run};
pub use pump::{pump_refute, pump_run, target_for, PumpOptions};
pub use search::{product_search, GeodesicPrefixOracle, IntervalOracle, PrefixOracle};
pub use witness::{verify_witness, Excision, LengthSource, RefutationWitness, TargetParams, Verdict};
