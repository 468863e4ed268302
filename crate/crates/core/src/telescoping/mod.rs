//! q-Zeilberger certificates: the summands as q-hypergeometric terms,
//! exact certificate checks, and a bounded-ansatz search.

pub mod certificate;
pub mod check;
pub mod discover;
mod modp;
pub mod mpoly;
pub mod term;

pub use certificate::{
    printed_certificate, printed_certificate_json, Certificate, CertificateJson,
};
pub use check::{
    annihilation_crosscheck, boundary_valuations, compare_up_to_factor, verify_certificate,
    verify_sum_recurrence, CertificateReport, FactorComparison, Grid, RecurrenceReport,
};
pub use discover::{find_certificate, search, Attempt, Bounds, SearchOutcome};
pub use mpoly::{MPoly, RationalFunction, RationalValue};
pub use term::{eval_term, QHyperTerm};
