//! Verification campaigns over a catalog of small p-groups, with
//! deterministic JSON and CSV reports.

pub mod campaigns;
pub mod catalog;
pub mod claims;
pub mod config;
pub mod report;
pub mod store;

pub use config::RunConfig;
pub use report::{Envelope, Status, VerificationReport};
