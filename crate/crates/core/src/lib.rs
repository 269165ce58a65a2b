//! Bit-exact uniform generators, Ziggurat normal sampling, and exhaustive
//! forensic analyses of the flaws in their combination.
//!
//! * [`generators`]: SHR3, SHR0, CONG, MWC and their combinations as pure
//!   state machines.
//! * [`ziggurat`]: table construction and the rejection sampler.
//! * [`forensics`]: preimage and bin censuses, χ² machinery, orbit walks,
//!   tail audits, related-seed detectors.
//! * [`report`]: the JSON envelope shared by every report.

pub mod error;
pub mod forensics;
pub mod generators;
pub mod report;
pub mod ziggurat;

pub use error::{Error, Result};
