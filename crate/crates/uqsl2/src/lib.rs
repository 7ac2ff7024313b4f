//! Command-line front end for `uqsl2-core`: JSON formats, exports and a
//! parallel runner for the verification suites.

pub mod calc;
pub mod export;
pub mod format;
pub mod runner;
