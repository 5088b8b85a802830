//! Command-line front end for `grassmann-core`: counting sweeps, identity
//! certificates, family files, and small-rank algebraic certification.

pub mod cli;
pub mod famfile;
pub mod report;
