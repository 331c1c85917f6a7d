//! File formats, parallel path enumeration and the `gwa` command line on top
//! of [`gwa_core`].

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod plot;
pub mod suite;
