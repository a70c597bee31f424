//! Verification harness for wide ball bodies: brute-force oracles, campaigns,
//! reports, SVG figures and the `wideball` command line.

pub mod app;
pub mod campaign;
pub mod oracle;
pub mod report;
pub mod svg;
