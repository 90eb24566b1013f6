//! Text formats and result documents for the `matchflip` binary.

pub mod format;
pub mod report;
