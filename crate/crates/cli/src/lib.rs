//! Text formats, figure export and command implementations behind `dtutte`.

pub mod commands;
pub mod export;
pub mod formats;
