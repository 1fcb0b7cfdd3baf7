//! Reference oracles, instance generators, file formats, and the solve and
//! bench helpers behind the command-line tool.

pub mod format;
pub mod generate;
pub mod oracle;
pub mod solve;
