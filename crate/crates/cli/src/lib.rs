//! Library surface of the command-line tool: problem-file parsing, command
//! implementations, report rendering, and the bundled example corpus.

pub mod commands;
pub mod corpus;
pub mod problem;
pub mod report;
