//! File formats, benchmarks and the command line for the `lstar` core.

pub mod basis_file;
pub mod bench;
pub mod cli;
pub mod gen;
pub mod proof_file;
pub mod run_record;
