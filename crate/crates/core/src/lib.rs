pub mod board;
pub mod certificate;
pub mod cnf;
pub mod constructions;
pub mod fixtures;
pub mod nullstellensatz;
pub mod solver;
