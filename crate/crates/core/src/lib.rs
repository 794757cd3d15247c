//! Proof kernel for higher type arithmetic (`lhaw`) and its extensional
//! extension (`lehaw`), with a parametricity translation compiling
//! `lehaw` proofs into `lhaw` proofs.

pub mod cli;
pub mod conjecture;
pub mod corpus;
pub mod kernel;
pub mod rewrite;
pub mod surface;
pub mod syntax;
pub mod translate;
