//! Workbench for fault-tolerant syndrome-extraction circuits on small
//! stabilizer codes: bit-packed Pauli algebra, a code library with a
//! color-code merge constructor, a CNOT-level circuit IR, exhaustive
//! single-fault enumeration and verification, lookup-table decoding,
//! CNOT-order synthesis, and Pauli-frame Monte Carlo simulation.

pub mod catalog;
pub mod circuit;
pub mod fault;
pub mod gadgets;
pub mod twoblock;
pub mod twoblock_search;
pub mod verify;
pub mod code;
pub mod gf2;
pub mod pauli;

pub use code::{CodeError, Distance, LogicalAction, StabilizerCode};
pub use pauli::{PauliOperator, Sector, SyndromeVector};
