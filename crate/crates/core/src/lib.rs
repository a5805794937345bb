//! A workbench for second-order logic: formulas and substitution, atomic
//! systems and their derivability, the Hilbert calculi HI/HC and natural
//! deduction NI/NC with translations between them, the flattening
//! construction that simulates proofs in atomic systems, and bounded
//! evaluation of base-extension support.

pub mod atomic;
pub mod cli;
pub mod corpus;
pub mod flatten;
pub mod hilbert;
pub mod natded;
pub mod parser;
pub mod random;
pub mod support;
pub mod syntax;
