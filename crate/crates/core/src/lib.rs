pub mod decider;
pub mod drawing;
pub mod generate;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod oracle;
