pub mod bpt;
pub mod capset;
pub mod classify;
pub mod eq;
pub mod sat;
