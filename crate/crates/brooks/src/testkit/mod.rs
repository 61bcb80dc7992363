//! Ground truth and input generation: an exact colorability oracle,
//! seeded random and named graph generators, exhaustive enumeration of
//! small graphs, and searched instances that drive each algorithm
//! branch.

pub mod cases;
pub mod gen;
pub mod oracle;
