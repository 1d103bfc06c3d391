pub mod bounding;
pub mod category;
pub mod dot;
pub mod equivalence;
pub mod error;
pub mod exec_comm;
pub mod exec_symm;
pub mod multiset;
pub mod net;
pub mod span_semantics;
