pub mod basis;
pub mod cli;
pub mod constructors;
pub mod fixpoint;
pub mod fixtures;
pub mod format;
pub mod ideal;
pub mod lambda;
pub mod mapping;
pub mod universal;
