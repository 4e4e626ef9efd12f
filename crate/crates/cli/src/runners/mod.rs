//! One runner per experiment, all behind the `Experiment` trait.

pub mod bell;
pub mod cat;
pub mod double_slit;
pub mod mz;
pub mod rto;
pub mod table_one;
