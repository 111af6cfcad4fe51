pub mod algebra;
pub mod dfield;
pub mod telescope;
pub mod expr;
pub mod cli;
