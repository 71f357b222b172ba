pub mod baselines;
pub mod cli;
pub mod error;
pub mod majorization;
pub mod mixture;
pub mod monotone;
pub mod orders;
pub mod quad;
pub mod theorems;
