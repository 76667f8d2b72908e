pub mod basechange;
pub mod classifier;
pub mod cli;
pub mod dvr;
pub mod tate;
pub mod weierstrass;
