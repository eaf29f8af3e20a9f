pub mod catalogue;
pub mod cli;
pub mod clifford;
pub mod exactfield;
pub mod octonion;
pub mod sampling;
pub mod superlie;
pub mod susy;
