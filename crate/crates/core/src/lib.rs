pub mod chains;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod matrix;
pub mod sampler;
pub mod scalar;
pub mod spectral;
