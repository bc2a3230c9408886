pub mod cyclotomic;
pub mod group;
pub mod jacobi;
pub mod spectrum;
pub mod splitting;
