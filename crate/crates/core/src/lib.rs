pub mod error;
pub mod algebra;
pub mod blocks;
pub mod character;
pub mod cohomology;
pub mod cyclotomic;
pub mod decompose;
pub mod engine;
pub mod field;
pub mod group;
mod hom;
pub mod linalg;
pub mod module;
pub mod padic;
pub mod perm;
pub mod poly;
pub mod pperm;
pub mod product;
pub mod session;
pub mod tensor;
pub mod virtual_module;

pub use error::{Error, Result};
