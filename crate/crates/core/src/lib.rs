pub mod error;
pub mod families;
pub mod function;
pub mod identities;
pub mod kernels;
pub mod monotone;
pub mod params;
pub mod quadrature;
pub mod registry;
pub mod special;

pub use error::{Error, Result};
pub use function::ScalarFunction;
pub use params::{OmegaParams, ParamPair};
