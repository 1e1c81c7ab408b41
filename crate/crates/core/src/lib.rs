pub mod classifier;
pub mod error;
pub mod groebner;
pub mod interval;
pub mod manipulator;
pub mod poly;
pub mod solver;
pub mod system;
pub mod univariate;
pub mod upoly;

pub use error::{Error, Result};
pub use poly::{MonomialOrder, MultiPoly, Rational, VarList};
pub use system::PolySystem;
