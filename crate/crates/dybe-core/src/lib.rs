//! Representations of the Drinfeld double D(D_n) of the dihedral group, the
//! spectral R-matrices descended from the six-vertex model, and executable
//! checks of the identities they satisfy.

pub mod builders;
pub mod dihedral;
pub mod error;
pub mod operator;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use operator::Operator;
pub use scalar::{Cyclo, CycloField, MpComplex, Precision, RootOfUnity, Scalar};
pub use spectral::{PoleSet, SpectralOperator};
