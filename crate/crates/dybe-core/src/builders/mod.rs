//! Spectral objects: `r(z)`, `L(z)`, the coefficient functions, the
//! descendants and the Fateev–Zamolodchikov weights.
//!
//! | displayed form                         | here                                |
//! |----------------------------------------|-------------------------------------|
//! | `w^{2x}`, `w` primitive `n`-th, n odd  | `ω^x`, `ω = w²`, `d = n`            |
//! | `w^{2x}`, `w` primitive `2m`-th        | `ω^x`, `ω = w²`, `d = m`            |
//! | single powers `w^x`, `w` primitive `m`-th | `ω^x`, `ω = w`, `d = m`          |

mod coeff;
mod descendant;
mod fz;
mod params;
mod six_vertex;
pub mod transform;

pub use coeff::{Boundary, CoeffTable};
pub use descendant::{descendant_poles, minus_via_shift, Descendant, TwoParam};
pub use fz::{normalize, Arg, FzLimit, FzLimitOp, FzWeights, WeightKind};
pub use params::Params;
pub use six_vertex::{l_operator, l_operator_with_h, six_vertex_r, LOperator, SixVertex};
