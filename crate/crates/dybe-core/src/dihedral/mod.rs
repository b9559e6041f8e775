//! The dihedral group D_n, irreducible representations of its Drinfeld
//! double D(D_n), the canonical element, and projection operators onto the
//! irreps occurring in the tensor square of the n- (or m-) dimensional irrep.
//!
//! The standard tables use 1-based labels with `e_{0,0}` naming the last row; here
//! every index is the residue itself, stored at position `0..dim`, so a
//! table entry `e_{i+1,i}` is the matrix unit at `((i+1) mod dim, i mod dim)`.

mod catalog;
mod group;
mod irrep;
mod projector;

pub use catalog::{catalog, label_for, AlphaPair, MVariant};
pub use group::GroupElement;
pub use irrep::{canonical_element, character, dual_irrep_matrix, irrep_matrix, DoubleRep, IrrepLabel};
pub use projector::{
    projector_algebraic, projector_algebraic_label, projector_closed, projector_from_idempotent, Projector,
};
