//! Sampled and exact checks of the identities, producing serializable reports.

mod coeffs;
pub mod controls;
mod equivalence;
mod fz;
mod plan;
mod projectors;
mod properties;
mod report;
mod ybe;

pub use coeffs::{check_f_constraints, check_g_identity, constraint_pairs, f_constraints_at, g_identity_at};
pub use equivalence::{find_equivalence, find_equivalence_ops, Equivalence, SCREEN_TOL};
pub use fz::{check_inverse_relation, check_str, STR_READING};
pub use plan::{unit_point, Point, SamplePlan};
pub use projectors::{check_projectors, EXACT_TOL};
pub use properties::{
    canonical_for, check_adjoint_symmetry, check_properties, check_property, projective_residual, Property,
    PropertyOptions,
};
pub use report::{residual, scalar_residual, Sample, Verdict, VerificationReport};
pub use ybe::{check_llr, check_rll, check_two_param, check_ybe, check_ybe_capped, LlrForm, YbeForm, YBE_MAX_LEG};
