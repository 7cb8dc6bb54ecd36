//! Explicit matrix representations of complex Lie algebras.
pub mod classical;
pub mod forms;
pub mod g2;
pub mod graded;
pub mod ops;
pub mod probe;
pub mod rep;
pub mod spin;

pub use classical::{build_classical, Family};
pub use forms::{detect_form, invariant_forms};
pub use g2::build_g2;
pub use graded::{build_e7_model, build_f4_model};
pub use ops::{
    add_center, adjoint_rep, power_basis, power_matrix, power_rep, primitive_wedge3,
    restrict_to_invariant_subspace, tensor_rep, traceless_sym2, PowerKind,
};
pub use probe::{irreducibility_probe, submodule_generated, Probe};
pub use rep::{Form, FormKind, LieRep};
pub use spin::{build_spin, clifford_gammas, Chirality};
