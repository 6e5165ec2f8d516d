//! Finite-dimensional left modules over an [`Algebra`](crate::algebra::Algebra).

mod decompose;
mod hom;
mod present;
mod registry;
mod rep;
mod stau;
mod sweep;
mod torsion;

pub use decompose::{decompose_module, is_indecomposable, split_by_idempotent, ModuleEnd};
pub use hom::{hom_dim, hom_space, intertwiner_system, HomBasis};
pub use present::{
    ar_dual_dim, cover_map, ext1_dim, image_basis, injective_factoring_dim, is_projective, kernel_basis,
    min_proj_presentation, projective_cover, radical_basis, tau, MinPresentation, ProjectiveCover,
};
pub use registry::{iso_indecomposable, radical_end_dim, ModuleRegistry};
pub use rep::{block_diag, ModuleMap, Representation};
pub use stau::{
    enumerate_stau, exchange_graph, is_stau_pair, is_tau_rigid, is_tau_rigid_pair, stau_leq, PairSummand, StauEnumeration,
    StauPair, TauCache,
};
pub use sweep::{sweep_indecomposables, SweepConfig, SweepReport};
pub use torsion::{fac_member, torsion_canonical_seq, trace, CanonicalSequence};
