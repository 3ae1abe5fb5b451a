//! Generator matrices, Gram checks and exact certificates.

mod descriptor;
pub mod exact;
mod matrix;
mod verify;

pub use descriptor::{
    build_lattice, dn_matrix, twisted_embedding, zn_matrix, zn_matrix_mixed, zn_matrix_odd,
    zn_matrix_power_two, LatticeDescriptor, LatticeKind,
};
pub use exact::dn_transform;
pub use matrix::NumericMatrix;
pub use verify::{
    diversity_proxy, dn_generators_agree, gram_and_verify, volume_check, DiversityReport,
    GramReport, VolumeReport, DET_SLACK, DIVERSITY_SAMPLES, DIVERSITY_SEED, DIVERSITY_THRESHOLD,
    ORTHONORMAL_SLACK,
};
