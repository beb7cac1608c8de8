//! Root data of types B, C, D, the weight dictionary λ ↦ λ̂ with the
//! parameters u_j, and the linkage machinery behind saturation.

pub mod dictionary;
pub mod linkage;
pub mod roots;

pub use dictionary::{
    annihilated_layer, annihilator_degree, compute_u_params, flag_membership, hat_lambda, index_sequence,
    omega_zero, tilde_lambda, unhat, verma_flag_of_first_tensor, FlagLayer, HighestWeightConfig,
};
pub use linkage::{
    check_k_sets, jantzen_coefficient, k_set_closed, k_sets_bfs, linkage_reachable, linkage_steps, saturation_check,
    tensor_step, LinkageStep, SaturationReport,
};
pub use roots::{Parabolic, RootDatum, RootType, Weight};
