//! The truncated tensor module M(λ) ⊗ V^{⊗r} over the orthogonal or
//! symplectic Lie algebra, the action of the cyclotomic Brauer algebra on it,
//! and the explicit singular vectors v_{t,ξ,d}.

pub mod lie;
pub mod module;
pub mod singular;
pub mod vectors;

pub use lie::{LieAlgebra, RootKind};
pub use module::{Term, TensorModule, TensorVector};
pub use singular::{check_micro_scale, expected_endomorphism_rank, verify_all, SingularReport, TensorSetting};
pub use vectors::{build_vector_data, build_y_operators, j_xi, y_lc, y_xi, RootWord, VectorData};
