//! The `(p-1)`-dimensional multiplier system `mu_p` on `Gamma0(p)`.

pub mod matrix;
pub mod sampler;
pub mod scalar;

pub use matrix::{m_matrix, mu_conj_simplified, mu_matrix, perm_phase_compose, perm_phase_inverse, PermPhaseMatrix};
pub use sampler::Gamma0Sampler;
pub use scalar::{cusp_alphas, mu_scalar, CuspAlpha};
