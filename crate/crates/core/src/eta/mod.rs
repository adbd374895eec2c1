//! The eta and theta multiplier systems, Dedekind sums, the cocycle `w_k`
//! and scalar Kloosterman sums.

pub mod classical;
pub mod dedekind;
pub mod kloosterman;
pub mod matrix;
pub mod multiplier;

pub use classical::{classical_a_c, classical_a_c_factored, SalieModulus};
pub use dedekind::{dedekind_sum, dedekind_sum_direct, dedekind_twelve_c, sawtooth};
pub use kloosterman::{scalar_kloosterman, scalar_kloosterman_phases};
pub use matrix::UnimodularMatrix;
pub use multiplier::{
    cocycle_w, eta_multiplier, eta_multiplier_knopp, theta_multiplier, Conjugate, Eta, KroneckerTwist, Multiplier, Theta,
};
