//! Exact rational and phase arithmetic, extended-precision complex numbers
//! and the modular helpers shared by the other modules.

pub mod modular;
pub mod phase;
pub mod precision;
pub mod quadratic;
pub mod roots;

pub use modular::{chi12, gcd, kronecker_symbol, mod_inverse, mod_inverse_variants, residue};
pub use phase::{phase_to_complex, BigComplex, BigFloat, PhaseRational, PhaseSum, RationalNumber};
pub use precision::{decimal, PrecisionConfig, SummationMode};
pub use quadratic::{factorize, sqrt_mod_prime_power, FactorSieve};
pub use roots::RootTable;
