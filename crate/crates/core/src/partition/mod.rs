//! Combinatorial ground truth: partition numbers, rank tables, residue
//! counts, exact oracle values and the rank identities.

pub mod dyson;
pub mod numbers;
pub mod oracle;
pub mod qseries;
pub mod rank;

pub use dyson::{dyson_identity_check, DysonCheck, DysonIdentity, DysonReport};
pub use numbers::partition_numbers;
pub use oracle::{coefficient_oracle, verify_rank_inversion, OracleValue};
pub use qseries::{closed_form_leading_terms, mock_m_leading_terms, FracQSeries};
pub use rank::{rank_mod_counts, rank_table, RankTable, RANK_TABLE_LIMIT};
