//! Ground truth by brute force: modules for cyclic and elementary abelian
//! p-groups over `F_p`, their tensor products, syzygies and cores, and the
//! invariant sequences and channels computed directly from them.

mod fp;
mod module;
mod oracle;

pub use fp::{Echelon, FpMatrix};
pub use module::{FpModule, GroupShape, JordanDecomposition};
pub use oracle::{
    builtin_module, channel_harvest, channel_harvest_with_budget, fit_tails, oracle_invariants,
    oracle_invariants_with_budget, parse_gens, JordanTable, OracleTable, DEFAULT_DIM_BUDGET,
};
