//! Exact, greedy, local-search and kernelization solvers over a
//! [`CoverInstance`](crate::cover::CoverInstance).

mod bitset;
pub mod exact;
pub mod fpt;
pub mod greedy;
pub mod local;

use thiserror::Error;

pub use exact::{min_hitting_set, solve_exact};
pub use fpt::{kernelize, kernelize_sets, FptRun, reduce_pairs, reduce_singletons, solve_fpt, FptOutcome, KernelTrace, KernelVerdict, ReductionMode};
pub use greedy::solve_greedy;
pub use local::{find_improving_swap, local_search, LocalSearchOutcome, LocalSearchParams, Swap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no cover of size at most {ub}")]
    BudgetExceeded { ub: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
