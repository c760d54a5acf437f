//! Exact ground-truth engines. Budgets count search-node expansions, so a
//! timeout is reproducible.

mod audit;
mod fan;
mod matching;
mod mis;
mod sunflower;
mod witness;

pub use audit::{dlr_audit, dlr_audit_instantiated, dlr_t, CycleCondition, DlrAudit};
pub use fan::contains_fan;
pub use matching::{matching_number_exact, MatchingResult};
pub use mis::{max_independent_set_enumerate, max_independent_set_exact, max_independent_set_exact_with, MisResult};
pub use sunflower::{
    contains_sunflower, indecomposability_check, lambda_i, omitting_check, Indecomposability,
};
pub use witness::{Witness, WitnessKind};

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 50_000_000;
pub const DEFAULT_MIS_VERTICES: usize = 64;
pub const DEFAULT_MATCHING_EDGES: usize = 5000;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::OracleTimeout { budget: self.limit })
        } else {
            Ok(())
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}
