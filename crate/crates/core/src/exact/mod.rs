//! Exact distributions on small vertex sets: the forgetful pushforward, total
//! variation, witness events, event probabilities and an order-sum oracle for
//! selection models.

mod distribution;
mod ops;
mod oracle;

pub use distribution::{state_count, DistributionKind, GraphDistribution, TOTAL_MASS_TOLERANCE};
pub use ops::{digraph_event_probability, event_probability, phi_pushforward, tv_distance, witness_events, WitnessEvents};
pub use oracle::{
    esrg_exact_distribution_oracle, selection_distribution_oracle, ORACLE_M_MAX, ORACLE_N_MAX, ORACLE_TERM_CAP,
};
