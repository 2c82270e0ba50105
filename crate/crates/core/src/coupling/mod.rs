//! Joint samplers of directed and undirected models that track where the two
//! structures disagree, and the transformed error process.

mod martingale;
mod samplers;

pub use martingale::{growth_bound, martingale_recursive, martingale_transform, MartingaleTrace};
pub use samplers::{
    approx_expected_errors, couple_asrg_esrg, couple_iag_ieg_approx, couple_iag_ieg_exact, location_errors,
    CoupledSample, Rule, RuleCounts,
};
