//! Exact combinatorial measures: shattering, VC dimension, teaching sets,
//! teaching dimensions and recursive teaching plans.

mod hitting;
mod plan;
mod shatter;
mod teaching;

pub use plan::{recursive_teaching_plan, rtd, PlanLevel, TeachingPlan};
pub use shatter::{
    is_shattered, is_xy_class, pattern_profile, shattered_count, vc_dimension, PatternProfile,
};
pub use teaching::{td_max, td_min, teaching_dimension, teaching_dimensions, TeachingSet};

#[allow(unused_imports)]
pub(crate) use shatter::k_subsets;
