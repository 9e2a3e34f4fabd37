//! Finite `p`-groups given by a multiplication law.
//!
//! Groups are small enough (at most `3^10` elements by default) that every
//! subgroup is stored as its full element set, and the closure routine is
//! at the same time the brute-force oracle for all series computations.
//!
//! ```
//! use prigid::pgroup::{GroupSpec, whole, theorem_a_group_test};
//! let g = whole(&GroupSpec::parse("theta(3,1,1,3)").unwrap()).unwrap();
//! assert!(theorem_a_group_test(&g).unwrap().equal);
//! ```

mod predicates;
mod series;
mod spec;
mod subgroup;

pub use predicates::{
    is_powerful, is_uniform, j_module_test, locally_powerful_pairs, maximal_subgroups, theorem_a_group_test,
    tower_group, JModuleTest, MaximalSubgroup, PowerfulVerdict, TheoremAGroupTest, TowerGroupRecord, UniformVerdict,
    DEFAULT_RANK_BOUND,
};
pub use series::{
    dimension_closed_form, dimension_subgroups, frattini_iterates, lower_central_series, lower_p_series,
    DimensionReport, SeriesKind, SeriesReport,
};
pub use spec::{
    GroupElement, GroupKind, GroupSpec, RootDepth, ThetaAbelianSpec, DEFAULT_DEPTH_BOUND, DEFAULT_ORDER_BOUND,
};
pub use subgroup::{
    closure, closure_of, commutator_subgroup, extend, frattini, generator_rank, power_subgroup, product, product_all,
    trivial, whole, Subgroup, SubgroupSummary,
};
