//! Augmentation filtrations of group algebras over 𝔽_p, with the
//! Jennings, Magnus and necklace formulas used to cross-check them, the
//! ideal generators of a unital complement, and growth summaries.

mod algebra;
mod growth;
mod jennings;
mod magnus;
mod rs;
mod witt;

pub use algebra::{
    agreement_horizon, aug_ladder, build_group_algebra, build_group_algebra_with_cap, graded_dims_dual,
    AugmentationLadder, FiniteGroupAlgebra, DEFAULT_ALGEBRA_CAP,
};
pub use growth::{growth_report, GrowthReport};
pub use jennings::{jennings_hilbert_coeffs, jennings_series, log_p, subgroup_closure, JenningsSeries};
pub use magnus::{
    free_graded_dims, magnus_deg, magnus_image, parse_free_word, Degree, Letter, Series, DEFAULT_MAGNUS_DEGREE,
    MAGNUS_MONOMIAL_CAP,
};
pub use rs::{complement, generator_elements, rs_generators, rs_step_bound, Complement, StepBound};
pub use witt::{aperiodic_necklaces, witt_ranks};
