//! Tilings of finite quotients by translates of Følner sets, lifted to
//! transversals with small boundary, plus an experimental linear version.

pub mod folner;
pub mod greedy;
pub mod params;
pub mod probe;
pub mod quotient;
pub mod transversal;

pub use folner::{folner_search, folner_search_with_cap, int_box, inverse_envelope, FolnerSet, DEFAULT_SET_CAP};
pub use greedy::{greedy_fill, greedy_fill_with, GreedyOutcome, LemmaChecks};
pub use params::{choose_delta, choose_zeta, recipe_height, theta, threshold, ThetaParams};
pub use quotient::{ChainSpec, CosetTable, QuotientChain, QuotientSet};
pub use transversal::{build_transversal, verify_tiling_certificate, TilingCertificate, TilingOptions, Verification};
pub use probe::{algebra_tiling_probe, ProbeReport};
