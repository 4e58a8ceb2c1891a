//! Progression counting, the trilinear form, explicit bounds, Witten zeta
//! values and randomised mixing experiments.

pub mod bounds;
pub mod count;
pub mod experiment;
pub mod zeta;

pub use bounds::{check_proposition, rep_degree_sum, theorem_bound, PropositionReport};
pub use count::{
    count_progressions, count_progressions_substituted, gowers_pair_count, lambda_form,
    ElementSet, GowersCount, ProgressionCount, Ratio,
};
pub use experiment::{run_mixing_experiment, MixingReport, TrialRecord};
pub use zeta::{check_zeta_quasirandom_relation, coxeter_number, witten_zeta, ZetaValue};
