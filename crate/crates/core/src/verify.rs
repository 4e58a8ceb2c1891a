//! The identity and inequality suite run by `quasimix verify` and the
//! acceptance tests.
//!
//! Each check draws its inputs from its own seed stream, so any single
//! check is reproducible on its own. Inequality checks report the trial with
//! the smallest margin.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::table::ORTHOGONALITY_TOL;
use crate::characters::GroupData;
use crate::error::Result;
use crate::exec;
use crate::group::ElementId;
use crate::harmonic::{
    check_corollary_avg, check_lemma_convolution, class_measure_average_identity,
    class_measure_hs, convolve, hs_profile, le_with_slack, DensityFunction, CLASS_MEASURE_TOL,
    INEQUALITY_SLACK, PARSEVAL_TOL,
};
use crate::mixing::bounds::{check_proposition, PROPOSITION_SLACK};
use crate::mixing::count::{count_progressions, count_progressions_substituted, lambda_form, ElementSet};
use crate::mixing::experiment::run_mixing_experiment;
use crate::mixing::zeta::check_zeta_quasirandom_relation;
use crate::report::CheckOutcome;
use crate::sampling::{bernoulli_subset, sign_values, split_seed, uniform_values};

/// Tolerance of `|G|² Λ(1_A,1_B,1_C)` against the exact count.
pub const COUNT_LAMBDA_TOL: f64 = 1e-6;

/// Distinct seed streams per check.
#[derive(Clone, Copy, Debug)]
enum Stream {
    Axioms = 1,
    Parseval,
    ClassFunctions,
    Lemma,
    Proposition,
    Counting,
    Mixing,
}

fn trial_rng(seed: u64, stream: Stream, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split_seed(split_seed(seed, stream as u64), trial as u64))
}

/// A bounded test function (`‖f‖_∞ ≤ 1`), cycling through several shapes.
pub fn bounded_function<R: Rng>(n: usize, kind: usize, rng: &mut R) -> DensityFunction {
    let values = match kind % 4 {
        0 => uniform_values(n, rng),
        1 => sign_values(n, rng),
        2 => {
            let density = rng.random_range(0.05..0.95);
            let mut v = vec![0.0; n];
            for x in bernoulli_subset(n, density, rng) {
                v[x as usize] = 1.0;
            }
            v
        }
        _ => {
            let mut v = vec![0.0; n];
            for _ in 0..rng.random_range(1..=4) {
                v[rng.random_range(0..n)] = rng.random_range(-1.0..=1.0);
            }
            v
        }
    };
    DensityFunction::new(values)
}

/// Mean-zero part, rescaled into the unit sup-norm ball.
pub fn bounded_mean_zero<R: Rng>(n: usize, kind: usize, rng: &mut R) -> DensityFunction {
    let f = bounded_function(n, kind, rng).mean_zero_part();
    let sup = f.sup_norm();
    if sup > 1.0 {
        f.scaled(1.0 / sup)
    } else {
        f
    }
}

fn random_set<R: Rng>(n: usize, rng: &mut R) -> ElementSet {
    let density = rng.random_range(0.05..0.6);
    ElementSet::new(n, bernoulli_subset(n, density, rng))
}

/// Fold `(lhs, rhs, pass)` triples, keeping the one with the least margin.
fn worst(name: &str, items: impl IntoIterator<Item = (f64, f64, bool)>) -> CheckOutcome {
    let mut pass = true;
    let mut pick = (0.0, 0.0, f64::NEG_INFINITY);
    for (lhs, rhs, ok) in items {
        pass &= ok;
        let margin = lhs - rhs;
        if margin > pick.2 {
            pick = (lhs, rhs, margin);
        }
    }
    CheckOutcome::new(name, pass, pick.0, pick.1)
}

fn failure(name: &str, msg: String) -> CheckOutcome {
    eprintln!("{name}: {msg}");
    CheckOutcome::new(name, false, 1.0, 0.0)
}

pub fn group_axioms(data: &GroupData, seed: u64) -> CheckOutcome {
    let mut rng = trial_rng(seed, Stream::Axioms, 0);
    match data.group.check_axioms(&mut rng, 1000, 2000) {
        Ok(()) => CheckOutcome::new("group_axioms", true, 0.0, 0.0),
        Err(e) => failure("group_axioms", e),
    }
}

pub fn conjugacy_invariants(data: &GroupData) -> CheckOutcome {
    match data.classes.validate(&data.group) {
        Ok(()) => CheckOutcome::new("conjugacy_invariants", true, 0.0, 0.0),
        Err(e) => failure("conjugacy_invariants", e),
    }
}

pub fn character_orthogonality(data: &GroupData) -> Vec<CheckOutcome> {
    let t = &data.table;
    let row = t.row_residual();
    let col = t.column_residual();
    let sum_sq: u64 = t.degrees().iter().map(|&d| d as u64 * d as u64).sum();
    vec![
        CheckOutcome::new("row_orthogonality", row < ORTHOGONALITY_TOL, row, ORTHOGONALITY_TOL),
        CheckOutcome::new("column_orthogonality", col < ORTHOGONALITY_TOL, col, ORTHOGONALITY_TOL),
        CheckOutcome::new(
            "degree_square_sum",
            sum_sq == data.group.order() as u64,
            sum_sq as f64,
            data.group.order() as f64,
        ),
    ]
}

/// Parseval on random functions; lhs is the worst relative residual.
pub fn parseval(data: &GroupData, seed: u64, trials: usize) -> CheckOutcome {
    let n = data.group.order();
    let results = exec::map_collect(trials, |t| {
        let f = bounded_function(n, t, &mut trial_rng(seed, Stream::Parseval, t));
        // hs_profile itself rejects a Parseval residual above tolerance.
        hs_profile(&data.group, &data.classes, &data.table, &f).map(|p| {
            let lhs = p.parseval_sum(&data.table);
            let rhs = f.norm2_sq();
            if rhs == 0.0 {
                (lhs - rhs).abs()
            } else {
                (lhs - rhs).abs() / rhs
            }
        })
    });
    let mut max = 0.0f64;
    for r in results {
        match r {
            Ok(res) => max = max.max(res),
            Err(e) => return failure("parseval", e.to_string()),
        }
    }
    CheckOutcome::new("parseval", max <= PARSEVAL_TOL, max, PARSEVAL_TOL)
}

/// Closed form against direct evaluation for every class, then the average.
pub fn class_measures(data: &GroupData) -> Vec<CheckOutcome> {
    let (g, c, t) = (&data.group, &data.classes, &data.table);
    let per_class = exec::map_collect(c.class_count(), |i| class_measure_hs(g, c, t, i));
    let mut max = 0.0f64;
    let mut out = Vec::new();
    let mut failed = None;
    for r in per_class {
        match r {
            Ok(rep) => max = max.max(rep.max_difference),
            Err(e) => failed = Some(e.to_string()),
        }
    }
    out.push(match failed {
        Some(e) => failure("class_measure_hs", e),
        None => CheckOutcome::new("class_measure_hs", true, max, CLASS_MEASURE_TOL),
    });
    out.push(match class_measure_average_identity(c, t) {
        Ok((lhs, rhs)) => CheckOutcome::new("class_measure_average", true, lhs, rhs),
        Err(e) => failure("class_measure_average", e.to_string()),
    });
    out
}

/// `‖(u∗v)^(ρ)‖² = ‖û(ρ)‖² ‖v̂(ρ)‖² / d_ρ` for class functions u, v.
pub fn class_function_convolution(data: &GroupData, seed: u64, trials: usize) -> CheckOutcome {
    let (g, c, t) = (&data.group, &data.classes, &data.table);
    let n = g.order();
    let results = exec::map_collect(trials, |trial| -> Result<f64> {
        let mut rng = trial_rng(seed, Stream::ClassFunctions, trial);
        let mut on_classes = || {
            let vals = uniform_values(c.class_count(), &mut rng);
            DensityFunction::new((0..n as ElementId).map(|x| vals[c.class_of(x)]).collect())
        };
        let (u, v) = (on_classes(), on_classes());
        let pu = hs_profile(g, c, t, &u)?;
        let pv = hs_profile(g, c, t, &v)?;
        let puv = hs_profile(g, c, t, &convolve(g, &u, &v))?;
        Ok((0..t.irrep_count())
            .map(|r| {
                let want = pu.values[r] * pv.values[r] / t.degree(r) as f64;
                (puv.values[r] - want).abs() / want.abs().max(1.0)
            })
            .fold(0.0, f64::max))
    });
    let mut max = 0.0f64;
    for r in results {
        match r {
            Ok(v) => max = max.max(v),
            Err(e) => return failure("class_function_convolution", e.to_string()),
        }
    }
    CheckOutcome::new("class_function_convolution", max <= CLASS_MEASURE_TOL, max, CLASS_MEASURE_TOL)
}

/// Both convolution inequalities and the autocorrelation average on random pairs.
pub fn lemma_and_corollary(data: &GroupData, seed: u64, trials: usize) -> Vec<CheckOutcome> {
    let (g, c, t) = (&data.group, &data.classes, &data.table);
    let n = g.order();
    let results = exec::map_collect(trials, |trial| {
        let mut rng = trial_rng(seed, Stream::Lemma, trial);
        let f1 = bounded_function(n, trial, &mut rng).mean_zero_part();
        let f2 = bounded_function(n, trial + 1, &mut rng);
        let lemma = check_lemma_convolution(g, c, t, &f1, &f2)?;
        let cor = check_corollary_avg(g, t, &f1)?;
        Ok::<_, crate::Error>((lemma, cor))
    });
    let mut reports = Vec::with_capacity(trials);
    for r in results {
        match r {
            Ok(v) => reports.push(v),
            Err(e) => {
                let msg = e.to_string();
                return vec![
                    failure("lemma_nontrivial_bound", msg.clone()),
                    failure("lemma_quasirandom_bound", msg.clone()),
                    failure("corollary_autocorrelation", msg),
                ];
            }
        }
    }
    vec![
        worst(
            "lemma_nontrivial_bound",
            reports.iter().map(|(l, _)| {
                let ok = le_with_slack(l.convolution_norm, l.bound_nontrivial, INEQUALITY_SLACK);
                (l.convolution_norm, l.bound_nontrivial, ok)
            }),
        ),
        worst(
            "lemma_quasirandom_bound",
            reports.iter().map(|(l, _)| {
                let ok = le_with_slack(l.bound_nontrivial, l.bound_quasirandom, INEQUALITY_SLACK);
                (l.bound_nontrivial, l.bound_quasirandom, ok)
            }),
        ),
        worst(
            "corollary_autocorrelation",
            reports.iter().map(|(_, k)| (k.lhs, k.rhs, k.pass)),
        ),
    ]
}

/// `|Λ|⁴ ≤ 2 (Σ_{ρ≠1} 1/d_ρ)^{1/2}` for bounded functions with mean-zero f3.
pub fn proposition(data: &GroupData, seed: u64, trials: usize) -> CheckOutcome {
    let (g, t) = (&data.group, &data.table);
    let n = g.order();
    let results = exec::map_collect(trials, |trial| {
        let mut rng = trial_rng(seed, Stream::Proposition, trial);
        let f1 = bounded_function(n, trial, &mut rng);
        let f2 = bounded_function(n, trial + 1, &mut rng);
        let f3 = bounded_mean_zero(n, trial + 2, &mut rng);
        check_proposition(g, t, &f1, &f2, &f3)
    });
    let mut items = Vec::with_capacity(trials);
    for r in results {
        match r {
            Ok(p) => items.push((p.lhs, p.rhs, p.lhs <= p.rhs + PROPOSITION_SLACK)),
            Err(e) => return failure("proposition_trilinear", e.to_string()),
        }
    }
    worst("proposition_trilinear", items)
}

/// Definition count, substituted count and `|G|²Λ` on random triples.
pub fn counting(data: &GroupData, seed: u64, trials: usize) -> Vec<CheckOutcome> {
    let g = &data.group;
    let n = g.order();
    let nn = (n * n) as f64;
    let mut disagreements = 0u64;
    let mut max_dev = 0.0f64;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, Stream::Counting, trial);
        let (a, b, c) = (random_set(n, &mut rng), random_set(n, &mut rng), random_set(n, &mut rng));
        let direct = count_progressions(g, &a, &b, &c);
        let substituted = count_progressions_substituted(g, &a, &b, &c);
        if direct.count != substituted.count {
            disagreements += 1;
        }
        let lam = lambda_form(g, &a.indicator(g), &b.indicator(g), &c.indicator(g));
        max_dev = max_dev.max((lam * nn - direct.count as f64).abs());
    }
    vec![
        CheckOutcome::new("count_oracle_agreement", disagreements == 0, disagreements as f64, 0.0),
        CheckOutcome::new(
            "count_lambda_consistency",
            max_dev <= COUNT_LAMBDA_TOL,
            max_dev,
            COUNT_LAMBDA_TOL,
        ),
    ]
}

pub fn zeta_relation(data: &GroupData) -> CheckOutcome {
    let mut items = Vec::new();
    for delta in [1.0 / 3.0, 0.5, 1.0] {
        match check_zeta_quasirandom_relation(&data.table, delta) {
            Ok(r) => items.push((r.lhs, r.rhs, r.pass)),
            Err(e) => return failure("zeta_quasirandom_relation", e.to_string()),
        }
    }
    worst("zeta_quasirandom_relation", items)
}

/// Mixing trials at density 1/2 against the explicit bound.
pub fn mixing(data: &GroupData, seed: u64, trials: usize) -> CheckOutcome {
    match run_mixing_experiment(data, 0.5, trials, split_seed(seed, Stream::Mixing as u64)) {
        Ok(r) => CheckOutcome::new(
            "theorem_bound_mixing",
            r.pass,
            r.max_normalized_discrepancy,
            r.theorem_bound,
        ),
        Err(e) => failure("theorem_bound_mixing", e.to_string()),
    }
}

/// The full suite, in a fixed order.
pub fn run_verification(data: &GroupData, seed: u64, trials: usize) -> Vec<CheckOutcome> {
    let mut out = vec![group_axioms(data, seed), conjugacy_invariants(data)];
    out.extend(character_orthogonality(data));
    out.push(parseval(data, seed, trials));
    out.extend(class_measures(data));
    out.push(class_function_convolution(data, seed, trials.min(20)));
    out.extend(lemma_and_corollary(data, seed, trials));
    out.push(proposition(data, seed, trials));
    out.extend(counting(data, seed, trials));
    out.push(zeta_relation(data));
    out.push(mixing(data, seed, trials));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;

    #[test]
    fn full_suite_passes_on_small_groups() {
        for s in ["A5", "SL(2,3)", "S4"] {
            let data = GroupData::build(&parse_group_spec(s).unwrap(), 1).unwrap();
            let checks = run_verification(&data, 1, 20);
            for c in &checks {
                assert!(c.pass, "{s}: {c:?}");
            }
            assert_eq!(checks.len(), 17);
        }
    }

    #[test]
    fn worst_picks_least_margin() {
        let c = worst("x", [(1.0, 3.0, true), (2.0, 2.5, true), (0.0, 0.0, true)]);
        assert_eq!((c.lhs, c.rhs, c.pass), (0.0, 0.0, true));
        let c = worst("x", [(1.0, 3.0, true), (2.0, 1.5, false)]);
        assert_eq!((c.lhs, c.rhs, c.pass), (2.0, 1.5, false));
    }

    #[test]
    fn bounded_functions_respect_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for kind in 0..8 {
            let f = bounded_function(50, kind, &mut rng);
            assert!(f.sup_norm() <= 1.0);
            let m = bounded_mean_zero(50, kind, &mut rng);
            assert!(m.sup_norm() <= 1.0 && m.mean().abs() < 1e-15);
        }
    }
}
