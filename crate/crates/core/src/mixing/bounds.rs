//! The explicit mixing bound and its functional form.

use serde::Serialize;

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::harmonic::{DensityFunction, MEAN_ZERO_TOL};
use crate::mixing::count::lambda_form;

/// Absolute slack on the trilinear-form inequality.
pub const PROPOSITION_SLACK: f64 = 1e-9;

/// `Σ_{ρ≠1} 1/d_ρ`.
pub fn rep_degree_sum(t: &CharacterTable) -> f64 {
    t.nontrivial().map(|r| 1.0 / t.degree(r) as f64).sum()
}

/// `2^{1/4} (Σ_{ρ≠1} 1/d_ρ)^{1/8}`, a bound on the normalised discrepancy
/// `|r_G(A,B,C) − |A||B||C|/|G|| / |G|²`.
pub fn theorem_bound(t: &CharacterTable) -> f64 {
    2f64.powf(0.25) * rep_degree_sum(t).powf(0.125)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropositionReport {
    pub lambda: f64,
    /// `|Λ|⁴`
    pub lhs: f64,
    /// `2 (Σ_{ρ≠1} 1/d_ρ)^{1/2}`
    pub rhs: f64,
    pub pass: bool,
}

/// `|Λ(f1,f2,f3)|⁴ ≤ 2 (Σ_{ρ≠1} 1/d_ρ)^{1/2}` for `‖f_i‖_∞ ≤ 1` and mean-zero `f3`.
pub fn check_proposition(
    g: &GroupTable,
    t: &CharacterTable,
    f1: &DensityFunction,
    f2: &DensityFunction,
    f3: &DensityFunction,
) -> Result<PropositionReport> {
    for (name, f) in [("f1", f1), ("f2", f2), ("f3", f3)] {
        if f.sup_norm() > 1.0 + 1e-12 {
            return Err(Error::Precondition(format!(
                "{name} has sup norm {} > 1",
                f.sup_norm()
            )));
        }
    }
    if f3.mean().abs() > MEAN_ZERO_TOL {
        return Err(Error::Precondition(format!(
            "f3 has mean {:e}, expected 0",
            f3.mean()
        )));
    }
    let lambda = lambda_form(g, f1, f2, f3);
    let lhs = lambda.powi(4);
    let rhs = 2.0 * rep_degree_sum(t).sqrt();
    Ok(PropositionReport {
        lambda,
        lhs,
        rhs,
        pass: lhs <= rhs + PROPOSITION_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::GroupData;
    use crate::group::parse_group_spec;
    use crate::mixing::count::{count_progressions, ElementSet};
    use crate::sampling::{bernoulli_subset, sign_values};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn data(s: &str) -> GroupData {
        GroupData::build(&parse_group_spec(s).unwrap(), 1).unwrap()
    }

    #[test]
    fn degree_sums() {
        assert_eq!(rep_degree_sum(&data("C7").table), 6.0);
        assert!((rep_degree_sum(&data("A5").table) - 67.0 / 60.0).abs() < 1e-14);
        assert!((rep_degree_sum(&data("SL(2,3)").table) - 23.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn a5_theorem_bound() {
        let t = data("A5").table;
        let want = 2f64.powf(0.25) * (67.0f64 / 60.0).powf(0.125);
        assert!((theorem_bound(&t) - want).abs() < 1e-14);
        assert!((theorem_bound(&t) - 1.206).abs() < 1e-3);
        let d = t.quasirandomness_degree().unwrap() as f64;
        assert!(theorem_bound(&t) >= 2f64.powf(0.25) * d.powf(-0.125));
    }

    #[test]
    fn abelian_bound_is_vacuous() {
        assert!(theorem_bound(&data("C5").table) >= 1.0);
    }

    #[test]
    fn proposition_cases() {
        let d = data("A5");
        let (g, t) = (&d.group, &d.table);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f1 = DensityFunction::new(sign_values(60, &mut rng));
        let f2 = DensityFunction::new(sign_values(60, &mut rng));
        let r = check_proposition(g, t, &f1, &f2, &DensityFunction::zeros(60)).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.pass);

        let f3 = DensityFunction::new(sign_values(60, &mut rng)).mean_zero_part();
        let f3 = f3.scaled(1.0 / f3.sup_norm());
        assert!(check_proposition(g, t, &f1, &f2, &f3).unwrap().pass);

        let err = check_proposition(g, t, &f1.scaled(2.0), &f2, &f3).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = check_proposition(g, t, &f1, &f2, &DensityFunction::constant(60, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn proposition_matches_discrepancy_form() {
        let d = data("A5");
        let g = &d.group;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = ElementSet::new(60, bernoulli_subset(60, 0.4, &mut rng));
        let c = ElementSet::new(60, bernoulli_subset(60, 0.6, &mut rng));
        let fa = a.indicator(g);
        let fc = c.indicator(g).mean_zero_part();
        let r = check_proposition(g, &d.table, &fa, &fa, &fc).unwrap();
        let count = count_progressions(g, &a, &a, &c);
        let signed = count.count as f64 - count.expected.value();
        assert!((r.lambda * 3600.0 - signed).abs() < 1e-9);
        assert!(r.pass);
    }
}
