//! Witten zeta values and the quasirandomness comparison.

use serde::Serialize;

use crate::characters::CharacterTable;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaValue {
    pub s: f64,
    pub value: f64,
    /// `ζ_G(s) − 1`
    pub deficit: f64,
}

/// `ζ_G(s) = Σ_ρ d_ρ^{-s}`.
pub fn witten_zeta(t: &CharacterTable, s: f64) -> ZetaValue {
    let deficit: f64 = t
        .nontrivial()
        .map(|r| (t.degree(r) as f64).powf(-s))
        .sum();
    ZetaValue {
        s,
        value: 1.0 + deficit,
        deficit,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaRelationReport {
    pub delta: f64,
    pub quasirandomness: u32,
    /// `ζ_G(1) − 1`
    pub lhs: f64,
    /// `D^{−δ} (ζ_G(1−δ) − 1)`
    pub rhs: f64,
    pub pass: bool,
}

/// `ζ_G(1) − 1 ≤ D^{−δ}(ζ_G(1−δ) − 1)` for `δ ∈ (0, 1]`.
pub fn check_zeta_quasirandom_relation(t: &CharacterTable, delta: f64) -> Result<ZetaRelationReport> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(format!("delta = {delta} outside (0, 1]")));
    }
    let d = t.quasirandomness_degree()?;
    let lhs = witten_zeta(t, 1.0).deficit;
    let rhs = (d as f64).powf(-delta) * witten_zeta(t, 1.0 - delta).deficit;
    Ok(ZetaRelationReport {
        delta,
        quasirandomness: d,
        lhs,
        rhs,
        pass: lhs <= rhs * (1.0 + 1e-12),
    })
}

/// Coxeter number `dim/rank − 1` of type SL_d, where dim = d² − 1 and rank = d − 1.
pub fn coxeter_number(d: u32) -> Result<u32> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d = {d} < 2")));
    }
    let dim = d * d - 1;
    let rank = d - 1;
    Ok(dim / rank - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::GroupData;
    use crate::group::parse_group_spec;

    fn table(s: &str) -> CharacterTable {
        GroupData::build(&parse_group_spec(s).unwrap(), 1).unwrap().table
    }

    #[test]
    fn cyclic_zeta_is_order() {
        let t = table("C6");
        for s in [0.0, 0.5, 1.0, 3.0] {
            assert_eq!(witten_zeta(&t, s).value, 6.0);
        }
    }

    #[test]
    fn a5_values() {
        let t = table("A5");
        let z = witten_zeta(&t, 1.0);
        assert!((z.value - (2.0 + 7.0 / 60.0)).abs() < 1e-14);
        assert!((z.deficit - 67.0 / 60.0).abs() < 1e-14);
        assert_eq!(witten_zeta(&t, 0.0).value, 5.0);
        let mut prev = f64::INFINITY;
        for k in 0..20 {
            let v = witten_zeta(&t, k as f64 * 0.25).value;
            assert!(v < prev && v >= 1.0);
            prev = v;
        }
    }

    #[test]
    fn quasirandom_relation() {
        let t = table("A5");
        let r = check_zeta_quasirandom_relation(&t, 1.0 / 3.0).unwrap();
        assert_eq!(r.quasirandomness, 3);
        assert!(r.pass);
        let r = check_zeta_quasirandom_relation(&t, 1.0).unwrap();
        assert!((r.rhs - 4.0 / 3.0).abs() < 1e-14);
        assert!(r.pass);
        let r = check_zeta_quasirandom_relation(&table("C5"), 0.5).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.pass);
        assert!(check_zeta_quasirandom_relation(&t, 0.0).is_err());
        assert!(check_zeta_quasirandom_relation(&t, 1.5).is_err());
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(coxeter_number(2).unwrap(), 2);
        assert_eq!(coxeter_number(3).unwrap(), 3);
        assert_eq!(coxeter_number(4).unwrap(), 4);
        assert!(coxeter_number(1).is_err());
    }
}
