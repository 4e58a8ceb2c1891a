//! Exact progression and pair counts.

use serde::Serialize;

use crate::exec;
use crate::group::{ElementId, GroupTable};
use crate::harmonic::DensityFunction;

/// A subset of the group as both a sorted id list and a membership mask.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementSet {
    ids: Vec<ElementId>,
    mask: Vec<bool>,
}

impl ElementSet {
    pub fn new(order: usize, mut ids: Vec<ElementId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        let mut mask = vec![false; order];
        for &x in &ids {
            mask[x as usize] = true;
        }
        Self { ids, mask }
    }

    pub fn full(order: usize) -> Self {
        Self::new(order, (0..order as ElementId).collect())
    }

    pub fn empty(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn ids(&self) -> &[ElementId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.mask[x as usize]
    }

    pub fn indicator(&self, g: &GroupTable) -> DensityFunction {
        DensityFunction::indicator(g, &self.ids)
    }
}

/// `a / b` kept exactly, with its floating value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub numerator: u128,
    pub denominator: u128,
}

impl Ratio {
    pub fn new(numerator: u128, denominator: u128) -> Self {
        let g = gcd(numerator, denominator).max(1);
        Self {
            numerator: numerator / g,
            denominator: denominator / g,
        }
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `|count − self|`, exact before the final division.
    pub fn distance_from(&self, count: u64) -> f64 {
        let scaled = count as u128 * self.denominator;
        let diff = scaled.abs_diff(self.numerator);
        diff as f64 / self.denominator as f64
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProgressionCount {
    pub count: u64,
    /// `|A||B||C| / |G|`
    pub expected: Ratio,
    pub discrepancy: f64,
}

impl ProgressionCount {
    fn new(count: u64, sizes: [usize; 3], order: usize) -> Self {
        let expected = Ratio::new(
            sizes.iter().map(|&s| s as u128).product(),
            order as u128,
        );
        Self {
            count,
            discrepancy: expected.distance_from(count),
            expected,
        }
    }
}

/// `r_G(A,B,C) = #{(x, y) : x ∈ A, xy ∈ B, xy² ∈ C}`.
pub fn count_progressions(
    g: &GroupTable,
    a: &ElementSet,
    b: &ElementSet,
    c: &ElementSet,
) -> ProgressionCount {
    let sq = g.squares();
    let xs = a.ids();
    let count = exec::sum_u64(xs.len(), |k| {
        let mut buf = Vec::new();
        let row = g.row(xs[k], &mut buf);
        row.iter()
            .zip(sq)
            .filter(|&(&xy, &y2)| b.contains(xy) && c.contains(row[y2 as usize]))
            .count() as u64
    });
    ProgressionCount::new(count, [a.len(), b.len(), c.len()], g.order())
}

/// The same count after substituting `u = x`, `v = xy`:
/// `#{(u, v) ∈ A × B : v u⁻¹ v ∈ C}`.
///
/// `w·v` is read as `(v⁻¹ w⁻¹)⁻¹` so only left rows are needed.
pub fn count_progressions_substituted(
    g: &GroupTable,
    a: &ElementSet,
    b: &ElementSet,
    c: &ElementSet,
) -> ProgressionCount {
    let vs = b.ids();
    let count = exec::sum_u64(vs.len(), |k| {
        let v = vs[k];
        let (mut b1, mut b2) = (Vec::new(), Vec::new());
        let left = g.row(v, &mut b1);
        let left_inv = g.row(g.inv(v), &mut b2);
        a.ids()
            .iter()
            .filter(|&&u| {
                let vu = left[g.inv(u) as usize];
                let vuv = g.inv(left_inv[g.inv(vu) as usize]);
                c.contains(vuv)
            })
            .count() as u64
    });
    ProgressionCount::new(count, [a.len(), b.len(), c.len()], g.order())
}

/// `Λ(f1, f2, f3) = E_{x,y} f1(x) f2(xy) f3(xy²)`.
pub fn lambda_form(
    g: &GroupTable,
    f1: &DensityFunction,
    f2: &DensityFunction,
    f3: &DensityFunction,
) -> f64 {
    let n = g.order();
    let sq = g.squares();
    let per_x = exec::map_collect(n, |x| {
        let a = f1.values()[x];
        if a == 0.0 {
            return 0.0;
        }
        let mut buf = Vec::new();
        let row = g.row(x as ElementId, &mut buf);
        let inner: f64 = row
            .iter()
            .zip(sq)
            .map(|(&xy, &y2)| f2.values()[xy as usize] * f3.values()[row[y2 as usize] as usize])
            .sum();
        a * inner
    });
    exec::ordered_sum(&per_x) / (n as f64 * n as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GowersCount {
    pub count: u64,
    pub expected: Ratio,
    pub discrepancy: f64,
    /// `sqrt(|G||A||B||C| / D)` with implied constant 1.
    pub bound: f64,
}

/// `#{(x, y) ∈ A × B : xy ∈ C}` against the quasirandom pair-count bound.
pub fn gowers_pair_count(
    g: &GroupTable,
    a: &ElementSet,
    b: &ElementSet,
    c: &ElementSet,
    quasirandomness: u32,
) -> GowersCount {
    let xs = a.ids();
    let count = exec::sum_u64(xs.len(), |k| {
        let mut buf = Vec::new();
        let row = g.row(xs[k], &mut buf);
        b.ids().iter().filter(|&&y| c.contains(row[y as usize])).count() as u64
    });
    let p = ProgressionCount::new(count, [a.len(), b.len(), c.len()], g.order());
    let bound = (g.order() as f64 * a.len() as f64 * b.len() as f64 * c.len() as f64
        / quasirandomness as f64)
        .sqrt();
    GowersCount {
        count,
        expected: p.expected,
        discrepancy: p.discrepancy,
        bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, parse_group_spec};
    use crate::sampling::bernoulli_subset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(s: &str) -> GroupTable {
        enumerate_group(&parse_group_spec(s).unwrap()).unwrap()
    }

    fn random_set<R: Rng>(n: usize, rng: &mut R) -> ElementSet {
        let density = rng.random_range(0.05..0.9);
        ElementSet::new(n, bernoulli_subset(n, density, rng))
    }

    #[test]
    fn full_sets_give_all_pairs() {
        let g = group("A5");
        let all = ElementSet::full(60);
        let r = count_progressions(&g, &all, &all, &all);
        assert_eq!(r.count, 3600);
        assert_eq!(r.expected, Ratio::new(3600, 1));
        assert_eq!(r.discrepancy, 0.0);
        let p = gowers_pair_count(&g, &all, &all, &all, 3);
        assert_eq!(p.count, 3600);
        let none = ElementSet::empty(60);
        assert_eq!(gowers_pair_count(&g, &all, &all, &none, 3).count, 0);
    }

    #[test]
    fn singletons_force_the_progression() {
        let g = group("S4");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let (a, b) = (rng.random_range(0..24), rng.random_range(0..24));
            let c = if rng.random::<bool>() {
                g.multiply(g.multiply(b, g.inv(a)), b)
            } else {
                rng.random_range(0..24)
            };
            let want = u64::from(g.multiply(g.multiply(b, g.inv(a)), b) == c);
            let sets = [a, b, c].map(|x| ElementSet::new(24, vec![x]));
            assert_eq!(count_progressions(&g, &sets[0], &sets[1], &sets[2]).count, want);
        }
    }

    #[test]
    fn definition_and_substitution_agree() {
        for s in ["A5", "SL(2,3)", "SL(3,3)"] {
            let g = group(s);
            let n = g.order();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let trials = if n > 1000 { 2 } else { 20 };
            for _ in 0..trials {
                let (a, b, c) = (random_set(n, &mut rng), random_set(n, &mut rng), random_set(n, &mut rng));
                let r1 = count_progressions(&g, &a, &b, &c);
                let r2 = count_progressions_substituted(&g, &a, &b, &c);
                assert_eq!(r1, r2, "{s}");
                let lam = lambda_form(&g, &a.indicator(&g), &b.indicator(&g), &c.indicator(&g));
                assert!((lam * (n * n) as f64 - r1.count as f64).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn lambda_basic_values() {
        let g = group("A5");
        let ones = DensityFunction::constant(60, 1.0);
        let zero = DensityFunction::zeros(60);
        assert!((lambda_form(&g, &ones, &ones, &ones) - 1.0).abs() < 1e-15);
        assert_eq!(lambda_form(&g, &ones, &zero, &ones), 0.0);
    }

    #[test]
    fn lambda_mean_zero_split() {
        let g = group("PSL(2,7)");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let (a, b, c) = (random_set(168, &mut rng), random_set(168, &mut rng), random_set(168, &mut rng));
            let (fa, fb, fc) = (a.indicator(&g), b.indicator(&g), c.indicator(&g));
            let lhs = lambda_form(&g, &fa, &fb, &fc.mean_zero_part());
            let n3 = 168f64.powi(3);
            let rhs = lambda_form(&g, &fa, &fb, &fc) - (a.len() * b.len() * c.len()) as f64 / n3;
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_expected_value() {
        let r = Ratio::new(7 * 11 * 13, 60);
        assert_eq!((r.numerator, r.denominator), (1001, 60));
        assert_eq!(r.distance_from(17), (1020.0 - 1001.0) / 60.0);
        assert_eq!(Ratio::new(120, 60).distance_from(2), 0.0);
    }
}
