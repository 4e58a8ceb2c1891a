//! Real functions on a group: norms, convolution, autocorrelation and
//! Fourier norms computed from characters.
//!
//! Norms are plain sums over the group, `‖f‖_p^p = Σ_x |f(x)|^p`, while
//! means are averages. The Hilbert–Schmidt norm of the Fourier coefficient
//! `f̂(ρ) = Σ_x f(x) ρ(x)` is obtained without representation matrices:
//!
//! ```text
//! ‖f̂(ρ)‖²_HS = tr(f̂(ρ)* f̂(ρ)) = Σ_z A_f(z) χ_ρ(z),   A_f(z) = Σ_y f(y) f(yz)
//! ```
//!
//! and the sum over z collapses onto conjugacy classes.

use serde::Serialize;

use crate::characters::{CharacterTable, ConjugacyData, C64};
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{ElementId, GroupTable};

/// Relative tolerance of identity checks (Parseval).
pub const PARSEVAL_TOL: f64 = 1e-9;
/// Relative slack added to the right side of inequality checks.
pub const INEQUALITY_SLACK: f64 = 1e-9;
/// Mean-zero precondition tolerance.
pub const MEAN_ZERO_TOL: f64 = 1e-12;
/// Agreement of the two class-measure routes.
pub const CLASS_MEASURE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityFunction {
    values: Vec<f64>,
}

impl DensityFunction {
    pub fn new(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![0.0; n])
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::new(vec![c; n])
    }

    /// Point mass at `x`.
    pub fn delta(n: usize, x: ElementId) -> Self {
        let mut v = vec![0.0; n];
        v[x as usize] = 1.0;
        Self::new(v)
    }

    /// `1_S`.
    pub fn indicator(g: &GroupTable, set: &[ElementId]) -> Self {
        let mut v = vec![0.0; g.order()];
        for &x in set {
            v[x as usize] = 1.0;
        }
        Self::new(v)
    }

    /// `μ_S = 1_S / |S|`; the zero function for empty S.
    pub fn uniform_measure(g: &GroupTable, set: &[ElementId]) -> Self {
        let mut f = Self::indicator(g, set);
        if !set.is_empty() {
            let w = 1.0 / set.len() as f64;
            f.values.iter_mut().for_each(|v| *v *= w);
        }
        f
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn at(&self, x: ElementId) -> f64 {
        self.values[x as usize]
    }

    pub fn sum(&self) -> f64 {
        exec::ordered_sum(&self.values)
    }

    /// `E_x f(x)`.
    pub fn mean(&self) -> f64 {
        self.sum() / self.len() as f64
    }

    pub fn norm_p(&self, p: f64) -> f64 {
        self.values
            .iter()
            .map(|v| v.abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// `‖f‖₂² = Σ_x f(x)²`.
    pub fn norm2_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.norm2_sq().sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `f − E_x f`.
    pub fn mean_zero_part(&self) -> Self {
        let m = self.mean();
        Self::new(self.values.iter().map(|v| v - m).collect())
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.values.iter().map(|v| v * c).collect())
    }

    fn is_mean_zero(&self) -> bool {
        self.mean().abs() <= MEAN_ZERO_TOL * self.sup_norm().max(1.0)
    }
}

/// `(f1 ∗ f2)(x) = Σ_y f1(x y⁻¹) f2(y)`.
///
/// Evaluated as `(f1 ∗ f2)(u y) += f1(u) f2(y)` along rows of u.
pub fn convolve(g: &GroupTable, f1: &DensityFunction, f2: &DensityFunction) -> DensityFunction {
    let n = g.order();
    DensityFunction::new(exec::fold_blocks(n, n, |u, buf, acc| {
        let a = f1.values[u];
        if a == 0.0 {
            return;
        }
        let row = g.row(u as ElementId, buf);
        for (y, &uy) in row.iter().enumerate() {
            acc[uy as usize] += a * f2.values[y];
        }
    }))
}

/// `A_f(z) = Σ_y f(y) f(y z)`.
pub fn autocorrelation(g: &GroupTable, f: &DensityFunction) -> DensityFunction {
    let n = g.order();
    DensityFunction::new(exec::fold_blocks(n, n, |y, buf, acc| {
        let a = f.values[y];
        if a == 0.0 {
            return;
        }
        let row = g.row(y as ElementId, buf);
        for (z, &yz) in row.iter().enumerate() {
            acc[z] += a * f.values[yz as usize];
        }
    }))
}

/// `‖f̂(ρ)‖²_HS` for every irreducible ρ, in character-table order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HsProfile {
    pub values: Vec<f64>,
}

impl HsProfile {
    /// `Σ_{ρ≠1} ‖f̂(ρ)‖²_HS`, clamped at zero.
    pub fn nontrivial_sum(&self, t: &CharacterTable) -> f64 {
        t.nontrivial().map(|r| self.values[r]).sum::<f64>().max(0.0)
    }

    /// `(1/|G|) Σ_ρ d_ρ ‖f̂(ρ)‖²_HS`.
    pub fn parseval_sum(&self, t: &CharacterTable) -> f64 {
        let s: f64 = (0..t.irrep_count())
            .map(|r| t.degree(r) as f64 * self.values[r])
            .sum();
        s / t.order() as f64
    }
}

/// HS profile from class sums of the autocorrelation. Checks Parseval.
pub fn hs_profile(
    g: &GroupTable,
    c: &ConjugacyData,
    t: &CharacterTable,
    f: &DensityFunction,
) -> Result<HsProfile> {
    let auto = autocorrelation(g, f);
    let class_sums = c.collapse(auto.values());
    let mut values = Vec::with_capacity(t.irrep_count());
    for r in 0..t.irrep_count() {
        let z: C64 = class_sums
            .iter()
            .enumerate()
            .map(|(i, &s)| t.value(r, i) * s)
            .sum();
        let scale: f64 = class_sums
            .iter()
            .enumerate()
            .map(|(i, &s)| s.abs() * t.value(r, i).norm())
            .sum::<f64>()
            .max(1.0);
        if z.im.abs() > 1e-9 * scale {
            return Err(Error::Tolerance {
                check: "hs_profile imaginary residue".into(),
                lhs: z.im.abs(),
                rhs: 1e-9 * scale,
            });
        }
        values.push(z.re);
    }
    let profile = HsProfile { values };
    let lhs = profile.parseval_sum(t);
    let rhs = f.norm2_sq();
    if !rel_close(lhs, rhs, PARSEVAL_TOL) {
        return Err(Error::Tolerance {
            check: "parseval".into(),
            lhs,
            rhs,
        });
    }
    Ok(profile)
}

/// `|a − b| ≤ tol · max(|a|, |b|)`, with exact zeros accepted.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// `lhs ≤ rhs · (1 + slack)`.
pub fn le_with_slack(lhs: f64, rhs: f64, slack: f64) -> bool {
    lhs <= rhs + slack * rhs.abs()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    /// `‖f1 ∗ f2‖₂`
    pub convolution_norm: f64,
    /// `‖f1‖₂ (Σ_{ρ≠1} ‖f̂2(ρ)‖²_HS)^{1/2}`
    pub bound_nontrivial: f64,
    /// `(|G|/D)^{1/2} ‖f1‖₂ ‖f2‖₂`
    pub bound_quasirandom: f64,
    pub pass: bool,
}

/// Both convolution inequalities for mean-zero `f1`.
pub fn check_lemma_convolution(
    g: &GroupTable,
    c: &ConjugacyData,
    t: &CharacterTable,
    f1: &DensityFunction,
    f2: &DensityFunction,
) -> Result<LemmaReport> {
    if !f1.is_mean_zero() {
        return Err(Error::Precondition(format!(
            "f1 has mean {:e}, expected 0",
            f1.mean()
        )));
    }
    let d = t.quasirandomness_degree()? as f64;
    let convolution_norm = convolve(g, f1, f2).norm2();
    let profile = hs_profile(g, c, t, f2)?;
    let n1 = f1.norm2();
    let bound_nontrivial = n1 * profile.nontrivial_sum(t).sqrt();
    let bound_quasirandom = (g.order() as f64 / d).sqrt() * n1 * f2.norm2();
    let pass = le_with_slack(convolution_norm, bound_nontrivial, INEQUALITY_SLACK)
        && le_with_slack(bound_nontrivial, bound_quasirandom, INEQUALITY_SLACK);
    Ok(LemmaReport {
        convolution_norm,
        bound_nontrivial,
        bound_quasirandom,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `E_x |E_y f(y) f(yx)| ≤ ‖f‖₂² / (D^{1/2} |G|)` for mean-zero f.
pub fn check_corollary_avg(
    g: &GroupTable,
    t: &CharacterTable,
    f: &DensityFunction,
) -> Result<InequalityReport> {
    if !f.is_mean_zero() {
        return Err(Error::Precondition(format!(
            "f has mean {:e}, expected 0",
            f.mean()
        )));
    }
    let n = g.order() as f64;
    let d = t.quasirandomness_degree()? as f64;
    let auto = autocorrelation(g, f);
    let lhs = auto.values().iter().map(|v| v.abs()).sum::<f64>() / (n * n);
    let rhs = f.norm2_sq() / (d.sqrt() * n);
    Ok(InequalityReport {
        lhs,
        rhs,
        pass: le_with_slack(lhs, rhs, INEQUALITY_SLACK),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassMeasureReport {
    pub class: usize,
    /// `|χ_ρ(g)/d_ρ|² d_ρ`
    pub closed_form: Vec<f64>,
    /// HS profile of the uniform measure on `g·C(g)`.
    pub direct: Vec<f64>,
    pub max_difference: f64,
}

/// Compare the closed form of `‖μ̂_{gC(g)}(ρ)‖²_HS` with direct evaluation.
pub fn class_measure_hs(
    g: &GroupTable,
    c: &ConjugacyData,
    t: &CharacterTable,
    class: usize,
) -> Result<ClassMeasureReport> {
    if class >= c.class_count() {
        return Err(Error::InvalidArgument(format!("no class {class}")));
    }
    let rep = c.representative(class);
    let coset: Vec<ElementId> = c.members(class).iter().map(|&h| g.multiply(rep, h)).collect();
    let mu = DensityFunction::uniform_measure(g, &coset);
    let direct = hs_profile(g, c, t, &mu)?.values;
    let closed_form: Vec<f64> = (0..t.irrep_count())
        .map(|r| {
            let d = t.degree(r) as f64;
            (t.value(r, class) / d).norm_sqr() * d
        })
        .collect();
    let mut max_difference = 0.0f64;
    for (a, b) in closed_form.iter().zip(&direct) {
        let diff = (a - b).abs();
        max_difference = max_difference.max(diff);
        if diff > CLASS_MEASURE_TOL * a.abs().max(1.0) {
            return Err(Error::Tolerance {
                check: format!("class measure HS norm, class {class}"),
                lhs: *b,
                rhs: *a,
            });
        }
    }
    Ok(ClassMeasureReport {
        class,
        closed_form,
        direct,
        max_difference,
    })
}

/// `E_g Σ_{ρ≠1} ‖μ̂_{gC(g)}(ρ)‖²_HS` against `Σ_{ρ≠1} 1/d_ρ`.
pub fn class_measure_average_identity(
    c: &ConjugacyData,
    t: &CharacterTable,
) -> Result<(f64, f64)> {
    let n = t.order() as f64;
    let lhs: f64 = (0..c.class_count())
        .map(|i| {
            let inner: f64 = t
                .nontrivial()
                .map(|r| t.value(r, i).norm_sqr() / t.degree(r) as f64)
                .sum();
            c.size(i) as f64 * inner
        })
        .sum::<f64>()
        / n;
    let rhs: f64 = t.nontrivial().map(|r| 1.0 / t.degree(r) as f64).sum();
    if (lhs - rhs).abs() >= CLASS_MEASURE_TOL * rhs.max(f64::MIN_POSITIVE) && lhs != rhs {
        return Err(Error::Tolerance {
            check: "class measure average identity".into(),
            lhs,
            rhs,
        });
    }
    Ok((lhs, rhs))
}
