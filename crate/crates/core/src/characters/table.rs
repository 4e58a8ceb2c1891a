//! Character tables by simultaneous diagonalisation of class-sum matrices.
//!
//! Multiplication by the class sum `K_i` acts on the centre of the group
//! algebra. In the orthonormal basis `K_l / sqrt(|C_l|)` its matrix is
//!
//! ```text
//! (N_i)_{l,j} = a[i][j][l] · sqrt(|C_l| / |C_j|)
//! ```
//!
//! which is normal with adjoint `N_{i⁻¹}`. A random combination
//! `X = Σ c_i N_i / |C_i|` therefore gives a Hermitian `X + X*` whose
//! eigenvectors are the central idempotents. Each eigenvector `v` yields the
//! central character `ω(i) = v* N_i v = |C_i| χ(g_i) / d`.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::conjugacy::{ClassCoefficients, ConjugacyData};
use crate::error::{Error, Result};
use crate::group::GroupTable;

pub type C64 = Complex<f64>;

/// Random-combination retries before splitting clusters one class at a time.
pub const MAX_RETRIES: usize = 8;
/// Eigenvalue clustering tolerance, relative to the spectral radius.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Orthogonality acceptance, absolute on the normalised inner products.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
/// Allowed distance of a computed degree from an integer.
pub const DEGREE_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: usize,
    sizes: Vec<usize>,
    degrees: Vec<u32>,
    chi: Vec<Vec<C64>>,
    trivial: usize,
}

impl CharacterTable {
    pub fn irrep_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, rho: usize) -> u32 {
        self.degrees[rho]
    }

    /// χ_ρ(g_i).
    #[inline]
    pub fn value(&self, rho: usize, i: usize) -> C64 {
        self.chi[rho][i]
    }

    pub fn row(&self, rho: usize) -> &[C64] {
        &self.chi[rho]
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial
    }

    /// Indices of the nontrivial irreducibles.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.irrep_count()).filter(move |&r| r != self.trivial)
    }

    /// Smallest degree of a nontrivial irreducible.
    pub fn quasirandomness_degree(&self) -> Result<u32> {
        self.nontrivial()
            .map(|r| self.degrees[r])
            .min()
            .ok_or(Error::TrivialGroup)
    }

    /// max |(1/|G|) Σ_i |C_i| χ_ρ(i) conj χ_σ(i) − δ_ρσ|.
    pub fn row_residual(&self) -> f64 {
        let k = self.irrep_count();
        let mut worst = 0.0f64;
        for r in 0..k {
            for s in 0..k {
                let sum: C64 = (0..k)
                    .map(|i| self.chi[r][i] * self.chi[s][i].conj() * self.sizes[i] as f64)
                    .sum();
                let target = if r == s { 1.0 } else { 0.0 };
                worst = worst.max((sum / self.order as f64 - target).norm());
            }
        }
        worst
    }

    /// max |(sqrt(|C_i||C_j|)/|G|) Σ_ρ χ_ρ(i) conj χ_ρ(j) − δ_ij|.
    pub fn column_residual(&self) -> f64 {
        let k = self.irrep_count();
        let mut worst = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                let sum: C64 = (0..k).map(|r| self.chi[r][i] * self.chi[r][j].conj()).sum();
                let scale = ((self.sizes[i] * self.sizes[j]) as f64).sqrt() / self.order as f64;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((sum * scale - target).norm());
            }
        }
        worst
    }

    /// Check every invariant of a character table; returns the first failure.
    pub fn validate(&self, c: &ConjugacyData) -> Result<()> {
        let row = self.row_residual();
        if row.is_nan() || row >= ORTHOGONALITY_TOL {
            return Err(Error::Orthogonality {
                what: "row",
                residual: row,
            });
        }
        let col = self.column_residual();
        if col.is_nan() || col >= ORTHOGONALITY_TOL {
            return Err(Error::Orthogonality {
                what: "column",
                residual: col,
            });
        }
        let sum_sq: u64 = self.degrees.iter().map(|&d| (d as u64).pow(2)).sum();
        if sum_sq != self.order as u64 {
            return Err(Error::Orthogonality {
                what: "sum of squared degrees",
                residual: (sum_sq as f64 - self.order as f64).abs(),
            });
        }
        for r in 0..self.irrep_count() {
            let at_e = self.chi[r][0] - C64::new(self.degrees[r] as f64, 0.0);
            if at_e.norm() > ORTHOGONALITY_TOL {
                return Err(Error::Orthogonality {
                    what: "value at identity",
                    residual: at_e.norm(),
                });
            }
            for i in 0..self.irrep_count() {
                let diff = (self.chi[r][c.inverse_class(i)] - self.chi[r][i].conj()).norm();
                if diff > ORTHOGONALITY_TOL * self.degrees[r] as f64 {
                    return Err(Error::Orthogonality {
                        what: "inverse class conjugation",
                        residual: diff,
                    });
                }
            }
        }
        Ok(())
    }

    /// CSV: header of `rep:size` columns, then one row per irreducible.
    pub fn write_csv<W: std::io::Write>(
        &self,
        g: &GroupTable,
        c: &ConjugacyData,
        out: W,
    ) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["degree".to_string()];
        for i in 0..c.class_count() {
            header.push(format!("{}:{}", g.format(c.representative(i)), c.size(i)));
        }
        w.write_record(&header)?;
        for r in 0..self.irrep_count() {
            let mut rec = vec![self.degrees[r].to_string()];
            rec.extend(self.chi[r].iter().map(|&z| format_complex(z)));
            w.write_record(&rec)?;
        }
        w.flush()
    }
}

/// `re+imi` with 12 significant digits per part.
pub fn format_complex(z: C64) -> String {
    let re = crate::report::sig12(clean(z.re));
    let im = clean(z.im);
    if im < 0.0 {
        format!("{re}-{}i", crate::report::sig12(-im))
    } else {
        format!("{re}+{}i", crate::report::sig12(im))
    }
}

fn clean(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

fn class_matrices(c: &ConjugacyData, a: &ClassCoefficients) -> Vec<DMatrix<C64>> {
    let k = c.class_count();
    let sizes = c.sizes();
    (0..k)
        .map(|i| {
            DMatrix::from_fn(k, k, |l, j| {
                let scale = (sizes[l] as f64 / sizes[j] as f64).sqrt();
                C64::new(a.get(i, j, l) as f64 * scale, 0.0)
            })
        })
        .collect()
}

/// Eigen-decompose a Hermitian matrix; returns `(values, vectors)` sorted ascending.
fn hermitian_eigen(h: DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Group sorted eigenvalues into runs whose consecutive gaps are below tolerance.
fn clusters(values: &[f64]) -> Vec<std::ops::Range<usize>> {
    let radius = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > CLUSTER_TOL * radius {
            out.push(start..i);
            start = i;
        }
    }
    out
}

struct Splitter<'a> {
    mats: &'a [DMatrix<C64>],
    weights: Vec<f64>,
    rng: ChaCha8Rng,
}

impl Splitter<'_> {
    fn random_hermitian(&mut self) -> DMatrix<C64> {
        let k = self.mats[0].nrows();
        let mut x = DMatrix::<C64>::zeros(k, k);
        for (m, w) in self.mats.iter().zip(&self.weights) {
            let c = C64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0));
            x += m * (c * *w);
        }
        &x + x.adjoint()
    }

    fn single_hermitian(&self, i: usize, imaginary: bool) -> DMatrix<C64> {
        let m = &self.mats[i] * C64::new(self.weights[i], 0.0);
        if imaginary {
            (&m - m.adjoint()) * C64::new(0.0, 1.0)
        } else {
            &m + m.adjoint()
        }
    }

    /// Orthonormal joint eigenvectors spanning the columns of `basis`.
    fn split(&mut self, basis: DMatrix<C64>) -> Result<Vec<DVector<C64>>> {
        let m = basis.ncols();
        if m == 1 {
            return Ok(vec![basis.column(0).into_owned()]);
        }
        let mut candidates: Vec<DMatrix<C64>> =
            (0..MAX_RETRIES).map(|_| self.random_hermitian()).collect();
        for i in 0..self.mats.len() {
            candidates.push(self.single_hermitian(i, false));
            candidates.push(self.single_hermitian(i, true));
        }
        for h in candidates {
            let projected = basis.adjoint() * &h * &basis;
            let (values, vectors) = hermitian_eigen(projected);
            let runs = clusters(&values);
            if runs.len() < 2 {
                continue;
            }
            let mut out = Vec::with_capacity(m);
            for run in runs {
                let sub = &basis * vectors.columns(run.start, run.len());
                out.extend(self.split(sub)?);
            }
            return Ok(out);
        }
        Err(Error::Degenerate {
            size: m,
            retries: MAX_RETRIES,
        })
    }
}

/// Compute the character table from class multiplication coefficients.
pub fn character_table(
    g: &GroupTable,
    c: &ConjugacyData,
    coeffs: &ClassCoefficients,
    seed: u64,
) -> Result<CharacterTable> {
    let k = c.class_count();
    let order = g.order();
    let sizes = c.sizes();
    let mats = class_matrices(c, coeffs);
    let mut splitter = Splitter {
        mats: &mats,
        weights: sizes.iter().map(|&s| 1.0 / s as f64).collect(),
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let vectors = splitter.split(DMatrix::identity(k, k))?;

    let mut rows = Vec::with_capacity(k);
    for v in &vectors {
        let omega: Vec<C64> = mats
            .iter()
            .map(|m| (v.adjoint() * m * v)[(0, 0)])
            .collect();
        let norm: f64 = omega
            .iter()
            .zip(&sizes)
            .map(|(w, &s)| w.norm_sqr() / s as f64)
            .sum();
        let degree = (order as f64 / norm).sqrt();
        let rounded = degree.round();
        if (degree - rounded).abs() > DEGREE_TOL || rounded < 1.0 {
            return Err(Error::Orthogonality {
                what: "integral degree",
                residual: (degree - rounded).abs(),
            });
        }
        let chi: Vec<C64> = omega
            .iter()
            .zip(&sizes)
            .map(|(w, &s)| w * (rounded / s as f64))
            .collect();
        rows.push((rounded as u32, chi));
    }

    let key = |row: &(u32, Vec<C64>)| {
        let q = |x: f64| -(x * 1e6).round() as i64;
        let re: Vec<i64> = row.1.iter().map(|z| q(z.re)).collect();
        let im: Vec<i64> = row.1.iter().map(|z| q(z.im)).collect();
        (row.0, re, im)
    };
    rows.sort_by_cached_key(key);

    let trivial = rows
        .iter()
        .position(|(d, chi)| *d == 1 && chi.iter().all(|z| (z - C64::new(1.0, 0.0)).norm() < 1e-6))
        .ok_or(Error::Orthogonality {
            what: "trivial character",
            residual: f64::INFINITY,
        })?;
    let table = CharacterTable {
        order,
        sizes,
        degrees: rows.iter().map(|r| r.0).collect(),
        chi: rows.into_iter().map(|r| r.1).collect(),
        trivial,
    };
    table.validate(c)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::conjugacy::{class_coefficients, conjugacy_classes};
    use crate::group::{enumerate_group, parse_group_spec};

    fn table(s: &str, seed: u64) -> (GroupTable, ConjugacyData, CharacterTable) {
        let g = enumerate_group(&parse_group_spec(s).unwrap()).unwrap();
        let c = conjugacy_classes(&g);
        let a = class_coefficients(&g, &c);
        let t = character_table(&g, &c, &a, seed).unwrap();
        (g, c, t)
    }

    /// Degree multisets with `k` parts, exactly one part equal to 1, each part
    /// dividing `order`, and squares summing to `order`.
    fn degree_multisets(order: u32, k: usize) -> Vec<Vec<u32>> {
        fn go(rem: u32, parts: usize, max: u32, order: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if parts == 0 {
                if rem == 0 {
                    let mut v = cur.clone();
                    v.push(1);
                    v.sort_unstable();
                    out.push(v);
                }
                return;
            }
            for d in (2..=max).rev() {
                if d * d <= rem && order.is_multiple_of(d) {
                    cur.push(d);
                    go(rem - d * d, parts - 1, d, order, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(order - 1, k - 1, order, order, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn cyclic_three_is_cube_roots_of_unity() {
        let (g, c, t) = table("C3", 1);
        assert_eq!(t.degrees(), &[1, 1, 1]);
        let gen = g.generators()[0];
        let i = c.class_of(gen);
        let mut vals: Vec<C64> = (0..3).map(|r| t.value(r, i)).collect();
        for v in &vals {
            assert!((v.powu(3) - C64::new(1.0, 0.0)).norm() < 1e-10);
        }
        vals.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((vals[0].im + 3f64.sqrt() / 2.0).abs() < 1e-10);
        assert!((vals[1] - C64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn a5_degrees_match_exhaustive_multiset_search() {
        let (_, _, t) = table("A5", 7);
        let candidates = degree_multisets(60, 5);
        assert_eq!(candidates, vec![vec![1, 3, 3, 4, 5]]);
        assert_eq!(t.degrees(), &[1, 3, 3, 4, 5]);
        assert_eq!(t.quasirandomness_degree().unwrap(), 3);
        assert_eq!(t.trivial_index(), 0);
    }

    #[test]
    fn sl23_degrees() {
        let (_, _, t) = table("SL(2,3)", 3);
        assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(t.degrees().iter().map(|d| d * d).sum::<u32>(), 24);
        assert!(t.row_residual() < 1e-8 && t.column_residual() < 1e-8);
    }

    #[test]
    fn sl25_quasirandomness() {
        let (_, _, t) = table("SL(2,5)", 11);
        assert_eq!(t.degrees(), &[1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(t.quasirandomness_degree().unwrap(), 2);
    }

    #[test]
    fn cyclic_quasirandomness_is_one() {
        let (_, _, t) = table("C4", 2);
        assert_eq!(t.quasirandomness_degree().unwrap(), 1);
        let (_, _, t) = table("C1", 2);
        assert_eq!(t.quasirandomness_degree(), Err(Error::TrivialGroup));
    }

    #[test]
    fn independent_of_seed_after_canonical_sort() {
        for s in ["A5", "SL(2,3)", "PSL(2,7)", "S4"] {
            let (_, _, t1) = table(s, 1);
            let (_, _, t2) = table(s, 99);
            assert_eq!(t1.degrees(), t2.degrees());
            for r in 0..t1.irrep_count() {
                for i in 0..t1.irrep_count() {
                    assert!((t1.value(r, i) - t2.value(r, i)).norm() < 1e-8, "{s}");
                }
            }
        }
    }

    #[test]
    fn abelian_groups_force_cluster_splitting() {
        // C8 has many characters with coinciding real parts; the splitter must
        // separate them through the imaginary parts.
        let (_, _, t) = table("C8", 5);
        assert_eq!(t.degrees(), &[1; 8]);
    }

    #[test]
    fn csv_export_shape() {
        let (g, c, t) = table("S3", 1);
        let mut buf = Vec::new();
        t.write_csv(&g, &c, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "degree,():1,(1 2):3,(1 2 3):2");
        assert_eq!(lines[1], "1,1+0i,1+0i,1+0i");
        assert_eq!(lines[3], "2,2+0i,0+0i,-1+0i");
    }
}
