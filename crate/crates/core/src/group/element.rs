//! Encoding-level arithmetic for permutations and matrices over F_q.
//!
//! An element is a byte string. Permutations use one-line form with points
//! numbered from zero. Matrices use row-major field indices. Projective
//! matrices are kept in the lexicographically least form among their
//! scalar multiples by central scalars.

use std::sync::Arc;

use crate::group::field::FieldTable;

#[derive(Clone, Debug)]
pub enum Repr {
    /// Permutations of `0..points`, composed left to right: `(xy)(i) = y(x(i))`.
    Perm { points: usize },
    /// d×d matrices over F_q, optionally modulo central scalars.
    Matrix {
        d: usize,
        field: Arc<FieldTable>,
        projective: bool,
        scalars: Vec<u8>,
    },
}

impl Repr {
    pub fn permutations(points: usize) -> Self {
        Repr::Perm { points }
    }

    pub fn matrices(d: usize, field: Arc<FieldTable>, projective: bool) -> Self {
        let scalars = field
            .elements()
            .filter(|&l| l != 0 && field.pow(l, d as u32) == 1)
            .collect();
        Repr::Matrix {
            d,
            field,
            projective,
            scalars,
        }
    }

    /// Bytes per encoded element.
    pub fn width(&self) -> usize {
        match self {
            Repr::Perm { points } => *points,
            Repr::Matrix { d, .. } => d * d,
        }
    }

    pub fn identity(&self) -> Vec<u8> {
        match self {
            Repr::Perm { points } => (0..*points as u8).collect(),
            Repr::Matrix { d, .. } => {
                let mut m = vec![0u8; d * d];
                for i in 0..*d {
                    m[i * d + i] = 1;
                }
                m
            }
        }
    }

    pub fn multiply(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut out = match self {
            Repr::Perm { .. } => a.iter().map(|&i| b[i as usize]).collect(),
            Repr::Matrix { d, field, .. } => {
                let d = *d;
                let mut m = vec![0u8; d * d];
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = 0u8;
                        for k in 0..d {
                            acc = field.add(acc, field.mul(a[i * d + k], b[k * d + j]));
                        }
                        m[i * d + j] = acc;
                    }
                }
                m
            }
        };
        self.canonicalize(&mut out);
        out
    }

    /// Inverse element; `None` for a singular matrix.
    pub fn inverse(&self, a: &[u8]) -> Option<Vec<u8>> {
        let mut out = match self {
            Repr::Perm { points } => {
                let mut inv = vec![0u8; *points];
                for (i, &ai) in a.iter().enumerate() {
                    inv[ai as usize] = i as u8;
                }
                inv
            }
            Repr::Matrix { d, field, .. } => matrix_inverse(field, *d, a)?,
        };
        self.canonicalize(&mut out);
        Some(out)
    }

    /// Replace a projective matrix by its least scalar multiple. No-op otherwise.
    pub fn canonicalize(&self, enc: &mut Vec<u8>) {
        if let Repr::Matrix {
            field,
            projective: true,
            scalars,
            ..
        } = self
        {
            let mut best = enc.clone();
            for &l in scalars {
                let cand: Vec<u8> = enc.iter().map(|&x| field.mul(l, x)).collect();
                if cand < best {
                    best = cand;
                }
            }
            *enc = best;
        }
    }

    /// Central scalars λ with λ^d = 1 (matrices only).
    pub fn center_scalars(&self) -> &[u8] {
        match self {
            Repr::Perm { .. } => &[],
            Repr::Matrix { scalars, .. } => scalars,
        }
    }

    pub fn format(&self, a: &[u8]) -> String {
        match self {
            Repr::Perm { .. } => format_cycles(a),
            Repr::Matrix { d, .. } => {
                let rows: Vec<String> = a
                    .chunks(*d)
                    .map(|r| {
                        r.iter()
                            .map(u8::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                format!("[{}]", rows.join(";"))
            }
        }
    }
}

/// Cycle notation with points numbered from 1; the identity prints as `()`.
pub fn format_cycles(perm: &[u8]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = perm[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// One-line form of a permutation given by cycles on points numbered from 1.
pub fn perm_from_cycles(points: usize, cycles: &[Vec<u32>]) -> Vec<u8> {
    let mut perm: Vec<u8> = (0..points as u8).collect();
    for c in cycles {
        for (k, &pt) in c.iter().enumerate() {
            let next = c[(k + 1) % c.len()];
            perm[pt as usize - 1] = next as u8 - 1;
        }
    }
    perm
}

pub fn is_even_permutation(perm: &[u8]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

pub fn determinant(field: &FieldTable, d: usize, a: &[u8]) -> u8 {
    let mut m = a.to_vec();
    let mut det = 1u8;
    for col in 0..d {
        let Some(pivot) = (col..d).find(|&r| m[r * d + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for j in 0..d {
                m.swap(pivot * d + j, col * d + j);
            }
            det = field.neg(det);
        }
        let pv = m[col * d + col];
        det = field.mul(det, pv);
        let pinv = field.inv(pv).unwrap();
        for r in col + 1..d {
            let factor = field.mul(m[r * d + col], pinv);
            if factor == 0 {
                continue;
            }
            for j in col..d {
                let sub = field.mul(factor, m[col * d + j]);
                m[r * d + j] = field.sub(m[r * d + j], sub);
            }
        }
    }
    det
}

fn matrix_inverse(field: &FieldTable, d: usize, a: &[u8]) -> Option<Vec<u8>> {
    let w = 2 * d;
    let mut m = vec![0u8; d * w];
    for i in 0..d {
        m[i * w..i * w + d].copy_from_slice(&a[i * d..i * d + d]);
        m[i * w + d + i] = 1;
    }
    for col in 0..d {
        let pivot = (col..d).find(|&r| m[r * w + col] != 0)?;
        if pivot != col {
            for j in 0..w {
                m.swap(pivot * w + j, col * w + j);
            }
        }
        let pinv = field.inv(m[col * w + col])?;
        for j in 0..w {
            m[col * w + j] = field.mul(m[col * w + j], pinv);
        }
        for r in 0..d {
            let factor = m[r * w + col];
            if r == col || factor == 0 {
                continue;
            }
            for j in 0..w {
                let sub = field.mul(factor, m[col * w + j]);
                m[r * w + j] = field.sub(m[r * w + j], sub);
            }
        }
    }
    Some((0..d).flat_map(|i| m[i * w + d..i * w + w].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = perm_from_cycles(5, &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(p, vec![1, 2, 3, 4, 0]);
        assert_eq!(format_cycles(&p), "(1 2 3 4 5)");
        assert_eq!(format_cycles(&[0, 1, 2]), "()");
        assert!(is_even_permutation(&p));
        assert!(!is_even_permutation(&perm_from_cycles(3, &[vec![1, 2]])));
    }

    #[test]
    fn five_cycle_squared() {
        let r = Repr::permutations(5);
        let p = perm_from_cycles(5, &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(format_cycles(&r.multiply(&p, &p)), "(1 3 5 2 4)");
    }

    #[test]
    fn composition_is_left_to_right() {
        let r = Repr::permutations(3);
        let a = perm_from_cycles(3, &[vec![1, 2]]);
        let b = perm_from_cycles(3, &[vec![2, 3]]);
        // 1 -a-> 2 -b-> 3, 3 -a-> 3 -b-> 2, 2 -a-> 1 -b-> 1
        assert_eq!(format_cycles(&r.multiply(&a, &b)), "(1 3 2)");
    }

    #[test]
    fn matrix_inverse_and_determinant() {
        let f = Arc::new(FieldTable::new(7).unwrap());
        let r = Repr::matrices(2, f.clone(), false);
        let a = vec![2, 3, 1, 4];
        assert_eq!(determinant(&f, 2, &a), 5);
        let inv = r.inverse(&a).unwrap();
        assert_eq!(r.multiply(&a, &inv), r.identity());
        assert!(r.inverse(&[1, 2, 2, 4]).is_none());
    }

    #[test]
    fn projective_canonical_form_is_scalar_invariant() {
        let f = Arc::new(FieldTable::new(7).unwrap());
        let r = Repr::matrices(2, f.clone(), true);
        assert_eq!(r.center_scalars(), &[1, 6]);
        let mut a = vec![3, 1, 2, 3];
        let mut neg: Vec<u8> = a.iter().map(|&x| f.neg(x)).collect();
        r.canonicalize(&mut a);
        r.canonicalize(&mut neg);
        assert_eq!(a, neg);
    }
}
