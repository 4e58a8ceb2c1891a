use crate::exec;
use crate::group::{ElementId, GroupTable};

/// Conjugacy classes of a group.
///
/// Classes are numbered by their least element id, so the identity class is
/// always class 0 and each representative is the least member.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    order: usize,
    class_of: Vec<u32>,
    members: Vec<Vec<ElementId>>,
    inverse_class: Vec<usize>,
}

impl ConjugacyData {
    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn class_of(&self, x: ElementId) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn class_map(&self) -> &[u32] {
        &self.class_of
    }

    pub fn representative(&self, i: usize) -> ElementId {
        self.members[i][0]
    }

    pub fn representatives(&self) -> Vec<ElementId> {
        self.members.iter().map(|m| m[0]).collect()
    }

    pub fn members(&self, i: usize) -> &[ElementId] {
        &self.members[i]
    }

    pub fn size(&self, i: usize) -> usize {
        self.members[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// |Z(g)| = |G| / |C(g)|.
    pub fn centralizer_order(&self, i: usize) -> usize {
        self.order / self.size(i)
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_class[i]
    }

    /// Sum a function over each class.
    pub fn collapse(&self, f: &[f64]) -> Vec<f64> {
        self.members
            .iter()
            .map(|m| m.iter().map(|&x| f[x as usize]).sum())
            .collect()
    }

    /// Check the structural invariants; returns a description of the first failure.
    pub fn validate(&self, g: &GroupTable) -> Result<(), String> {
        if self.members.iter().map(Vec::len).sum::<usize>() != self.order {
            return Err("class sizes do not sum to |G|".into());
        }
        if self.size(0) != 1 || self.representative(0) != g.identity() {
            return Err("identity class is not {e}".into());
        }
        for i in 0..self.class_count() {
            if self.centralizer_order(i) * self.size(i) != self.order {
                return Err(format!("class {i}: size does not divide |G|"));
            }
            if self.inverse_class(self.inverse_class(i)) != i {
                return Err(format!("class {i}: inverse map is not an involution"));
            }
            let r = self.representative(i);
            let z = (0..self.order as ElementId)
                .filter(|&h| g.multiply(h, r) == g.multiply(r, h))
                .count();
            if z != self.centralizer_order(i) {
                return Err(format!("class {i}: centralizer has {z} elements"));
            }
        }
        Ok(())
    }
}

/// Partition the group into conjugation orbits.
///
/// Orbits are traced with the conjugation maps of the generators, which
/// generate the full conjugation action.
pub fn conjugacy_classes(g: &GroupTable) -> ConjugacyData {
    let n = g.order();
    let maps = exec::map_slice(g.generators(), |&h| g.conjugation_map(h));
    let mut class_of = vec![u32::MAX; n];
    let mut members: Vec<Vec<ElementId>> = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let idx = members.len() as u32;
        let mut orbit = vec![x as ElementId];
        class_of[x] = idx;
        stack.push(x as ElementId);
        while let Some(y) = stack.pop() {
            for m in &maps {
                let z = m[y as usize];
                if class_of[z as usize] == u32::MAX {
                    class_of[z as usize] = idx;
                    orbit.push(z);
                    stack.push(z);
                }
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let inverse_class = members
        .iter()
        .map(|m| class_of[g.inv(m[0]) as usize] as usize)
        .collect();
    ConjugacyData {
        order: n,
        class_of,
        members,
        inverse_class,
    }
}

/// Class multiplication coefficients.
///
/// `get(i, j, l)` counts pairs `(u, v)` in `C_i × C_j` with `u·v = w` for a
/// fixed `w ∈ C_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassCoefficients {
    k: usize,
    a: Vec<u64>,
}

impl ClassCoefficients {
    pub fn class_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u64 {
        self.a[(i * self.k + j) * self.k + l]
    }
}

/// Counts for a single target `w`: entry `[i][j]`.
pub fn coefficients_at(g: &GroupTable, c: &ConjugacyData, w: ElementId) -> Vec<u64> {
    let k = c.class_count();
    let right = g.right_mul_map(w);
    let mut counts = vec![0u64; k * k];
    for u in 0..g.order() as ElementId {
        let i = c.class_of(u);
        let j = c.class_of(right[g.inv(u) as usize]);
        counts[i * k + j] += 1;
    }
    counts
}

pub fn class_coefficients(g: &GroupTable, c: &ConjugacyData) -> ClassCoefficients {
    let k = c.class_count();
    let per_target = exec::map_collect(k, |l| coefficients_at(g, c, c.representative(l)));
    let mut a = vec![0u64; k * k * k];
    for (l, counts) in per_target.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                a[(i * k + j) * k + l] = counts[i * k + j];
            }
        }
    }
    ClassCoefficients { k, a }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, parse_group_spec};

    fn setup(s: &str) -> (GroupTable, ConjugacyData) {
        let g = enumerate_group(&parse_group_spec(s).unwrap()).unwrap();
        let c = conjugacy_classes(&g);
        (g, c)
    }

    /// Orbits by conjugating with every element, not just the generators.
    fn brute_force_class_sizes(g: &GroupTable) -> Vec<usize> {
        let n = g.order() as ElementId;
        let mut done = vec![false; n as usize];
        let mut sizes = Vec::new();
        for x in 0..n {
            if done[x as usize] {
                continue;
            }
            let mut orbit: Vec<ElementId> = (0..n)
                .map(|h| g.multiply(g.multiply(g.inv(h), x), h))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                done[y as usize] = true;
            }
            sizes.push(orbit.len());
        }
        sizes
    }

    #[test]
    fn cyclic_classes_are_singletons() {
        let (g, c) = setup("C5");
        assert_eq!(c.class_count(), 5);
        assert!(c.sizes().iter().all(|&s| s == 1));
        c.validate(&g).unwrap();
    }

    #[test]
    fn a5_class_sizes_match_brute_force() {
        let (g, c) = setup("A5");
        let mut got = c.sizes();
        let mut want = brute_force_class_sizes(&g);
        got.sort_unstable();
        want.sort_unstable();
        assert_eq!(want, vec![1, 12, 12, 15, 20]);
        assert_eq!(got, want);
        c.validate(&g).unwrap();
    }

    #[test]
    fn sl23_has_seven_classes() {
        let (g, c) = setup("SL(2,3)");
        assert_eq!(brute_force_class_sizes(&g).len(), 7);
        assert_eq!(c.class_count(), 7);
        c.validate(&g).unwrap();
    }

    #[test]
    fn alternating_class_counts_match_brute_force() {
        for (s, k) in [("A4", 4), ("A6", 7), ("A7", 9)] {
            let (g, c) = setup(s);
            assert_eq!(c.class_count(), k, "{s}");
            if g.order() <= 400 {
                assert_eq!(brute_force_class_sizes(&g).len(), k);
            }
        }
    }

    #[test]
    fn coefficient_identities() {
        for s in ["A5", "SL(2,3)", "S4"] {
            let (g, c) = setup(s);
            let a = class_coefficients(&g, &c);
            let k = c.class_count();
            for i in 0..k {
                for j in 0..k {
                    // identity class absorbs
                    assert_eq!(a.get(0, j, i), u64::from(i == j));
                    let total: u64 = (0..k).map(|l| a.get(i, j, l) * c.size(l) as u64).sum();
                    assert_eq!(total, (c.size(i) * c.size(j)) as u64);
                }
            }
            // independent of the chosen w ∈ C_l
            for l in 0..k {
                let m = c.members(l);
                let w = m[m.len() - 1];
                let alt = coefficients_at(&g, &c, w);
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(alt[i * k + j], a.get(i, j, l));
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_coefficients_follow_addition() {
        let (g, c) = setup("C6");
        let a = class_coefficients(&g, &c);
        // class index -> exponent of the generator
        let gen = g.generators()[0];
        let mut exp = [0usize; 6];
        let mut x = g.identity();
        for e in 0..6 {
            exp[c.class_of(x)] = e;
            x = g.multiply(x, gen);
        }
        for i in 0..6 {
            for j in 0..6 {
                for l in 0..6 {
                    let want = (exp[i] + exp[j]) % 6 == exp[l];
                    assert_eq!(a.get(i, j, l), u64::from(want));
                }
            }
        }
    }
}
