use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::element::{
    determinant, is_even_permutation, perm_from_cycles, Repr,
};
use crate::group::field::FieldTable;
use crate::group::spec::GroupSpec;

/// Dense element index. The identity is always 0.
pub type ElementId = u32;

/// Largest group the builders will enumerate.
pub const ENUMERATION_CAP: usize = 250_000;
/// Largest order for which a full multiplication table is cached.
pub const TABLE_CAP: usize = 4096;

/// A fully enumerated finite group.
///
/// Elements are numbered in breadth-first order from the identity, moving
/// along right multiplication by the generators. Each element remembers its
/// BFS parent and the generator that reached it, so a full row `y ↦ x·y`
/// costs one array lookup per element even when no table is cached.
#[derive(Debug)]
pub struct GroupTable {
    spec: GroupSpec,
    repr: Repr,
    width: usize,
    encodings: Vec<u8>,
    index: HashMap<Box<[u8]>, ElementId>,
    generators: Vec<ElementId>,
    right_gen: Vec<Vec<ElementId>>,
    parent: Vec<ElementId>,
    parent_gen: Vec<u8>,
    inv: Vec<ElementId>,
    squares: Vec<ElementId>,
    table: Option<Vec<ElementId>>,
}

pub fn enumerate_group(spec: &GroupSpec) -> Result<GroupTable> {
    if let Some(order) = spec.predicted_order() {
        if order > ENUMERATION_CAP as u64 {
            return Err(Error::EnumerationCap {
                cap: ENUMERATION_CAP,
            });
        }
    }
    let (repr, gens) = family_generators(spec)?;
    let table = GroupTable::from_generators(spec.clone(), repr, gens, ENUMERATION_CAP)?;
    if let Some(expected) = spec.predicted_order() {
        if table.order() as u64 != expected {
            return Err(Error::OrderMismatch {
                expected,
                found: table.order() as u64,
            });
        }
    }
    Ok(table)
}

fn cycle(from: u32, to: u32) -> Vec<u32> {
    (from..=to).collect()
}

fn family_generators(spec: &GroupSpec) -> Result<(Repr, Vec<Vec<u8>>)> {
    let perms = |points: u32, gens: Vec<Vec<Vec<u32>>>| -> (Repr, Vec<Vec<u8>>) {
        let g = gens
            .iter()
            .map(|c| perm_from_cycles(points as usize, c))
            .collect();
        (Repr::permutations(points as usize), g)
    };
    Ok(match spec {
        GroupSpec::Alternating(n) => {
            let n = *n;
            let gens = if n < 3 {
                vec![]
            } else if n % 2 == 1 {
                vec![vec![cycle(1, 3)], vec![cycle(1, n)]]
            } else {
                vec![vec![cycle(1, 3)], vec![cycle(2, n)]]
            };
            let (repr, gens) = perms(n, gens);
            for g in &gens {
                if !is_even_permutation(g) {
                    return Err(Error::NotInGroup(repr.format(g)));
                }
            }
            (repr, gens)
        }
        GroupSpec::Symmetric(n) => {
            let gens = if *n < 2 {
                vec![]
            } else {
                vec![vec![cycle(1, 2)], vec![cycle(1, *n)]]
            };
            perms(*n, gens)
        }
        GroupSpec::Cyclic(n) => {
            let gens = if *n < 2 { vec![] } else { vec![vec![cycle(1, *n)]] };
            perms(*n, gens)
        }
        GroupSpec::SL { d, q } | GroupSpec::PSL { d, q } => {
            let field = Arc::new(FieldTable::new(*q)?);
            let projective = matches!(spec, GroupSpec::PSL { .. });
            let repr = Repr::matrices(*d as usize, field.clone(), projective);
            let gens = transvections(*d as usize, &field);
            (repr, gens)
        }
        GroupSpec::PermGen(gens) => {
            let points = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
            perms(points, gens.clone())
        }
    })
}

/// Elementary transvections E_ij(1), plus E_ij(θ) over non-prime fields.
fn transvections(d: usize, field: &FieldTable) -> Vec<Vec<u8>> {
    let mut scalars = vec![1u8];
    if field.degree() > 1 {
        scalars.push(field.generator());
    }
    let mut gens = Vec::new();
    for &s in &scalars {
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let mut m = vec![0u8; d * d];
                for k in 0..d {
                    m[k * d + k] = 1;
                }
                m[i * d + j] = s;
                gens.push(m);
            }
        }
    }
    gens
}

impl GroupTable {
    /// Close `gens` under multiplication.
    ///
    /// Matrix generators must have determinant 1. Duplicate and identity
    /// generators are dropped.
    pub fn from_generators(
        spec: GroupSpec,
        repr: Repr,
        gens: Vec<Vec<u8>>,
        cap: usize,
    ) -> Result<Self> {
        let width = repr.width();
        let identity = repr.identity();
        let mut generators_enc: Vec<Vec<u8>> = Vec::new();
        for mut g in gens {
            if g.len() != width {
                return Err(Error::NotInGroup(format!(
                    "generator has {} entries, expected {width}",
                    g.len()
                )));
            }
            if let Repr::Matrix { d, field, .. } = &repr {
                let det = determinant(field, *d, &g);
                if det != 1 {
                    return Err(Error::NotInGroup(format!(
                        "{} has determinant {det}",
                        repr.format(&g)
                    )));
                }
            }
            repr.canonicalize(&mut g);
            if g != identity && !generators_enc.contains(&g) {
                generators_enc.push(g);
            }
        }
        if generators_enc.len() > u8::MAX as usize {
            return Err(Error::Unsupported("more than 255 generators".into()));
        }

        let ngens = generators_enc.len();
        let mut encodings = identity.clone();
        let mut index: HashMap<Box<[u8]>, ElementId> = HashMap::new();
        index.insert(identity.into_boxed_slice(), 0);
        let mut parent = vec![0];
        let mut parent_gen = vec![0u8];
        let mut right_gen: Vec<Vec<ElementId>> = vec![Vec::new(); ngens];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let venc = encodings[v * width..(v + 1) * width].to_vec();
            for (gi, g) in generators_enc.iter().enumerate() {
                let w = repr.multiply(&venc, g);
                let id = match index.get(w.as_slice()) {
                    Some(&id) => id,
                    None => {
                        let id = parent.len();
                        if id >= cap {
                            return Err(Error::EnumerationCap { cap });
                        }
                        encodings.extend_from_slice(&w);
                        index.insert(w.into_boxed_slice(), id as ElementId);
                        parent.push(v as ElementId);
                        parent_gen.push(gi as u8);
                        queue.push_back(id);
                        id as ElementId
                    }
                };
                // Elements are processed in id order, so this push lands at index v.
                right_gen[gi].push(id);
            }
        }
        let n = parent.len();

        let generators = generators_enc
            .iter()
            .map(|g| index[g.as_slice()])
            .collect();
        let mut group = Self {
            spec,
            repr,
            width,
            encodings,
            index,
            generators,
            right_gen,
            parent,
            parent_gen,
            inv: Vec::new(),
            squares: Vec::new(),
            table: None,
        };
        group.inv = (0..n)
            .map(|x| {
                let enc = group
                    .repr
                    .inverse(group.encoding(x as ElementId))
                    .expect("group elements are invertible");
                group.index[enc.as_slice()]
            })
            .collect();
        if n <= TABLE_CAP {
            let mut table = Vec::with_capacity(n * n);
            let mut row = Vec::new();
            for x in 0..n {
                group.fill_row(x as ElementId, &mut row);
                table.extend_from_slice(&row);
            }
            group.table = Some(table);
        }
        group.squares = (0..n as ElementId).map(|y| group.multiply(y, y)).collect();
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn encoding(&self, x: ElementId) -> &[u8] {
        let x = x as usize;
        &self.encodings[x * self.width..(x + 1) * self.width]
    }

    pub fn lookup(&self, enc: &[u8]) -> Option<ElementId> {
        self.index.get(enc).copied()
    }

    pub fn format(&self, x: ElementId) -> String {
        self.repr.format(self.encoding(x))
    }

    #[inline]
    pub fn inv(&self, x: ElementId) -> ElementId {
        self.inv[x as usize]
    }

    /// `y ↦ y²`.
    pub fn squares(&self) -> &[ElementId] {
        &self.squares
    }

    #[inline]
    pub fn multiply(&self, x: ElementId, y: ElementId) -> ElementId {
        match &self.table {
            Some(t) => t[x as usize * self.order() + y as usize],
            None => self.multiply_by_word(x, y),
        }
    }

    fn multiply_by_word(&self, x: ElementId, y: ElementId) -> ElementId {
        if y == 0 {
            return x;
        }
        let prev = self.multiply_by_word(x, self.parent[y as usize]);
        self.right_gen[self.parent_gen[y as usize] as usize][prev as usize]
    }

    /// Product computed from encodings, bypassing the index structures.
    pub fn multiply_encoded(&self, x: ElementId, y: ElementId) -> ElementId {
        let w = self.repr.multiply(self.encoding(x), self.encoding(y));
        self.index[w.as_slice()]
    }

    /// Overwrite `buf` with the row `y ↦ x·y`.
    pub fn fill_row(&self, x: ElementId, buf: &mut Vec<ElementId>) {
        let n = self.order();
        buf.clear();
        if let Some(t) = &self.table {
            buf.extend_from_slice(&t[x as usize * n..(x as usize + 1) * n]);
            return;
        }
        buf.reserve(n);
        buf.push(x);
        for id in 1..n {
            let p = buf[self.parent[id] as usize];
            buf.push(self.right_gen[self.parent_gen[id] as usize][p as usize]);
        }
    }

    /// The row `y ↦ x·y`, borrowed from the cache when possible.
    pub fn row<'a>(&'a self, x: ElementId, buf: &'a mut Vec<ElementId>) -> &'a [ElementId] {
        match &self.table {
            Some(t) => {
                let n = self.order();
                &t[x as usize * n..(x as usize + 1) * n]
            }
            None => {
                self.fill_row(x, buf);
                buf
            }
        }
    }

    /// The map `v ↦ v·w` for every element v.
    pub fn right_mul_map(&self, w: ElementId) -> Vec<ElementId> {
        let n = self.order();
        if let Some(t) = &self.table {
            return (0..n).map(|v| t[v * n + w as usize]).collect();
        }
        let mut word = Vec::new();
        let mut cur = w;
        while cur != 0 {
            word.push(self.parent_gen[cur as usize]);
            cur = self.parent[cur as usize];
        }
        let mut map: Vec<ElementId> = (0..n as ElementId).collect();
        for &g in word.iter().rev() {
            let r = &self.right_gen[g as usize];
            for m in map.iter_mut() {
                *m = r[*m as usize];
            }
        }
        map
    }

    /// The map `v ↦ h⁻¹·v·h`.
    pub fn conjugation_map(&self, h: ElementId) -> Vec<ElementId> {
        let mut left = Vec::new();
        self.fill_row(self.inv(h), &mut left);
        let right = self.right_mul_map(h);
        left.iter().map(|&v| right[v as usize]).collect()
    }

    /// Check the group axioms.
    ///
    /// Associativity is tested on `samples` random triples and, when the
    /// order is at most `exhaustive_cap`, exhaustively by Light's test:
    /// `(x·g)·z = x·(g·z)` for all x, z and every generator g, which forces
    /// associativity of the whole table.
    pub fn check_axioms<R: Rng>(
        &self,
        rng: &mut R,
        samples: usize,
        exhaustive_cap: usize,
    ) -> std::result::Result<(), String> {
        let n = self.order() as ElementId;
        let mut seen = std::collections::HashSet::new();
        for x in 0..n {
            if !seen.insert(self.encoding(x)) {
                return Err(format!("duplicate encoding at {x}"));
            }
            if self.multiply(0, x) != x || self.multiply(x, 0) != x {
                return Err(format!("identity law fails at {x}"));
            }
            if self.inv(self.inv(x)) != x || self.multiply(x, self.inv(x)) != 0 {
                return Err(format!("inverse law fails at {x}"));
            }
        }
        for _ in 0..samples {
            let (x, y, z) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)) {
                return Err(format!("associativity fails at ({x},{y},{z})"));
            }
            if self.multiply(x, y) != self.multiply_encoded(x, y) {
                return Err(format!("table disagrees with encodings at ({x},{y})"));
            }
        }
        if self.order() <= exhaustive_cap {
            let mut row = Vec::new();
            for &g in &self.generators {
                for x in 0..n {
                    let xg = self.multiply(x, g);
                    self.fill_row(xg, &mut row);
                    for z in 0..n {
                        if row[z as usize] != self.multiply(x, self.multiply(g, z)) {
                            return Err(format!("associativity fails at ({x},{g},{z})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
