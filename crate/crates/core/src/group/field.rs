//! Lookup-table arithmetic for the finite fields F_q with q ≤ 16.
//!
//! Field elements are indices `0..q`. For q = p^e an index is read as the
//! base-p digit string of a polynomial `a_0 + a_1 x + ... + a_{e-1} x^{e-1}`
//! reduced modulo a fixed Conway polynomial.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u32 = 16;

/// Returns `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Conway polynomial coefficients, constant term first, monic.
fn conway_polynomial(p: u32, e: u32) -> Option<&'static [u8]> {
    match (p, e) {
        (2, 2) => Some(&[1, 1, 1]),
        (2, 3) => Some(&[1, 1, 0, 1]),
        (3, 2) => Some(&[2, 2, 1]),
        (2, 4) => Some(&[1, 1, 0, 0, 1]),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct FieldTable {
    q: usize,
    p: u32,
    e: u32,
    poly: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldTable {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!(
                "field order {q} exceeds the cap {MAX_FIELD_ORDER}"
            )));
        }
        let poly: Vec<u8> = if e == 1 {
            vec![0, 1]
        } else {
            conway_polynomial(p, e)
                .expect("every prime power up to 16 has a tabulated polynomial")
                .to_vec()
        };
        let q = q as usize;
        let digits = |mut a: usize| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = (a % p as usize) as u32;
                    a /= p as usize;
                    d
                })
                .collect()
        };
        let undigits = |ds: &[u32]| -> u8 {
            ds.iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize) as u8
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum);

                // Schoolbook product, then reduce by the monic polynomial.
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (k, &pk) in poly[..e as usize].iter().enumerate() {
                        let idx = deg - e as usize + k;
                        prod[idx] = (prod[idx] + (p - c) * pk as u32) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..e as usize]);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8
                }
            })
            .collect();
        Ok(Self {
            q,
            p,
            e,
            poly,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Defining polynomial, constant term first.
    pub fn polynomial(&self) -> &[u8] {
        &self.poly
    }

    /// The class of `x`, which generates F_q over F_p. Equals 1 for prime fields.
    pub fn generator(&self) -> u8 {
        if self.e == 1 {
            1
        } else {
            self.p as u8
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut n: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }
}
