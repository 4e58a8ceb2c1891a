//! Group descriptions and their text grammar.
//!
//! ```text
//! A<n> | S<n> | C<n> | SL(<d>,<q>) | PSL(<d>,<q>) | perm:<cycles>[;<cycles>]...
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::field::{prime_power, MAX_FIELD_ORDER};

pub const MAX_DEGREE_N: u32 = 10;
pub const MAX_MATRIX_DIM: u32 = 4;
pub const MAX_PERM_POINTS: u32 = 16;

/// A permutation in cycle notation, points numbered from 1.
pub type Cycles = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(u32),
    Symmetric(u32),
    Cyclic(u32),
    SL { d: u32, q: u32 },
    PSL { d: u32, q: u32 },
    PermGen(Vec<Cycles>),
}

impl GroupSpec {
    fn validate(self) -> Result<Self> {
        match &self {
            GroupSpec::Alternating(n) | GroupSpec::Symmetric(n) | GroupSpec::Cyclic(n) => {
                if *n < 1 || *n > MAX_DEGREE_N {
                    return Err(Error::Unsupported(format!(
                        "n = {n} outside 1..={MAX_DEGREE_N}"
                    )));
                }
            }
            GroupSpec::SL { d, q } | GroupSpec::PSL { d, q } => {
                if *d < 2 || *d > MAX_MATRIX_DIM {
                    return Err(Error::Unsupported(format!(
                        "d = {d} outside 2..={MAX_MATRIX_DIM}"
                    )));
                }
                if prime_power(*q).is_none() {
                    return Err(Error::NotPrimePower(*q));
                }
                if *q > MAX_FIELD_ORDER {
                    return Err(Error::Unsupported(format!(
                        "q = {q} exceeds {MAX_FIELD_ORDER}"
                    )));
                }
            }
            GroupSpec::PermGen(gens) => {
                for cycles in gens {
                    let mut seen = Vec::new();
                    for &pt in cycles.iter().flatten() {
                        if !(1..=MAX_PERM_POINTS).contains(&pt) {
                            return Err(Error::Unsupported(format!(
                                "point {pt} outside 1..={MAX_PERM_POINTS}"
                            )));
                        }
                        if seen.contains(&pt) {
                            return Err(Error::InvalidArgument(format!(
                                "point {pt} repeated within one permutation"
                            )));
                        }
                        seen.push(pt);
                    }
                }
            }
        }
        Ok(self)
    }

    /// Order predicted from the family formula, when one exists.
    pub fn predicted_order(&self) -> Option<u64> {
        let factorial = |n: u32| (1..=n as u64).product::<u64>();
        match *self {
            GroupSpec::Alternating(n) => Some(if n < 2 { 1 } else { factorial(n) / 2 }),
            GroupSpec::Symmetric(n) => Some(factorial(n)),
            GroupSpec::Cyclic(n) => Some(n as u64),
            GroupSpec::SL { d, q } => Some(sl_order(d, q)),
            GroupSpec::PSL { d, q } => Some(sl_order(d, q) / gcd(d as u64, q as u64 - 1)),
            GroupSpec::PermGen(_) => None,
        }
    }
}

/// |SL_d(F_q)| = q^{d(d-1)/2} · Π_{i=2}^{d} (q^i − 1).
pub fn sl_order(d: u32, q: u32) -> u64 {
    let q = q as u64;
    let mut order = q.pow(d * (d - 1) / 2);
    for i in 2..=d {
        order = order.saturating_mul(q.pow(i) - 1);
    }
    order
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    Parser::new(text).parse()?.validate()
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::SL { d, q } => write!(f, "SL({d},{q})"),
            GroupSpec::PSL { d, q } => write!(f, "PSL({d},{q})"),
            GroupSpec::PermGen(gens) => {
                write!(f, "perm:")?;
                for (i, cycles) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    if cycles.is_empty() {
                        write!(f, "()")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(u32::to_string).collect();
                        write!(f, "({})", pts.join(" "))?;
                    }
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.char_indices().collect(),
            pos: 0,
            len: src.len(),
            _src: src,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |c| c.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let save = self.pos;
        for w in word.chars() {
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some(&(_, c)) if c.eq_ignore_ascii_case(&w) => self.pos += 1,
                _ => {
                    self.pos = save;
                    return false;
                }
            }
        }
        true
    }

    /// Digits may not be split by whitespace.
    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        digits.parse().or_else(|_| {
            self.pos = start;
            self.err("number out of range")
        })
    }

    fn parse(mut self) -> Result<GroupSpec> {
        let spec = if self.keyword("perm:") {
            let mut gens = vec![self.cycles()?];
            while self.peek() == Some(';') {
                self.pos += 1;
                gens.push(self.cycles()?);
            }
            GroupSpec::PermGen(gens)
        } else if self.keyword("PSL") {
            let (d, q) = self.pair()?;
            GroupSpec::PSL { d, q }
        } else if self.keyword("SL") {
            let (d, q) = self.pair()?;
            GroupSpec::SL { d, q }
        } else {
            match self.peek().map(|c| c.to_ascii_uppercase()) {
                Some('A') => {
                    self.pos += 1;
                    GroupSpec::Alternating(self.number()?)
                }
                Some('S') => {
                    self.pos += 1;
                    GroupSpec::Symmetric(self.number()?)
                }
                Some('C') => {
                    self.pos += 1;
                    GroupSpec::Cyclic(self.number()?)
                }
                Some(c) => return self.err(format!("unknown group family '{c}'")),
                None => return self.err("empty group spec"),
            }
        };
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected trailing '{c}'"));
        }
        Ok(spec)
    }

    fn pair(&mut self) -> Result<(u32, u32)> {
        self.expect('(')?;
        let d = self.number()?;
        self.expect(',')?;
        let q = self.number()?;
        self.expect(')')?;
        Ok((d, q))
    }

    fn cycles(&mut self) -> Result<Cycles> {
        let mut out = Vec::new();
        if self.peek() != Some('(') {
            return self.err("expected '(' to start a cycle");
        }
        while self.peek() == Some('(') {
            self.pos += 1;
            let mut cycle = Vec::new();
            while self.peek() != Some(')') {
                if self.peek().is_none() {
                    return self.err("unterminated cycle");
                }
                cycle.push(self.number()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                }
            }
            self.pos += 1;
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        Ok(out)
    }
}
