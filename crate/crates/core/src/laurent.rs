//! Integer Laurent polynomials in `q`.
//!
//! Stored as a sorted list of `(exponent, coefficient)` with no zero
//! coefficients, so structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// Ascending exponents, nonzero coefficients.
    terms: Vec<(i32, i64)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `c·q^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(k, c)] }
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut v: Vec<(i32, i64)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn coeff(&self, k: i32) -> i64 {
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn scale(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(k, c)| (k, c * n)).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    /// The substitution `q ↦ q^m` (`m` may be negative).
    pub fn substitute_power(&self, m: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|&(e, c)| (e * m, c)))
    }

    pub fn eval_minus_one(&self) -> i64 {
        self.terms
            .iter()
            .map(|&(k, c)| if k.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    pub fn eval_one(&self) -> i64 {
        self.terms.iter().map(|t| t.1).sum()
    }

    /// Membership in `qZ[q]`: every exponent is at least 1.
    pub fn in_qzq(&self) -> bool {
        self.terms.iter().all(|t| t.0 >= 1)
    }

    /// Every exponent is congruent to `d` modulo 2.
    pub fn parity_homogeneous(&self, d: i32) -> bool {
        self.terms.iter().all(|t| (t.0 - d).rem_euclid(2) == 0)
    }

    fn merge(a: &[(i32, i64)], b: &[(i32, i64)], sign: i64) -> Self {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let c = a[i].1 + sign * b[j].1;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms: out }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::merge(&self.terms, &rhs.terms, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::merge(&self.terms, &rhs.terms, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|&(a, c)| rhs.terms.iter().map(move |&(b, d)| (a + b, c * d))),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

/// Descending exponents: `q^2 + 3*q - 1`, `-q^-1`, `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, &(k, c)) in self.terms.iter().rev().enumerate() {
            let a = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (_, 1) => write!(f, "q^{k}")?,
                (1, _) => write!(f, "{a}*q")?,
                _ => write!(f, "{a}*q^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad polynomial at column {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

/// Accepts the text form produced by `Display` (whitespace-insensitive).
impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let err = |pos: usize, msg: &str| ParsePolyError {
            pos,
            msg: msg.to_string(),
        };
        if chars.is_empty() {
            return Err(err(0, "empty input"));
        }
        let mut i = 0;
        let mut terms = Vec::new();
        let int = |i: &mut usize| -> Option<i64> {
            let start = *i;
            while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                return None;
            }
            chars[start..*i]
                .iter()
                .map(|c| c.1)
                .collect::<String>()
                .parse()
                .ok()
        };
        let pos_at = |i: usize| chars.get(i).map_or(s.len(), |c| c.0);
        while i < chars.len() {
            let mut sign = 1;
            match chars[i].1 {
                '+' if !terms.is_empty() => i += 1,
                '-' => {
                    sign = -1;
                    i += 1;
                }
                _ if terms.is_empty() => {}
                _ => return Err(err(pos_at(i), "expected '+' or '-'")),
            }
            let coef = int(&mut i);
            let mut exp = 0;
            let has_q = if coef.is_some() && chars.get(i).map(|c| c.1) == Some('*') {
                i += 1;
                if chars.get(i).map(|c| c.1) != Some('q') {
                    return Err(err(pos_at(i), "expected 'q' after '*'"));
                }
                true
            } else {
                coef.is_none()
            };
            if has_q {
                if chars.get(i).map(|c| c.1) != Some('q') {
                    return Err(err(pos_at(i), "expected a term"));
                }
                i += 1;
                exp = 1;
                if chars.get(i).map(|c| c.1) == Some('^') {
                    i += 1;
                    let neg = chars.get(i).map(|c| c.1) == Some('-');
                    if neg {
                        i += 1;
                    }
                    let e = int(&mut i).ok_or_else(|| err(pos_at(i), "expected exponent"))?;
                    exp = if neg { -e } else { e } as i32;
                }
            }
            terms.push((exp, sign * coef.unwrap_or(1)));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
