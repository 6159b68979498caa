//! Crystallographic root systems and exact weights.
//!
//! Roots are integer vectors in the simple-root basis. Weights are stored by
//! their simple-coroot values `α_i^∨(λ)`, each an exact rational plus a
//! rational combination of formal transcendentals `t_1..t_k`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub const MAX_RANK: usize = 6;

/// Display names of the simple roots, by index.
pub const SIMPLE_NAMES: [&str; MAX_RANK] = ["α", "β", "γ", "δ", "ε", "ζ"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Self::A,
            'B' => Self::B,
            'C' => Self::C,
            'D' => Self::D,
            'E' => Self::E,
            'F' => Self::F,
            'G' => Self::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        }
    }
}

/// Bourbaki numbering; `A[i][j] = α_i^∨(α_j)`.
fn cartan_matrix(t: CartanType, n: usize) -> Result<Vec<Vec<i64>>, Error> {
    let valid = match t {
        CartanType::A => n >= 1,
        CartanType::B | CartanType::C => n >= 2,
        CartanType::D => n >= 4,
        CartanType::E => (6..=8).contains(&n),
        CartanType::F => n == 4,
        CartanType::G => n == 2,
    };
    if !valid {
        return Err(Error::InvalidType(format!(
            "{}{n} is not a finite crystallographic type",
            t.letter()
        )));
    }
    if n > MAX_RANK {
        return Err(Error::InvalidType(format!(
            "{}{n}: rank {n} exceeds the cap of {MAX_RANK}",
            t.letter()
        )));
    }
    let mut a = vec![vec![0i64; n]; n];
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t {
        CartanType::A | CartanType::B | CartanType::C | CartanType::F | CartanType::G => {
            for i in 1..n {
                link(i - 1, i);
            }
        }
        CartanType::D => {
            for i in 1..n - 1 {
                link(i - 1, i);
            }
            link(n - 3, n - 1);
        }
        CartanType::E => {
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for i in 4..n {
                link(i - 1, i);
            }
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match t {
        CartanType::B => a[n - 1][n - 2] = -2,
        CartanType::C => a[n - 2][n - 1] = -2,
        CartanType::F => a[2][1] = -2,
        CartanType::G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    positive_count: usize,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn build(t: CartanType, rank: usize) -> Result<Self, Error> {
        let cartan = cartan_matrix(t, rank)?;
        let n = rank;
        // Closure of (root, coroot) pairs under simple reflections.
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            seen.insert(unit(i), unit(i));
            queue.push_back((unit(i), unit(i)));
        }
        while let Some((r, c)) = queue.pop_front() {
            for i in 0..n {
                let pr: i64 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let pc: i64 = (0..n).map(|j| c[j] * cartan[j][i]).sum();
                let mut r2 = r.clone();
                r2[i] -= pr;
                let mut c2 = c.clone();
                c2[i] -= pc;
                if !seen.contains_key(&r2) {
                    seen.insert(r2.clone(), c2.clone());
                    queue.push_back((r2, c2));
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = seen
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&x| x >= 0))
            .collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let positive_count = pos.len();
        let mut roots: Vec<Vec<i64>> = pos.iter().map(|p| p.0.clone()).collect();
        let mut coroots: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
        for k in 0..positive_count {
            roots.push(roots[k].iter().map(|x| -x).collect());
            coroots.push(coroots[k].iter().map(|x| -x).collect());
        }
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(Self {
            cartan_type: t,
            rank,
            cartan,
            roots,
            coroots,
            positive_count,
            index,
        })
    }

    /// Parses names like `A3`, `g2`.
    pub fn from_name(name: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidType(format!("cannot parse root system name {name:?}"));
        let mut chars = name.trim().chars();
        let letter = chars.next().and_then(CartanType::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::build(letter, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type.letter(), self.rank)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    /// Simple-root coordinates of root `r`.
    pub fn root(&self, r: usize) -> &[i64] {
        &self.roots[r]
    }

    /// Simple-coroot coordinates of the coroot of `r`.
    pub fn coroot(&self, r: usize) -> &[i64] {
        &self.coroots[r]
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.positive_count
    }

    pub fn negate(&self, r: usize) -> usize {
        if r < self.positive_count {
            r + self.positive_count
        } else {
            r - self.positive_count
        }
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.positive_count
    }

    pub fn height(&self, r: usize) -> i64 {
        self.roots[r].iter().sum()
    }

    /// Index of the root `x + y`, if it is a root.
    pub fn sum_index(&self, x: usize, y: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[x]
            .iter()
            .zip(&self.roots[y])
            .map(|(a, b)| a + b)
            .collect();
        self.index_of(&s)
    }

    /// `r^∨(x)` for roots `r`, `x`.
    pub fn coroot_pairing(&self, r: usize, x: usize) -> i64 {
        let c = &self.coroots[r];
        let v = &self.roots[x];
        (0..self.rank)
            .map(|i| c[i] * (0..self.rank).map(|j| self.cartan[i][j] * v[j]).sum::<i64>())
            .sum()
    }

    /// `s_r(x)` as a root index.
    pub fn reflect(&self, r: usize, x: usize) -> usize {
        let p = self.coroot_pairing(r, x);
        let v: Vec<i64> = self.roots[x]
            .iter()
            .zip(&self.roots[r])
            .map(|(a, b)| a - p * b)
            .collect();
        self.index[&v]
    }

    /// The permutation of root indices induced by `s_r`.
    pub fn reflection_permutation(&self, r: usize) -> Vec<usize> {
        (0..self.num_roots()).map(|x| self.reflect(r, x)).collect()
    }

    /// `α^∨(λ)` for the root with index `r`.
    pub fn pair(&self, r: usize, lambda: &Weight) -> Result<CorootValue, Error> {
        self.check_rank(lambda)?;
        let mut acc = CorootValue::zero(lambda.n_transcendentals());
        for (i, &c) in self.coroots[r].iter().enumerate() {
            if c != 0 {
                acc = &acc + &lambda.coords[i].scaled(c);
            }
        }
        Ok(acc)
    }

    pub fn check_rank(&self, lambda: &Weight) -> Result<(), Error> {
        if lambda.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: lambda.rank(),
            });
        }
        Ok(())
    }

    pub fn weight_flags(&self, lambda: &Weight) -> Result<WeightFlags, Error> {
        self.check_rank(lambda)?;
        let mut flags = WeightFlags {
            antidominant: true,
            regular: true,
            integral: true,
        };
        for r in self.positive_roots() {
            match classify(&self.pair(r, lambda)?) {
                Integrality::Integer(n) => {
                    if !n.is_negative() {
                        flags.antidominant = false;
                    }
                    if n.is_zero() {
                        flags.regular = false;
                    }
                }
                _ => flags.integral = false,
            }
        }
        Ok(flags)
    }

    /// A positive root pairing to a positive integer with `λ`, if any. Its
    /// absence is antidominance in the weak sense that admits singular `λ`.
    pub fn dominance_witness(&self, lambda: &Weight) -> Result<Option<(usize, BigInt)>, Error> {
        for r in self.positive_roots() {
            if let Integrality::Integer(n) = classify(&self.pair(r, lambda)?) {
                if n.is_positive() {
                    return Ok(Some((r, n)));
                }
            }
        }
        Ok(None)
    }

    /// `ρ`, with `α_i^∨(ρ) = 1`.
    pub fn rho(&self) -> Weight {
        Weight::from_integers(&vec![1; self.rank])
    }

    /// Human-readable root, e.g. `α+2β`, `-γ`.
    pub fn root_name(&self, r: usize) -> String {
        let v = &self.roots[r];
        let neg = !self.is_positive(r);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        let mut first = true;
        let multi = v.iter().filter(|&&c| c != 0).count() > 1;
        if neg && multi {
            s.push('(');
        }
        for (i, &c) in v.iter().enumerate() {
            let c = c.abs();
            if c == 0 {
                continue;
            }
            if !first {
                s.push('+');
            }
            first = false;
            if c != 1 {
                s.push_str(&c.to_string());
            }
            s.push_str(SIMPLE_NAMES[i]);
        }
        if neg && multi {
            s.push(')');
        }
        s
    }

    /// `α^∨` or `(α+β)^∨`.
    pub fn coroot_name(&self, r: usize) -> String {
        let n = self.root_name(r);
        if n.chars().count() == 1 {
            format!("{n}^∨")
        } else {
            format!("({n})^∨")
        }
    }

    /// Looks up a simple root by Greek name, ASCII alias (`a1`), or 1-based index.
    pub fn simple_index(&self, name: &str) -> Option<usize> {
        let name = name.trim();
        if let Some(i) = SIMPLE_NAMES[..self.rank].iter().position(|&g| g == name) {
            return Some(i);
        }
        const ASCII: [&str; MAX_RANK] = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"];
        if let Some(i) = ASCII[..self.rank].iter().position(|&g| g == name) {
            return Some(i);
        }
        let digits = name.strip_prefix('a').unwrap_or(name);
        match digits.parse::<usize>() {
            Ok(k) if (1..=self.rank).contains(&k) => Some(k - 1),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightFlags {
    pub antidominant: bool,
    pub regular: bool,
    pub integral: bool,
}

/// A value `r + Σ c_j t_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CorootValue {
    pub rational: BigRational,
    pub transcendental: Vec<BigRational>,
}

impl CorootValue {
    pub fn zero(k: usize) -> Self {
        Self {
            rational: BigRational::zero(),
            transcendental: vec![BigRational::zero(); k],
        }
    }

    pub fn rational(r: BigRational, k: usize) -> Self {
        Self {
            rational: r,
            transcendental: vec![BigRational::zero(); k],
        }
    }

    pub fn integer(n: i64, k: usize) -> Self {
        Self::rational(BigRational::from_integer(n.into()), k)
    }

    pub fn scaled(&self, n: i64) -> Self {
        let n = BigRational::from_integer(n.into());
        Self {
            rational: &self.rational * &n,
            transcendental: self.transcendental.iter().map(|c| c * &n).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.transcendental.iter().all(Zero::is_zero)
    }
}

impl Add for &CorootValue {
    type Output = CorootValue;
    fn add(self, o: &CorootValue) -> CorootValue {
        assert_eq!(self.transcendental.len(), o.transcendental.len());
        CorootValue {
            rational: &self.rational + &o.rational,
            transcendental: self
                .transcendental
                .iter()
                .zip(&o.transcendental)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CorootValue {
    type Output = CorootValue;
    fn sub(self, o: &CorootValue) -> CorootValue {
        self + &o.scaled(-1)
    }
}

impl Neg for CorootValue {
    type Output = CorootValue;
    fn neg(self) -> CorootValue {
        self.scaled(-1)
    }
}

impl Mul<i64> for &CorootValue {
    type Output = CorootValue;
    fn mul(self, n: i64) -> CorootValue {
        self.scaled(n)
    }
}

impl fmt::Display for CorootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.rational.is_zero() {
            parts.push((self.rational.is_negative(), self.rational.abs().to_string()));
        }
        for (j, c) in self.transcendental.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let body = if a.is_one() {
                format!("t{}", j + 1)
            } else {
                format!("{a}*t{}", j + 1)
            };
            parts.push((c.is_negative(), body));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (n, (neg, body)) in parts.iter().enumerate() {
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(body)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Integrality {
    Integer(BigInt),
    RationalNonInteger,
    Irrational,
}

pub fn classify(v: &CorootValue) -> Integrality {
    if v.transcendental.iter().any(|c| !c.is_zero()) {
        Integrality::Irrational
    } else if v.rational.is_integer() {
        Integrality::Integer(v.rational.to_integer())
    } else {
        Integrality::RationalNonInteger
    }
}

pub fn is_integral(v: &CorootValue) -> bool {
    matches!(classify(v), Integrality::Integer(_))
}

/// A point of `h*` given by its values on the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    k: usize,
    coords: Vec<CorootValue>,
}

impl Weight {
    pub fn new(coords: Vec<CorootValue>) -> Result<Self, Error> {
        let k = coords.first().map_or(0, |c| c.transcendental.len());
        if coords.iter().any(|c| c.transcendental.len() != k) {
            return Err(Error::Precondition(
                "weight coordinates disagree on the number of transcendentals".into(),
            ));
        }
        Ok(Self { k, coords })
    }

    pub fn zero(rank: usize, k: usize) -> Self {
        Self {
            k,
            coords: vec![CorootValue::zero(k); rank],
        }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        Self {
            k: 0,
            coords: v.iter().map(|&n| CorootValue::integer(n, 0)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn n_transcendentals(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[CorootValue] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &CorootValue {
        &self.coords[i]
    }

    /// `s_i λ` for a simple index `i`.
    pub fn simple_reflect(&self, rs: &RootSystem, i: usize) -> Self {
        let vi = self.coords[i].clone();
        let coords = (0..self.rank())
            .map(|j| &self.coords[j] - &vi.scaled(rs.cartan()[j][i]))
            .collect();
        Self { k: self.k, coords }
    }

    /// `λ + μ`.
    pub fn add(&self, other: &Weight) -> Self {
        Self {
            k: self.k,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scaled(&self, n: i64) -> Self {
        Self {
            k: self.k,
            coords: self.coords.iter().map(|c| c.scaled(n)).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
