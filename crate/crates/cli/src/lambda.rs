//! `--lambda` grammar: comma-separated coroot coordinates `α_i^∨(λ)`, each a
//! signed sum of `<rational>`, `<rational>*t<k>` or `t<k>` terms, `1 ≤ k ≤ 4`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use wkl::{CorootValue, Weight};

pub const MAX_TRANSCENDENTALS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse λ at column {column}: {msg}")]
pub struct ParseLambdaError {
    /// 1-based character column.
    pub column: usize,
    pub msg: String,
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseLambdaError> {
        Err(ParseLambdaError {
            column: self.pos + 1,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseLambdaError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(BigInt::from_str(&s).expect("ascii digits"))
    }

    fn transcendental(&mut self) -> Result<usize, ParseLambdaError> {
        // the caller has consumed `t`
        let at = self.pos;
        let k = self.digits()?;
        match usize::try_from(k) {
            Ok(k) if (1..=MAX_TRANSCENDENTALS).contains(&k) => Ok(k),
            _ => {
                self.pos = at;
                self.err(format!(
                    "transcendental index out of range (use t1..t{MAX_TRANSCENDENTALS})"
                ))
            }
        }
    }

    /// One term, without its sign: `(coefficient, Some(k))` for `c*t<k>`.
    fn term(&mut self) -> Result<(BigRational, Option<usize>), ParseLambdaError> {
        self.skip_ws();
        if self.eat('t') {
            return Ok((BigRational::one(), Some(self.transcendental()?)));
        }
        let num = self.digits()?;
        let mut value = BigRational::from_integer(num);
        if self.eat('/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            value /= BigRational::from_integer(den);
        }
        if self.eat('*') {
            if !self.eat('t') {
                return self.err("expected `t<k>` after `*`");
            }
            return Ok((value, Some(self.transcendental()?)));
        }
        Ok((value, None))
    }

    /// `(rational part, transcendental coefficients indexed from 0)`.
    fn coordinate(&mut self) -> Result<(BigRational, Vec<BigRational>), ParseLambdaError> {
        let mut rational = BigRational::zero();
        let mut trans = vec![BigRational::zero(); MAX_TRANSCENDENTALS];
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = self.eat('-');
            if !negative && !self.eat('+') && !first {
                break;
            }
            let (c, k) = self.term()?;
            let c = if negative { -c } else { c };
            match k {
                None => rational += c,
                Some(k) => trans[k - 1] += c,
            }
            first = false;
        }
        Ok((rational, trans))
    }
}

pub fn parse_lambda(text: &str) -> Result<Weight, ParseLambdaError> {
    let mut sc = Scanner {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut coords = Vec::new();
    loop {
        sc.skip_ws();
        if sc.peek().is_none() || sc.peek() == Some(',') {
            return sc.err("empty coordinate");
        }
        coords.push(sc.coordinate()?);
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(',') => sc.pos += 1,
            Some(c) => return sc.err(format!("unexpected character {c:?}")),
        }
    }
    let k = coords
        .iter()
        .filter_map(|(_, t)| t.iter().rposition(|c| !c.is_zero()).map(|i| i + 1))
        .max()
        .unwrap_or(0);
    let values = coords
        .into_iter()
        .map(|(rational, mut transcendental)| {
            transcendental.truncate(k);
            CorootValue {
                rational,
                transcendental,
            }
        })
        .collect();
    Ok(Weight::new(values).expect("all coordinates share one transcendental count"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn section7_weight() {
        let w = parse_lambda("-5-4*t1, -5+4*t1, -5").unwrap();
        assert_eq!(w.n_transcendentals(), 1);
        assert_eq!(w.coord(0).rational, r(-5, 1));
        assert_eq!(w.coord(0).transcendental, vec![r(-4, 1)]);
        assert_eq!(w.coord(1).transcendental, vec![r(4, 1)]);
        assert_eq!(w.coord(2).transcendental, vec![r(0, 1)]);
    }

    #[test]
    fn plain_and_fractional() {
        assert_eq!(parse_lambda("-1,-1,-1").unwrap(), Weight::from_integers(&[-1, -1, -1]));
        assert_eq!(parse_lambda("0,0").unwrap(), Weight::from_integers(&[0, 0]));
        let w = parse_lambda(" -1/2 + t2 , 3/4*t1 - t1").unwrap();
        assert_eq!(w.n_transcendentals(), 2);
        assert_eq!(w.coord(0).rational, r(-1, 2));
        assert_eq!(w.coord(0).transcendental, vec![r(0, 1), r(1, 1)]);
        assert_eq!(w.coord(1).transcendental, vec![r(-1, 4), r(0, 1)]);
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_lambda("-1,,2").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_lambda("-1, 2*x").unwrap_err();
        assert_eq!(e.column, 7);
        let e = parse_lambda("t5").unwrap_err();
        assert_eq!(e.column, 2);
        assert!(e.msg.contains("t1..t4"));
        let e = parse_lambda("1/0").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse_lambda("").is_err());
        assert!(parse_lambda("1 2").is_err());
        assert!(parse_lambda("-1,").is_err());
    }
}
