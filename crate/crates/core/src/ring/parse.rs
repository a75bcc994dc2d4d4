//! Text syntax: a sum of terms `c*t1^a1*...*tN^aN`, whitespace-insensitive.
//! Coefficients are integers, or `a/b` fractions where the domain allows
//! them. `t` is accepted for `t1` in one variable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Coeff, LaurentRing, Monomial, Polynomial};
use crate::error::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.text, format!("{msg} at position {}", self.pos))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

pub(crate) fn parse_polynomial(ring: LaurentRing, text: &str) -> Result<Polynomial> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::parse(text, "empty polynomial"));
    }
    let mut cur = Cursor {
        text,
        chars,
        pos: 0,
    };
    let dom = ring.coeff();
    let n = ring.num_vars();
    let mut terms: Vec<(Monomial, Coeff)> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            _ if !first => return Err(cur.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; n];
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num: BigInt = cur.digits().unwrap().parse().unwrap();
                    let mut q = BigRational::from_integer(num);
                    if cur.peek() == Some('/') {
                        cur.bump();
                        let den: BigInt = cur
                            .digits()
                            .ok_or_else(|| cur.err("expected denominator"))?
                            .parse()
                            .unwrap();
                        if den == BigInt::from(0) {
                            return Err(cur.err("zero denominator"));
                        }
                        q /= BigRational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some('t') => {
                    cur.bump();
                    let index = match cur.digits() {
                        Some(d) => d
                            .parse::<usize>()
                            .map_err(|_| cur.err("bad variable index"))?,
                        None if n == 1 => 1,
                        None => {
                            return Err(
                                cur.err("variable 't' needs an index in more than one variable")
                            )
                        }
                    };
                    if index == 0 || index > n {
                        return Err(cur.err(&format!("variable t{index} outside t1..t{n}")));
                    }
                    let mut e: u32 = 1;
                    if cur.peek() == Some('^') {
                        cur.bump();
                        if cur.peek() == Some('-') {
                            return Err(Error::NegativeExponent(text.to_string()));
                        }
                        if cur.peek() == Some('(') && cur.chars.get(cur.pos + 1) == Some(&'-') {
                            return Err(Error::NegativeExponent(text.to_string()));
                        }
                        e = cur
                            .digits()
                            .ok_or_else(|| cur.err("expected exponent"))?
                            .parse()
                            .map_err(|_| cur.err("exponent too large"))?;
                    }
                    exps[index - 1] += e;
                }
                _ => return Err(cur.err("expected a coefficient or a variable")),
            }
            if cur.peek() == Some('*') {
                cur.bump();
                continue;
            }
            break;
        }
        if negative {
            coeff = -coeff;
        }
        let c = dom
            .from_rational(&coeff)
            .map_err(|e| Error::parse(text, e.to_string()))?;
        terms.push((Monomial::new(exps), c));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use crate::ring::{CoefficientDomain, LaurentRing, Polynomial};
    use crate::Error;

    fn qq(n: usize) -> LaurentRing {
        LaurentRing::new(n, CoefficientDomain::Rational).unwrap()
    }

    #[test]
    fn whitespace_insensitive() {
        let a = Polynomial::parse(qq(2), "t1*t2 - t1 - t2 + 1").unwrap();
        let b = Polynomial::parse(qq(2), " t1 * t2-t1-t2+ 1 ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_factors_combine() {
        let a = Polynomial::parse(qq(2), "2*t1*t1^2*3").unwrap();
        assert_eq!(a.to_string(), "6*t1^3");
    }

    #[test]
    fn fractions_and_domains() {
        assert_eq!(
            Polynomial::parse(qq(1), "1/2*t - 1").unwrap().to_string(),
            "1/2*t1 - 1"
        );
        let z = LaurentRing::new(1, CoefficientDomain::Integer).unwrap();
        assert!(Polynomial::parse(z, "1/2*t1").is_err());
        let f5 = LaurentRing::new(1, CoefficientDomain::prime(5).unwrap()).unwrap();
        // 1/2 = 3 mod 5, printed symmetrically as -2
        assert_eq!(
            Polynomial::parse(f5, "1/2*t1").unwrap().to_string(),
            "-2*t1"
        );
    }

    #[test]
    fn negative_exponent_points_at_saturation() {
        let err = Polynomial::parse(qq(2), "t1^-1 + t2").unwrap_err();
        assert!(matches!(err, Error::NegativeExponent(_)));
        assert!(err.to_string().contains("saturated"));
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "t3", "t0", "t1 t2", "t1^", "2/0", "x", "t1 +", "t"] {
            assert!(
                Polynomial::parse(qq(2), bad).is_err(),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn zero_and_constants() {
        assert!(Polynomial::parse(qq(2), "t1 - t1").unwrap().is_zero());
        assert_eq!(Polynomial::parse(qq(2), "0").unwrap().to_string(), "0");
        assert_eq!(Polynomial::parse(qq(2), "-7").unwrap().to_string(), "-7");
    }
}
