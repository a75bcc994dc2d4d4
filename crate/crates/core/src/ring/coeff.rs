use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime modulus below 2^31, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientDomain {
    /// The rationals, arbitrary precision.
    Rational,
    /// The prime field `F_p`.
    Prime(PrimeModulus),
    /// The integers. Gröbner computations refuse this domain; reduce first.
    Integer,
}

/// A coefficient. Rational and integer domains share the big-rational
/// representation (integers always have denominator 1); prime-field
/// coefficients are residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular(u32),
}

impl CoefficientDomain {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(CoefficientDomain::Prime(PrimeModulus::new(p)?))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientDomain::Integer)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoefficientDomain::Prime(p) => p.get(),
            _ => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientDomain::Prime(_) => Coeff::Modular(0),
            _ => Coeff::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            CoefficientDomain::Prime(p) => {
                let m = BigInt::from(p.get());
                Coeff::Modular(v.mod_floor(&m).to_u32().expect("residue fits"))
            }
            _ => Coeff::Rational(BigRational::from_integer(v.clone())),
        }
    }

    /// Maps a rational into the domain. Fails when the value has no image:
    /// a non-integer into `Z`, or a denominator divisible by `p` into `F_p`.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff> {
        match self {
            CoefficientDomain::Rational => Ok(Coeff::Rational(v.clone())),
            CoefficientDomain::Integer => {
                if v.is_integer() {
                    Ok(Coeff::Rational(v.clone()))
                } else {
                    Err(Error::DomainMismatch(format!("{v} is not an integer")))
                }
            }
            CoefficientDomain::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = self.inv(&den).ok_or_else(|| {
                    Error::DomainMismatch(format!(
                        "denominator of {v} vanishes mod {}",
                        self.characteristic()
                    ))
                })?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular(v) => *v == 1,
        }
    }

    fn modulus(&self) -> u64 {
        match self {
            CoefficientDomain::Prime(p) => p.get() as u64,
            _ => unreachable!("modular coefficient outside a prime field"),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x + y),
            (Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 + *y as u64) % self.modulus()) as u32)
            }
            _ => panic!("mixed coefficient representations"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Rational(x) => Coeff::Rational(-x),
            Coeff::Modular(0) => Coeff::Modular(0),
            Coeff::Modular(x) => Coeff::Modular((self.modulus() - *x as u64) as u32),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x * y),
            (Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 * *y as u64) % self.modulus()) as u32)
            }
            _ => panic!("mixed coefficient representations"),
        }
    }

    /// Multiplicative inverse; over `Z` only the units `±1` have one.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (CoefficientDomain::Integer, Coeff::Rational(x)) => {
                if x.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            (_, Coeff::Rational(x)) => Some(Coeff::Rational(x.recip())),
            (_, Coeff::Modular(x)) => {
                Some(Coeff::Modular(
                    mod_pow(*x as u64, self.modulus() - 2, self.modulus()) as u32,
                ))
            }
        }
    }

    /// `a / b` when the quotient exists in the domain.
    pub fn div_exact(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if self.is_zero(b) {
            return None;
        }
        match (self, a, b) {
            (CoefficientDomain::Integer, Coeff::Rational(x), Coeff::Rational(y)) => {
                let q = x / y;
                q.is_integer().then_some(Coeff::Rational(q))
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    /// Image of an integer-domain coefficient in `target`.
    pub fn reduce_into(&self, c: &Coeff, target: CoefficientDomain) -> Result<Coeff> {
        match c {
            Coeff::Rational(q) => target.from_rational(q),
            Coeff::Modular(_) => {
                if *self == target {
                    Ok(c.clone())
                } else {
                    Err(Error::DomainMismatch(format!(
                        "cannot map {self} coefficients into {target}"
                    )))
                }
            }
        }
    }

    /// Representative used for printing: symmetric residues for `F_p`.
    pub fn to_rational(&self, c: &Coeff) -> BigRational {
        match c {
            Coeff::Rational(q) => q.clone(),
            Coeff::Modular(v) => {
                let p = self.modulus() as i64;
                let v = *v as i64;
                let s = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
        }
    }

    /// True when `c` is negative in its printing representative.
    pub(crate) fn is_negative(&self, c: &Coeff) -> bool {
        self.to_rational(c).is_negative()
    }
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Rational => write!(f, "QQ"),
            CoefficientDomain::Integer => write!(f, "ZZ"),
            CoefficientDomain::Prime(p) => write!(f, "F{}", p.get()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(PrimeModulus::new(2).is_ok());
        assert!(PrimeModulus::new(2_147_483_647).is_ok());
        assert!(PrimeModulus::new(4_294_967_311).is_err());
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(91).is_err());
    }

    #[test]
    fn modular_inverse() {
        let f7 = CoefficientDomain::prime(7).unwrap();
        for v in 1..7 {
            let c = f7.from_i64(v);
            let i = f7.inv(&c).unwrap();
            assert!(f7.is_one(&f7.mul(&c, &i)));
        }
        assert!(f7.inv(&f7.zero()).is_none());
    }

    #[test]
    fn integer_division_is_exact_only() {
        let z = CoefficientDomain::Integer;
        assert_eq!(
            z.div_exact(&z.from_i64(6), &z.from_i64(3)),
            Some(z.from_i64(2))
        );
        assert_eq!(z.div_exact(&z.from_i64(6), &z.from_i64(4)), None);
        assert!(z.inv(&z.from_i64(-1)).is_some());
        assert!(z.inv(&z.from_i64(2)).is_none());
    }

    #[test]
    fn rational_into_prime_field() {
        let f5 = CoefficientDomain::prime(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f5.from_rational(&half).unwrap(), Coeff::Modular(3));
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(f5.from_rational(&fifth).is_err());
    }

    #[test]
    fn symmetric_representative() {
        let f5 = CoefficientDomain::prime(5).unwrap();
        assert_eq!(
            f5.to_rational(&Coeff::Modular(4)),
            BigRational::from_integer((-1).into())
        );
        assert_eq!(
            f5.to_rational(&Coeff::Modular(2)),
            BigRational::from_integer(2.into())
        );
    }
}
