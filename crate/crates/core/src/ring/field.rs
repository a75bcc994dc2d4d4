//! Fields in which torus points live: `Q`, `F_p` and `F_{p^r}` for `r <= 4`.
//!
//! Polynomials are evaluated and evaluated complexes are row reduced in
//! these fields. A point over `F_{p^r}` can be fed to a polynomial over
//! `F_p` or over `Z`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::coeff::{is_prime, mod_pow};
use super::univariate;
use super::{Coeff, CoefficientDomain};
use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of a polynomial coefficient.
    fn embed(&self, c: &Coeff) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn embed(&self, c: &Coeff) -> Result<BigRational> {
        match c {
            Coeff::Rational(q) => Ok(q.clone()),
            Coeff::Modular(_) => Err(Error::DomainMismatch(
                "prime-field coefficient at a rational point".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| mod_pow(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn embed(&self, c: &Coeff) -> Result<u64> {
        match c {
            Coeff::Modular(v) => Ok(*v as u64 % self.p),
            Coeff::Rational(q) => {
                let m = BigInt::from(self.p);
                let num = (q.numer() % &m + &m) % &m;
                let den = (q.denom() % &m + &m) % &m;
                let den = den.to_u64().unwrap();
                let inv = self.inv(&den).ok_or_else(|| {
                    Error::DomainMismatch(format!("denominator of {q} vanishes mod {}", self.p))
                })?;
                Ok(num.to_u64().unwrap() * inv % self.p)
            }
        }
    }
}

/// Irreducible monic moduli (coefficients low to high, leading 1 omitted)
/// for small characteristics. Other primes fall back to a deterministic
/// search verified by Rabin's test.
const MODULUS_TABLE: &[(u64, &[u64])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 0]),
    (2, &[1, 1, 0, 0]),
    (3, &[2, 2]),
    (3, &[1, 2, 0]),
    (3, &[2, 0, 0, 2]),
    (5, &[2, 4]),
    (5, &[3, 3, 0]),
    (5, &[2, 4, 4, 0]),
    (7, &[3, 6]),
    (7, &[4, 0, 6]),
    (7, &[3, 4, 5, 0]),
];

/// The field `F_p[a] / (f(a))` with `f` irreducible of degree `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    /// Monic modulus, low to high, length `r + 1`.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub const MAX_DEGREE: usize = 4;

    pub fn new(p: u64, degree: usize) -> Result<Self> {
        PrimeField::new(p)?;
        if degree == 0 || degree > Self::MAX_DEGREE {
            return Err(Error::Unsupported(format!(
                "extension degree {degree}; supported degrees are 1..={}",
                Self::MAX_DEGREE
            )));
        }
        let mut modulus = MODULUS_TABLE
            .iter()
            .find(|(q, low)| *q == p && low.len() == degree)
            .map(|(_, low)| {
                let mut m = low.to_vec();
                m.push(1);
                m
            })
            .unwrap_or_else(|| search_modulus(p, degree));
        univariate::trim(&mut modulus);
        debug_assert!(univariate::is_irreducible(&modulus, p));
        Ok(ExtensionField { p, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, `p^r`.
    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    /// Element from coefficients in the basis `1, a, a^2, ...`.
    pub fn element(&self, coeffs: &[u64]) -> Result<Vec<u64>> {
        if coeffs.len() > self.degree() {
            return Err(Error::Invalid(format!(
                "element of F{}^{} has at most {} coefficients",
                self.p,
                self.degree(),
                self.degree()
            )));
        }
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        v.resize(self.degree(), 0);
        Ok(v)
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }
}

fn search_modulus(p: u64, degree: usize) -> Vec<u64> {
    // enumerate monic polynomials x^r + c_{r-1} x^{r-1} + ... + c_0 with c_0 != 0
    let mut low = vec![0u64; degree];
    loop {
        // increment in base p
        for c in low.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
        if low[0] == 0 {
            continue;
        }
        let mut f = low.clone();
        f.push(1);
        if univariate::is_irreducible(&f, p) {
            return f;
        }
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.pad(univariate::mulmod(a, b, &self.modulus, self.p))
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        // a^(q-2) in the multiplicative group of order q-1
        Some(self.pad(univariate::powmod(
            a,
            self.size() - 2,
            &self.modulus,
            self.p,
        )))
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn embed(&self, c: &Coeff) -> Result<Vec<u64>> {
        let base = PrimeField { p: self.p }.embed(c)?;
        let mut v = self.zero();
        v[0] = base;
        Ok(v)
    }
}

/// A point of the torus `(k*)^N` with coordinates in a concrete field.
#[derive(Clone, Debug, PartialEq)]
pub enum TorusPoint {
    Rational(Vec<BigRational>),
    Prime {
        field: PrimeField,
        coords: Vec<u64>,
    },
    Extension {
        field: ExtensionField,
        coords: Vec<Vec<u64>>,
    },
}

/// A value in the field of some [`TorusPoint`].
#[derive(Clone, Debug, PartialEq)]
pub enum FieldValue {
    Rational(BigRational),
    Prime(u64),
    Extension(Vec<u64>),
}

impl FieldValue {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_zero(),
            FieldValue::Prime(v) => *v == 0,
            FieldValue::Extension(v) => v.iter().all(|&x| x == 0),
        }
    }
}

impl TorusPoint {
    /// The trivial character `(1, ..., 1)` in the natural field of `domain`
    /// (the rationals for `Z`).
    pub fn trivial(domain: CoefficientDomain, num_vars: usize) -> TorusPoint {
        match domain {
            CoefficientDomain::Prime(p) => TorusPoint::Prime {
                field: PrimeField { p: p.get() as u64 },
                coords: vec![1; num_vars],
            },
            _ => TorusPoint::Rational(vec![BigRational::one(); num_vars]),
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            TorusPoint::Rational(c) => c.len(),
            TorusPoint::Prime { coords, .. } => coords.len(),
            TorusPoint::Extension { coords, .. } => coords.len(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            TorusPoint::Rational(_) => 0,
            TorusPoint::Prime { field, .. } => field.p,
            TorusPoint::Extension { field, .. } => field.p,
        }
    }

    /// Checks that polynomials over `domain` can be evaluated here.
    pub fn check_domain(&self, domain: CoefficientDomain) -> Result<()> {
        let ok = match domain {
            CoefficientDomain::Integer => true,
            CoefficientDomain::Rational => matches!(self, TorusPoint::Rational(_)),
            CoefficientDomain::Prime(p) => self.characteristic() == p.get() as u64,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "point {self} cannot be used with {domain} coefficients"
            )))
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            TorusPoint::Rational(c) => c.iter().all(|x| x.is_one()),
            TorusPoint::Prime { coords, .. } => coords.iter().all(|&x| x == 1),
            TorusPoint::Extension { field, coords } => coords.iter().all(|x| *x == field.one()),
        }
    }

    /// Coordinatewise product with constants from `domain` (the character
    /// `lambda * chi`).
    pub fn scale(&self, lambda: &[Coeff], domain: CoefficientDomain) -> Result<TorusPoint> {
        self.check_domain(domain)?;
        if lambda.len() != self.num_vars() {
            return Err(Error::Invalid("scaling vector has the wrong length".into()));
        }
        Ok(match self {
            TorusPoint::Rational(c) => TorusPoint::Rational(
                c.iter()
                    .zip(lambda)
                    .map(|(x, l)| Ok(x * Rationals.embed(l)?))
                    .collect::<Result<_>>()?,
            ),
            TorusPoint::Prime { field, coords } => TorusPoint::Prime {
                field: *field,
                coords: coords
                    .iter()
                    .zip(lambda)
                    .map(|(x, l)| Ok(field.mul(x, &field.embed(l)?)))
                    .collect::<Result<_>>()?,
            },
            TorusPoint::Extension { field, coords } => TorusPoint::Extension {
                field: field.clone(),
                coords: coords
                    .iter()
                    .zip(lambda)
                    .map(|(x, l)| Ok(field.mul(x, &field.embed(l)?)))
                    .collect::<Result<_>>()?,
            },
        })
    }

    /// Product of two values of this point's field.
    pub fn field_mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        match (self, a, b) {
            (TorusPoint::Rational(_), FieldValue::Rational(x), FieldValue::Rational(y)) => {
                FieldValue::Rational(x * y)
            }
            (TorusPoint::Prime { field, .. }, FieldValue::Prime(x), FieldValue::Prime(y)) => {
                FieldValue::Prime(field.mul(x, y))
            }
            (
                TorusPoint::Extension { field, .. },
                FieldValue::Extension(x),
                FieldValue::Extension(y),
            ) => FieldValue::Extension(field.mul(x, y)),
            _ => panic!("field values from different fields"),
        }
    }
}

fn fmt_ext(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(" "))
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = match self {
            TorusPoint::Rational(c) => c.iter().map(|x| x.to_string()).collect(),
            TorusPoint::Prime { coords, .. } => coords.iter().map(|x| x.to_string()).collect(),
            TorusPoint::Extension { coords, .. } => coords.iter().map(|x| fmt_ext(x)).collect(),
        };
        write!(f, "({})", coords.join(", "))?;
        match self {
            TorusPoint::Rational(_) => Ok(()),
            TorusPoint::Prime { field, .. } => write!(f, " in F{}", field.p),
            TorusPoint::Extension { field, .. } => write!(f, " in F{}^{}", field.p, field.degree()),
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(q) => write!(f, "{q}"),
            FieldValue::Prime(v) => write!(f, "{v}"),
            FieldValue::Extension(v) => write!(f, "{}", fmt_ext(v)),
        }
    }
}
