use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::field::{Field, FieldValue, TorusPoint};
use super::{Coeff, CoefficientDomain, LaurentRing, Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A multivariate polynomial in canonical form: terms sorted strictly
/// descending under `order`, no zero coefficients. Two polynomials over the
/// same ring are equal iff they are equal as mathematical objects, whatever
/// order each one is sorted by.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: LaurentRing,
    order: MonomialOrder,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: LaurentRing) -> Self {
        Polynomial {
            ring,
            order: MonomialOrder::DegRevLex,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: LaurentRing) -> Self {
        Self::constant(ring, ring.coeff().one())
    }

    pub fn constant(ring: LaurentRing, c: Coeff) -> Self {
        Self::term(ring, Monomial::one(ring.num_vars()), c)
    }

    pub fn from_i64(ring: LaurentRing, c: i64) -> Self {
        Self::constant(ring, ring.coeff().from_i64(c))
    }

    /// The variable `t_{index+1}`.
    pub fn var(ring: LaurentRing, index: usize) -> Self {
        assert!(index < ring.num_vars(), "variable index out of range");
        Self::term(
            ring,
            Monomial::var(ring.num_vars(), index),
            ring.coeff().one(),
        )
    }

    pub fn term(ring: LaurentRing, mono: Monomial, c: Coeff) -> Self {
        assert_eq!(mono.num_vars(), ring.num_vars(), "monomial length");
        let terms = if ring.coeff().is_zero(&c) {
            Vec::new()
        } else {
            vec![(mono, c)]
        };
        Polynomial {
            ring,
            order: MonomialOrder::DegRevLex,
            terms,
        }
    }

    /// Builds the canonical form from arbitrary terms (repeats are summed,
    /// zeros dropped).
    pub fn from_terms(
        ring: LaurentRing,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        Self::from_terms_ordered(ring, MonomialOrder::DegRevLex, terms)
    }

    pub(crate) fn from_terms_ordered(
        ring: LaurentRing,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let dom = ring.coeff();
        let mut terms: Vec<(Monomial, Coeff)> = terms.into_iter().collect();
        for (m, _) in &terms {
            assert_eq!(m.num_vars(), ring.num_vars(), "monomial length");
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = dom.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if dom.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if dom.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial {
            ring,
            order,
            terms: out,
        }
    }

    pub fn parse(ring: LaurentRing, text: &str) -> Result<Self> {
        super::parse::parse_polynomial(ring, text)
    }

    pub fn ring(&self) -> LaurentRing {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0.is_one()
            && self.ring.coeff().is_one(&self.terms[0].1)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    /// Bit mask of variables occurring in some term.
    pub(crate) fn support_mask(&self) -> u64 {
        self.terms
            .iter()
            .fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    /// Same polynomial, terms re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring,
            order,
            terms,
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let m1 = self.ring.coeff().neg(&self.ring.coeff().one());
        Ok(self.merge(other, Some((&m1, &Monomial::one(self.ring.num_vars())))))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let dom = self.ring.coeff();
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                products.push((ma.mul(mb), dom.mul(ca, cb)));
            }
        }
        Ok(Polynomial::from_terms_ordered(
            self.ring, self.order, products,
        ))
    }

    /// `self + c * m * other` by merging sorted term lists; `None` means
    /// plain addition.
    fn merge(&self, other: &Polynomial, scale: Option<(&Coeff, &Monomial)>) -> Polynomial {
        let dom = self.ring.coeff();
        let order = self.order;
        let other_terms: Vec<(Monomial, Coeff)> = {
            let src = if other.order == order {
                std::borrow::Cow::Borrowed(&other.terms)
            } else {
                std::borrow::Cow::Owned(other.with_order(order).terms)
            };
            match scale {
                None => src.into_owned(),
                Some((c, m)) => src
                    .iter()
                    .map(|(om, oc)| (om.mul(m), dom.mul(oc, c)))
                    .collect(),
            }
        };
        let mut out = Vec::with_capacity(self.terms.len() + other_terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other_terms.into_iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap().clone();
                        let (_, cb) = b.next().unwrap();
                        let c = dom.add(&ca, &cb);
                        if !dom.is_zero(&c) {
                            out.push((m, c));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial {
            ring: self.ring,
            order,
            terms: out,
        }
    }

    /// `self - c * m * other`, the reduction step of the division algorithm.
    pub(crate) fn sub_scaled(&self, c: &Coeff, m: &Monomial, other: &Polynomial) -> Polynomial {
        let neg = self.ring.coeff().neg(c);
        self.merge(other, Some((&neg, m)))
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Coeff)> {
        (!self.terms.is_empty()).then(|| self.terms.remove(0))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let dom = self.ring.coeff();
        if dom.is_zero(c) {
            return Polynomial::zero(self.ring).with_order(self.order);
        }
        Polynomial {
            ring: self.ring,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), dom.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    /// Exact division by a monomial; fails if some term is not divisible.
    pub fn div_monomial(&self, mono: &Monomial) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                m.div(mono)
                    .map(|q| (q, c.clone()))
                    .ok_or_else(|| Error::InexactDivision(format!("{self} by {mono}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ring: self.ring,
            order: self.order,
            terms,
        })
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no
    /// remainder (coefficient division must be exact as well over `Z`).
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let dom = self.ring.coeff();
        let divisor = divisor.with_order(self.order);
        let (dm, dc) = divisor.terms[0].clone();
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let qm = m
                .div(&dm)
                .ok_or_else(|| Error::InexactDivision(format!("{self} by {divisor}")))?;
            let qc = dom
                .div_exact(&c, &dc)
                .ok_or_else(|| Error::InexactDivision(format!("{self} by {divisor}")))?;
            rest = rest.sub_scaled(&qc, &qm, &divisor);
            quotient.push((qm, qc));
        }
        Ok(Polynomial::from_terms_ordered(
            self.ring, self.order, quotient,
        ))
    }

    /// Divides by the leading coefficient. Over `Z` the polynomial is
    /// returned with a positive leading coefficient instead.
    pub fn monic(&self) -> Polynomial {
        let dom = self.ring.coeff();
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => match dom.inv(lc) {
                Some(inv) if dom.is_field() => self.scale(&inv),
                _ if dom.is_negative(lc) => -self,
                _ => self.clone(),
            },
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring).with_order(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Image under `Z -> target`; terms whose coefficient maps to zero vanish.
    pub fn reduce_coefficients(&self, target: CoefficientDomain) -> Result<Polynomial> {
        if self.ring.coeff() != CoefficientDomain::Integer {
            return Err(Error::DomainMismatch(format!(
                "coefficient reduction starts from ZZ, not {}",
                self.ring.coeff()
            )));
        }
        let ring = self.ring.with_coeff(target);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                Ok((
                    m.clone(),
                    CoefficientDomain::Integer.reduce_into(c, target)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms_ordered(ring, self.order, terms))
    }

    /// Substitutes `t_i -> lambda_i * t_i`.
    pub fn scale_variables(&self, lambda: &[Coeff]) -> Polynomial {
        assert_eq!(lambda.len(), self.ring.num_vars());
        let dom = self.ring.coeff();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut k = c.clone();
            for (l, &e) in lambda.iter().zip(m.exponents()) {
                for _ in 0..e {
                    k = dom.mul(&k, l);
                }
            }
            (m.clone(), k)
        });
        Polynomial::from_terms_ordered(self.ring, self.order, terms)
    }

    /// Substitutes the constant `value` for `t_{var+1}`. The variable stays
    /// in the ring and no longer occurs.
    pub fn substitute(&self, var: usize, value: &Coeff) -> Polynomial {
        let dom = self.ring.coeff();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let mut k = c.clone();
            for _ in 0..e[var] {
                k = dom.mul(&k, value);
            }
            e[var] = 0;
            (Monomial::new(e), k)
        });
        Polynomial::from_terms_ordered(self.ring, self.order, terms)
    }

    /// Moves the polynomial into `ring` (more variables, same coefficients),
    /// placing its variables at `offset`.
    pub fn embed(&self, ring: LaurentRing, offset: usize) -> Polynomial {
        assert_eq!(ring.coeff(), self.ring.coeff());
        assert!(offset + self.ring.num_vars() <= ring.num_vars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.embed(ring.num_vars(), offset), c.clone()));
        Polynomial::from_terms_ordered(ring, self.order, terms)
    }

    /// Inverse of [`Polynomial::embed`] for polynomials free of the dropped
    /// variables.
    pub(crate) fn drop_vars(&self, ring: LaurentRing, range: std::ops::Range<usize>) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.drop_vars(range.clone()), c.clone()));
        Polynomial::from_terms(ring, terms)
    }

    /// Evaluates at a point of the torus over any supported field.
    pub fn evaluate(&self, point: &TorusPoint) -> Result<FieldValue> {
        point.check_domain(self.ring.coeff())?;
        match point {
            TorusPoint::Rational(coords) => Ok(FieldValue::Rational(
                self.eval_in(&super::Rationals, coords)?,
            )),
            TorusPoint::Prime { field, coords } => {
                Ok(FieldValue::Prime(self.eval_in(field, coords)?))
            }
            TorusPoint::Extension { field, coords } => {
                Ok(FieldValue::Extension(self.eval_in(field, coords)?))
            }
        }
    }

    pub fn eval_in<F: Field>(&self, field: &F, coords: &[F::Elem]) -> Result<F::Elem> {
        if coords.len() != self.ring.num_vars() {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, ring has {} variables",
                coords.len(),
                self.ring.num_vars()
            )));
        }
        if let Some(i) = coords.iter().position(|x| field.is_zero(x)) {
            return Err(Error::ZeroCoordinate(i + 1));
        }
        // powers[i][e] = x_i^e, built lazily up to the needed degree
        let mut powers: Vec<Vec<F::Elem>> = coords
            .iter()
            .map(|x| vec![field.one(), x.clone()])
            .collect();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = field.embed(c)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = field.mul(table.last().unwrap(), &coords[i]);
                    table.push(next);
                }
                v = field.mul(&v, &table[e as usize]);
            }
            acc = field.add(&acc, &v);
        }
        Ok(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let canonical = self.with_order(MonomialOrder::DegRevLex);
        let dom = self.ring.coeff();
        for (k, (m, c)) in canonical.terms.iter().enumerate() {
            let q = dom.to_rational(c);
            let neg = q.is_negative();
            let a = q.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let dom = self.ring.coeff();
        Polynomial {
            ring: self.ring,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), dom.neg(c)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn qq(n: usize) -> LaurentRing {
        LaurentRing::new(n, CoefficientDomain::Rational).unwrap()
    }

    fn p(ring: LaurentRing, s: &str) -> Polynomial {
        Polynomial::parse(ring, s).unwrap()
    }

    #[test]
    fn product_of_binomials() {
        let r = qq(2);
        let prod = &p(r, "t1 - 1") * &p(r, "t2 - 1");
        assert_eq!(prod, p(r, "t1*t2 - t1 - t2 + 1"));
        assert_eq!(prod.to_string(), "t1*t2 - t1 - t2 + 1");
    }

    #[test]
    fn additive_identity() {
        let r = qq(2);
        let a = p(r, "3*t1^2 - t2 + 7");
        assert_eq!(&a + &Polynomial::zero(r), a);
    }

    #[test]
    fn frobenius_square_mod_two() {
        let r = LaurentRing::new(1, CoefficientDomain::prime(2).unwrap()).unwrap();
        let sq = p(r, "t1 + 1").pow(2);
        assert_eq!(sq, p(r, "t1^2 + 1"));
        // brute force: (t+1)^2 = t^2 + 2t + 1 and 2 = 0 mod 2
        assert_eq!(sq.num_terms(), 2);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        assert!(matches!(
            p(qq(2), "t1").try_add(&p(qq(3), "t1")),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn exact_division() {
        let r = qq(2);
        let a = p(r, "t1*t2 - t1 - t2 + 1");
        assert_eq!(a.div_exact(&p(r, "t1 - 1")).unwrap(), p(r, "t2 - 1"));
        assert!(a.div_exact(&p(r, "t1 + 1")).is_err());
        assert_eq!(
            p(r, "t1^2*t2 + t1*t2")
                .div_monomial(&Monomial::new(vec![1, 1]))
                .unwrap(),
            p(r, "t1 + 1")
        );
        assert!(p(r, "t1 + 1")
            .div_monomial(&Monomial::new(vec![1, 0]))
            .is_err());
    }

    #[test]
    fn integer_division_must_be_exact_in_coefficients() {
        let r = LaurentRing::new(1, CoefficientDomain::Integer).unwrap();
        assert!(p(r, "2*t1 + 1").div_exact(&p(r, "2")).is_err());
        assert_eq!(
            p(r, "2*t1 + 4").div_exact(&p(r, "2")).unwrap(),
            p(r, "t1 + 2")
        );
    }

    #[test]
    fn evaluation_examples() {
        let r = qq(2);
        let at = |v: &[i64]| {
            TorusPoint::Rational(
                v.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect(),
            )
        };
        assert_eq!(
            p(r, "t1*t2 - t1 - t2 + 1").evaluate(&at(&[1, 5])).unwrap(),
            FieldValue::Rational(BigRational::from_integer(0.into()))
        );
        assert_eq!(
            p(r, "t1*t2").evaluate(&at(&[2, 3])).unwrap(),
            FieldValue::Rational(BigRational::from_integer(6.into()))
        );
        assert!(matches!(
            p(r, "t1").evaluate(&at(&[0, 3])),
            Err(Error::ZeroCoordinate(1))
        ));

        let f2 = LaurentRing::new(2, CoefficientDomain::prime(2).unwrap()).unwrap();
        let pt = TorusPoint::Prime {
            field: PrimeField::new(2).unwrap(),
            coords: vec![1, 1],
        };
        assert_eq!(
            p(f2, "t1 + t2").evaluate(&pt).unwrap(),
            FieldValue::Prime(0)
        );
    }

    #[test]
    fn reduction_examples() {
        let z = LaurentRing::new(2, CoefficientDomain::Integer).unwrap();
        let f2 = CoefficientDomain::prime(2).unwrap();
        let f3 = CoefficientDomain::prime(3).unwrap();
        let a = p(z, "2*t1 + 3").reduce_coefficients(f2).unwrap();
        assert_eq!(a.to_string(), "1");
        let b = p(z, "6*t1*t2").reduce_coefficients(f3).unwrap();
        assert!(b.is_zero());
        let c = p(z, "5*t1^2 - t2")
            .reduce_coefficients(CoefficientDomain::Rational)
            .unwrap();
        assert_eq!(c.to_string(), "5*t1^2 - t2");
        assert!(p(qq(1), "t1").reduce_coefficients(f2).is_err());
    }

    #[test]
    fn variable_scaling_and_substitution() {
        let r = qq(2);
        let dom = r.coeff();
        let lam = [dom.from_i64(2), dom.from_i64(1)];
        assert_eq!(p(r, "t1 - 1").scale_variables(&lam), p(r, "2*t1 - 1"));
        assert_eq!(
            p(r, "t1*t2 + t2").substitute(0, &dom.from_i64(3)),
            p(r, "4*t2")
        );
    }

    #[test]
    fn equality_ignores_sort_order() {
        let r = qq(3);
        let a = p(r, "t1*t3 + t2^2 + t1");
        assert_eq!(a.with_order(MonomialOrder::Lex), a);
        assert_eq!(a.with_order(MonomialOrder::Lex).to_string(), a.to_string());
    }

    // ---- property tests -------------------------------------------------

    fn domains() -> impl Strategy<Value = CoefficientDomain> {
        prop_oneof![
            Just(CoefficientDomain::Rational),
            Just(CoefficientDomain::Integer),
            Just(CoefficientDomain::prime(2).unwrap()),
            Just(CoefficientDomain::prime(7).unwrap()),
        ]
    }

    fn poly_in(ring: LaurentRing) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -4i64..5), 0..5).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    ring,
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::new(e), ring.coeff().from_i64(c))),
                )
            },
        )
    }

    fn triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
        domains().prop_flat_map(|d| {
            let r = LaurentRing::new(2, d).unwrap();
            (poly_in(r), poly_in(r), poly_in(r))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn canonical_form_is_idempotent((a, _, _) in triple()) {
            let again = Polynomial::from_terms(a.ring(), a.terms().iter().cloned());
            prop_assert_eq!(&again, &a);
            prop_assert_eq!(again.terms(), a.terms());
            prop_assert_eq!(Polynomial::parse(a.ring(), &a.to_string()).unwrap(), a);
        }

        #[test]
        fn evaluation_is_multiplicative((a, b, _) in triple(), x in 1i64..6, y in 1i64..6) {
            let ring = a.ring();
            let pt = match ring.coeff() {
                CoefficientDomain::Prime(p) => {
                    let pm = p.get() as u64;
                    let (x, y) = ((x as u64) % pm, (y as u64) % pm);
                    prop_assume!(x != 0 && y != 0);
                    TorusPoint::Prime { field: PrimeField::new(pm).unwrap(), coords: vec![x, y] }
                }
                _ => TorusPoint::Rational(vec![BigRational::from_integer(x.into()), BigRational::new(1.into(), y.into())]),
            };
            let lhs = (&a * &b).evaluate(&pt).unwrap();
            let rhs = pt.field_mul(&a.evaluate(&pt).unwrap(), &b.evaluate(&pt).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_commutes_with_products(
            a in poly_in(LaurentRing::new(2, CoefficientDomain::Integer).unwrap()),
            b in poly_in(LaurentRing::new(2, CoefficientDomain::Integer).unwrap()),
            p in prop_oneof![Just(2u64), Just(3), Just(5)],
        ) {
            let t = CoefficientDomain::prime(p).unwrap();
            prop_assert_eq!(
                (&a * &b).reduce_coefficients(t).unwrap(),
                &a.reduce_coefficients(t).unwrap() * &b.reduce_coefficients(t).unwrap()
            );
        }
    }
}
