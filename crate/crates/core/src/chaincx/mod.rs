//! Bounded cochain complexes of free modules over a [`LaurentRing`].
//!
//! `F^lo -> ... -> F^hi`, with `∂^i: F^i -> F^{i+1}` a `rank F^{i+1} x rank F^i`
//! matrix acting on column vectors. Every constructor validates shapes and
//! the complex condition `∂^{i+1} ∂^i = 0`.

mod fox;
mod generators;
mod json;

use std::borrow::Cow;

pub use fox::{fox_complex, surface, wedge, GroupPresentation};
pub use generators::{koszul_torus, tensor_product, twist, TensorMode};
pub(crate) use json::coeff_to_json;

use crate::error::{Error, Result};
use crate::polymat::PolyMatrix;
use crate::ring::{CoefficientDomain, LaurentRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: LaurentRing,
    lo: i64,
    ranks: Vec<usize>,
    /// `differentials[k]` is `∂^{lo + k}`, for `lo <= i < hi`.
    differentials: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// `ranks[k]` is the rank in degree `lo + k`; `differentials[k]` maps
    /// degree `lo + k` to `lo + k + 1`.
    pub fn new(
        ring: LaurentRing,
        lo: i64,
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Invalid("a complex needs at least one degree".into()));
        }
        let c = FreeComplex {
            ring,
            lo,
            ranks,
            differentials,
        };
        c.validate()?;
        Ok(c)
    }

    /// A single free module of rank `rank` in degree `degree`.
    pub fn single(ring: LaurentRing, degree: i64, rank: usize) -> Self {
        FreeComplex {
            ring,
            lo: degree,
            ranks: vec![rank],
            differentials: Vec::new(),
        }
    }

    /// Shapes and `∂^{i+1} ∂^i = 0`.
    pub fn validate(&self) -> Result<()> {
        if self.differentials.len() + 1 != self.ranks.len() {
            return Err(Error::Invalid(format!(
                "{} differentials for {} degrees",
                self.differentials.len(),
                self.ranks.len()
            )));
        }
        for (k, d) in self.differentials.iter().enumerate() {
            let degree = self.lo + k as i64;
            if d.ring() != self.ring {
                return Err(Error::RingMismatch(format!(
                    "differential {degree} over {}",
                    d.ring()
                )));
            }
            let want = (self.ranks[k + 1], self.ranks[k]);
            if d.shape() != want {
                return Err(Error::ShapeMismatch {
                    degree,
                    message: format!(
                        "differential is {} x {}, ranks require {} x {}",
                        d.rows(),
                        d.cols(),
                        want.0,
                        want.1
                    ),
                });
            }
        }
        for k in 0..self.differentials.len().saturating_sub(1) {
            if !self.differentials[k + 1]
                .mul(&self.differentials[k])?
                .is_zero()
            {
                return Err(Error::ComplexConditionViolated {
                    degree: self.lo + k as i64,
                });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> LaurentRing {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    /// Rank of `F^i`, zero outside `[lo, hi]`.
    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            return 0;
        }
        self.ranks[(i - self.lo) as usize]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂^i`; outside `lo <= i < hi` the unique matrix of the right (empty)
    /// shape.
    pub fn differential(&self, i: i64) -> Cow<'_, PolyMatrix> {
        if i >= self.lo && i < self.hi() {
            Cow::Borrowed(&self.differentials[(i - self.lo) as usize])
        } else {
            Cow::Owned(PolyMatrix::zeros(self.ring, self.rank(i + 1), self.rank(i)))
        }
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// `Σ (-1)^i rank F^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(i) as i64)
            .sum()
    }

    /// The shifted complex `c[k]`, with `c[k]^i = c^{i+k}` and differentials
    /// multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> FreeComplex {
        let differentials = if k.rem_euclid(2) == 0 {
            self.differentials.clone()
        } else {
            self.differentials
                .iter()
                .map(|d| d.map(self.ring, |e| -e).unwrap())
                .collect()
        };
        FreeComplex {
            ring: self.ring,
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            differentials,
        }
    }

    /// Reduction of an integer complex to `Q` or `F_p`.
    pub fn reduce_coefficients(&self, target: CoefficientDomain) -> Result<FreeComplex> {
        let ring = self.ring.with_coeff(target);
        let differentials = self
            .differentials
            .iter()
            .map(|d| d.try_map(ring, |e| e.reduce_coefficients(target)))
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(ring, self.lo, self.ranks.clone(), differentials)
    }

    /// The complex over a field: integer complexes are reduced to `Q`,
    /// field complexes are returned as they are.
    pub fn over_field(&self) -> Result<Cow<'_, FreeComplex>> {
        match self.ring.coeff() {
            CoefficientDomain::Integer => Ok(Cow::Owned(
                self.reduce_coefficients(CoefficientDomain::Rational)?,
            )),
            _ => Ok(Cow::Borrowed(self)),
        }
    }
}
