//! Exact coefficients, monomials and multivariate polynomials.
//!
//! The Laurent ring `k[t1^±, ..., tN^±]` is represented by the ordinary
//! polynomial ring `k[t1, ..., tN]`. Every geometric question asked later
//! (membership, containment, dimension) is posed for ideals saturated at the
//! product `t1*...*tN`, which recovers the torus without signed exponents.

mod coeff;
pub mod field;
mod monomial;
mod parse;
mod poly;
pub(crate) mod univariate;

pub use coeff::{Coeff, CoefficientDomain, PrimeModulus};
pub use field::{ExtensionField, Field, FieldValue, PrimeField, Rationals, TorusPoint};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;

use crate::error::{Error, Result};

/// The ambient ring: `num_vars` torus coordinates over a coefficient domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LaurentRing {
    num_vars: usize,
    coeff: CoefficientDomain,
}

impl LaurentRing {
    pub fn new(num_vars: usize, coeff: CoefficientDomain) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Invalid(
                "a Laurent ring needs at least one variable".into(),
            ));
        }
        Ok(LaurentRing { num_vars, coeff })
    }

    /// Ring with `n` extra variables; used for Rabinowitsch variables and
    /// variable concatenation. Does not enforce `num_vars >= 1` on purpose.
    pub(crate) fn with_vars(self, num_vars: usize) -> Self {
        LaurentRing { num_vars, ..self }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coeff(&self) -> CoefficientDomain {
        self.coeff
    }

    pub fn with_coeff(self, coeff: CoefficientDomain) -> Self {
        LaurentRing { coeff, ..self }
    }
}

impl std::fmt::Display for LaurentRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[t1..t{}]^±", self.coeff, self.num_vars)
    }
}
