//! Ideals in `k[t1, ..., tN]` and the questions the jump-locus machinery
//! needs answered about them: Gröbner bases, membership, radical membership
//! (Rabinowitsch), saturation, dimension and containment of varieties.
//!
//! Radicals are never materialized. Every statement about `rad J` is decided
//! through [`Ideal::contains_radical`].

mod buchberger;
pub(crate) mod solve;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ring::{LaurentRing, Monomial, MonomialOrder, Polynomial};

pub(crate) use buchberger::normal_form;

/// A finitely generated ideal.
///
/// Generators are stored nonzero, normalized (monic over a field, positive
/// leading coefficient over `Z`) and without repeats. The reduced
/// degrevlex Gröbner basis is computed at most once and cached.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: LaurentRing,
    generators: Vec<Polynomial>,
    limits: Limits,
    cached_gb: OnceLock<Arc<Vec<Polynomial>>>,
}

/// Krull dimension of `V(I)`; `-1` encodes the empty variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    pub dim: i64,
    pub num_vars: usize,
}

impl DimensionResult {
    /// `N - dim`, or `None` for the empty variety (codimension infinity).
    pub fn codim(&self) -> Option<usize> {
        (self.dim >= 0).then(|| self.num_vars - self.dim as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    pub fn is_whole_space(&self) -> bool {
        self.dim == self.num_vars as i64
    }

    /// `codim >= k`, true for the empty variety.
    pub fn codim_at_least(&self, k: usize) -> bool {
        self.codim().is_none_or(|c| c >= k)
    }
}

impl std::fmt::Display for DimensionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.codim() {
            Some(c) => write!(f, "dim {} (codim {c})", self.dim),
            None => write!(f, "empty"),
        }
    }
}

impl PartialEq for Ideal {
    /// Same generator lists. Use [`Ideal::same_ideal`] for ideal equality.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.generators == other.generators
    }
}

impl Ideal {
    pub fn new(
        ring: LaurentRing,
        generators: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Self> {
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "generator over {} in an ideal of {}",
                    g.ring(),
                    ring
                )));
            }
            if g.is_zero() {
                continue;
            }
            let g = g.with_order(MonomialOrder::DegRevLex).monic();
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Ideal {
            ring,
            generators: gens,
            limits: Limits::default(),
            cached_gb: OnceLock::new(),
        })
    }

    /// Parses each generator with the ring's polynomial syntax.
    pub fn parse(ring: LaurentRing, generators: &[&str]) -> Result<Self> {
        Ideal::new(
            ring,
            generators
                .iter()
                .map(|g| Polynomial::parse(ring, g))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn zero(ring: LaurentRing) -> Self {
        Ideal::new(ring, []).unwrap()
    }

    pub fn unit(ring: LaurentRing) -> Self {
        Ideal::new(ring, [Polynomial::one(ring)]).unwrap()
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn ring(&self) -> LaurentRing {
        self.ring
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True when there are no nonzero generators.
    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    fn derived(&self, generators: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(self.ring, generators)?.with_limits(self.limits))
    }

    /// Reduced Gröbner basis under `order`. Requires field coefficients.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Vec<Polynomial>> {
        if order == MonomialOrder::DegRevLex {
            return Ok(self.degrevlex_basis()?.as_ref().clone());
        }
        buchberger::reduced_basis(&self.generators, order, &self.limits)
    }

    fn degrevlex_basis(&self) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(gb) = self.cached_gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger::reduced_basis(
            &self.generators,
            MonomialOrder::DegRevLex,
            &self.limits,
        )?);
        // a concurrent writer computed the same unique basis
        let _ = self.cached_gb.set(gb.clone());
        Ok(gb)
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.degrevlex_basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Remainder of `f` modulo the reduced degrevlex basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f)?;
        let gb = self.degrevlex_basis()?;
        Ok(normal_form(
            &f.with_order(MonomialOrder::DegRevLex),
            gb.iter(),
        ))
    }

    fn check_ring(&self, f: &Polynomial) -> Result<()> {
        if f.ring() != self.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                f.ring(),
                self.ring
            )));
        }
        Ok(())
    }

    /// Ideal membership: `f` reduces to zero.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, via reduced Gröbner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.ring == other.ring && *self.degrevlex_basis()? == *other.degrevlex_basis()?)
    }

    /// Ring with one extra variable `y` in front (index 0).
    fn rabinowitsch_system(&self, f: &Polynomial) -> (LaurentRing, Vec<Polynomial>) {
        let big = self.ring.with_vars(self.ring.num_vars() + 1);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.embed(big, 1)).collect();
        let y = Polynomial::var(big, 0);
        gens.push(&Polynomial::one(big) - &(&y * &f.embed(big, 1)));
        (big, gens)
    }

    /// `f ∈ rad I`, decided by `1 ∈ I + <1 - y f>`.
    pub fn contains_radical(&self, f: &Polynomial) -> Result<bool> {
        self.check_ring(f)?;
        if f.is_zero() || self.contains(f)? {
            return Ok(true);
        }
        let (_, gens) = self.rabinowitsch_system(f);
        let gb = buchberger::reduced_basis(&gens, MonomialOrder::DegRevLex, &self.limits)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// `I : f^∞ = (I + <1 - y f>) ∩ k[t]`, by eliminating `y`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f)?;
        if f.is_zero() {
            return Err(Error::Invalid("saturation at the zero polynomial".into()));
        }
        if self.is_zero_ideal() {
            return Ok(self.clone());
        }
        let (big, gens) = self.rabinowitsch_system(f);
        let gb = buchberger::reduced_basis(&gens, MonomialOrder::Elimination(1), &self.limits)?;
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.support_mask() & 1 == 0)
            .map(|g| g.drop_vars(self.ring, 0..1))
            .collect();
        debug_assert!(big.num_vars() == self.ring.num_vars() + 1);
        let out = self.derived(kept.clone())?;
        // the y-free part of a reduced elimination basis is the reduced
        // degrevlex basis of the elimination ideal
        let mut sorted = kept;
        sorted.sort_by(|a, b| {
            MonomialOrder::DegRevLex
                .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
        let _ = out.cached_gb.set(Arc::new(sorted));
        Ok(out)
    }

    /// Saturation at `t1 * ... * tN`: the ideal of the locus on the torus.
    pub fn saturate_torus(&self) -> Result<Ideal> {
        let n = self.ring.num_vars();
        let m = Polynomial::term(
            self.ring,
            Monomial::new(vec![1; n]),
            self.ring.coeff().one(),
        );
        self.saturate(&m)
    }

    /// Dimension of `V(I)` from the leading monomials of the reduced
    /// degrevlex basis: the largest set of variables containing the support
    /// of no leading monomial.
    pub fn dimension(&self) -> Result<DimensionResult> {
        let n = self.ring.num_vars();
        if n > 24 {
            return Err(Error::ResourceLimit(format!(
                "dimension by subset search in {n} variables"
            )));
        }
        let gb = self.degrevlex_basis()?;
        if gb.len() == 1 && gb[0].is_constant() {
            return Ok(DimensionResult {
                dim: -1,
                num_vars: n,
            });
        }
        let masks: Vec<u64> = gb
            .iter()
            .map(|g| g.leading_monomial().unwrap().support_mask())
            .collect();
        let best = (0u64..1 << n)
            .filter(|s| masks.iter().all(|m| m & !s != 0))
            .map(|s| s.count_ones())
            .max()
            .unwrap_or(0);
        Ok(DimensionResult {
            dim: best as i64,
            num_vars: n,
        })
    }

    /// `V(self) ⊆ V(other)`, i.e. `other ⊆ rad(self)`.
    pub fn variety_contained_in(&self, other: &Ideal) -> Result<bool> {
        for g in &other.generators {
            if !self.contains_radical(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `V(self) = V(other)`.
    pub fn same_variety(&self, other: &Ideal) -> Result<bool> {
        Ok(self.variety_contained_in(other)? && other.variety_contained_in(self)?)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        self.derived(gens)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        self.derived(
            self.generators
                .iter()
                .chain(&other.generators)
                .cloned()
                .collect(),
        )
    }

    /// Replaces the generators by the reduced degrevlex basis.
    pub fn minimalized(&self) -> Result<Ideal> {
        let gb = self.degrevlex_basis()?;
        let out = self.derived(gb.as_ref().clone())?;
        let _ = out.cached_gb.set(gb);
        Ok(out)
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}
