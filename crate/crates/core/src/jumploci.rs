//! Fitting ideals, jumping ideals and the cohomology jump loci
//! `V^i = {χ : H^i(F ⊗ κ(χ)) ≠ 0}` of a free complex.
//!
//! `J^i = I_{rank F^i}(∂^{i-1} ⊕ ∂^i)`, saturated at `t1 ... tN` so that the
//! loci live on the torus. Radicals are never formed; `V^i` is handled
//! through its saturated jumping ideal.

use std::borrow::Cow;

use serde_json::{json, Map, Value};

use crate::chaincx::FreeComplex;
use crate::error::Result;
use crate::groebner::{DimensionResult, Ideal};
use crate::limits::Limits;
use crate::ring::{LaurentRing, TorusPoint};

/// `I_{rank ∂^i}(∂^i)`, not saturated. Outside `[lo, hi]` this is `<1>`.
pub fn fitting_ideal(c: &FreeComplex, i: i64, limits: &Limits) -> Result<Ideal> {
    let c = c.over_field()?;
    let d = c.differential(i);
    let r = d.rank_with(limits)?;
    d.determinantal_ideal_with(r, limits)
}

/// `Σ_{a+b = rank F^i} I_a(∂^{i-1}) · I_b(∂^i)`, saturated at `t1 ... tN`.
pub fn jumping_ideal(c: &FreeComplex, i: i64, limits: &Limits) -> Result<Ideal> {
    let c = c.over_field()?;
    Ok(degree_locus(&c, i, limits)?.ideal)
}

/// Everything recorded about one degree.
#[derive(Clone, Debug)]
pub struct DegreeLocus {
    pub degree: i64,
    /// Saturated `J^i`.
    pub ideal: Ideal,
    /// `rank ∂^{i-1}`.
    pub rank_in: usize,
    /// `rank ∂^i`.
    pub rank_out: usize,
    /// `rank F^i`.
    pub rank_module: usize,
    pub dimension: DimensionResult,
}

impl DegreeLocus {
    /// `V^i` is all of the torus.
    pub fn is_whole_torus(&self) -> bool {
        self.ideal.is_zero_ideal()
    }

    pub fn is_empty(&self) -> bool {
        self.dimension.is_empty()
    }

    /// Rank additivity fails: the generic fiber has `H^i ≠ 0`.
    pub fn generically_nonzero(&self) -> bool {
        self.rank_in + self.rank_out < self.rank_module
    }
}

fn degree_locus(c: &FreeComplex, i: i64, limits: &Limits) -> Result<DegreeLocus> {
    let ring = c.ring();
    let (d_in, d_out) = (c.differential(i - 1), c.differential(i));
    let rank_in = d_in.rank_with(limits)?;
    let rank_out = d_out.rank_with(limits)?;
    let n = c.rank(i);
    debug_assert!(
        rank_in + rank_out <= n,
        "complex condition bounds the ranks"
    );
    // I_a(∂^{i-1}) vanishes for a > rank ∂^{i-1}, likewise for ∂^i, so
    // only a = rank_in, b = rank_out can contribute, and only when they
    // add up to rank F^i
    let raw = if rank_in + rank_out < n {
        Ideal::zero(ring).with_limits(*limits)
    } else {
        let a = d_in
            .determinantal_ideal_with(rank_in, limits)?
            .minimalized()?;
        let b = d_out
            .determinantal_ideal_with(rank_out, limits)?
            .minimalized()?;
        a.product(&b)?
    };
    let ideal = if raw.is_zero_ideal() {
        raw
    } else {
        raw.saturate_torus()?.minimalized()?
    };
    let dimension = ideal.dimension()?;
    Ok(DegreeLocus {
        degree: i,
        ideal,
        rank_in,
        rank_out,
        rank_module: n,
        dimension,
    })
}

/// The loci of every degree of a complex.
#[derive(Clone, Debug)]
pub struct JumpLocusSet {
    ring: LaurentRing,
    lo: i64,
    euler: i64,
    loci: Vec<DegreeLocus>,
}

/// Computes `V^i` for every degree. Integer complexes are computed over `Q`.
pub fn jump_loci(c: &FreeComplex) -> Result<JumpLocusSet> {
    jump_loci_with(c, &Limits::default())
}

pub fn jump_loci_with(c: &FreeComplex, limits: &Limits) -> Result<JumpLocusSet> {
    let c = c.over_field()?;
    let loci = c
        .degrees()
        .map(|i| degree_locus(&c, i, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(JumpLocusSet {
        ring: c.ring(),
        lo: c.lo(),
        euler: c.euler_characteristic(),
        loci,
    })
}

/// `Σ (-1)^i rank F^i`.
pub fn euler_characteristic(c: &FreeComplex) -> i64 {
    c.euler_characteristic()
}

impl JumpLocusSet {
    pub fn ring(&self) -> LaurentRing {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.loci.len() as i64 - 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    pub fn loci(&self) -> &[DegreeLocus] {
        &self.loci
    }

    pub fn get(&self, i: i64) -> Option<&DegreeLocus> {
        if i < self.lo || i > self.hi() {
            return None;
        }
        Some(&self.loci[(i - self.lo) as usize])
    }

    /// Saturated `J^i`; `<1>` (empty locus) outside the complex.
    pub fn ideal(&self, i: i64) -> Cow<'_, Ideal> {
        match self.get(i) {
            Some(l) => Cow::Borrowed(&l.ideal),
            None => Cow::Owned(Ideal::unit(self.ring)),
        }
    }

    pub fn dimension(&self, i: i64) -> DimensionResult {
        match self.get(i) {
            Some(l) => l.dimension,
            None => DimensionResult {
                dim: -1,
                num_vars: self.ring.num_vars(),
            },
        }
    }

    /// `χ ∈ V^i`: every generator of the saturated `J^i` vanishes at `χ`.
    pub fn contains(&self, i: i64, point: &TorusPoint) -> Result<bool> {
        let ideal = self.ideal(i);
        for g in ideal.generators() {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        // evaluation also rejects points off the torus and wrong fields
        if ideal.generators().is_empty() {
            crate::ring::Polynomial::one(self.ring).evaluate(point)?;
        }
        Ok(true)
    }

    /// Report fragment: per degree the generators of the saturated jumping
    /// ideal, the rank data, dimension and flags.
    pub fn to_json(&self) -> Value {
        let degrees: Map<String, Value> = self
            .loci
            .iter()
            .map(|l| {
                let gens: Vec<Value> = l
                    .ideal
                    .generators()
                    .iter()
                    .map(|g| json!(g.to_string()))
                    .collect();
                (
                    l.degree.to_string(),
                    json!({
                        "generators": gens,
                        "rank_module": l.rank_module,
                        "rank_in": l.rank_in,
                        "rank_out": l.rank_out,
                        "dim": l.dimension.dim,
                        "codim": l.dimension.codim(),
                        "whole_torus": l.is_whole_torus(),
                        "empty": l.is_empty(),
                    }),
                )
            })
            .collect();
        json!({
            "ring": {
                "num_vars": self.ring.num_vars(),
                "coeff": crate::chaincx::coeff_to_json(self.ring.coeff()),
            },
            "lo": self.lo,
            "hi": self.hi(),
            "euler_characteristic": self.euler,
            "degrees": degrees,
            "note": "generators of saturated jumping ideals; the verified objects are their varieties",
        })
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::chaincx::{koszul_torus, twist, wedge};
    use crate::ring::{CoefficientDomain, MonomialOrder, Polynomial};

    const QQ: CoefficientDomain = CoefficientDomain::Rational;

    fn gens(i: &Ideal) -> Vec<String> {
        i.groebner_basis(MonomialOrder::DegRevLex)
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    fn q(v: &[i64]) -> TorusPoint {
        TorusPoint::Rational(
            v.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    #[test]
    fn fitting_ideals() {
        let l = Limits::default();
        let k1 = koszul_torus(1, QQ).unwrap();
        assert_eq!(gens(&fitting_ideal(&k1, 0, &l).unwrap()), ["t1 - 1"]);
        assert!(fitting_ideal(&k1, 5, &l).unwrap().is_unit().unwrap());
        let k2 = koszul_torus(2, QQ).unwrap();
        assert_eq!(
            gens(&fitting_ideal(&k2, 0, &l).unwrap()),
            ["t1 - 1", "t2 - 1"]
        );
        let ring = LaurentRing::new(2, QQ).unwrap();
        let zero = FreeComplex::new(
            ring,
            0,
            vec![2, 3],
            vec![crate::PolyMatrix::zeros(ring, 3, 2)],
        )
        .unwrap();
        assert!(fitting_ideal(&zero, 0, &l).unwrap().is_unit().unwrap());
    }

    #[test]
    fn jumping_ideals() {
        let l = Limits::default();
        let k1 = koszul_torus(1, QQ).unwrap();
        assert_eq!(gens(&jumping_ideal(&k1, 1, &l).unwrap()), ["t1 - 1"]);
        let w2 = wedge(2, QQ).unwrap();
        assert!(jumping_ideal(&w2, 1, &l).unwrap().is_zero_ideal());
        let ring = LaurentRing::new(2, QQ).unwrap();
        let zero = FreeComplex::new(
            ring,
            0,
            vec![2, 3],
            vec![crate::PolyMatrix::zeros(ring, 3, 2)],
        )
        .unwrap();
        assert!(jumping_ideal(&zero, 0, &l).unwrap().is_zero_ideal());
        assert!(jumping_ideal(&zero, 1, &l).unwrap().is_zero_ideal());
    }

    #[test]
    fn torus_loci_are_the_trivial_character() {
        let loci = jump_loci(&koszul_torus(2, QQ).unwrap()).unwrap();
        let point = Ideal::parse(loci.ring(), &["t1 - 1", "t2 - 1"]).unwrap();
        for i in 0..=2 {
            assert!(loci.ideal(i).same_variety(&point).unwrap(), "degree {i}");
            assert_eq!(loci.dimension(i).dim, 0);
        }
        assert!(loci.contains(1, &q(&[1, 1])).unwrap());
        assert!(!loci.contains(1, &q(&[2, 3])).unwrap());
        assert!(!loci.contains(3, &q(&[1, 1])).unwrap());
    }

    #[test]
    fn wedge_loci() {
        let loci = jump_loci(&wedge(2, QQ).unwrap()).unwrap();
        assert_eq!(loci.dimension(0).dim, 0);
        assert_eq!(loci.dimension(1).dim, 2);
        assert!(loci.get(1).unwrap().is_whole_torus());
        assert!(loci.contains(1, &q(&[2, 3])).unwrap());
        assert_eq!(loci.euler_characteristic(), -1);
    }

    #[test]
    fn twisted_circle() {
        let t = twist(&koszul_torus(1, QQ).unwrap(), &[QQ.from_i64(2)]).unwrap();
        let loci = jump_loci(&t).unwrap();
        let half = Ideal::new(
            loci.ring(),
            [Polynomial::parse(loci.ring(), "2*t1 - 1").unwrap()],
        )
        .unwrap();
        assert!(loci.ideal(0).same_variety(&half).unwrap());
        assert!(loci.ideal(1).same_variety(&half).unwrap());
    }

    #[test]
    fn saturation_removes_coordinate_hyperplanes() {
        // ∂^0 = t1 (t1 - 1): off the torus the factor t1 must not count
        let ring = LaurentRing::new(1, QQ).unwrap();
        let d = crate::PolyMatrix::parse(ring, &[&["t1^2 - t1"]]).unwrap();
        let c = FreeComplex::new(ring, 0, vec![1, 1], vec![d]).unwrap();
        assert_eq!(gens(&jump_loci(&c).unwrap().ideal(0)), ["t1 - 1"]);
    }

    #[test]
    fn integer_complexes_go_through_the_rationals() {
        let loci = jump_loci(&koszul_torus(1, CoefficientDomain::Integer).unwrap()).unwrap();
        assert_eq!(loci.ring().coeff(), QQ);
    }
}
