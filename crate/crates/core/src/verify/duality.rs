use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use super::{smith_normal_form, PropertyRecord, Status};
use crate::chaincx::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::jumploci::{fitting_ideal, jump_loci_with};
use crate::limits::Limits;
use crate::ring::{CoefficientDomain, FieldValue, TorusPoint};

/// Attached to every duality verdict: only finitely many primes are tested.
pub const PRIME_CAVEAT: &str = "torsion-freeness certified only for the primes tested";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcyclicityClause {
    /// `rank F_j != rank d_j + rank d_{j+1}`.
    RankAdditivity,
    /// `codim I_{rank d_j}(d_j) < j`.
    Codimension,
}

/// First failing position of the acyclicity criterion. Positions count down
/// from the top: position `j` is degree `n - j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityWitness {
    pub position: i64,
    pub degree: i64,
    pub clause: AcyclicityClause,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acyclicity {
    Acyclic,
    Fails(AcyclicityWitness),
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic)
    }

    pub fn witness(&self) -> Option<&AcyclicityWitness> {
        match self {
            Acyclicity::Acyclic => None,
            Acyclicity::Fails(w) => Some(w),
        }
    }
}

fn saturated(i: Ideal) -> Result<Ideal> {
    if i.is_zero_ideal() {
        Ok(i)
    } else {
        i.saturate_torus()
    }
}

/// Decides `H^i(c) = 0` for all `i != n` over the complex's field, without
/// syzygies. With `F_j = F^{n-j}` and `d_j = ∂^{n-j}` the complex is exact at
/// every `j >= 1` iff `rank F_j = rank d_j + rank d_{j+1}` and the saturated
/// `I_{rank d_j}(d_j)` has codimension at least `j`.
pub fn acyclic_off_top(c: &FreeComplex, n: i64, limits: &Limits) -> Result<Acyclicity> {
    if !c.ring().coeff().is_field() {
        return Err(Error::IntegerCoefficients);
    }
    if n < c.lo() {
        return Err(Error::Invalid(format!(
            "degree {n} is below the complex (lo = {})",
            c.lo()
        )));
    }
    if let Some(i) = ((n + 1)..=c.hi()).find(|&i| c.rank(i) > 0) {
        return Err(Error::Invalid(format!(
            "complex has rank {} in degree {i} above n = {n}",
            c.rank(i)
        )));
    }
    for j in 1..=(n - c.lo()) {
        let degree = n - j;
        let dj = c.differential(degree);
        let rj = dj.rank_with(limits)?;
        let rnext = c.differential(degree - 1).rank_with(limits)?;
        if c.rank(degree) != rj + rnext {
            return Ok(Acyclicity::Fails(AcyclicityWitness {
                position: j,
                degree,
                clause: AcyclicityClause::RankAdditivity,
                detail: format!(
                    "rank F = {} but ranks of the maps are {rj} + {rnext}",
                    c.rank(degree)
                ),
            }));
        }
        let dim = saturated(dj.determinantal_ideal_with(rj, limits)?)?.dimension()?;
        if !dim.codim_at_least(j as usize) {
            return Ok(Acyclicity::Fails(AcyclicityWitness {
                position: j,
                degree,
                clause: AcyclicityClause::Codimension,
                detail: format!(
                    "fitting ideal has codimension {} < {j}",
                    dim.codim().unwrap_or(0)
                ),
            }));
        }
    }
    Ok(Acyclicity::Acyclic)
}

/// Compares the loci of a complex acyclic off `n` with the loci read off
/// the fitting ideals of `H^n`: `V^i = V(I_{rank ∂^i}(∂^i))` for `i < n`
/// and `V^n = V(I_{rank F^n}(∂^{n-1}))`, both ways.
pub fn lemma_equal_check(c: &FreeComplex, n: i64, limits: &Limits) -> Result<PropertyRecord> {
    let c = c.over_field()?;
    let loci = jump_loci_with(&c, limits)?;
    let mut compared = Vec::new();
    for i in c.lo()..=n {
        let presented = if i < n {
            fitting_ideal(&c, i, limits)?
        } else {
            c.differential(n - 1)
                .determinantal_ideal_with(c.rank(n), limits)?
        };
        let presented = saturated(presented)?;
        if !loci.ideal(i).same_variety(&presented)? {
            return Ok(PropertyRecord::new(Status::Fail, json!({ "degree": i })));
        }
        compared.push(i);
    }
    Ok(PropertyRecord::new(
        Status::Pass,
        json!({ "degrees": compared }),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    AbelianDuality(i64),
    PartialAbelianDuality(i64),
    No {
        field: String,
        degree: i64,
        reason: String,
    },
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        !matches!(self, Verdict::No { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AbelianDuality(n) => write!(f, "AbelianDuality({n})"),
            Verdict::PartialAbelianDuality(n) => write!(f, "PartialAbelianDuality({n})"),
            Verdict::No {
                field,
                degree,
                reason,
            } => write!(f, "No ({field}, degree {degree}: {reason})"),
        }
    }
}

/// Result of the acyclicity test over one field.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldOutcome {
    /// `QQ` or `F<p>`.
    pub field: String,
    pub acyclicity: Acyclicity,
    /// Loci of the complex against loci of its top cohomology; skipped when
    /// the complex is not acyclic off `n` over this field.
    pub cross_check: PropertyRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityVerdict {
    pub n: i64,
    pub verdict: Verdict,
    pub primes_tested: Vec<u64>,
    /// Primes added from elementary divisors of evaluated differentials.
    pub primes_added: Vec<u64>,
    pub fields: Vec<FieldOutcome>,
    pub caveat: &'static str,
}

impl DualityVerdict {
    /// The verdict is positive and every cross-check passed.
    pub fn passed(&self) -> bool {
        self.verdict.is_positive() && self.fields.iter().all(|f| f.cross_check.status.is_pass())
    }

    pub fn to_json(&self) -> Value {
        let fields: Vec<Value> = self
            .fields
            .iter()
            .map(|f| {
                let acyclicity = match &f.acyclicity {
                    Acyclicity::Acyclic => json!({ "acyclic": true }),
                    Acyclicity::Fails(w) => json!({
                        "acyclic": false,
                        "position": w.position,
                        "degree": w.degree,
                        "clause": format!("{:?}", w.clause),
                        "detail": w.detail,
                    }),
                };
                json!({ "field": f.field, "acyclicity": acyclicity, "cross_check": f.cross_check.to_json() })
            })
            .collect();
        let verdict = match &self.verdict {
            Verdict::No {
                field,
                degree,
                reason,
            } => {
                json!({ "verdict": "No", "field": field, "degree": degree, "reason": reason })
            }
            v => json!({ "verdict": v.to_string() }),
        };
        json!({
            "n": self.n,
            "verdict": verdict,
            "primes_tested": self.primes_tested,
            "primes_added": self.primes_added,
            "fields": fields,
            "caveat": self.caveat,
        })
    }
}

impl fmt::Display for DualityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict {}", self.verdict)?;
        let primes: Vec<String> = self.primes_tested.iter().map(u64::to_string).collect();
        writeln!(f, "primes tested {}", primes.join(","))?;
        for o in &self.fields {
            match &o.acyclicity {
                Acyclicity::Acyclic => write!(f, "  {} acyclic off {}", o.field, self.n)?,
                Acyclicity::Fails(w) => write!(
                    f,
                    "  {} fails at degree {} ({:?}: {})",
                    o.field, w.degree, w.clause, w.detail
                )?,
            }
            writeln!(f, "; cross-check {}", o.cross_check.status)?;
        }
        writeln!(f, "caveat: {}", self.caveat)
    }
}

fn small_prime_factors(v: &BigInt, out: &mut BTreeSet<u64>) {
    let Some(mut m) = v.abs().to_u64() else {
        return;
    };
    let mut p = 2u64;
    while p * p <= m && p < 1 << 16 {
        if m % p == 0 {
            out.insert(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 && m < 1 << 31 && CoefficientDomain::prime(m).is_ok() {
        out.insert(m);
    }
}

/// Primes dividing elementary divisors of the differentials evaluated at
/// `(1, ..., 1)` and `(-1, ..., -1)`.
fn suspicious_primes(c: &FreeComplex) -> Result<BTreeSet<u64>> {
    let nv = c.ring().num_vars();
    let mut out = BTreeSet::new();
    for value in [1i64, -1] {
        let point = TorusPoint::Rational(vec![BigRational::from_integer(value.into()); nv]);
        for d in c.differentials() {
            let mut m = Vec::with_capacity(d.rows());
            for r in 0..d.rows() {
                let mut row = Vec::with_capacity(d.cols());
                for e in d.row(r) {
                    match e.evaluate(&point)? {
                        FieldValue::Rational(q) => row.push(q.to_integer()),
                        _ => unreachable!("rational point"),
                    }
                }
                m.push(row);
            }
            for div in smith_normal_form(m) {
                if !div.is_one() {
                    small_prime_factors(&div, &mut out);
                }
            }
        }
    }
    Ok(out)
}

/// Decides whether an integer complex is acyclic off `n` over `Q` and over
/// `F_p` for each listed prime (plus primes suggested by Smith normal
/// forms). `partial` selects the partial label for a positive verdict.
pub fn duality_check(
    c: &FreeComplex,
    n: i64,
    primes: &[u64],
    partial: bool,
    limits: &Limits,
) -> Result<DualityVerdict> {
    if c.ring().coeff() != CoefficientDomain::Integer {
        return Err(Error::DomainMismatch(format!(
            "abelian duality needs an integer complex, got {} coefficients",
            c.ring().coeff()
        )));
    }
    if primes.is_empty() {
        return Err(Error::Invalid("the prime list is empty".into()));
    }
    let mut tested = BTreeSet::new();
    for &p in primes {
        CoefficientDomain::prime(p)?;
        tested.insert(p);
    }
    let added: Vec<u64> = suspicious_primes(c)?
        .into_iter()
        .filter(|p| !tested.contains(p))
        .collect();
    tested.extend(added.iter().copied());

    let mut domains = vec![("QQ".to_string(), CoefficientDomain::Rational)];
    for &p in &tested {
        domains.push((format!("F{p}"), CoefficientDomain::prime(p)?));
    }
    let mut fields = Vec::new();
    let mut verdict = None;
    for (name, dom) in domains {
        let cf = c.reduce_coefficients(dom)?;
        let acyclicity = acyclic_off_top(&cf, n, limits)?;
        let cross_check = match &acyclicity {
            Acyclicity::Acyclic => lemma_equal_check(&cf, n, limits)?,
            Acyclicity::Fails(w) => {
                if verdict.is_none() {
                    verdict = Some(Verdict::No {
                        field: name.clone(),
                        degree: w.degree,
                        reason: format!("{:?}", w.clause),
                    });
                }
                PropertyRecord::skipped("complex is not acyclic off the top degree")
            }
        };
        fields.push(FieldOutcome {
            field: name,
            acyclicity,
            cross_check,
        });
    }
    let verdict = verdict.unwrap_or(if partial {
        Verdict::PartialAbelianDuality(n)
    } else {
        Verdict::AbelianDuality(n)
    });
    Ok(DualityVerdict {
        n,
        verdict,
        primes_tested: tested.into_iter().collect(),
        primes_added: added,
        fields,
        caveat: PRIME_CAVEAT,
    })
}
