use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{fiber_betti, FiberBetti};
use crate::chaincx::FreeComplex;
use crate::error::Result;
use crate::groebner::solve;
use crate::jumploci::JumpLocusSet;
use crate::ring::{Coeff, CoefficientDomain, ExtensionField, PrimeField, TorusPoint};

pub const DEFAULT_ORACLE_POINTS: usize = 64;

const POOL: [i64; 5] = [2, 3, 5, 7, -1];
const POINTS_PER_LOCUS: usize = 4;

fn to_point(coords: &[Coeff], domain: CoefficientDomain) -> Option<TorusPoint> {
    match domain {
        CoefficientDomain::Prime(p) => {
            let coords: Vec<u64> = coords
                .iter()
                .map(|c| match c {
                    Coeff::Modular(v) => *v as u64,
                    Coeff::Rational(_) => unreachable!("prime-field coefficient"),
                })
                .collect();
            if coords.contains(&0) {
                return None;
            }
            Some(TorusPoint::Prime {
                field: PrimeField::new(p.get() as u64).ok()?,
                coords,
            })
        }
        _ => {
            let coords: Vec<BigRational> = coords.iter().map(|c| domain.to_rational(c)).collect();
            if coords
                .iter()
                .any(|q| *q == BigRational::from_integer(0.into()))
            {
                return None;
            }
            Some(TorusPoint::Rational(coords))
        }
    }
}

fn pool_value<R: Rng>(rng: &mut R, rational: bool) -> BigRational {
    let k = rng.gen_range(0..POOL.len() + usize::from(rational));
    if k == POOL.len() {
        BigRational::new(1.into(), 2.into())
    } else {
        BigRational::from_integer(POOL[k].into())
    }
}

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let num: i64 = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new(num.into(), rng.gen_range(1i64..=5).into())
}

/// Deterministic oracle points for a set of loci: the trivial character,
/// points solved on each proper nonempty locus, then points with
/// coordinates from `{2, 3, 5, 7, -1, 1/2}` and random ones. Over `F_p`
/// half of the generated points lie in `F_{p^r}` for `r = 2, 3, 4`.
pub fn sample_points(l: &JumpLocusSet, count: usize, seed: u64) -> Result<Vec<TorusPoint>> {
    let ring = l.ring();
    let domain = ring.coeff();
    let nv = ring.num_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<TorusPoint> = Vec::new();
    let push = |out: &mut Vec<TorusPoint>, p: TorusPoint| {
        if out.len() < count && !out.contains(&p) {
            out.push(p);
        }
    };
    push(&mut out, TorusPoint::trivial(domain, nv));
    for locus in l.loci() {
        if locus.is_empty() || locus.is_whole_torus() {
            continue;
        }
        for coords in solve::sample_points(&locus.ideal, POINTS_PER_LOCUS, &mut rng)? {
            if let Some(p) = to_point(&coords, domain) {
                push(&mut out, p);
            }
        }
    }
    let attempts = count * 50;
    match domain {
        CoefficientDomain::Prime(p) => {
            let p = p.get() as u64;
            let base = PrimeField::new(p)?;
            let extensions = (2..=ExtensionField::MAX_DEGREE)
                .map(|r| ExtensionField::new(p, r))
                .collect::<Result<Vec<_>>>()?;
            for k in 0..attempts {
                if out.len() >= count {
                    break;
                }
                if k % 2 == 0 {
                    let coords: Vec<u64> = (0..nv)
                        .map(|_| {
                            if rng.gen_bool(0.5) {
                                base.reduce(POOL[rng.gen_range(0..POOL.len())])
                            } else {
                                rng.gen_range(0..p)
                            }
                        })
                        .collect();
                    if !coords.contains(&0) {
                        push(
                            &mut out,
                            TorusPoint::Prime {
                                field: base,
                                coords,
                            },
                        );
                    }
                } else {
                    let field = &extensions[(k / 2) % extensions.len()];
                    let coords: Vec<Vec<u64>> = (0..nv)
                        .map(|_| (0..field.degree()).map(|_| rng.gen_range(0..p)).collect())
                        .collect();
                    if coords.iter().all(|c| c.iter().any(|&x| x != 0)) {
                        push(
                            &mut out,
                            TorusPoint::Extension {
                                field: field.clone(),
                                coords,
                            },
                        );
                    }
                }
            }
        }
        _ => {
            for k in 0..attempts {
                if out.len() >= count {
                    break;
                }
                let coords: Vec<BigRational> = (0..nv)
                    .map(|_| {
                        if k % 2 == 0 {
                            pool_value(&mut rng, true)
                        } else {
                            random_rational(&mut rng)
                        }
                    })
                    .collect();
                push(&mut out, TorusPoint::Rational(coords));
            }
        }
    }
    Ok(out)
}

/// One sampled point: fiber cohomology and locus membership per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleRow {
    pub betti: FiberBetti,
    pub membership: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleMismatch {
    pub point: TorusPoint,
    pub degree: i64,
    pub member: bool,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub lo: i64,
    pub euler: i64,
    pub rows: Vec<OracleRow>,
    pub mismatches: Vec<OracleMismatch>,
    /// Points where the fiber Euler characteristic differs from the ranks'.
    pub euler_violations: usize,
}

impl OracleReport {
    pub fn points_tested(&self) -> usize {
        self.rows.len()
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.euler_violations == 0
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = r.betti.to_json();
                let member: serde_json::Map<String, Value> = r
                    .membership
                    .iter()
                    .enumerate()
                    .map(|(k, m)| ((self.lo + k as i64).to_string(), json!(m)))
                    .collect();
                v["member"] = Value::Object(member);
                v
            })
            .collect();
        let mismatches: Vec<Value> = self
            .mismatches
            .iter()
            .map(|m| json!({ "point": m.point.to_string(), "degree": m.degree, "member": m.member, "betti": m.betti }))
            .collect();
        json!({
            "points_tested": self.points_tested(),
            "mismatches": self.mismatches.len(),
            "mismatch_details": mismatches,
            "euler_violations": self.euler_violations,
            "rows": rows,
        })
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r
                .betti
                .betti
                .iter()
                .zip(&r.membership)
                .map(|(b, m)| format!("{b}{}", if *m { "*" } else { "" }))
                .collect();
            writeln!(f, "{}  betti {}", r.betti.point, cells.join(" "))?;
        }
        writeln!(f, "(* marks membership in the computed locus)")?;
        for m in &self.mismatches {
            writeln!(
                f,
                "MISMATCH at {} degree {}: member {} betti {}",
                m.point, m.degree, m.member, m.betti
            )?;
        }
        writeln!(
            f,
            "points tested {}, mismatches {}, euler violations {}",
            self.points_tested(),
            self.mismatches.len(),
            self.euler_violations
        )
    }
}

/// Compares `χ ∈ V^i` with `H^i(c ⊗ κ(χ)) ≠ 0` at every point and degree.
pub fn run_oracle(
    c: &FreeComplex,
    l: &JumpLocusSet,
    points: &[TorusPoint],
) -> Result<OracleReport> {
    let mut rows = Vec::with_capacity(points.len());
    let mut mismatches = Vec::new();
    let mut euler_violations = 0;
    for point in points {
        let betti = fiber_betti(c, point)?;
        let membership = c
            .degrees()
            .map(|i| l.contains(i, point))
            .collect::<Result<Vec<bool>>>()?;
        for (k, i) in c.degrees().enumerate() {
            let b = betti.get(i);
            if membership[k] != (b != 0) {
                mismatches.push(OracleMismatch {
                    point: point.clone(),
                    degree: i,
                    member: membership[k],
                    betti: b,
                });
            }
        }
        if betti.euler_characteristic() != c.euler_characteristic() {
            euler_violations += 1;
        }
        rows.push(OracleRow { betti, membership });
    }
    Ok(OracleReport {
        lo: c.lo(),
        euler: c.euler_characteristic(),
        rows,
        mismatches,
        euler_violations,
    })
}
