//! Points of `V(I)` on the torus with coordinates in the coefficient field,
//! found by back-substitution through a lex Gröbner basis. Used to place
//! oracle sample points on computed loci.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::Ideal;
use crate::error::Result;
use crate::ring::univariate::rational_roots;
use crate::ring::{Coeff, CoefficientDomain, MonomialOrder, Polynomial};

const FREE_VALUES: [i64; 5] = [2, 3, 5, -1, 7];
// prime fields up to this size are searched exhaustively for roots
const BRUTE_FORCE_LIMIT: u32 = 1 << 16;

/// Up to `max_points` distinct torus points of `V(I)` over the base field.
/// Returns an empty list when none are found (or the lex basis is too
/// expensive). Every returned point is checked against all generators.
pub(crate) fn sample_points<R: Rng>(
    ideal: &Ideal,
    max_points: usize,
    rng: &mut R,
) -> Result<Vec<Vec<Coeff>>> {
    let ring = ideal.ring();
    let dom = ring.coeff();
    if !dom.is_field() || ideal.is_unit()? {
        return Ok(Vec::new());
    }
    let lex = match ideal.groebner_basis(MonomialOrder::Lex) {
        Ok(gb) => gb,
        Err(crate::Error::ResourceLimit(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let n = ring.num_vars();
    let mut out: Vec<Vec<Coeff>> = Vec::new();
    for _ in 0..max_points * 4 {
        if out.len() >= max_points {
            break;
        }
        let mut values: Vec<Option<Coeff>> = vec![None; n];
        if !extend(&lex, n, dom, &mut values, rng) {
            continue;
        }
        let Some(p) = values.into_iter().collect::<Option<Vec<Coeff>>>() else {
            continue;
        };
        if !out.contains(&p)
            && ideal
                .generators()
                .iter()
                .all(|g| substitute_all(g, &p).is_zero())
        {
            out.push(p);
        }
    }
    Ok(out)
}

fn substitute_all(g: &Polynomial, p: &[Coeff]) -> Polynomial {
    p.iter()
        .enumerate()
        .fold(g.clone(), |acc, (k, v)| acc.substitute(k, v))
}

/// Assigns variables from the last to the first. Lex with `t1 > ... > tN`
/// puts the basis elements in `t_k..t_N` into the elimination ideal for
/// those variables.
fn extend<R: Rng>(
    lex: &[Polynomial],
    n: usize,
    dom: CoefficientDomain,
    values: &mut [Option<Coeff>],
    rng: &mut R,
) -> bool {
    for k in (0..n).rev() {
        let mut univariates: Vec<Vec<Coeff>> = Vec::new();
        for g in lex {
            let mask = g.support_mask();
            if mask & ((1u64 << k) - 1) != 0 || (mask >> k) & 1 == 0 {
                continue;
            }
            let mut h = g.clone();
            for (j, v) in values.iter().enumerate().skip(k + 1) {
                h = h.substitute(j, v.as_ref().unwrap());
            }
            if !h.is_zero() {
                univariates.push(dense(&h, k, dom));
            }
        }
        let candidates: Vec<Coeff> = if univariates.is_empty() {
            FREE_VALUES
                .iter()
                .map(|&v| dom.from_i64(v))
                .filter(|c| !dom.is_zero(c))
                .collect()
        } else {
            let Some(roots) = common_roots(&univariates, dom) else {
                return false;
            };
            roots
        };
        if candidates.is_empty() {
            return false;
        }
        values[k] = Some(candidates[rng.gen_range(0..candidates.len())].clone());
    }
    true
}

/// Coefficients (low to high) of `h` viewed as a polynomial in `t_{k+1}`,
/// where no other variable occurs.
fn dense(h: &Polynomial, k: usize, dom: CoefficientDomain) -> Vec<Coeff> {
    let deg = h
        .terms()
        .iter()
        .map(|(m, _)| m.exponents()[k])
        .max()
        .unwrap_or(0) as usize;
    let mut out = vec![dom.zero(); deg + 1];
    for (m, c) in h.terms() {
        out[m.exponents()[k] as usize] = c.clone();
    }
    out
}

/// Nonzero common roots in the base field, or `None` when the search is
/// not possible.
fn common_roots(polys: &[Vec<Coeff>], dom: CoefficientDomain) -> Option<Vec<Coeff>> {
    let eval = |f: &[Coeff], x: &Coeff| {
        f.iter()
            .rev()
            .fold(dom.zero(), |acc, c| dom.add(&dom.mul(&acc, x), c))
    };
    let first = &polys[0];
    let candidates: Vec<Coeff> = match dom {
        CoefficientDomain::Prime(p) => {
            if p.get() > BRUTE_FORCE_LIMIT {
                return None;
            }
            (1..p.get())
                .map(Coeff::Modular)
                .filter(|x| dom.is_zero(&eval(first, x)))
                .collect()
        }
        _ => {
            let qs: Vec<BigRational> = first.iter().map(|c| dom.to_rational(c)).collect();
            rational_roots(&qs)?
                .into_iter()
                .filter(|q| !q.is_zero())
                .map(Coeff::Rational)
                .collect()
        }
    };
    Some(
        candidates
            .into_iter()
            .filter(|x| polys[1..].iter().all(|f| dom.is_zero(&eval(f, x))))
            .collect(),
    )
}
