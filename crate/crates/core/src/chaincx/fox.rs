//! Presentation 2-complexes: `R -> R^g -> R^r` with the abelianized Fox
//! Jacobian as the second differential.

use std::collections::BTreeMap;
use std::fmt;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::polymat::PolyMatrix;
use crate::ring::{CoefficientDomain, LaurentRing, Monomial, Polynomial};

/// A finite presentation `<x1, ..., xg | w1, ..., wr>`.
///
/// Letters are signed 1-based generator indices: `3` is `x3`, `-3` its
/// inverse. Relators are stored freely reduced and nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    num_generators: usize,
    relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn new(num_generators: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        if num_generators == 0 {
            return Err(Error::Invalid(
                "a presentation needs at least one generator".into(),
            ));
        }
        let mut reduced = Vec::new();
        for w in relators {
            if let Some(&x) = w
                .iter()
                .find(|x| **x == 0 || x.unsigned_abs() as usize > num_generators)
            {
                return Err(Error::Invalid(format!(
                    "letter {x} outside 1..={num_generators}"
                )));
            }
            let w = free_reduce(&w);
            if !w.is_empty() {
                reduced.push(w);
            }
        }
        Ok(GroupPresentation {
            num_generators,
            relators: reduced,
        })
    }

    /// Parses a relator written in letters: `a..z` are generators `1..26`,
    /// upper case their inverses; `x^-1` is also accepted.
    pub fn parse_word(word: &str) -> Result<Vec<i32>> {
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let letter = if c.is_ascii_lowercase() {
                (c as u8 - b'a' + 1) as i32
            } else if c.is_ascii_uppercase() {
                -((c as u8 - b'A' + 1) as i32)
            } else {
                return Err(Error::parse(word, format!("unexpected '{c}' in a relator")));
            };
            k += 1;
            if chars[k..].starts_with(&['^', '-', '1']) {
                k += 3;
                out.push(-letter);
            } else {
                out.push(letter);
            }
        }
        Ok(out)
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &Vec<i32>| -> String {
            w.iter()
                .map(|&x| {
                    if x > 0 {
                        format!("x{x}")
                    } else {
                        format!("x{}^-1", -x)
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        };
        let gens: Vec<String> = (1..=self.num_generators).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self.relators.iter().map(word).collect();
        write!(f, "<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

/// The equivariant cochain complex of the presentation 2-complex over
/// `k[t1^±, ..., tg^±]`: `∂^0 = (t_j - 1)` as a column and `∂^1` the
/// abelianized Fox Jacobian, one row per relator, each row multiplied by
/// the monomial that clears its negative exponents.
///
/// Only presentations with abelianization `Z^g` are supported: every
/// relator must have exponent sum zero in every generator.
pub fn fox_complex(p: &GroupPresentation, coeff: CoefficientDomain) -> Result<FreeComplex> {
    let g = p.num_generators;
    let ring = LaurentRing::new(g, coeff)?;
    for w in &p.relators {
        let mut sums = vec![0i64; g];
        for &x in w {
            sums[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        if sums.iter().any(|&s| s != 0) {
            return Err(Error::Unsupported(format!(
                "relator {} has nonzero exponent sums {sums:?}; only free abelianizations Z^g are supported",
                GroupPresentation::new(g, vec![w.clone()])?
            )));
        }
    }
    let one = Polynomial::one(ring);
    let d0 = PolyMatrix::from_rows(
        ring,
        1,
        (0..g)
            .map(|j| vec![&Polynomial::var(ring, j) - &one])
            .collect(),
    )?;
    if p.relators.is_empty() {
        return FreeComplex::new(ring, 0, vec![1, g], vec![d0]);
    }
    let rows = p
        .relators
        .iter()
        .map(|w| fox_row(w, ring))
        .collect::<Vec<_>>();
    let d1 = PolyMatrix::from_rows(ring, g, rows)?;
    FreeComplex::new(ring, 0, vec![1, g, p.relators.len()], vec![d0, d1])
}

/// `φ(∂w/∂x_j)` for all `j`, as Laurent polynomials cleared by a common
/// monomial.
fn fox_row(w: &[i32], ring: LaurentRing) -> Vec<Polynomial> {
    let g = ring.num_vars();
    let dom = ring.coeff();
    // Laurent terms per column: exponent vector -> integer coefficient
    let mut cols: Vec<BTreeMap<Vec<i64>, i64>> = vec![BTreeMap::new(); g];
    let mut prefix = vec![0i64; g];
    for &x in w {
        let j = x.unsigned_abs() as usize - 1;
        if x > 0 {
            *cols[j].entry(prefix.clone()).or_default() += 1;
            prefix[j] += 1;
        } else {
            prefix[j] -= 1;
            *cols[j].entry(prefix.clone()).or_default() -= 1;
        }
    }
    let mut shift = vec![0i64; g];
    for col in &cols {
        for (e, c) in col {
            if *c != 0 {
                for (s, &v) in shift.iter_mut().zip(e) {
                    *s = (*s).min(v);
                }
            }
        }
    }
    cols.iter()
        .map(|col| {
            let terms = col.iter().filter(|(_, c)| **c != 0).map(|(e, c)| {
                let exps = e.iter().zip(&shift).map(|(v, s)| (v - s) as u32).collect();
                (Monomial::new(exps), dom.from_i64(*c))
            });
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// Free group on `k` generators: the wedge of `k` circles.
pub fn wedge(k: usize, coeff: CoefficientDomain) -> Result<FreeComplex> {
    fox_complex(&GroupPresentation::new(k, Vec::new())?, coeff)
}

/// Closed orientable surface of genus `g`: generators `a1, b1, a2, b2, ...`
/// and the single relator `[a1, b1] ... [ag, bg]`.
pub fn surface(genus: usize, coeff: CoefficientDomain) -> Result<FreeComplex> {
    if genus == 0 {
        return Err(Error::Invalid(
            "genus 0 has trivial fundamental group".into(),
        ));
    }
    let mut w = Vec::new();
    for i in 0..genus as i32 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        w.extend([a, b, -a, -b]);
    }
    fox_complex(&GroupPresentation::new(2 * genus, vec![w])?, coeff)
}
