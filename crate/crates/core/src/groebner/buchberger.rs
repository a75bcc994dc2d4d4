//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy (smallest lcm first).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ring::{Monomial, MonomialOrder, Polynomial};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State<'a> {
    order: MonomialOrder,
    limits: &'a Limits,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero basis element")
}

/// Full reduction of `p` modulo the given (monic) polynomials.
pub(crate) fn normal_form<'p>(
    p: &Polynomial,
    basis: impl Iterator<Item = &'p Polynomial> + Clone,
) -> Polynomial {
    let mut rest = p.clone();
    let mut done = Vec::new();
    while let Some((m, c)) = rest
        .leading_monomial()
        .cloned()
        .zip(rest.leading_coeff().cloned())
    {
        match basis.clone().find(|g| lm(g).divides(&m)) {
            Some(g) => {
                let dom = p.ring().coeff();
                let k = dom
                    .div_exact(&c, g.leading_coeff().unwrap())
                    .expect("field coefficients");
                rest = rest.sub_scaled(&k, &m.div(lm(g)).unwrap(), g);
            }
            None => {
                done.push(rest.pop_leading().unwrap());
            }
        }
    }
    crate::ring::Polynomial::from_terms_ordered(p.ring(), p.order(), done)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    // both monic
    let a = f.mul_monomial(&lcm.div(lm(f)).unwrap());
    let b = g.mul_monomial(&lcm.div(lm(g)).unwrap());
    &a - &b
}

impl<'a> State<'a> {
    fn active_polys(&self) -> impl Iterator<Item = &Polynomial> + Clone {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
    }

    fn check_limits(&self, h: &Polynomial) -> Result<()> {
        if h.total_degree() > self.limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis element of degree {} exceeds max_degree = {}",
                h.total_degree(),
                self.limits.max_degree
            )));
        }
        if self.polys.len() >= self.limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "Gröbner basis grew past max_basis = {}",
                self.limits.max_basis
            )));
        }
        Ok(())
    }

    /// Gebauer–Möller installation of a new monic element `h`.
    fn update(&mut self, h: Polynomial) -> Result<()> {
        self.check_limits(&h)?;
        let hi = self.polys.len();
        let lh = lm(&h).clone();
        let candidates: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .enumerate()
            .filter(|(_, a)| **a)
            .map(|(g, _)| (g, lh.lcm(lm(&self.polys[g]))))
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g1, l1)) in candidates.iter().enumerate() {
            let coprime = lh.is_coprime(lm(&self.polys[*g1]));
            let dominated = candidates
                .iter()
                .enumerate()
                .skip(k + 1)
                .any(|(_, (_, l2))| l2.divides(l1))
                || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        // product criterion
        kept.retain(|(g, _)| !lh.is_coprime(lm(&self.polys[*g])));

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let l1 = lh.lcm(lm(&polys[p.i]));
            let l2 = lh.lcm(lm(&polys[p.j]));
            !(lh.divides(&p.lcm) && l1 != p.lcm && l2 != p.lcm)
        });
        self.pairs
            .extend(kept.into_iter().map(|(g, lcm)| Pair { i: g, j: hi, lcm }));

        for g in 0..self.polys.len() {
            if self.active[g] && lh.divides(lm(&self.polys[g])) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
        Ok(())
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| match order.cmp(&a.lcm, &b.lcm) {
                Ordering::Equal => (a.j, a.i).cmp(&(b.j, b.i)),
                o => o,
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (field
/// coefficients, all in one ring). Sorted by descending leading monomial.
pub(crate) fn reduced_basis(
    gens: &[Polynomial],
    order: MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    if !ring.coeff().is_field() {
        return Err(Error::IntegerCoefficients);
    }
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.with_order(order).monic())
        .collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring).with_order(order)]);
    }
    input.sort_by(|a, b| order.cmp(lm(a), lm(b)));

    let mut st = State {
        order,
        limits,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let h = normal_form(&g, st.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring).with_order(order)]);
        }
        st.update(h.monic())?;
    }

    let mut processed = 0usize;
    while let Some(pair) = st.select() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "more than max_pairs = {} S-pairs",
                limits.max_pairs
            )));
        }
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let h = normal_form(&s, st.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring).with_order(order)]);
        }
        st.update(h.monic())?;
    }

    // the active set is minimal; reduce each element against the others
    let minimal: Vec<Polynomial> = st.active_polys().cloned().collect();
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p);
        let (m, c) = (lm(g).clone(), g.leading_coeff().unwrap().clone());
        let mut tail = g.clone();
        tail.pop_leading();
        let tail = normal_form(&tail, others);
        let lead = Polynomial::from_terms_ordered(ring, order, [(m, c)]);
        reduced.push(&lead + &tail);
    }
    reduced.sort_by(|a, b| order.cmp(lm(b), lm(a)));
    Ok(reduced)
}
