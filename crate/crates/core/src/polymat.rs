//! Dense matrices of polynomials: generic rank, minors and determinantal
//! ideals, plus the small amount of matrix algebra the complexes need.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::limits::Limits;
use crate::ring::{CoefficientDomain, Field, LaurentRing, Polynomial, TorusPoint};

/// A `rows x cols` matrix over a [`LaurentRing`], stored row-major.
///
/// Empty shapes (`0 x k`, `k x 0`) are legal and stand for the zero maps
/// at the ends of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: LaurentRing,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(
        ring: LaurentRing,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "{} entries for a {rows} x {cols} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.ring() != ring) {
            return Err(Error::RingMismatch(format!(
                "entry over {} in a matrix over {ring}",
                e.ring()
            )));
        }
        Ok(PolyMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ring: LaurentRing, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring,
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: LaurentRing, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(ring: LaurentRing, cols: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Invalid(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        PolyMatrix::new(ring, n, cols, rows.into_iter().flatten().collect())
    }

    /// Parses a matrix given as rows of polynomial strings.
    pub fn parse(ring: LaurentRing, rows: &[&[&str]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Polynomial::parse(ring, s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(ring, cols, parsed)
    }

    pub fn ring(&self) -> LaurentRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Applies `f` entrywise, landing in `ring`.
    pub fn map(
        &self,
        ring: LaurentRing,
        f: impl FnMut(&Polynomial) -> Polynomial,
    ) -> Result<PolyMatrix> {
        PolyMatrix::new(
            ring,
            self.rows,
            self.cols,
            self.entries.iter().map(f).collect(),
        )
    }

    pub fn try_map(
        &self,
        ring: LaurentRing,
        f: impl FnMut(&Polynomial) -> Result<Polynomial>,
    ) -> Result<PolyMatrix> {
        PolyMatrix::new(
            ring,
            self.rows,
            self.cols,
            self.entries.iter().map(f).collect::<Result<_>>()?,
        )
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        self.map(self.ring, |e| e * c).unwrap()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::Invalid(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        PolyMatrix::new(self.ring, self.rows, self.cols + other.cols, entries)
    }

    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        Ok(self.transpose().hstack(&other.transpose())?.transpose())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "product of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(self.ring, self.rows, other.cols, entries)
    }

    /// `[[A, 0], [0, B]]`.
    pub fn block_diagonal(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_ring(other)?;
        let (rows, cols) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = PolyMatrix::zeros(self.ring, rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entries[r * cols + c] = self.get(r, c).clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.entries[(self.rows + r) * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        Ok(m)
    }

    fn check_ring(&self, other: &PolyMatrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    /// Rank over the fraction field, by fraction-free (Bareiss) elimination.
    /// Integer matrices are ranked over `Q`.
    pub fn rank(&self) -> Result<usize> {
        self.rank_with(&Limits::default())
    }

    pub fn rank_with(&self, limits: &Limits) -> Result<usize> {
        let ring = match self.ring.coeff() {
            CoefficientDomain::Integer => self.ring.with_coeff(CoefficientDomain::Rational),
            _ => self.ring,
        };
        let mut m: Vec<Vec<Polynomial>> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| {
                        if ring == self.ring {
                            Ok(e.clone())
                        } else {
                            e.reduce_coefficients(ring.coeff())
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = Polynomial::one(ring);
        let mut rank = 0;
        for k in 0..rows.min(cols) {
            // cheapest nonzero pivot in the trailing block
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| (m[i][j].total_degree(), m[i][j].num_terms()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            rank += 1;
            let p = m[k][k].clone();
            for i in k + 1..rows {
                let a = m[i][k].clone();
                for j in k + 1..cols {
                    let num = &(&p * &m[i][j]) - &(&a * &m[k][j]);
                    let v = num.div_exact(&prev)?;
                    if v.total_degree() > limits.max_degree {
                        return Err(Error::ResourceLimit(format!(
                            "rank elimination produced an entry of degree {} (max_degree = {})",
                            v.total_degree(),
                            limits.max_degree
                        )));
                    }
                    m[i][j] = v;
                }
                m[i][k] = Polynomial::zero(ring);
            }
            prev = p;
        }
        Ok(rank)
    }

    /// The ideal of `k x k` minors. `I_0 = <1>`; `I_k = <0>` for `k` beyond
    /// the matrix size.
    pub fn determinantal_ideal(&self, k: usize) -> Result<Ideal> {
        self.determinantal_ideal_with(k, &Limits::default())
    }

    pub fn determinantal_ideal_with(&self, k: usize, limits: &Limits) -> Result<Ideal> {
        let ideal = |gens: Vec<Polynomial>| Ok(Ideal::new(self.ring, gens)?.with_limits(*limits));
        if k == 0 {
            return ideal(vec![Polynomial::one(self.ring)]);
        }
        if k > self.rows.min(self.cols) {
            return ideal(Vec::new());
        }
        if self.rows > 64 || self.cols > 64 {
            return Err(Error::ResourceLimit(format!(
                "{} x {} matrix is too large for minor enumeration",
                self.rows, self.cols
            )));
        }
        let count = binomial(self.rows, k).saturating_mul(binomial(self.cols, k));
        if count > limits.max_minors as u128 {
            return Err(Error::ResourceLimit(format!(
                "{count} minors of size {k} exceed max_minors = {}",
                limits.max_minors
            )));
        }
        let mut memo = Minors {
            m: self,
            cache: HashMap::new(),
        };
        let mut gens = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                let d = memo.minor(rs, cs);
                if !d.is_zero() {
                    gens.push(d);
                }
            }
        }
        ideal(gens)
    }

    /// All `k x k` minors (row subset, column subset, value), zero ones
    /// included, in lexicographic subset order.
    pub fn minors(&self, k: usize) -> Vec<(u64, u64, Polynomial)> {
        let mut memo = Minors {
            m: self,
            cache: HashMap::new(),
        };
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                out.push((rs, cs, memo.minor(rs, cs)));
            }
        }
        out
    }

    /// Entrywise evaluation in a concrete field.
    pub fn eval_in<F: Field>(&self, field: &F, coords: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| e.eval_in(field, coords))
                    .collect()
            })
            .collect()
    }

    /// Rank of the matrix evaluated at a torus point.
    pub fn rank_at(&self, point: &TorusPoint) -> Result<usize> {
        point.check_domain(self.ring.coeff())?;
        if point.num_vars() != self.ring.num_vars() {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, ring has {} variables",
                point.num_vars(),
                self.ring.num_vars()
            )));
        }
        match point {
            TorusPoint::Rational(c) => Ok(rank_over(
                &crate::ring::Rationals,
                self.eval_in(&crate::ring::Rationals, c)?,
            )),
            TorusPoint::Prime { field, coords } => {
                Ok(rank_over(field, self.eval_in(field, coords)?))
            }
            TorusPoint::Extension { field, coords } => {
                Ok(rank_over(field, self.eval_in(field, coords)?))
            }
        }
    }
}

/// Rank of a dense matrix over a field, by Gaussian elimination.
pub fn rank_over<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][c]).expect("nonzero pivot");
        for r in rank + 1..rows {
            if field.is_zero(&m[r][c]) {
                continue;
            }
            let f = field.mul(&m[r][c], &inv);
            for j in c..cols {
                let v = field.sub(&m[r][j], &field.mul(&f, &m[rank][j]));
                m[r][j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

struct Minors<'a> {
    m: &'a PolyMatrix,
    cache: HashMap<(u64, u64), Polynomial>,
}

impl Minors<'_> {
    /// Laplace expansion along the first row of the subset.
    fn minor(&mut self, rs: u64, cs: u64) -> Polynomial {
        if rs == 0 {
            return Polynomial::one(self.m.ring);
        }
        if let Some(v) = self.cache.get(&(rs, cs)) {
            return v.clone();
        }
        let r0 = rs.trailing_zeros() as usize;
        let rest = rs & (rs - 1);
        let mut acc = Polynomial::zero(self.m.ring);
        let mut sign = false;
        let mut bits = cs;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = self.m.get(r0, c);
            if !a.is_zero() {
                let sub = self.minor(rest, cs & !(1u64 << c));
                if !sub.is_zero() {
                    let t = a * &sub;
                    acc = if sign { &acc - &t } else { &acc + &t };
                }
            }
            sign = !sign;
        }
        self.cache.insert((rs, cs), acc.clone());
        acc
    }
}

/// All `k`-subsets of `0..n` as bit masks, in increasing numeric order
/// of their sorted index lists.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{} x {} empty]", self.rows, self.cols);
        }
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::ring::{MonomialOrder, PrimeField};

    fn qq(n: usize) -> LaurentRing {
        LaurentRing::new(n, CoefficientDomain::Rational).unwrap()
    }

    fn mat(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::parse(qq(n), rows).unwrap()
    }

    fn gens(i: &Ideal) -> Vec<String> {
        i.groebner_basis(MonomialOrder::DegRevLex)
            .unwrap()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(PolyMatrix::zeros(qq(2), 3, 2).rank().unwrap(), 0);
        assert_eq!(mat(2, &[&["t1 - 1"], &["t2 - 1"]]).rank().unwrap(), 1);
        let m = mat(2, &[&["t1", "t2"], &["t1*t2", "t2^2"]]);
        assert_eq!(m.rank().unwrap(), 1);
        let pt = TorusPoint::Rational(
            vec![2.into(), 3.into()]
                .into_iter()
                .map(num_rational::BigRational::from_integer)
                .collect(),
        );
        assert_eq!(m.rank_at(&pt).unwrap(), 1);
        assert_eq!(PolyMatrix::identity(qq(1), 4).rank().unwrap(), 4);
        assert_eq!(PolyMatrix::zeros(qq(1), 0, 3).rank().unwrap(), 0);
    }

    #[test]
    fn determinantal_ideals() {
        let col = mat(2, &[&["t1 - 1"], &["t2 - 1"]]);
        assert_eq!(
            gens(&col.determinantal_ideal(1).unwrap()),
            ["t1 - 1", "t2 - 1"]
        );
        assert!(col.determinantal_ideal(2).unwrap().is_zero_ideal());
        assert!(col.determinantal_ideal(0).unwrap().is_unit().unwrap());
        assert!(PolyMatrix::zeros(qq(2), 0, 0)
            .determinantal_ideal(0)
            .unwrap()
            .is_unit()
            .unwrap());
    }

    #[test]
    fn block_diagonal_minors() {
        let a = mat(2, &[&["t1 - 1"]]);
        let b = mat(2, &[&["t2 - 1"]]);
        let d = a.block_diagonal(&b).unwrap();
        assert_eq!(d.to_string(), "[t1 - 1, 0]\n[0, t2 - 1]\n");
        assert_eq!(
            gens(&d.determinantal_ideal(2).unwrap()),
            ["t1*t2 - t1 - t2 + 1"]
        );
        let e = PolyMatrix::zeros(qq(2), 0, 0);
        assert_eq!(a.block_diagonal(&e).unwrap(), a);
        assert_eq!(e.block_diagonal(&a).unwrap(), a);
    }

    #[test]
    fn koszul_product_vanishes() {
        let d0 = mat(2, &[&["t1 - 1"], &["t2 - 1"]]);
        let d1 = mat(2, &[&["-t2 + 1", "t1 - 1"]]);
        assert!(d1.mul(&d0).unwrap().is_zero());
        assert_eq!(d1.mul(&d0).unwrap().shape(), (1, 1));
        assert_eq!(d1.transpose().transpose(), d1);
        assert_eq!(d1.mul(&PolyMatrix::identity(qq(2), 2)).unwrap(), d1);
        assert!(d0.mul(&d0).is_err());
    }

    #[test]
    fn stacking() {
        let a = mat(1, &[&["t", "1"]]);
        let h = a.hstack(&a).unwrap();
        assert_eq!(h.shape(), (1, 4));
        let v = a.vstack(&a).unwrap();
        assert_eq!(v.shape(), (2, 2));
        assert_eq!(v.rank().unwrap(), 1);
    }

    #[test]
    fn minor_cap() {
        let limits = Limits {
            max_minors: 10,
            ..Limits::default()
        };
        let m = PolyMatrix::identity(qq(1), 6);
        assert!(matches!(
            m.determinantal_ideal_with(3, &limits),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn integer_rank_goes_through_rationals() {
        let z = LaurentRing::new(2, CoefficientDomain::Integer).unwrap();
        let m = PolyMatrix::parse(z, &[&["2*t1", "4"], &["t1", "2"]]).unwrap();
        assert_eq!(m.rank().unwrap(), 1);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(
            subsets(4, 2),
            vec![0b11, 0b101, 0b1001, 0b110, 0b1010, 0b1100]
        );
        assert_eq!(subsets(3, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(binomial(12, 6), 924);
    }

    fn small_entry() -> impl Strategy<Value = String> {
        prop::sample::select(vec![
            "0",
            "1",
            "t1 - 1",
            "t2 - 1",
            "t1*t2 - 1",
            "2*t1",
            "t2^2 - t1",
            "t1 + t2",
        ])
        .prop_map(String::from)
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(small_entry(), r * c).prop_map(move |e| {
                let entries = e
                    .iter()
                    .map(|s| Polynomial::parse(qq(2), s).unwrap())
                    .collect();
                PolyMatrix::new(qq(2), r, c, entries).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_bounds_evaluated_rank(m in small_matrix(4)) {
            let r = m.rank().unwrap();
            let f = PrimeField::new(1_000_003).unwrap();
            for pt in [[2u64, 3], [5, 7], [11, 13], [123_457, 98_765]] {
                let ev = rank_over(&f, m.eval_in(&f, &pt).unwrap());
                prop_assert!(ev <= r);
            }
            // the rank is the largest nonvanishing minor size
            let largest = (1..=m.rows().min(m.cols()))
                .filter(|&k| m.minors(k).iter().any(|(_, _, d)| !d.is_zero()))
                .max()
                .unwrap_or(0);
            prop_assert_eq!(r, largest);
        }

        #[test]
        fn minors_descend(m in small_matrix(3)) {
            for k in 0..m.rows().min(m.cols()) {
                let big = m.determinantal_ideal(k + 1).unwrap();
                let small = m.determinantal_ideal(k).unwrap();
                prop_assert!(small.contains_ideal(&big).unwrap());
            }
        }

        #[test]
        fn block_diagonal_is_additive(a in small_matrix(3), b in small_matrix(3)) {
            let d = a.block_diagonal(&b).unwrap();
            prop_assert_eq!(d.rank().unwrap(), a.rank().unwrap() + b.rank().unwrap());
            // I_k(A ⊕ B) = Σ I_a(A) I_b(B)
            let k = (a.rows().min(a.cols()) + b.rows().min(b.cols())).min(3);
            let mut sum = Ideal::zero(qq(2));
            for i in 0..=k {
                let p = a.determinantal_ideal(i).unwrap().product(&b.determinantal_ideal(k - i).unwrap()).unwrap();
                sum = sum.sum(&p).unwrap();
            }
            prop_assert!(sum.same_ideal(&d.determinantal_ideal(k).unwrap()).unwrap());
        }
    }
}
