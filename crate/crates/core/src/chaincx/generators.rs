//! Koszul complexes of tori, character twists and tensor products.

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::polymat::PolyMatrix;
use crate::ring::{Coeff, CoefficientDomain, LaurentRing, Polynomial};

/// The Koszul cochain complex on `(t1 - 1, ..., tN - 1)` in degrees `0..=N`.
///
/// `F^i` has the `i`-subsets of `{1..N}` as basis, in lexicographic order,
/// and `∂(e_S) = Σ_{j ∉ S} (-1)^{#{s ∈ S : s < j}} (t_j - 1) e_{S ∪ j}`.
pub fn koszul_torus(n: usize, coeff: CoefficientDomain) -> Result<FreeComplex> {
    let ring = LaurentRing::new(n, coeff)?;
    if n > 16 {
        return Err(Error::ResourceLimit(format!(
            "Koszul complex in {n} variables"
        )));
    }
    let bases: Vec<Vec<u32>> = (0..=n).map(|i| subsets_lex(n, i)).collect();
    let one = Polynomial::one(ring);
    let mut differentials = Vec::with_capacity(n);
    for i in 0..n {
        let (src, dst) = (&bases[i], &bases[i + 1]);
        let mut m = vec![vec![Polynomial::zero(ring); src.len()]; dst.len()];
        for (c, &s) in src.iter().enumerate() {
            for j in (0..n).filter(|j| s & (1 << j) == 0) {
                let r = dst
                    .binary_search_by(|x| lex_key(*x).cmp(&lex_key(s | 1 << j)))
                    .unwrap();
                let below = (s & ((1 << j) - 1)).count_ones();
                let entry = &Polynomial::var(ring, j) - &one;
                m[r][c] = if below % 2 == 0 { entry } else { -&entry };
            }
        }
        differentials.push(PolyMatrix::from_rows(ring, src.len(), m)?);
    }
    FreeComplex::new(
        ring,
        0,
        bases.iter().map(|b| b.len()).collect(),
        differentials,
    )
}

fn lex_key(mask: u32) -> Vec<u32> {
    (0..32).filter(|j| mask & (1 << j) != 0).collect()
}

/// `k`-subsets of `0..n` as masks, sorted lexicographically by index list.
fn subsets_lex(n: usize, k: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect();
    all.sort_by_key(|m| lex_key(*m));
    all
}

/// Twist by the character `λ`: every entry gets `t_i -> λ_i t_i`.
pub fn twist(c: &FreeComplex, lambda: &[Coeff]) -> Result<FreeComplex> {
    let ring = c.ring();
    if lambda.len() != ring.num_vars() {
        return Err(Error::Invalid(format!(
            "twist by {} values in a ring with {} variables",
            lambda.len(),
            ring.num_vars()
        )));
    }
    if let Some(i) = lambda.iter().position(|l| ring.coeff().is_zero(l)) {
        return Err(Error::ZeroCoordinate(i + 1));
    }
    let differentials = c
        .differentials()
        .iter()
        .map(|d| d.map(ring, |e| e.scale_variables(lambda)))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(ring, c.lo(), c.ranks().to_vec(), differentials)
}

/// How the rings of the two factors are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorMode {
    /// Both complexes live over the same ring.
    SameRing,
    /// Product space: variables of `b` follow those of `a`.
    Concatenate,
}

/// Total complex of `a ⊗ b` with the Koszul sign:
/// `d(x ⊗ y) = dx ⊗ y + (-1)^i x ⊗ dy` for `x` in degree `i`.
///
/// The basis of `(a ⊗ b)^k` runs over `i` ascending (`j = k - i`), then
/// over pairs of basis vectors with the `a` index major.
pub fn tensor_product(a: &FreeComplex, b: &FreeComplex, mode: TensorMode) -> Result<FreeComplex> {
    let (ring, a, b) = match mode {
        TensorMode::SameRing => {
            if a.ring() != b.ring() {
                return Err(Error::RingMismatch(format!("{} vs {}", a.ring(), b.ring())));
            }
            (a.ring(), a.clone(), b.clone())
        }
        TensorMode::Concatenate => {
            if a.ring().coeff() != b.ring().coeff() {
                return Err(Error::RingMismatch(format!("{} vs {}", a.ring(), b.ring())));
            }
            let na = a.ring().num_vars();
            let ring = LaurentRing::new(na + b.ring().num_vars(), a.ring().coeff())?;
            (ring, embed(a, ring, 0)?, embed(b, ring, na)?)
        }
    };
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    // blocks of degree k: (i, offset) for each contributing i
    let blocks = |k: i64| -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for i in a.degrees() {
            let j = k - i;
            let size = a.rank(i) * b.rank(j);
            if size > 0 {
                out.push((i, off));
                off += size;
            }
        }
        out
    };
    let rank = |k: i64| -> usize { a.degrees().map(|i| a.rank(i) * b.rank(k - i)).sum() };
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let mut differentials = Vec::new();
    for k in lo..hi {
        let (rows, cols) = (rank(k + 1), rank(k));
        let mut m = vec![vec![Polynomial::zero(ring); cols]; rows];
        let dst = blocks(k + 1);
        let find = |i: i64| dst.iter().find(|(x, _)| *x == i).map(|(_, o)| *o);
        for (i, col_off) in blocks(k) {
            let j = k - i;
            let (ra, rb) = (a.rank(i), b.rank(j));
            // dx ⊗ y lands in block (i + 1, j)
            if let Some(row_off) = find(i + 1) {
                let da = a.differential(i);
                for (p, q) in pairs(da.rows(), da.cols()) {
                    let e = da.get(p, q);
                    if e.is_zero() {
                        continue;
                    }
                    for y in 0..rb {
                        m[row_off + p * rb + y][col_off + q * rb + y] = e.clone();
                    }
                }
            }
            // (-1)^i x ⊗ dy lands in block (i, j + 1)
            if let Some(row_off) = find(i) {
                let db = b.differential(j);
                let rb1 = b.rank(j + 1);
                for (p, q) in pairs(db.rows(), db.cols()) {
                    let e = db.get(p, q);
                    if e.is_zero() {
                        continue;
                    }
                    let e = if i.rem_euclid(2) == 0 { e.clone() } else { -e };
                    for x in 0..ra {
                        m[row_off + x * rb1 + p][col_off + x * rb + q] = e.clone();
                    }
                }
            }
        }
        differentials.push(PolyMatrix::from_rows(ring, cols, m)?);
    }
    FreeComplex::new(ring, lo, ranks, differentials)
}

fn pairs(rows: usize, cols: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..rows).flat_map(move |p| (0..cols).map(move |q| (p, q)))
}

fn embed(c: &FreeComplex, ring: LaurentRing, offset: usize) -> Result<FreeComplex> {
    let differentials = c
        .differentials()
        .iter()
        .map(|d| d.map(ring, |e| e.embed(ring, offset)))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(ring, c.lo(), c.ranks().to_vec(), differentials)
}
