use serde_json::{json, Value};

use crate::chaincx::FreeComplex;
use crate::error::Result;
use crate::ring::TorusPoint;

/// `dim H^i(F ⊗ κ(χ))` for every degree of a complex.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberBetti {
    pub point: TorusPoint,
    pub lo: i64,
    pub betti: Vec<usize>,
}

impl FiberBetti {
    /// Zero outside the complex.
    pub fn get(&self, i: i64) -> usize {
        if i < self.lo || i >= self.lo + self.betti.len() as i64 {
            return 0;
        }
        self.betti[(i - self.lo) as usize]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                if (self.lo + k as i64).rem_euclid(2) == 0 {
                    b as i64
                } else {
                    -(b as i64)
                }
            })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        let betti: serde_json::Map<String, Value> = self
            .betti
            .iter()
            .enumerate()
            .map(|(k, b)| ((self.lo + k as i64).to_string(), json!(b)))
            .collect();
        json!({ "point": self.point.to_string(), "betti": betti })
    }
}

/// Fiber cohomology at `χ` by Gaussian elimination on the evaluated
/// differentials: `b_i = rank F^i - rank ∂^i(χ) - rank ∂^{i-1}(χ)`.
///
/// Integer complexes are evaluated in the field of the point, so a point
/// over `F_p` computes the cohomology of the reduction mod `p`.
pub fn fiber_betti(c: &FreeComplex, point: &TorusPoint) -> Result<FiberBetti> {
    let ranks = c
        .degrees()
        .map(|i| c.differential(i).rank_at(point))
        .collect::<Result<Vec<usize>>>()?;
    // rank of ∂^{lo-1} is 0
    let betti = c
        .degrees()
        .enumerate()
        .map(|(k, i)| c.rank(i) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect();
    Ok(FiberBetti {
        point: point.clone(),
        lo: c.lo(),
        betti,
    })
}
