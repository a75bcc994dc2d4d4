use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Nonzero elementary divisors `d1 | d2 | ...` of an integer matrix, all
/// positive.
pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        // remainders are smaller than the pivot; repeat until row and
        // column are cleared
        if clean {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    // diag(a, b) ~ diag(gcd, lcm) restores the divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(smith_normal_form(m(&[&[1, 0], &[0, 1]])), ints(&[1, 1]));
        assert_eq!(smith_normal_form(m(&[&[2, 0], &[0, 6]])), ints(&[2, 6]));
        assert_eq!(smith_normal_form(m(&[&[2, 4], &[6, 8]])), ints(&[2, 4]));
        assert_eq!(smith_normal_form(m(&[&[4, 0], &[0, 6]])), ints(&[2, 12]));
        assert_eq!(smith_normal_form(m(&[&[0, 0, 0]])), ints(&[]));
        assert_eq!(smith_normal_form(m(&[&[0, -3], &[0, 0]])), ints(&[3]));
        assert_eq!(smith_normal_form(Vec::new()), ints(&[]));
    }

    #[test]
    fn determinant_is_preserved() {
        // det = 2*7 - 3*4 = 2
        let d = smith_normal_form(m(&[&[2, 3, 0], &[4, 7, 0], &[0, 0, 5]]));
        assert_eq!(d, ints(&[1, 1, 10]));
    }
}
