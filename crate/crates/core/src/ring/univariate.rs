//! Dense univariate polynomials over `F_p` (coefficients low to high) and
//! rational root finding. Only what extension fields and point solving need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coeff::mod_pow;

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut f = f.to_vec();
    trim(&mut f);
    assert!(!f.is_empty(), "division by the zero polynomial");
    let df = f.len() - 1;
    let lead_inv = mod_pow(f[df], p - 2, p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * fi % p) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn powmod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = mod_pow(lc, p - 2, p);
        for c in &mut a {
            *c = *c * inv % p;
        }
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^(p^k) mod f` by repeated Frobenius.
fn frobenius_power(f: &[u64], k: usize, p: u64) -> Vec<u64> {
    let mut h = rem(&[0, 1], f, p);
    for _ in 0..k {
        h = powmod(&h, p as u128, f, p);
    }
    h
}

/// Rabin's irreducibility test for a monic `f` of degree `r >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    if r == 0 {
        return false;
    }
    let x = vec![0, 1];
    if sub(&frobenius_power(f, r, p), &rem(&x, f, p), p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_factors(r) {
        let h = sub(&frobenius_power(f, r / q, p), &x, p);
        if gcd(&h, f, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Rational roots of a polynomial with rational coefficients (low to high)
/// via the rational root theorem. Gives up (returns `None`) when the
/// extreme coefficients are too large to enumerate divisors.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    // strip the factor x^k
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    if low > 0 {
        roots.push(BigRational::zero());
        c.drain(..low);
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    let den_lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let a0 = ints[0].abs().to_u64()?;
    let an = ints.last().unwrap().abs().to_u64()?;
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return None;
    }
    let eval = |x: &BigRational| {
        ints.iter().rev().fold(BigRational::zero(), |acc, k| {
            acc * x + BigRational::from_integer(k.clone())
        })
    };
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rabin_on_small_cases() {
        // x^2 + x + 1 irreducible over F2, x^2 + 1 = (x+1)^2 is not
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F2: no roots, still reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        // x^2 - 2 over F5 (2 is a non-residue mod 5)
        assert!(is_irreducible(&[3, 0, 1], 5));
        assert!(!is_irreducible(&[4, 0, 1], 5));
    }

    #[test]
    fn rational_roots_found() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let r = rational_roots(&[q(-3, 1), q(5, 1), q(2, 1)]).unwrap();
        assert_eq!(r, vec![q(-3, 1), q(1, 2)]);
        // x^2 - 2 has none
        assert!(rational_roots(&[q(-2, 1), q(0, 1), q(1, 1)])
            .unwrap()
            .is_empty());
        // (x - 1/3) with rational coefficients
        assert_eq!(rational_roots(&[q(-1, 3), q(1, 1)]).unwrap(), vec![q(1, 3)]);
    }

    #[test]
    fn gcd_and_rem() {
        // (x+1)(x+2) and (x+1)(x+3) over F7 share x+1
        let a = mul(&[1, 1], &[2, 1], 7);
        let b = mul(&[1, 1], &[3, 1], 7);
        assert_eq!(gcd(&a, &b, 7), vec![1, 1]);
        assert!(rem(&a, &[1, 1], 7).is_empty());
    }
}
