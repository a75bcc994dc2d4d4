use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial `t1^a1 * ... * tN^aN`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Support as a bit mask (variables beyond 63 are not representable).
    pub(crate) fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |m, i| m | (1 << i))
    }

    /// Places the exponents at `offset` inside a vector of length `num_vars`.
    pub(crate) fn embed(&self, num_vars: usize, offset: usize) -> Monomial {
        let mut e = vec![0; num_vars];
        e[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Monomial(e)
    }

    /// Drops the variables in `range`, which must have zero exponent.
    pub(crate) fn drop_vars(&self, range: std::ops::Range<usize>) -> Monomial {
        debug_assert!(self.0[range.clone()].iter().all(|&e| e == 0));
        let mut e = self.0[..range.start].to_vec();
        e.extend_from_slice(&self.0[range.end..]);
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "t{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial order. All three are multiplicative well-orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    DegRevLex,
    /// Lexicographic with `t1 > t2 > ... > tN`.
    Lex,
    /// Block order: degrevlex on the first `k` variables, ties broken by
    /// degrevlex on the rest. Any monomial involving the first block is
    /// larger than every monomial free of it.
    Elimination(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.0.len());
                degrevlex(&a.0[..k], &b.0[..k]).then_with(|| degrevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // t1^2 > t1*t2 > t2^2 > t1 > t2 > 1
        let chain = [
            m(&[2, 0]),
            m(&[1, 1]),
            m(&[0, 2]),
            m(&[1, 0]),
            m(&[0, 1]),
            m(&[0, 0]),
        ];
        for w in chain.windows(2) {
            assert_eq!(
                o.cmp(&w[0], &w[1]),
                Ordering::Greater,
                "{} vs {}",
                w[0],
                w[1]
            );
        }
        // the classic distinction from deglex: t1*t3 < t2^2 under degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn elimination_puts_first_block_on_top() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(Monomial::new)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::DegRevLex),
            Just(MonomialOrder::Lex),
            (0usize..4).prop_map(MonomialOrder::Elimination),
        ]
    }

    proptest! {
        #[test]
        fn order_is_total_multiplicative_and_one_is_minimal(o in order(), a in mono(), b in mono(), c in mono()) {
            // antisymmetry
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            // transitivity
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
            // multiplicative
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), o.cmp(&a, &b));
            // 1 is minimal
            prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }
    }
}
