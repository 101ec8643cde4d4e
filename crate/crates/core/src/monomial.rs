//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use crate::error::AlgebraError;

/// An exponent vector, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The monomial `x_i` in an ambient with `arity` variables.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|a| a.checked_mul(k).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if the quotient is a monomial.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
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

    /// True if the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Canonical internal order: degrevlex with the natural variable order.
/// This fixes the storage order of polynomial terms; computations use the
/// caller-supplied [`MonomialOrder`] instead.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn degrevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            // smaller exponent in the rightmost differing slot wins
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    DegRevLex,
    DegLex,
    Lex,
}

/// A total order on monomials compatible with multiplication, with 1 minimal.
///
/// `priority`, when present, lists variable indices from most to least
/// significant and must be a permutation of the ambient variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            priority: None,
        }
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            priority: None,
        }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        MonomialOrder {
            kind,
            priority: Some(priority),
        }
    }

    /// Checks the priority list against an ambient arity.
    pub fn validate(&self, arity: usize) -> Result<(), AlgebraError> {
        if let Some(p) = &self.priority {
            let mut seen = vec![false; arity];
            if p.len() != arity {
                return Err(AlgebraError::InvalidInput(format!(
                    "order permutation has {} entries for {} variables",
                    p.len(),
                    arity
                )));
            }
            for &i in p {
                if i >= arity || seen[i] {
                    return Err(AlgebraError::InvalidInput(
                        "order permutation is not a permutation of the variables".into(),
                    ));
                }
                seen[i] = true;
            }
        }
        Ok(())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match (&self.priority, self.kind) {
            (None, OrderKind::DegRevLex) => degrevlex_cmp(a.exponents(), b.exponents()),
            _ => self.cmp_slow(a, b),
        }
    }

    fn cmp_slow(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let get = |m: &Monomial, k: usize| -> u32 {
            match &self.priority {
                Some(p) => m.exponent(p[k]),
                None => m.exponent(k),
            }
        };
        let n = a.arity();
        match self.kind {
            OrderKind::Lex => {
                for k in 0..n {
                    match get(a, k).cmp(&get(b, k)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {
                    for k in 0..n {
                        match get(a, k).cmp(&get(b, k)) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
            OrderKind::DegRevLex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {
                    for k in (0..n).rev() {
                        match get(a, k).cmp(&get(b, k)) {
                            Ordering::Equal => {}
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                ord => ord,
            },
        }
    }
}

/// All monomials of the given arity with total degree exactly `d`,
/// ascending under `order`.
pub fn monomials_of_degree(arity: usize, d: u32, order: &MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; arity];
    fill(&mut out, &mut current, 0, d);
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degrevlex_breaks_ties_on_last_variable() {
        let ord = MonomialOrder::default();
        // X^2 vs Y*Z^2: total degree decides
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 2])), Ordering::Less);
        // X^3 > Y^3 > Z^3 in degrevlex
        assert_eq!(ord.cmp(&m(&[3, 0, 0]), &m(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 3, 0]), &m(&[0, 0, 3])), Ordering::Greater);
        // XZ vs Y^2: degree 2 each; Z-exponent 1 vs 0 makes XZ smaller
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_with_priority_permutation() {
        // vars [X, Z], order lex with Z > X
        let ord = MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]);
        assert_eq!(ord.cmp(&m(&[0, 1]), &m(&[2, 0])), Ordering::Greater); // Z > X^2
        assert!(ord.validate(2).is_ok());
        assert!(ord.validate(3).is_err());
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert!(a.try_div(&b).is_none());
        assert_eq!(m(&[1, 1]).try_div(&a), Some(m(&[1, 0])));
        assert!(m(&[0, 0]).divides(&a));
    }

    #[test]
    fn orders_are_total_multiplicative_and_bounded_below() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(8);
        let orders = [
            MonomialOrder::new(OrderKind::DegRevLex),
            MonomialOrder::new(OrderKind::DegLex),
            MonomialOrder::new(OrderKind::Lex),
            MonomialOrder::with_priority(OrderKind::Lex, vec![2, 0, 1]),
            MonomialOrder::with_priority(OrderKind::DegRevLex, vec![1, 2, 0]),
        ];
        let random_monomial = |rng: &mut StdRng| {
            Monomial::new((0..3).map(|_| rng.gen_range(0..5u32)).collect())
        };
        let one = Monomial::one(3);
        for _ in 0..200 {
            let a = random_monomial(&mut rng);
            let b = random_monomial(&mut rng);
            let c = random_monomial(&mut rng);
            for order in &orders {
                // 1 minimal
                assert_ne!(order.cmp(&a, &one), Ordering::Less);
                // totality with antisymmetry
                assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
                assert_eq!(order.cmp(&a, &b) == Ordering::Equal, a == b);
                // compatibility with multiplication
                assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&c), &b.mul(&c)));
            }
        }
    }

    #[test]
    fn degree_enumeration_is_sorted_and_complete() {
        let ord = MonomialOrder::default();
        let deg2 = monomials_of_degree(3, 2, &ord);
        assert_eq!(deg2.len(), 6);
        for w in deg2.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Less);
        }
    }
}
