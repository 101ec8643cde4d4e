//! Sparse multivariate polynomials with exact coefficients.

use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::{Coeff, FieldSpec};
use crate::monomial::{Monomial, MonomialOrder};

/// The ambient polynomial ring data shared by all values of a computation:
/// named variables and the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    pub vars: Vec<String>,
    pub field: FieldSpec,
}

impl Ambient {
    pub fn new(vars: Vec<String>, field: FieldSpec) -> Arc<Self> {
        Arc::new(Ambient { vars, field })
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Checks that two values live in the same ambient ring.
pub fn same_ambient(a: &Arc<Ambient>, b: &Arc<Ambient>) -> Result<(), AlgebraError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(AlgebraError::AmbientMismatch(format!(
            "[{}] over {:?} vs [{}] over {:?}",
            a.vars.join(","),
            a.field,
            b.vars.join(","),
            b.field
        )))
    }
}

/// A sparse polynomial. Terms are stored with nonzero coefficients only,
/// sorted descending under the canonical internal monomial order, so equal
/// polynomials compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ambient: Arc<Ambient>,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(ambient: &Arc<Ambient>) -> Self {
        Polynomial {
            ambient: ambient.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ambient: &Arc<Ambient>) -> Self {
        Self::constant(ambient, ambient.field.one())
    }

    pub fn constant(ambient: &Arc<Ambient>, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(ambient);
        }
        Polynomial {
            ambient: ambient.clone(),
            terms: vec![(Monomial::one(ambient.arity()), c)],
        }
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(ambient: &Arc<Ambient>, i: usize) -> Self {
        Polynomial {
            ambient: ambient.clone(),
            terms: vec![(Monomial::var(ambient.arity(), i), ambient.field.one())],
        }
    }

    pub fn monomial(ambient: &Arc<Ambient>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.arity(), ambient.arity(), "monomial arity mismatch");
        if c.is_zero() {
            return Self::zero(ambient);
        }
        Polynomial {
            ambient: ambient.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms(
        ambient: &Arc<Ambient>,
        pairs: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let field = &ambient.field;
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in pairs {
            assert_eq!(m.arity(), ambient.arity(), "monomial arity mismatch");
            match map.get_mut(&m) {
                Some(acc) => *acc = field.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Polynomial {
            ambient: ambient.clone(),
            terms,
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ambient.field
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// The coefficient of `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ambient.field.zero())
    }

    /// Leading term under a caller-chosen order.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .map(|(m, c)| (m, c))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        same_ambient(&self.ambient, &other.ambient)?;
        let field = &self.ambient.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match mb.cmp(ma) {
                std::cmp::Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(ca, cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Ok(Polynomial {
            ambient: self.ambient.clone(),
            terms: out,
        })
    }

    pub fn neg(&self) -> Polynomial {
        let field = &self.ambient.field;
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.add(&other.neg())
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        let field = &self.ambient.field;
        Polynomial {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), field.mul(tc, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(&Monomial::one(self.ambient.arity()), c)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        same_ambient(&self.ambient, &other.ambient)?;
        let field = &self.ambient.field;
        let mut map: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = field.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Ok(Polynomial {
            ambient: self.ambient.clone(),
            terms,
        })
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ambient);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same ambient");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same ambient");
            }
        }
        acc
    }

    /// Divides every coefficient by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Result<Polynomial, AlgebraError> {
        match self.leading(order) {
            None => Ok(self.clone()),
            Some((_, lc)) => {
                let inv = self.ambient.field.inv(lc)?;
                Ok(self.scale(&inv))
            }
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form in the polynomial grammar: terms descending under
    /// the internal order, `*`-separated variable powers, integer (or
    /// `num/den`) coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = match c {
                Coeff::Rat(r) if r.is_negative() => ("-", Coeff::Rat(-r)),
                other => ("+", other.clone()),
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut pieces: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                pieces.push(mag.to_string());
            }
            for i in m.support() {
                let e = m.exponent(i);
                if e == 1 {
                    pieces.push(self.ambient.vars[i].clone());
                } else {
                    pieces.push(format!("{}^{}", self.ambient.vars[i], e));
                }
            }
            write!(f, "{}", pieces.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ambient_xyz() -> Arc<Ambient> {
        Ambient::new(
            vec!["X".into(), "Y".into(), "Z".into()],
            FieldSpec::prime(7).unwrap(),
        )
    }

    #[test]
    fn arithmetic_basics() {
        let a = ambient_xyz();
        let x = Polynomial::var(&a, 0);
        let y = Polynomial::var(&a, 1);
        let sum = x.add(&y).unwrap();
        assert_eq!(sum.terms().len(), 2);
        assert!(sum.sub(&sum).unwrap().is_zero());
        let prod = sum.mul(&sum).unwrap();
        // (X+Y)^2 = X^2 + 2XY + Y^2
        assert_eq!(prod.terms().len(), 3);
        assert_eq!(prod, sum.pow(2));
    }

    #[test]
    fn display_canonical_form() {
        let a = ambient_xyz();
        let x = Polynomial::var(&a, 0);
        let z = Polynomial::var(&a, 2);
        let f = x.pow(2).sub(&z.pow(2).mul(&Polynomial::var(&a, 1)).unwrap()).unwrap();
        // over F_7 the negative coefficient prints as its canonical representative
        assert_eq!(f.to_string(), "6*Y*Z^2 + X^2");
    }

    #[test]
    fn leading_term_depends_on_order() {
        let a = ambient_xyz();
        let x2 = Polynomial::var(&a, 0).pow(2);
        let yz2 = Polynomial::var(&a, 1)
            .mul(&Polynomial::var(&a, 2).pow(2))
            .unwrap();
        let f = x2.sub(&yz2).unwrap();
        let degrevlex = MonomialOrder::default();
        assert_eq!(
            f.leading(&degrevlex).unwrap().0,
            &Monomial::new(vec![0, 1, 2])
        );
        let lex = MonomialOrder::new(crate::monomial::OrderKind::Lex);
        assert_eq!(f.leading(&lex).unwrap().0, &Monomial::new(vec![2, 0, 0]));
    }
}
