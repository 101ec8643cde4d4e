//! Exact coefficient fields: prime fields `F_p` and the rationals.
//!
//! Every coefficient in the system lives in one of these two fields and all
//! arithmetic is exact; there is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::AlgebraError;

/// The coefficient field of an ambient polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The prime field `F_p`. Elements are canonical representatives in `[0, p)`.
    Prime(u64),
    /// The field of rational numbers with arbitrary-precision normalized fractions.
    Rationals,
}

impl FieldSpec {
    /// Builds `F_p`, rejecting composite or unit moduli.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Prime(_) => Coeff::Fp(0),
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Prime(_) => Coeff::Fp(1),
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    /// Canonical image of a signed integer.
    pub fn from_int(&self, n: i64) -> Coeff {
        match self {
            FieldSpec::Prime(p) => Coeff::Fp(reduce_i64(n, *p)),
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Canonical image of a big integer.
    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            FieldSpec::Prime(p) => {
                let p_big = BigInt::from(*p);
                let mut r = n % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                // remainder fits in u64 because p does
                let digits = r.to_u64_digits().1;
                Coeff::Fp(digits.first().copied().unwrap_or(0))
            }
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// `num/den` as a field element. Over `F_p` this requires `p ∤ den`; over the
    /// rationals it is the normalized fraction. A `den` of zero is rejected.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::InvalidInput("zero denominator".into()));
        }
        match self {
            FieldSpec::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
            FieldSpec::Rationals => Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone()))),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff, AlgebraError> {
        match (self, a) {
            (FieldSpec::Prime(p), Coeff::Fp(x)) => {
                if *x == 0 {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(Coeff::Fp(mod_pow(*x, p - 2, *p)))
                }
            }
            (FieldSpec::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    Err(AlgebraError::DivisionByZero)
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            _ => panic!("coefficient does not belong to this field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// A field element; the variant must match the ambient `FieldSpec`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp(u64),
    Rat(BigRational),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Fp(x) => *x == 1,
            Coeff::Rat(x) => x.is_one(),
        }
    }

    /// True for rationals strictly below zero. `F_p` representatives are
    /// canonical and never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Fp(_) => false,
            Coeff::Rat(x) => x.is_negative(),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fp(x) => write!(f, "{x}"),
            Coeff::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

fn reduce_i64(n: i64, p: u64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller–Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All solutions of `x^m = 1` in `F_p`, ascending. Brute-force search; meant
/// for the small moduli this tool works with.
pub fn roots_of_unity(p: u64, m: u64) -> Vec<u64> {
    (1..p).filter(|&x| mod_pow(x, m, p) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_003));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91)); // 7 * 13
        assert!(FieldSpec::prime(6).is_err());
    }

    #[test]
    fn fp_arithmetic_round_trip() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_int(-3); // 4 mod 7
        assert_eq!(a, Coeff::Fp(4));
        let inv = f.inv(&a).unwrap();
        assert!(f.mul(&a, &inv).is_one());
        assert!(f.add(&a, &f.neg(&a)).is_zero());
    }

    #[test]
    fn rational_arithmetic_is_normalized() {
        let f = FieldSpec::Rationals;
        let half = f
            .from_ratio(&BigInt::from(2), &BigInt::from(4))
            .unwrap();
        assert_eq!(half.to_string(), "1/2");
        let one = f.mul(&half, &f.from_int(2));
        assert!(one.is_one());
    }

    #[test]
    fn cube_roots_of_unity_mod_seven() {
        assert_eq!(roots_of_unity(7, 3), vec![1, 2, 4]);
        // x^3 = -1 has solutions 3, 5, 6
        let minus_one: Vec<u64> = (1..7).filter(|&x| mod_pow(x, 3, 7) == 6).collect();
        assert_eq!(minus_one, vec![3, 5, 6]);
    }
}
