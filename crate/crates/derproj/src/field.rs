//! Exact coefficient fields: the rationals and odd prime fields GF(p).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coefficient field: `Rationals` or `Prime(p)` with `p` an odd prime below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// A field element. Arithmetic is routed through [`Field`], which knows the
/// modulus; a `Scalar` on its own is just data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn prime(p: u32) -> Result<Field> {
        if p == 2 || !is_prime(p) || p >= (1 << 31) {
            return Err(Error::Precondition(format!(
                "prime field modulus must be an odd prime below 2^31, got {p}"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p as u64,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p as i64;
                Scalar::Fp(n.rem_euclid(p) as u64)
            }
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let p_big = BigInt::from(*p);
                let n = num_mod(num, &p_big, *p);
                let d = num_mod(den, &p_big, *p);
                let s = Scalar::Fp(n);
                let t = Scalar::Fp(d);
                self.div(&s, &t)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + y) % (*p as u64))
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Fp(x)) => {
                let p = *p as u64;
                Scalar::Fp(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            // x, y < 2^31 so the product fits in u64.
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(x * y % (*p as u64)),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::Precondition("division by zero".into()));
        }
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (Field::Prime(p), Scalar::Fp(x)) => Ok(Scalar::Fp(fp_inv(*x, *p as u64))),
            _ => panic!("scalar kind does not match field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(x) => format!("{x}"),
        }
    }

    /// True when the scalar is a negative rational; prime-field residues are
    /// printed as 0..p-1 and never count as negative.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Fp(_) => false,
        }
    }

    /// `-a` rendered positive, for `a - b` style printing.
    pub fn abs(&self, a: &Scalar) -> Scalar {
        if self.is_negative(a) {
            self.neg(a)
        } else {
            a.clone()
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn num_mod(n: &BigInt, p_big: &BigInt, _p: u32) -> u64 {
    use num_traits::ToPrimitive;
    let r = ((n % p_big) + p_big) % p_big;
    r.to_u64().expect("residue fits in u64")
}

/// Modular inverse by extended Euclid; `p` is prime and `a` nonzero mod `p`.
fn fp_inv(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    (old_s.rem_euclid(p as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_bad_moduli() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(32003).is_ok());
    }

    #[test]
    fn fp_inverse_roundtrip() {
        let f = Field::prime(32003).unwrap();
        for a in [1i64, 2, 5, 31999, 17] {
            let s = f.from_i64(a);
            let inv = f.inv(&s).unwrap();
            assert_eq!(f.mul(&s, &inv), f.one());
        }
    }

    #[test]
    fn rational_div_exact() {
        let f = Field::rationals();
        let a = f.from_i64(7);
        let b = f.from_i64(3);
        let q = f.div(&a, &b).unwrap();
        assert_eq!(f.mul(&q, &b), a);
    }

    #[test]
    fn gf5_reduction() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(6), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert!(f.is_zero(&f.from_i64(5)));
    }
}
