//! Coefficient fields: the rationals, the Gaussian rationals and prime fields
//! of odd characteristic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rationals,
    GaussianRationals,
    /// Integers modulo an odd prime.
    PrimeField(u64),
}

impl CoeffField {
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidRing("characteristic two is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not a prime")));
        }
        Ok(CoeffField::PrimeField(p))
    }

    /// Rationals, or the Gaussian rationals when `adjoin_i` is set.
    pub fn characteristic_zero(adjoin_i: bool) -> Self {
        if adjoin_i {
            CoeffField::GaussianRationals
        } else {
            CoeffField::Rationals
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffField::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn has_sqrt_minus_one(&self) -> bool {
        match self {
            CoeffField::Rationals => false,
            CoeffField::GaussianRationals => true,
            CoeffField::PrimeField(p) => p % 4 == 1,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            CoeffField::PrimeField(p) => Coeff::Mod {
                v: reduce_i128(n as i128, *p),
                p: *p,
            },
            _ => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoeffField::PrimeField(p) => {
                let r = n % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                Coeff::Mod {
                    v: u64::try_from(r).expect("residue fits in u64"),
                    p: *p,
                }
            }
            _ => Coeff::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// `num / den`, failing when the denominator vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(&n * &inv)
    }

    pub fn sqrt_minus_one(&self) -> Option<Coeff> {
        match self {
            CoeffField::Rationals => None,
            CoeffField::GaussianRationals => Some(Coeff::Gauss(
                BigRational::zero(),
                BigRational::one(),
            )),
            CoeffField::PrimeField(p) => {
                if p % 4 != 1 {
                    return None;
                }
                // g^((p-1)/4) for the least quadratic non-residue g
                let g = (2..*p)
                    .find(|g| pow_mod(*g, (p - 1) / 2, *p) == p - 1)
                    .expect("odd prime has a non-residue");
                Some(Coeff::Mod {
                    v: pow_mod(g, (p - 1) / 4, *p),
                    p: *p,
                })
            }
        }
    }

    /// Whether `c` is an element of this field.
    pub fn contains(&self, c: &Coeff) -> bool {
        match (self, c) {
            (CoeffField::Rationals, Coeff::Rat(_)) => true,
            (CoeffField::GaussianRationals, Coeff::Rat(_) | Coeff::Gauss(..)) => true,
            (CoeffField::PrimeField(p), Coeff::Mod { p: q, .. }) => p == q,
            _ => false,
        }
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "QQ"),
            CoeffField::GaussianRationals => write!(f, "QQ(i)"),
            CoeffField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// A field element. Gaussian rationals with vanishing imaginary part are
/// always stored as `Rat`, so derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Gauss(BigRational, BigRational),
    Mod { v: u64, p: u64 },
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Gauss(..) => false,
            Coeff::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Gauss(..) => false,
            Coeff::Mod { v, .. } => *v == 1,
        }
    }

    fn gauss(re: BigRational, im: BigRational) -> Coeff {
        if im.is_zero() {
            Coeff::Rat(re)
        } else {
            Coeff::Gauss(re, im)
        }
    }

    fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Coeff::Rat(r) => (r.clone(), BigRational::zero()),
            Coeff::Gauss(a, b) => (a.clone(), b.clone()),
            Coeff::Mod { .. } => panic!("prime-field element mixed with a rational one"),
        }
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Rat(r) => Coeff::Rat(r.recip()),
            Coeff::Gauss(a, b) => {
                let norm = a * a + b * b;
                Coeff::gauss(a / &norm, -(b / &norm))
            }
            Coeff::Mod { v, p } => Coeff::Mod {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut acc = match self {
            Coeff::Mod { p, .. } => Coeff::Mod { v: 1, p: *p },
            _ => Coeff::Rat(BigRational::one()),
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Real part and imaginary part, for characteristic zero elements.
    pub fn rational_parts(&self) -> Option<(BigRational, BigRational)> {
        match self {
            Coeff::Mod { .. } => None,
            _ => Some(self.parts()),
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a + b),
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Coeff::Mod {
                    v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                Coeff::gauss(a + c, b + d)
            }
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Rat(a) => Coeff::Rat(-a),
            Coeff::Gauss(a, b) => Coeff::Gauss(-a, -b),
            Coeff::Mod { v, p } => Coeff::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(a * b),
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, .. }) => Coeff::Mod {
                v: mul_mod(*a, *b, *p),
                p: *p,
            },
            (Coeff::Rat(r), Coeff::Gauss(a, b)) | (Coeff::Gauss(a, b), Coeff::Rat(r)) => {
                Coeff::gauss(r * a, r * b)
            }
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                Coeff::gauss(&a * &c - &b * &d, a * d + b * c)
            }
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_minus_one_squares_to_minus_one() {
        for field in [
            CoeffField::GaussianRationals,
            CoeffField::prime(13).unwrap(),
            CoeffField::prime(1_000_000_009).unwrap(),
        ] {
            let i = field.sqrt_minus_one().unwrap();
            assert_eq!(&i * &i, field.from_i64(-1));
        }
        assert!(CoeffField::Rationals.sqrt_minus_one().is_none());
        assert!(CoeffField::prime(7).unwrap().sqrt_minus_one().is_none());
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(CoeffField::prime(2).is_err());
        assert!(CoeffField::prime(15).is_err());
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn gaussian_inverse() {
        let f = CoeffField::GaussianRationals;
        let i = f.sqrt_minus_one().unwrap();
        let z = &f.from_i64(3) + &(&f.from_i64(4) * &i);
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, f.one());
        // real results collapse back to the rational variant
        assert!(matches!(&z * &(-&z.clone()), Coeff::Gauss(..)));
        assert!(matches!(&i * &i, Coeff::Rat(_)));
    }

    #[test]
    fn fractions() {
        let f = CoeffField::prime(7).unwrap();
        let half = f
            .from_fraction(&BigInt::from(1), &BigInt::from(2))
            .unwrap();
        assert_eq!(&half * &f.from_i64(2), f.one());
        assert_eq!(
            f.from_fraction(&BigInt::from(1), &BigInt::from(7)),
            Err(Error::DivisionByZero)
        );
    }
}
