use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient field interface shared by the rational and prime-field modes.
///
/// Elements carry whatever context they need (a prime field element knows its
/// modulus), so `zero`/`one` are produced from an existing element.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Size measure used to prefer small pivots.
    fn weight(&self) -> u64;
}

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn new(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(v: i64) -> Scalar {
        Scalar(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Scalar {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar(BigRational::one())
    }

    pub fn sign(s: i32) -> Scalar {
        if s >= 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Image in F_p; fails when p divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<Fp> {
        let pb = BigInt::from(p);
        let n = self.0.numer().mod_floor(&pb).to_u64()?;
        let d = self.0.denom().mod_floor(&pb).to_u64()?;
        if d == 0 {
            return None;
        }
        let d = Fp::new(d, p);
        Some(Fp::new(n, p).mul(&d.inv()?))
    }

    pub fn parse(s: &str) -> Option<Scalar> {
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().ok()?;
                let b: BigInt = b.trim().parse().ok()?;
                if b.is_zero() {
                    return None;
                }
                Some(Scalar(BigRational::new(a, b)))
            }
            None => Some(Scalar(BigRational::from_integer(s.parse().ok()?))),
        }
    }
}

impl fmt::Display for Scalar {
    /// Integers print bare; everything else as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar(self.0 + o.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        Scalar(self.0 - o.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        Scalar(self.0 * o.0)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar(&self.0 * &o.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Field for Scalar {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
        Scalar::one()
    }
    fn add(&self, o: &Self) -> Self {
        Scalar(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Scalar(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }
    fn weight(&self) -> u64 {
        self.0.numer().abs().bits() + self.0.denom().bits()
    }
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Fp {
        assert!(p >= 2, "modulus must be at least 2");
        Fp { v: v % p, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut e: u64) -> Fp {
        let mut base = self.v as u128;
        let m = self.p as u128;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp { v: acc as u64, p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 + (self.p - o.v) as u128) % self.p as u128) as u64, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        // assumes p prime; callers validate the modulus
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
    fn weight(&self) -> u64 {
        0
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let a = Scalar::new(6, -4);
        assert_eq!(a, Scalar::new(-3, 2));
        assert_eq!(a.to_string(), "-3/2");
        assert!(a.denom() > &BigInt::zero());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "3/5", "-12/7"] {
            assert_eq!(Scalar::parse(s).unwrap().to_string(), s);
        }
        assert!(Scalar::parse("1/0").is_none());
    }

    #[test]
    fn prime_field_inverse() {
        let x = Fp::new(3, 7);
        assert_eq!(x.mul(&x.inv().unwrap()), x.one_like());
        assert_eq!(Scalar::new(1, 2).mod_p(7), Some(Fp::new(4, 7)));
        assert_eq!(Scalar::new(1, 7).mod_p(7), None);
    }
}
