//! Commutative rings of scalars.
//!
//! A [`Ring`] is a capability value: it carries whatever runtime data the
//! arithmetic needs (the modulus of `Z/n`, for instance) and every formal-sum
//! operation takes it explicitly. Elements are plain values with structural
//! equality, so equality of formal sums is exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait Ring: Clone + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;

    /// The inverse of 2, if `1/2` lies in the ring.
    fn half(&self) -> Option<Self::Elem>;

    /// Short name used on the command line (`Z`, `Q`, `Zn:7`).
    fn name(&self) -> String;

    fn render(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Option<Self::Elem>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// Arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn half(&self) -> Option<BigInt> {
        None
    }
    fn name(&self) -> String {
        "Z".into()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<BigInt> {
        s.trim().parse().ok()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// Arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn half(&self) -> Option<BigRational> {
        Some(BigRational::new(BigInt::one(), BigInt::from(2)))
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn render(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn parse(&self, s: &str) -> Option<BigRational> {
        parse_rational(s)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Integers modulo `n >= 2`, values kept in `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: u64,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Option<Self> {
        (modulus >= 2).then_some(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }
    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.modulus as i128) as u64
    }
    fn half(&self) -> Option<u64> {
        (self.modulus % 2 == 1).then(|| self.modulus / 2 + 1)
    }
    fn name(&self) -> String {
        format!("Zn:{}", self.modulus)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u64> {
        let n: i64 = s.trim().parse().ok()?;
        Some(self.from_int(n))
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, `p`, or a finite decimal such as `0.125`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().ok()?;
        let mut num = int.abs() * &scale + frac;
        if negative {
            num = -num;
        }
        return Some(BigRational::new(num, scale));
    }
    let p: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn laws<R: Ring>(ring: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) {
        assert_eq!(ring.add(a, b), ring.add(b, a));
        assert_eq!(ring.mul(a, b), ring.mul(b, a));
        assert_eq!(ring.add(&ring.add(a, b), c), ring.add(a, &ring.add(b, c)));
        assert_eq!(ring.mul(&ring.mul(a, b), c), ring.mul(a, &ring.mul(b, c)));
        assert_eq!(
            ring.mul(a, &ring.add(b, c)),
            ring.add(&ring.mul(a, b), &ring.mul(a, c))
        );
        assert!(ring.is_zero(&ring.add(a, &ring.neg(a))));
        assert_eq!(ring.mul(a, &ring.one()), *a);
    }

    proptest! {
        #[test]
        fn integer_laws(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
            let r = Integers;
            laws(&r, &r.from_int(a), &r.from_int(b), &r.from_int(c));
        }

        #[test]
        fn rational_laws(a in -50i64..50, b in 1i64..40, c in -50i64..50, d in 1i64..40) {
            let r = Rationals;
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            laws(&r, &x, &y, &r.from_int(a + c));
        }

        #[test]
        fn modular_laws(n in 2u64..200, a in -500i64..500, b in -500i64..500, c in -500i64..500) {
            let r = IntegersMod::new(n).unwrap();
            laws(&r, &r.from_int(a), &r.from_int(b), &r.from_int(c));
        }
    }

    #[test]
    fn half_exists_only_when_two_is_invertible() {
        assert!(Integers.half().is_none());
        let h = Rationals.half().unwrap();
        assert_eq!(Rationals.add(&h, &h), Rationals.one());
        assert!(IntegersMod::new(8).unwrap().half().is_none());
        let r = IntegersMod::new(9).unwrap();
        let h = r.half().unwrap();
        assert_eq!(r.add(&h, &h), 1);
    }

    #[test]
    fn rational_parsing() {
        let q = parse_rational("0.12").unwrap();
        assert_eq!(format_rational(&q), "3/25");
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("-2").unwrap()), "-2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
