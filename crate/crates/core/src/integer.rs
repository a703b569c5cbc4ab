//! Exact integers that stay in a machine word until an operation overflows.
//!
//! Every arithmetic operation is checked; a result that does not fit in an
//! `i64` is carried as a `BigInt` and demoted again as soon as it fits.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    /// Invariant: never holds a value representable as `i64`.
    Large(BigInt),
}

impl Integer {
    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Large(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Large(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Large(_) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Integer::Small(v) => *v < 0,
            Integer::Large(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Integer {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, mut exp: u32) -> Integer {
        let mut base = self.clone();
        let mut acc = Integer::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(-1)^e`.
    pub fn sign_power(e: usize) -> Integer {
        if e % 2 == 0 {
            Integer::Small(1)
        } else {
            Integer::Small(-1)
        }
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::Small(0)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Integer {
            fn from(v: $t) -> Self {
                match i64::try_from(v) {
                    Ok(s) => Integer::Small(s),
                    Err(_) => Integer::Large(BigInt::from(v)),
                }
            }
        }
    )*};
}
from_prim!(i8, i16, i32, i64, i128, u8, u16, u32, u64, u128, usize, isize);

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl PartialEq<i64> for Integer {
    fn eq(&self, other: &i64) -> bool {
        matches!(self, Integer::Small(v) if v == other)
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn add(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn sub(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Integer> for &'a Integer {
    type Output = Integer;
    fn mul(self, rhs: &Integer) -> Integer {
        if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Integer::Small(v);
            }
        }
        Integer::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Large(b) => Integer::from_big(-b.clone()),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl $tr<Integer> for Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Integer> for Integer {
            type Output = Integer;
            fn $m(self, rhs: &Integer) -> Integer { (&self).$m(rhs) }
        }
        impl $atr<&Integer> for Integer {
            fn $am(&mut self, rhs: &Integer) { *self = (&*self).$m(rhs); }
        }
        impl $atr<Integer> for Integer {
            fn $am(&mut self, rhs: Integer) { *self = (&*self).$m(&rhs); }
        }
    )*};
}
owned_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl Zero for Integer {
    fn zero() -> Self {
        Integer::Small(0)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::Small(1)
    }
}

impl Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Self {
        iter.fold(Integer::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Integer> for Integer {
    fn sum<I: Iterator<Item = &'a Integer>>(iter: I) -> Self {
        iter.fold(Integer::zero(), |acc, x| acc + x)
    }
}

impl Product for Integer {
    fn product<I: Iterator<Item = Integer>>(iter: I) -> Self {
        iter.fold(Integer::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Large(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Integer {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigInt::from_str(s.trim())
            .map(Integer::from_big)
            .map_err(|e| crate::Error::Parse(format!("bad integer {s:?}: {e}")))
    }
}

// Machine-sized values serialize as JSON numbers, larger ones as decimal strings.
impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Integer::Small(v) => s.serialize_i64(*v),
            Integer::Large(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Integer::Small(v)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
