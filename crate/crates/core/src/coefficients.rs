//! Exact scalars: arbitrary-precision rationals and elements of a cyclotomic
//! field `Q(zeta_N)` for `N` in {1, 2} or an odd prime.
//!
//! A [`CycNum`] of prime order `p` is stored in the power basis
//! `1, zeta, ..., zeta^(p-2)`; the relation `zeta^(p-1) = -(1 + ... + zeta^(p-2))`
//! keeps the representation canonical, so equality is coordinate-wise.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arithmetics::numtheory::is_prime;
use crate::error::{Error, Result};

/// Reduced rational number. Serialises as `"num/den"` or `"num"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            Rat(num_traits::pow(self.0.recip(), exp.unsigned_abs() as usize))
        } else {
            Rat(num_traits::pow(self.0.clone(), exp as usize))
        }
    }

    /// Integer value when the denominator is one and the value fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::integer(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rat::from(n))
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

/// Euler phi restricted to the supported orders.
pub fn phi(order: u32) -> usize {
    if order <= 2 {
        1
    } else {
        order as usize - 1
    }
}

pub fn check_order(order: u32) -> Result<()> {
    if order == 1 || order == 2 || (order % 2 == 1 && is_prime(order as u64)) {
        Ok(())
    } else {
        Err(Error::UnsupportedCyclotomicOrder(order))
    }
}

/// Order of the smallest supported field containing both arguments.
/// Orders 1 and 2 both give `Q`, so they embed into any order.
pub fn common_order(a: u32, b: u32) -> Option<u32> {
    match (a <= 2, b <= 2) {
        _ if a == b => Some(a),
        (true, true) => Some(a.max(b)),
        (true, false) => Some(b),
        (false, true) => Some(a),
        (false, false) => None,
    }
}

/// Element of `Q(zeta_N)` in canonical power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coords: Vec<Rat>,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        CycNum {
            order,
            coords: vec![Rat::zero(); phi(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rat(order, Rat::one())
    }

    pub fn from_rat(order: u32, value: Rat) -> Self {
        let mut coords = vec![Rat::zero(); phi(order)];
        coords[0] = value;
        CycNum { order, coords }
    }

    /// Builds an element from explicit coordinates; fails on a length mismatch.
    pub fn from_coords(order: u32, coords: Vec<Rat>) -> Result<Self> {
        check_order(order)?;
        if coords.len() != phi(order) {
            return Err(Error::Parse(format!(
                "order {order} needs {} coordinates, got {}",
                phi(order),
                coords.len()
            )));
        }
        Ok(CycNum { order, coords })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rat::is_zero)
    }

    /// The rational value, when every non-constant coordinate vanishes.
    pub fn is_rational(&self) -> Option<Rat> {
        if self.coords[1..].iter().all(Rat::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in the field of the given order.
    pub fn lift(&self, order: u32) -> Self {
        if order == self.order {
            return self.clone();
        }
        match self.is_rational() {
            Some(r) if common_order(self.order, order) == Some(order) => Self::from_rat(order, r),
            _ => panic!("cannot embed Q(zeta_{}) into Q(zeta_{order})", self.order),
        }
    }

    fn aligned(a: &CycNum, b: &CycNum) -> (u32, CycNum, CycNum) {
        let order = common_order(a.order, b.order)
            .unwrap_or_else(|| panic!("mixed cyclotomic orders {} and {}", a.order, b.order));
        (order, a.lift(order), b.lift(order))
    }

    /// Reduces a length-`p` vector in `1, zeta, ..., zeta^(p-1)` to the power basis.
    fn reduce(order: u32, mut full: Vec<Rat>) -> Self {
        if order <= 2 {
            return CycNum {
                order,
                coords: vec![full.swap_remove(0)],
            };
        }
        let p = order as usize;
        let top = full.pop().expect("length p");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        debug_assert_eq!(full.len(), p - 1);
        CycNum {
            order,
            coords: full,
        }
    }

    fn expanded(&self) -> Vec<Rat> {
        let mut full = self.coords.clone();
        if self.order > 2 {
            full.push(Rat::zero());
        }
        full
    }

    pub fn scale(&self, s: &Rat) -> Self {
        CycNum {
            order: self.order,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// Image under the Galois automorphism `zeta -> zeta^k`, `gcd(k, N) = 1`.
    pub fn conjugate(&self, k: u32) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let p = self.order as usize;
        assert!(
            k as usize % p != 0,
            "conjugation exponent divisible by order"
        );
        let mut full = vec![Rat::zero(); p];
        for (i, c) in self.coords.iter().enumerate() {
            full[(i * k as usize) % p] += c;
        }
        Self::reduce(self.order, full)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rat {
        let conj = self.conjugate_product();
        (self * &conj)
            .is_rational()
            .expect("norm of a cyclotomic element is rational")
    }

    fn conjugate_product(&self) -> CycNum {
        let mut acc = CycNum::one(self.order);
        if self.order > 2 {
            for k in 2..self.order {
                acc = &acc * &self.conjugate(k);
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero cyclotomic element".into()));
        }
        if let Some(r) = self.is_rational() {
            return Ok(Self::from_rat(self.order, r.recip()));
        }
        let conj = self.conjugate_product();
        let norm = (self * &conj)
            .is_rational()
            .expect("norm of a cyclotomic element is rational");
        Ok(conj.scale(&norm.recip()))
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = CycNum::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

/// `zeta_order^power` in canonical form.
pub fn cyc_root_of_unity(order: u32, power: i64) -> Result<CycNum> {
    check_order(order)?;
    if power < 0 || power >= order as i64 {
        return Err(Error::RootPowerOutOfRange { order, power });
    }
    Ok(root_of_unity_mod(order, power))
}

/// `zeta_order^power` for any integer power (reduced mod `order`).
pub(crate) fn root_of_unity_mod(order: u32, power: i64) -> CycNum {
    let k = power.mod_floor(&(order as i64)) as usize;
    match order {
        1 => CycNum::one(1),
        2 => CycNum::from_rat(2, if k == 0 { Rat::one() } else { -Rat::one() }),
        _ => {
            let mut full = vec![Rat::zero(); order as usize];
            full[k] = Rat::one();
            CycNum::reduce(order, full)
        }
    }
}

pub fn cyc_is_rational(x: &CycNum) -> Option<Rat> {
    x.is_rational()
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.is_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.order)?,
                _ => write!(f, "({c})*z{}^{i}", self.order)?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: u32,
    coords: Vec<Rat>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            order: self.order,
            coords: self.coords.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(deserializer)?;
        CycNum::from_coords(repr.order, repr.coords).map_err(serde::de::Error::custom)
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.order == rhs.order {
            return CycNum {
                order: self.order,
                coords: self
                    .coords
                    .iter()
                    .zip(&rhs.coords)
                    .map(|(a, b)| a + b)
                    .collect(),
            };
        }
        let (_, a, b) = CycNum::aligned(self, rhs);
        &a + &b
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.order != rhs.order {
            let (_, a, b) = CycNum::aligned(self, rhs);
            return &a * &b;
        }
        if self.order <= 2 {
            return CycNum {
                order: self.order,
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            };
        }
        if let Some(r) = self.is_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.is_rational() {
            return self.scale(&r);
        }
        let p = self.order as usize;
        let a = self.expanded();
        let b = rhs.expanded();
        let mut full = vec![Rat::zero(); p];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                full[(i + j) % p] += &(x * y);
            }
        }
        CycNum::reduce(self.order, full)
    }
}

impl Div<&CycNum> for &CycNum {
    type Output = CycNum;
    fn div(self, rhs: &CycNum) -> CycNum {
        self * &rhs.inv().expect("division by zero cyclotomic element")
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.order == rhs.order {
            for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.order == rhs.order {
            for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}
