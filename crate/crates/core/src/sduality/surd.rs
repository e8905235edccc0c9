use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coefficients::Rat;
use crate::error::{Error, Result};

/// `a + b sqrt(2)` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSurd {
    a: Rat,
    b: Rat,
}

impl QuadSurd {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadSurd { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadSurd { a, b: Rat::zero() }
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn sqrt2() -> Self {
        QuadSurd::new(Rat::zero(), Rat::one())
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn surd_part(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn inv(&self) -> Result<Self> {
        let norm = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &Rat::integer(2));
        if norm.is_zero() {
            return Err(Error::NotInvertible(format!("{self}")));
        }
        Ok(QuadSurd::new(&self.a / &norm, -(&self.b / &norm)))
    }
}

impl From<Rat> for QuadSurd {
    fn from(a: Rat) -> Self {
        QuadSurd::from_rat(a)
    }
}

impl Add<&QuadSurd> for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: &QuadSurd) -> QuadSurd {
        QuadSurd::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub<&QuadSurd> for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: &QuadSurd) -> QuadSurd {
        QuadSurd::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul<&QuadSurd> for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: &QuadSurd) -> QuadSurd {
        let two = Rat::integer(2);
        QuadSurd::new(
            &(&self.a * &o.a) + &(&(&self.b * &o.b) * &two),
            &(&self.a * &o.b) + &(&self.b * &o.a),
        )
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd::new(-&self.a, -&self.b)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*sqrt2", self.b),
            (false, false) => write!(f, "{} + ({})*sqrt2", self.a, self.b),
        }
    }
}

impl fmt::Debug for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
