//! Truncated Puiseux series in `q` with exponents in `(1/D) Z` and
//! coefficients in a cyclotomic field.
//!
//! Every series carries a truncation order `T`: coefficients at exponents
//! below `T` are exact, everything from `T` on is unknown. Operations
//! propagate `T` conservatively, and [`series_equal`] only inspects the
//! jointly valid region.

mod eta;
mod serial;

pub use eta::{eta_power, g_series, hilbert_euler, hilbert_euler_gf};
pub use serial::{CoeffJson, SeriesJson, TermJson};

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::coefficients::{check_order, common_order, root_of_unity_mod, CycNum, Rat};
use crate::error::{Error, Result};

/// Formal variable of a series. P2 vector-bundle series are naturally
/// expansions in `q^-1` and are stored in that variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Variable {
    #[default]
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "q^-1")]
    QInverse,
}

/// Shared parameters for a family of series built together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesContext {
    pub ramification: u32,
    pub cyc_order: u32,
    pub trunc: Rat,
}

impl SeriesContext {
    pub fn new(ramification: u32, cyc_order: u32, trunc: Rat) -> Result<Self> {
        if ramification == 0 {
            return Err(Error::IncompatibleContext(
                "ramification must be >= 1".into(),
            ));
        }
        check_order(cyc_order)?;
        Ok(SeriesContext {
            ramification,
            cyc_order,
            trunc,
        })
    }

    pub fn zero(&self) -> PuiseuxSeries {
        PuiseuxSeries::zero(self.ramification, self.cyc_order, self.trunc.clone())
    }

    pub fn one(&self) -> PuiseuxSeries {
        PuiseuxSeries::monomial(
            CycNum::one(self.cyc_order),
            &Rat::zero(),
            self.ramification,
            self.trunc.clone(),
        )
        .expect("exponent 0 always fits")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    ramification: u32,
    cyc_order: u32,
    variable: Variable,
    trunc: Rat,
    /// exponent numerator over `ramification` -> nonzero coefficient
    terms: BTreeMap<i64, CycNum>,
}

/// Smallest key `k` with `k / d >= trunc`.
fn key_limit(trunc: &Rat, d: u32) -> i64 {
    (trunc * Rat::integer(d as i64))
        .ceil()
        .to_i64()
        .expect("truncation order out of range")
}

fn exponent_key(e: &Rat, d: u32) -> Option<i64> {
    let scaled = e * Rat::integer(d as i64);
    scaled.to_i64()
}

impl PuiseuxSeries {
    pub fn zero(ramification: u32, cyc_order: u32, trunc: Rat) -> Self {
        PuiseuxSeries {
            ramification,
            cyc_order,
            variable: Variable::Q,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * q^exponent`, truncated at `trunc`.
    pub fn monomial(coeff: CycNum, exponent: &Rat, ramification: u32, trunc: Rat) -> Result<Self> {
        let mut s = Self::zero(ramification, coeff.order(), trunc);
        s.insert(exponent, coeff)?;
        Ok(s)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I>(ramification: u32, cyc_order: u32, trunc: Rat, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rat, CycNum)>,
    {
        check_order(cyc_order)?;
        let mut s = Self::zero(ramification, cyc_order, trunc);
        for (e, c) in terms {
            s.insert(&e, c)?;
        }
        Ok(s)
    }

    pub(crate) fn from_keys(
        ramification: u32,
        cyc_order: u32,
        trunc: Rat,
        terms: BTreeMap<i64, CycNum>,
    ) -> Self {
        let limit = key_limit(&trunc, ramification);
        let terms = terms
            .into_iter()
            .filter(|(k, c)| *k < limit && !c.is_zero())
            .collect();
        PuiseuxSeries {
            ramification,
            cyc_order,
            variable: Variable::Q,
            trunc,
            terms,
        }
    }

    fn insert(&mut self, exponent: &Rat, coeff: CycNum) -> Result<()> {
        let key = exponent_key(exponent, self.ramification).ok_or_else(|| {
            Error::RamificationOverflow {
                exponent: exponent.clone(),
                required: exponent.denom().to_u64().unwrap_or(u64::MAX),
                available: self.ramification,
            }
        })?;
        let order = common_order(self.cyc_order, coeff.order()).ok_or_else(|| {
            Error::IncompatibleContext(format!(
                "coefficient of order {} in a series of order {}",
                coeff.order(),
                self.cyc_order
            ))
        })?;
        if order != self.cyc_order {
            self.lift_order(order);
        }
        if key >= key_limit(&self.trunc, self.ramification) {
            return Ok(());
        }
        let entry = self.terms.entry(key).or_insert_with(|| CycNum::zero(order));
        *entry += &coeff.lift(order);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    fn lift_order(&mut self, order: u32) {
        self.cyc_order = order;
        for c in self.terms.values_mut() {
            *c = c.lift(order);
        }
    }

    pub fn with_variable(mut self, variable: Variable) -> Self {
        self.variable = variable;
        self
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn cyc_order(&self) -> u32 {
        self.cyc_order
    }

    pub fn trunc_order(&self) -> &Rat {
        &self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn exponent(&self, key: i64) -> Rat {
        Rat::new(key, self.ramification as i64)
    }

    /// Stored terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rat, &CycNum)> + '_ {
        self.terms.iter().map(|(&k, c)| (self.exponent(k), c))
    }

    /// Coefficient at `exponent`; `None` when the exponent lies at or beyond
    /// the truncation order (unknown) or is not representable.
    pub fn coeff(&self, exponent: &Rat) -> Option<CycNum> {
        if exponent >= &self.trunc {
            return None;
        }
        let key = exponent_key(exponent, self.ramification);
        match key {
            Some(k) => Some(
                self.terms
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(|| CycNum::zero(self.cyc_order)),
            ),
            None => Some(CycNum::zero(self.cyc_order)),
        }
    }

    /// Rational coefficient at `exponent`, if known and rational.
    pub fn rational_coeff(&self, exponent: &Rat) -> Option<Rat> {
        self.coeff(exponent).and_then(|c| c.is_rational())
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Rat> {
        self.terms.keys().next().map(|&k| self.exponent(k))
    }

    fn valuation_or_trunc(&self) -> Rat {
        self.valuation().unwrap_or_else(|| self.trunc.clone())
    }

    pub fn is_rational_valued(&self) -> bool {
        self.terms.values().all(|c| c.is_rational().is_some())
    }

    /// Lowers the truncation order to `min(current, trunc)`.
    pub fn truncate(&self, trunc: &Rat) -> Self {
        let t = self.trunc.clone().min(trunc.clone());
        let mut out = Self::from_keys(self.ramification, self.cyc_order, t, self.terms.clone());
        out.variable = self.variable;
        out
    }

    /// Re-expresses the series with a different ramification.
    pub fn with_ramification(&self, ramification: u32) -> Result<Self> {
        if ramification == self.ramification {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let num = k as i128 * ramification as i128;
            if num % self.ramification as i128 != 0 {
                let e = self.exponent(k);
                return Err(Error::RamificationOverflow {
                    required: e.denom().to_u64().unwrap_or(u64::MAX),
                    exponent: e,
                    available: ramification,
                });
            }
            terms.insert((num / self.ramification as i128) as i64, c.clone());
        }
        let mut out = Self::from_keys(ramification, self.cyc_order, self.trunc.clone(), terms);
        out.variable = self.variable;
        Ok(out)
    }

    fn compat(&self, other: &Self) -> Result<u32> {
        if self.ramification != other.ramification {
            return Err(Error::IncompatibleContext(format!(
                "ramification {} vs {}",
                self.ramification, other.ramification
            )));
        }
        if self.variable != other.variable {
            return Err(Error::IncompatibleContext(
                "series in different variables".into(),
            ));
        }
        common_order(self.cyc_order, other.cyc_order).ok_or_else(|| {
            Error::IncompatibleContext(format!(
                "cyclotomic order {} vs {}",
                self.cyc_order, other.cyc_order
            ))
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let order = self.compat(other)?;
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let mut terms: BTreeMap<i64, CycNum> = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.lift(order)))
            .collect();
        for (&k, c) in &other.terms {
            terms
                .entry(k)
                .and_modify(|x| *x += c)
                .or_insert_with(|| c.lift(order));
        }
        let mut out = Self::from_keys(self.ramification, order, trunc, terms);
        out.variable = self.variable;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &CycNum) -> Result<Self> {
        let order = common_order(self.cyc_order, s.order()).ok_or_else(|| {
            Error::IncompatibleContext(format!(
                "scalar of order {} for series of order {}",
                s.order(),
                self.cyc_order
            ))
        })?;
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, &c.lift(order) * &s.lift(order)))
            .collect();
        let mut out = Self::from_keys(self.ramification, order, self.trunc.clone(), terms);
        out.variable = self.variable;
        Ok(out)
    }

    pub fn scale_rat(&self, s: &Rat) -> Self {
        let terms = self.terms.iter().map(|(&k, c)| (k, c.scale(s))).collect();
        let mut out = Self::from_keys(self.ramification, self.cyc_order, self.trunc.clone(), terms);
        out.variable = self.variable;
        out
    }

    /// Multiplies by `q^shift`; the truncation order moves with it.
    pub fn shift(&self, shift: &Rat) -> Result<Self> {
        let ks =
            exponent_key(shift, self.ramification).ok_or_else(|| Error::RamificationOverflow {
                exponent: shift.clone(),
                required: shift.denom().to_u64().unwrap_or(u64::MAX),
                available: self.ramification,
            })?;
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k + ks, c.clone()))
            .collect();
        let mut out = Self::from_keys(
            self.ramification,
            self.cyc_order,
            &self.trunc + shift,
            terms,
        );
        out.variable = self.variable;
        Ok(out)
    }

    /// Cauchy product. Valid below `min(Ta + val(b), Tb + val(a))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let order = self.compat(other)?;
        let trunc = (&self.trunc + other.valuation_or_trunc())
            .min(&other.trunc + self.valuation_or_trunc());
        let limit = key_limit(&trunc, self.ramification);
        let a: Vec<(i64, CycNum)> = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.lift(order)))
            .collect();
        let b: Vec<(i64, CycNum)> = other
            .terms
            .iter()
            .map(|(&k, c)| (k, c.lift(order)))
            .collect();
        let mut terms: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let k = ka + kb;
                if k >= limit {
                    break;
                }
                let p = ca * cb;
                terms.entry(k).and_modify(|x| *x += &p).or_insert(p);
            }
        }
        let mut out = Self::from_keys(self.ramification, order, trunc, terms);
        out.variable = self.variable;
        Ok(out)
    }

    /// Multiplicative inverse, valid below `T - 2 val(a)`.
    pub fn invert(&self) -> Result<Self> {
        let (&k0, c0) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let c0_inv = c0.inv()?;
        let v = self.exponent(k0);
        let out_trunc = &self.trunc - &(&v + &v);
        // relative precision in keys: u_j known for j < span
        let span = (key_limit(&self.trunc, self.ramification) - k0).max(0) as usize;
        let order = self.cyc_order;
        let mut u = vec![CycNum::zero(order); span];
        for (&k, c) in &self.terms {
            let j = (k - k0) as usize;
            if j < span {
                u[j] = c * &c0_inv;
            }
        }
        let mut w = vec![CycNum::zero(order); span];
        if span > 0 {
            w[0] = CycNum::one(order);
        }
        for n in 1..span {
            let mut acc = CycNum::zero(order);
            for j in 1..=n {
                if u[j].is_zero() || w[n - j].is_zero() {
                    continue;
                }
                acc += &(&u[j] * &w[n - j]);
            }
            w[n] = -acc;
        }
        let terms = w
            .into_iter()
            .enumerate()
            .map(|(j, c)| (j as i64 - k0, &c * &c0_inv))
            .collect();
        let mut out = Self::from_keys(self.ramification, order, out_trunc, terms);
        out.variable = self.variable;
        Ok(out)
    }

    /// Integer power via repeated squaring (negative powers invert first).
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let one = Self::monomial(
            CycNum::one(self.cyc_order),
            &Rat::zero(),
            self.ramification,
            self.trunc.clone(),
        )?
        .with_variable(self.variable);
        let mut base = if exp < 0 {
            self.invert()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = one;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

/// Image of `f` under `q -> zeta_{root_order}^{root_power} * q^{scale_num/scale_den}`.
///
/// A term `c q^e` becomes `c zeta^(root_power * e) q^(e * scale)`; with a
/// nontrivial root this needs `e` to be an integer. The result has the
/// smallest ramification that represents the new exponents.
pub fn substitute(
    f: &PuiseuxSeries,
    root_power: i64,
    root_order: u32,
    scale_num: i64,
    scale_den: i64,
) -> Result<PuiseuxSeries> {
    check_order(root_order)?;
    if scale_num <= 0 || scale_den <= 0 {
        return Err(Error::OutOfRange(format!(
            "substitution scale {scale_num}/{scale_den} must be positive"
        )));
    }
    let order = common_order(f.cyc_order, root_order).ok_or_else(|| {
        Error::IncompatibleContext(format!(
            "root of order {root_order} in a series of order {}",
            f.cyc_order
        ))
    })?;
    let trivial_root = root_power.rem_euclid(root_order as i64) == 0;
    let d = f.ramification as i64;
    let big_d = d * scale_den;
    let g = scale_num.gcd(&big_d);
    let new_d = (big_d / g) as u32;
    let mult = scale_num / g;
    let mut terms = BTreeMap::new();
    for (&k, c) in &f.terms {
        let mut coeff = c.lift(order);
        if !trivial_root {
            if k % d != 0 {
                return Err(Error::BranchAmbiguous(f.exponent(k)));
            }
            let zeta = root_of_unity_mod(root_order, root_power * (k / d)).lift(order);
            coeff = &coeff * &zeta;
        }
        terms.insert(k * mult, coeff);
    }
    let trunc = &f.trunc * &Rat::new(scale_num, scale_den);
    let mut out = PuiseuxSeries::from_keys(new_d, order, trunc, terms);
    out.variable = f.variable;
    Ok(out)
}

/// [`substitute`] followed by a move into the ramification `ramification`.
pub fn substitute_into(
    f: &PuiseuxSeries,
    root_power: i64,
    root_order: u32,
    scale_num: i64,
    scale_den: i64,
    ramification: u32,
) -> Result<PuiseuxSeries> {
    let s = substitute(f, root_power, root_order, scale_num, scale_den)?;
    s.with_ramification(ramification).map_err(|e| match e {
        Error::RamificationOverflow { exponent, .. } => Error::RamificationOverflow {
            required: s.ramification() as u64,
            exponent,
            available: ramification,
        },
        other => other,
    })
}

/// `T: tau -> tau + 1`, i.e. `q^e -> exp(2 pi i e) q^e`.
pub fn t_transform(f: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let n = f.cyc_order;
    let mut terms = BTreeMap::new();
    for (&k, c) in &f.terms {
        let e = f.exponent(k);
        let num = e.numer().to_i64().expect("exponent numerator fits i64");
        let den = e.denom().to_u32().unwrap_or(u32::MAX);
        let phase = match den {
            1 => CycNum::one(n),
            2 => CycNum::from_rat(
                n,
                if num.is_odd() {
                    -Rat::one()
                } else {
                    Rat::one()
                },
            ),
            d if d == n => root_of_unity_mod(n, num),
            _ => {
                return Err(Error::PhaseUnavailable {
                    order: n,
                    exponent: e,
                })
            }
        };
        terms.insert(k, c * &phase);
    }
    let mut out = PuiseuxSeries::from_keys(f.ramification, n, f.trunc.clone(), terms);
    out.variable = f.variable;
    Ok(out)
}

/// First exponent at which two series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub exponent: Rat,
    pub left: CycNum,
    pub right: CycNum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesComparison {
    pub equal: bool,
    /// Coefficients were compared at every exponent below this bound.
    pub compared_below: Rat,
    pub discrepancy: Option<Discrepancy>,
}

impl fmt::Display for SeriesComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.discrepancy {
            None if self.equal => write!(f, "equal below q^{}", self.compared_below),
            None => write!(f, "not comparable (different variables)"),
            Some(d) => write!(f, "differ at q^{}: {} vs {}", d.exponent, d.left, d.right),
        }
    }
}

/// Coefficient-wise comparison on the jointly valid region.
pub fn series_equal(a: &PuiseuxSeries, b: &PuiseuxSeries) -> SeriesComparison {
    let bound = a.trunc.clone().min(b.trunc.clone());
    if a.variable != b.variable {
        return SeriesComparison {
            equal: false,
            compared_below: bound,
            discrepancy: None,
        };
    }
    let mut exps: BTreeMap<Rat, ()> = BTreeMap::new();
    for (e, _) in a.terms().chain(b.terms()) {
        if e < bound {
            exps.insert(e, ());
        }
    }
    for e in exps.keys() {
        let x = a.coeff(e).expect("below truncation");
        let y = b.coeff(e).expect("below truncation");
        if (&x - &y).is_zero() {
            continue;
        }
        return SeriesComparison {
            equal: false,
            compared_below: bound,
            discrepancy: Some(Discrepancy {
                exponent: e.clone(),
                left: x,
                right: y,
            }),
        };
    }
    SeriesComparison {
        equal: true,
        compared_below: bound,
        discrepancy: None,
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.variable {
            Variable::Q => "q",
            Variable::QInverse => "u",
        };
        for (e, c) in self.terms() {
            write!(f, "({c})*{var}^{e} + ")?;
        }
        write!(f, "O({var}^{})", self.trunc)
    }
}
