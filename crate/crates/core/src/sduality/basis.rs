//! Finite eta-quotient bases and the S/T action on them.
//!
//! Modular weight factors are tracked as a power of `tau/i`, stored in halves
//! (`-24` means `(tau/i)^-12`, which equals `tau^-12` since `i^12 = 1`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::QuadSurd;
use crate::coefficients::Rat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisSet {
    /// `G(q^2), G(q^(1/2)), G(-q^(1/2))`
    K3Rank2,
    /// holomorphic parts of Zagier's `f0, f1`
    P2,
}

impl BasisSet {
    pub fn symbols(self) -> &'static [BasisSymbol] {
        match self {
            BasisSet::K3Rank2 => &[
                BasisSymbol::GQSquared,
                BasisSymbol::GQHalf,
                BasisSymbol::GMinusQHalf,
            ],
            BasisSet::P2 => &[BasisSymbol::F0, BasisSymbol::F1],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisSymbol {
    GQSquared,
    GQHalf,
    GMinusQHalf,
    F0,
    F1,
}

impl BasisSymbol {
    pub fn basis_set(self) -> BasisSet {
        match self {
            BasisSymbol::F0 | BasisSymbol::F1 => BasisSet::P2,
            _ => BasisSet::K3Rank2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisSymbol::GQSquared => "G(q^2)",
            BasisSymbol::GQHalf => "G(q^1/2)",
            BasisSymbol::GMinusQHalf => "G(-q^1/2)",
            BasisSymbol::F0 => "f0",
            BasisSymbol::F1 => "f1",
        }
    }

    fn index(self) -> usize {
        match self {
            BasisSymbol::GQSquared | BasisSymbol::F0 => 0,
            BasisSymbol::GQHalf | BasisSymbol::F1 => 1,
            BasisSymbol::GMinusQHalf => 2,
        }
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            BasisSymbol::GQSquared,
            BasisSymbol::GQHalf,
            BasisSymbol::GMinusQHalf,
            BasisSymbol::F0,
            BasisSymbol::F1,
        ]
        .into_iter()
        .find(|b| b.name() == s)
        .ok_or_else(|| Error::UnknownBasis(s.to_string()))
    }
}

/// Linear combination of basis symbols, each carrying a weight factor.
#[derive(Clone, PartialEq, Eq)]
pub struct EtaBasisExpr {
    basis_set: BasisSet,
    /// (weight in halves, symbol) -> nonzero coefficient
    terms: BTreeMap<(i32, BasisSymbol), QuadSurd>,
}

impl EtaBasisExpr {
    pub fn new(basis_set: BasisSet) -> Self {
        EtaBasisExpr {
            basis_set,
            terms: BTreeMap::new(),
        }
    }

    /// Coefficients listed in basis order, all at weight `weight_halves`.
    pub fn from_vector(
        basis_set: BasisSet,
        coeffs: &[QuadSurd],
        weight_halves: i32,
    ) -> Result<Self> {
        let symbols = basis_set.symbols();
        if coeffs.len() != symbols.len() {
            return Err(Error::OutOfRange(format!(
                "expected {} coefficients, got {}",
                symbols.len(),
                coeffs.len()
            )));
        }
        let mut e = Self::new(basis_set);
        for (c, &s) in coeffs.iter().zip(symbols) {
            e.add_term(c.clone(), weight_halves, s)?;
        }
        Ok(e)
    }

    pub fn from_rats(basis_set: BasisSet, coeffs: &[Rat]) -> Result<Self> {
        let v: Vec<QuadSurd> = coeffs.iter().cloned().map(QuadSurd::from).collect();
        Self::from_vector(basis_set, &v, 0)
    }

    pub fn basis_set(&self) -> BasisSet {
        self.basis_set
    }

    pub fn add_term(
        &mut self,
        coeff: QuadSurd,
        weight_halves: i32,
        symbol: BasisSymbol,
    ) -> Result<()> {
        if symbol.basis_set() != self.basis_set {
            return Err(Error::UnknownBasis(format!(
                "{symbol} is not in the {:?} basis",
                self.basis_set
            )));
        }
        let key = (weight_halves, symbol);
        let sum = match self.terms.get(&key) {
            Some(c) => c + &coeff,
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, BasisSymbol, &QuadSurd)> {
        self.terms.iter().map(|(&(w, s), c)| (w, s, c))
    }

    pub fn coefficient(&self, weight_halves: i32, symbol: BasisSymbol) -> QuadSurd {
        self.terms
            .get(&(weight_halves, symbol))
            .cloned()
            .unwrap_or_else(QuadSurd::zero)
    }

    /// Distinct weights present.
    pub fn weights(&self) -> Vec<i32> {
        let mut w: Vec<i32> = self.terms.keys().map(|k| k.0).collect();
        w.dedup();
        w
    }

    /// Coefficients in basis order when every term has the same weight.
    pub fn vector(&self) -> Option<(i32, Vec<QuadSurd>)> {
        let w = match self.weights().as_slice() {
            [] => 0,
            [w] => *w,
            _ => return None,
        };
        let v = self
            .basis_set
            .symbols()
            .iter()
            .map(|&s| self.coefficient(w, s))
            .collect();
        Some((w, v))
    }

    pub fn scale(&self, s: &QuadSurd) -> Self {
        let mut out = Self::new(self.basis_set);
        for (w, sym, c) in self.terms() {
            out.add_term(c * s, w, sym).expect("same basis");
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.basis_set != other.basis_set {
            return Err(Error::IncompatibleContext(
                "expressions over different bases".into(),
            ));
        }
        let mut out = self.clone();
        for (w, sym, c) in other.terms() {
            out.add_term(c.clone(), w, sym)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QuadSurd::from_rat(-Rat::one())))
    }

    /// First `(weight, symbol)` at which two expressions differ.
    pub fn first_difference(&self, other: &Self) -> Option<(i32, BasisSymbol, QuadSurd, QuadSurd)> {
        let mut keys: Vec<(i32, BasisSymbol)> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|(w, s)| {
            let (a, b) = (self.coefficient(w, s), other.coefficient(w, s));
            (a != b).then_some((w, s, a, b))
        })
    }
}

impl fmt::Display for EtaBasisExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, s, c)| {
                if w == 0 {
                    format!("({c})*{s}")
                } else {
                    format!("({c})*(tau/i)^({})*{s}", Rat::new(w as i64, 2))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for EtaBasisExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Image of one basis symbol under S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STransformRule {
    pub source: BasisSymbol,
    /// (scalar, weight shift in halves, target)
    pub images: Vec<(QuadSurd, i32, BasisSymbol)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    basis_set: BasisSet,
    rules: Vec<STransformRule>,
}

fn pow2(e: i32) -> QuadSurd {
    QuadSurd::from_rat(Rat::integer(2).pow(e))
}

impl RuleSet {
    /// `G(q^2) -> 2^12 tau^-12 G(q^(1/2))`, `G(q^(1/2)) -> 2^-12 tau^-12 G(q^2)`,
    /// `G(-q^(1/2)) -> tau^-12 G(-q^(1/2))`.
    pub fn k3_rank2() -> Self {
        use BasisSymbol::*;
        RuleSet {
            basis_set: BasisSet::K3Rank2,
            rules: vec![
                STransformRule {
                    source: GQSquared,
                    images: vec![(pow2(12), -24, GQHalf)],
                },
                STransformRule {
                    source: GQHalf,
                    images: vec![(pow2(-12), -24, GQSquared)],
                },
                STransformRule {
                    source: GMinusQHalf,
                    images: vec![(QuadSurd::one(), -24, GMinusQHalf)],
                },
            ],
        }
    }

    /// `(f0, f1) -> (tau/i)^(3/2) (-1/sqrt2) [[1, 1], [1, -1]] (f0, f1)`.
    pub fn p2() -> Self {
        use BasisSymbol::*;
        let c = QuadSurd::new(Rat::zero(), Rat::new(-1, 2));
        let m = -&c;
        RuleSet {
            basis_set: BasisSet::P2,
            rules: vec![
                STransformRule {
                    source: F0,
                    images: vec![(c.clone(), 3, F0), (c.clone(), 3, F1)],
                },
                STransformRule {
                    source: F1,
                    images: vec![(c, 3, F0), (m, 3, F1)],
                },
            ],
        }
    }

    pub fn standard(basis_set: BasisSet) -> Self {
        match basis_set {
            BasisSet::K3Rank2 => Self::k3_rank2(),
            BasisSet::P2 => Self::p2(),
        }
    }

    pub fn basis_set(&self) -> BasisSet {
        self.basis_set
    }

    pub fn rules(&self) -> &[STransformRule] {
        &self.rules
    }

    /// Same rules with every image of `source` multiplied by `factor`.
    pub fn corrupted(&self, source: BasisSymbol, factor: &QuadSurd) -> Self {
        let mut out = self.clone();
        for rule in out.rules.iter_mut().filter(|r| r.source == source) {
            for img in rule.images.iter_mut() {
                img.0 = &img.0 * factor;
            }
        }
        out
    }

    fn rule(&self, s: BasisSymbol) -> Result<&STransformRule> {
        self.rules
            .iter()
            .find(|r| r.source == s)
            .ok_or_else(|| Error::UnknownBasis(format!("no S rule for {s}")))
    }

    /// Scalar matrix, column `j` = image of the `j`-th basis symbol.
    pub fn scalar_matrix(&self) -> Result<Vec<Vec<QuadSurd>>> {
        let syms = self.basis_set.symbols();
        let n = syms.len();
        let mut m = vec![vec![QuadSurd::zero(); n]; n];
        for (j, &s) in syms.iter().enumerate() {
            for (c, _, t) in &self.rule(s)?.images {
                m[t.index()][j] = &m[t.index()][j] + c;
            }
        }
        Ok(m)
    }

    /// `M * M == I` on the scalar parts.
    pub fn squares_to_identity(&self) -> Result<bool> {
        let m = self.scalar_matrix()?;
        let n = m.len();
        for i in 0..n {
            for j in 0..n {
                let mut acc = QuadSurd::zero();
                for k in 0..n {
                    acc = &acc + &(&m[i][k] * &m[k][j]);
                }
                let want = if i == j {
                    QuadSurd::one()
                } else {
                    QuadSurd::zero()
                };
                if acc != want {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn s_transform(e: &EtaBasisExpr) -> Result<EtaBasisExpr> {
    s_transform_with(e, &RuleSet::standard(e.basis_set))
}

pub fn s_transform_with(e: &EtaBasisExpr, rules: &RuleSet) -> Result<EtaBasisExpr> {
    if rules.basis_set != e.basis_set {
        return Err(Error::UnknownBasis(format!(
            "rules for {:?} applied to a {:?} expression",
            rules.basis_set, e.basis_set
        )));
    }
    let mut out = EtaBasisExpr::new(e.basis_set);
    for (w, sym, c) in e.terms() {
        for (s, shift, target) in &rules.rule(sym)?.images {
            out.add_term(c * s, w + shift, *target)?;
        }
    }
    Ok(out)
}

/// `T: tau -> tau + 1` on the K3 basis: `q^(1/2) -> -q^(1/2)`, so the two
/// half-argument symbols swap and `G(q^2)` is fixed.
pub fn t_transform_basis(e: &EtaBasisExpr) -> Result<EtaBasisExpr> {
    if e.basis_set != BasisSet::K3Rank2 {
        return Err(Error::UnknownBasis(
            "T is only tabulated on the K3 basis".into(),
        ));
    }
    let mut out = EtaBasisExpr::new(e.basis_set);
    for (w, sym, c) in e.terms() {
        let target = match sym {
            BasisSymbol::GQHalf => BasisSymbol::GMinusQHalf,
            BasisSymbol::GMinusQHalf => BasisSymbol::GQHalf,
            other => other,
        };
        out.add_term(c.clone(), w, target)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(a: Rat, b: Rat, c: Rat) -> EtaBasisExpr {
        EtaBasisExpr::from_rats(BasisSet::K3Rank2, &[a, b, c]).unwrap()
    }

    #[test]
    fn single_rule() {
        let e = k3(Rat::one(), Rat::zero(), Rat::zero());
        let s = s_transform(&e).unwrap();
        let want = EtaBasisExpr::from_vector(
            BasisSet::K3Rank2,
            &[QuadSurd::zero(), pow2(12), QuadSurd::zero()],
            -24,
        )
        .unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn su2_vector() {
        let e = k3(Rat::new(1, 4), Rat::new(1, 2), Rat::new(1, 2));
        let (w, v) = s_transform(&e).unwrap().vector().unwrap();
        assert_eq!(w, -24);
        assert_eq!(
            v,
            vec![pow2(-13), pow2(10), QuadSurd::from_rat(Rat::new(1, 2))]
        );
    }

    #[test]
    fn involutions() {
        assert!(RuleSet::k3_rank2().squares_to_identity().unwrap());
        assert!(RuleSet::p2().squares_to_identity().unwrap());
        let bad = RuleSet::k3_rank2().corrupted(BasisSymbol::GQHalf, &pow2(1));
        assert!(!bad.squares_to_identity().unwrap());
        let e = k3(Rat::one(), Rat::integer(2), Rat::integer(3));
        let t = t_transform_basis(&e).unwrap();
        assert_eq!(
            t.coefficient(0, BasisSymbol::GQHalf),
            QuadSurd::from_rat(Rat::integer(3))
        );
        assert_eq!(t_transform_basis(&t).unwrap(), e);
    }

    #[test]
    fn basis_mismatch_rejected() {
        let e = k3(Rat::one(), Rat::zero(), Rat::zero());
        assert!(s_transform_with(&e, &RuleSet::p2()).is_err());
        let mut p = EtaBasisExpr::new(BasisSet::P2);
        assert!(p.add_term(QuadSurd::one(), 0, BasisSymbol::GQHalf).is_err());
        assert!(t_transform_basis(&p).is_err());
        assert!(matches!(
            "G(q^3)".parse::<BasisSymbol>(),
            Err(Error::UnknownBasis(_))
        ));
        assert_eq!(
            "G(-q^1/2)".parse::<BasisSymbol>().unwrap(),
            BasisSymbol::GMinusQHalf
        );
    }

    #[test]
    fn p2_weight_is_three_halves() {
        let mut e = EtaBasisExpr::new(BasisSet::P2);
        e.add_term(QuadSurd::one(), 0, BasisSymbol::F0).unwrap();
        let s = s_transform(&e).unwrap();
        assert_eq!(s.weights(), vec![3]);
        assert_eq!(
            s.to_string(),
            "((-1/2)*sqrt2)*(tau/i)^(3/2)*f0 + ((-1/2)*sqrt2)*(tau/i)^(3/2)*f1"
        );
    }
}
