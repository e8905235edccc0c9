//! Rank 2 vector-bundle partition functions of P2 and of the mu_2-gerbe P(2,2,2).
//!
//! The series run off to `q^-infinity`, so they are stored in the variable
//! `u = q^-1` and truncated in `u`: a precision `p` keeps every term `u^e`
//! with `e < p`.

use serde::{Deserialize, Serialize};

use crate::arithmetics::{hurwitz_class_number, sigma0};
use crate::coefficients::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::qseries::{PuiseuxSeries, Variable};

pub(crate) const P2_RAMIFICATION: u32 = 4;

/// Which Hurwitz sum a vector-bundle series is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HurwitzType {
    /// `sum_{n>=1} 3 H(4n-1) q^(1/4-n)`
    Odd,
    /// `sum_{n>=1} 3 (H(4n) - sigma0(n)/2) q^-n`
    Even,
}

impl HurwitzType {
    pub fn of_c1(c1: i64) -> Self {
        if c1.rem_euclid(2) == 1 {
            HurwitzType::Odd
        } else {
            HurwitzType::Even
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            HurwitzType::Odd => HurwitzType::Even,
            HurwitzType::Even => HurwitzType::Odd,
        }
    }
}

pub(crate) fn check_prec(prec: &Rat) -> Result<()> {
    if prec <= &Rat::zero() {
        return Err(Error::OutOfRange(format!(
            "precision must be positive, got {prec}"
        )));
    }
    Ok(())
}

/// `q^prefactor * (Hurwitz sum of the given type)`, expressed in `u = q^-1`.
pub fn hurwitz_series(
    kind: HurwitzType,
    prefactor: &Rat,
    prec: &Rat,
    drop_divisor_term: bool,
) -> Result<PuiseuxSeries> {
    check_prec(prec)?;
    // term n sits at u^(n - prefactor - offset)
    let offset = match kind {
        HurwitzType::Odd => Rat::new(1, 4),
        HurwitzType::Even => Rat::zero(),
    };
    let base = -(prefactor + &offset);
    let mut terms = Vec::new();
    let mut n = 1i64;
    loop {
        let e = &base + &Rat::integer(n);
        if &e >= prec {
            break;
        }
        let nu = n as u64;
        let c = match kind {
            HurwitzType::Odd => hurwitz_class_number(4 * nu - 1)? * Rat::integer(3),
            HurwitzType::Even => {
                let mut h = hurwitz_class_number(4 * nu)?;
                if !drop_divisor_term {
                    h -= &Rat::new(sigma0(nu)? as i64, 2);
                }
                h * Rat::integer(3)
            }
        };
        terms.push((e, CycNum::from_rat(1, c)));
        n += 1;
    }
    Ok(
        PuiseuxSeries::from_terms(P2_RAMIFICATION, 1, prec.clone(), terms)?
            .with_variable(Variable::QInverse),
    )
}

/// `c1^2/4 + 3 c1/2 + 2`
pub fn p2_prefactor(c1: i64) -> Rat {
    Rat::new(c1 * c1, 4) + Rat::new(3 * c1, 2) + Rat::integer(2)
}

/// `Z_{c1}^{vb,P2}`; the parity of `c1` selects the Hurwitz sum.
pub fn z_vb_p2(c1: i64, prec: &Rat, drop_divisor_term: bool) -> Result<PuiseuxSeries> {
    hurwitz_series(
        HurwitzType::of_c1(c1),
        &p2_prefactor(c1),
        prec,
        drop_divisor_term,
    )
}

/// `Z_{c1,lambda}^{vb,P(2,2,2)}` for even `c1`, with the prefactors as listed
/// for the two components of the inertia stack.
pub fn z_vb_p222(
    c1: i64,
    lambda: u8,
    prec: &Rat,
    drop_divisor_term: bool,
) -> Result<PuiseuxSeries> {
    if c1.rem_euclid(2) != 0 {
        return Err(Error::OutOfRange(format!(
            "c1 = {c1} must be even on P(2,2,2)"
        )));
    }
    let zero_mod4 = c1.rem_euclid(4) == 0;
    let (kind, prefactor) = match lambda {
        0 => {
            let kind = if zero_mod4 {
                HurwitzType::Even
            } else {
                HurwitzType::Odd
            };
            (
                kind,
                Rat::new(c1 * c1, 16) + Rat::new(3 * c1, 4) + Rat::integer(2),
            )
        }
        1 => {
            let kind = if zero_mod4 {
                HurwitzType::Odd
            } else {
                HurwitzType::Even
            };
            let h = Rat::new(c1 + 2, 2);
            let pre = &(&h * &h) * &Rat::new(1, 4) + &h * &Rat::new(3, 2) + Rat::integer(2);
            (kind, pre)
        }
        _ => {
            return Err(Error::OutOfRange(format!(
                "lambda = {lambda} must be 0 or 1"
            )))
        }
    };
    hurwitz_series(kind, &prefactor, prec, drop_divisor_term)
}
