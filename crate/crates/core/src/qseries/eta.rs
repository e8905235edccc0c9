use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{key_limit, PuiseuxSeries, SeriesContext};
use crate::arithmetics::sigma1;
use crate::coefficients::{CycNum, Rat};
use crate::error::{Error, Result};

/// Coefficients of `prod_{k>=1} (1 - q^k)^e` up to `q^(n-1)`, from the
/// divisor-sum recurrence `n p_n = -e sum_k sigma1(k) p_{n-k}`.
pub(crate) fn euler_product_power(e: i64, n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n];
    if n == 0 {
        return p;
    }
    p[0] = BigInt::from(1);
    let sig: Vec<BigInt> = (0..n)
        .map(|k| {
            if k == 0 {
                BigInt::zero()
            } else {
                BigInt::from(sigma1(k as u64).expect("k >= 1"))
            }
        })
        .collect();
    for m in 1..n {
        let mut acc = BigInt::zero();
        for k in 1..=m {
            acc += &sig[k] * &p[m - k];
        }
        p[m] = -(acc * e) / BigInt::from(m);
    }
    p
}

/// `eta(q)^exponent = q^(exponent/24) prod (1 - q^k)^exponent` in `ctx`.
pub fn eta_power(exponent: i64, ctx: &SeriesContext) -> Result<PuiseuxSeries> {
    let lead = Rat::new(exponent, 24);
    let d = ctx.ramification as i64;
    if (exponent * d) % 24 != 0 {
        return Err(Error::RamificationOverflow {
            required: lead.denom().to_u64().unwrap_or(u64::MAX),
            exponent: lead,
            available: ctx.ramification,
        });
    }
    if ctx.trunc <= lead {
        return Err(Error::TruncationTooLow {
            trunc: Box::new(ctx.trunc.clone()),
            lowest: Box::new(lead),
        });
    }
    let k0 = exponent * d / 24;
    let limit = key_limit(&ctx.trunc, ctx.ramification);
    let n = ((limit - k0 + d - 1) / d) as usize;
    let coeffs = euler_product_power(exponent, n);
    let terms: BTreeMap<i64, CycNum> = coeffs
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            (
                k0 + i as i64 * d,
                CycNum::from_rat(ctx.cyc_order, Rat::from(c)),
            )
        })
        .collect();
    Ok(PuiseuxSeries::from_keys(
        ctx.ramification,
        ctx.cyc_order,
        ctx.trunc.clone(),
        terms,
    ))
}

/// `G(q) = eta(q)^-24`.
pub fn g_series(ctx: &SeriesContext) -> Result<PuiseuxSeries> {
    eta_power(-24, ctx)
}

/// Euler characteristics of Hilbert schemes of points on K3 up to `n - 1`
/// points: `prod (1 - q^k)^-24` expanded by multiplying in one geometric
/// series `1/(1 - q^k)` at a time (24 passes of prefix sums per `k`).
pub(crate) fn hilbert_table(n: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); n];
    if n == 0 {
        return b;
    }
    b[0] = BigInt::from(1);
    for k in 1..n {
        for _ in 0..24 {
            for i in k..n {
                let prev = b[i - k].clone();
                b[i] += prev;
            }
        }
    }
    b
}

/// `chi(Hilb^k(K3))`, zero for negative `k`.
pub fn hilbert_euler(k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    hilbert_table(k as usize + 1).pop().expect("nonempty")
}

/// Generating function `sum_k chi(Hilb^k) q^k` in `ctx`.
pub fn hilbert_euler_gf(ctx: &SeriesContext) -> Result<PuiseuxSeries> {
    if ctx.trunc <= Rat::zero() {
        return Err(Error::TruncationTooLow {
            trunc: Box::new(ctx.trunc.clone()),
            lowest: Box::new(Rat::zero()),
        });
    }
    let n = ctx
        .trunc
        .ceil()
        .to_usize()
        .expect("truncation order fits usize");
    let d = ctx.ramification as i64;
    let terms = hilbert_table(n)
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i as i64 * d, CycNum::from_rat(ctx.cyc_order, Rat::from(c))))
        .collect();
    Ok(PuiseuxSeries::from_keys(
        ctx.ramification,
        ctx.cyc_order,
        ctx.trunc.clone(),
        terms,
    ))
}
