//! Twisted Vafa-Witten generating series on K3 surfaces, per gerbe type and
//! summed over all mu_r-gerbes.

use crate::arithmetics::numtheory::require_prime;
use crate::arithmetics::{gauss_sum, gerbe_census, k3_class_census_bruteforce, validate_picard};
use crate::coefficients::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::qseries::{g_series, series_equal, substitute_into, PuiseuxSeries, SeriesContext};

use super::p2::check_prec;

/// Shared `G(q)` expansion and the substitutions every K3 series is built from.
pub(crate) struct K3Builder {
    r: u32,
    prec: Rat,
    g: PuiseuxSeries,
}

impl K3Builder {
    pub(crate) fn new(r: u32, prec: &Rat) -> Result<Self> {
        require_prime(r)?;
        check_prec(prec)?;
        let rr = Rat::integer(r as i64);
        // G(q^(1/r)) q^r must be exact below prec
        let need = &rr * &(prec - &rr);
        let t = if need.is_negative() {
            Rat::zero()
        } else {
            need
        } + Rat::one();
        let ctx = SeriesContext::new(1, r, t)?;
        Ok(K3Builder {
            r,
            prec: prec.clone(),
            g: g_series(&ctx)?,
        })
    }

    fn finish(&self, s: PuiseuxSeries) -> Result<PuiseuxSeries> {
        Ok(s.shift(&Rat::integer(self.r as i64))?.truncate(&self.prec))
    }

    /// `q^r G(q^r)`
    pub(crate) fn g_scaled(&self) -> Result<PuiseuxSeries> {
        let s = substitute_into(&self.g, 0, 1, self.r as i64, 1, self.r)?;
        self.finish(s)
    }

    /// `q^r G(zeta_r^j q^(1/r))`
    pub(crate) fn g_twisted(&self, j: i64) -> Result<PuiseuxSeries> {
        let s = substitute_into(&self.g, j, self.r, 1, self.r as i64, self.r)?;
        self.finish(s)
    }

    /// `q^r sum_{j in js} G(zeta_r^j q^(1/r))`
    fn g_twisted_sum(&self, js: impl Iterator<Item = i64>) -> Result<PuiseuxSeries> {
        let mut acc = self.zero();
        for j in js {
            acc = acc.add(&self.g_twisted(j)?)?;
        }
        Ok(acc)
    }

    fn zero(&self) -> PuiseuxSeries {
        PuiseuxSeries::zero(self.r, self.r, self.prec.clone())
    }

    fn inv_r(&self) -> Rat {
        Rat::new(1, self.r as i64)
    }

    /// `w0 q^r G(q^r) + q^r (w1 G(q^(1/r)) + w2 sum_{j>=1} G(zeta^j q^(1/r)))`
    pub(crate) fn closed_form(&self, w0: &Rat, w1: &Rat, w2: &Rat) -> Result<PuiseuxSeries> {
        let a = self.g_scaled()?.scale_rat(w0);
        let b = self.g_twisted(0)?.scale_rat(w1);
        let c = self.g_twisted_sum(1..self.r as i64)?.scale_rat(w2);
        certify_rational(&a.add(&b)?.add(&c)?)
    }
}

/// Re-expresses a series whose coefficients all collapsed to rationals over `Q`.
pub fn certify_rational(s: &PuiseuxSeries) -> Result<PuiseuxSeries> {
    let mut terms = Vec::with_capacity(s.len());
    for (e, c) in s.terms() {
        match c.is_rational() {
            Some(r) => terms.push((e, CycNum::from_rat(1, r))),
            None => {
                return Err(Error::Inconsistent(format!(
                    "coefficient at q^{e} did not collapse to a rational: {c}"
                )))
            }
        }
    }
    Ok(
        PuiseuxSeries::from_terms(s.ramification(), 1, s.trunc_order().clone(), terms)?
            .with_variable(s.variable()),
    )
}

fn require_equal(what: &str, a: &PuiseuxSeries, b: &PuiseuxSeries) -> Result<()> {
    let cmp = series_equal(a, b);
    if cmp.equal {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("{what}: {cmp}")))
    }
}

/// Essentially trivial gerbe: `(1/r) q^r sum_{j=0}^{r-1} G(zeta^j q^(1/r))`.
pub fn z_ess_trivial(r: u32, prec: &Rat) -> Result<PuiseuxSeries> {
    let b = K3Builder::new(r, prec)?;
    z_ess_with(&b)
}

fn z_ess_with(b: &K3Builder) -> Result<PuiseuxSeries> {
    let s = b.g_twisted_sum(0..b.r as i64)?.scale_rat(&b.inv_r());
    certify_rational(&s)
}

/// Optimal gerbe, untwisted: `(1/r) q^r G(q^(1/r))`.
pub fn z_optimal(r: u32, prec: &Rat) -> Result<PuiseuxSeries> {
    z_optimal_twisted_sign(r, 0, prec)
}

/// Optimal gerbe evaluated at `(zeta^m)^r q`: `(1/r) q^r G(zeta^m q^(1/r))`.
pub fn z_optimal_twisted_sign(r: u32, m: i64, prec: &Rat) -> Result<PuiseuxSeries> {
    let b = K3Builder::new(r, prec)?;
    z_opt_with(&b, m)
}

fn z_opt_with(b: &K3Builder, m: i64) -> Result<PuiseuxSeries> {
    if !(0..b.r as i64).contains(&m) {
        return Err(Error::OutOfRange(format!("m = {m} outside 0..{}", b.r)));
    }
    Ok(b.g_twisted(m)?.scale_rat(&b.inv_r()))
}

/// Trivial gerbe (rank r, trivial determinant):
/// `(1/r^2) q^r G(q^r) + (1/r) q^r sum_j G(zeta^j q^(1/r))`.
pub fn z_k3_trivial_gerbe(r: u32, prec: &Rat) -> Result<PuiseuxSeries> {
    let b = K3Builder::new(r, prec)?;
    z_triv_with(&b)
}

fn z_triv_with(b: &K3Builder) -> Result<PuiseuxSeries> {
    let inv = b.inv_r();
    let scaled = b.g_scaled()?.scale_rat(&(&inv * &inv));
    certify_rational(&scaled.add(&z_ess_with(b)?)?)
}

/// `SU(r)/Z_r` partition function at Picard number `rho`. Built twice, as the
/// closed form and as the sum over gerbes; the two must agree.
pub fn z_k3_surzr(r: u32, rho: u32, prec: &Rat) -> Result<PuiseuxSeries> {
    validate_picard(rho)?;
    let b = K3Builder::new(r, prec)?;
    let rr = Rat::integer(r as i64);
    let inv = b.inv_r();
    let closed = b.closed_form(&(&inv * &inv), &rr.pow(21), &rr.pow(rho as i32 - 1))?;

    let census = gerbe_census(rho, r)?;
    let n_ess = Rat::from(num_bigint::BigInt::from(census.n_ess_nontrivial));
    let n_opt = Rat::from(num_bigint::BigInt::from(census.n_optimal));
    let sum = z_triv_with(&b)?
        .add(&z_ess_with(&b)?.scale_rat(&n_ess))?
        .add(&z_opt_with(&b, 0)?.scale_rat(&n_opt))?;
    require_equal("gerbe sum against closed form", &sum, &closed)?;
    Ok(closed)
}

/// `1/4 q^2 G(q^2) + q^2 (2^21 G(q^(1/2)) + 2^10 G(-q^(1/2)))`.
pub fn z_k3_vw_prediction(prec: &Rat) -> Result<PuiseuxSeries> {
    let b = K3Builder::new(2, prec)?;
    b.closed_form(
        &Rat::new(1, 4),
        &Rat::integer(1 << 21),
        &Rat::integer(1 << 10),
    )
}

/// Picard-independent partition function `Z'`.
///
/// Rank 2 uses the even/odd class counts, `Z0 + n_even Z_even + n_odd Z_odd`.
/// Odd rank weighs each `Z_opt(m)` by the lattice Gauss sum over the nonzero
/// classes, `sum_{g != 0} exp(pi i (r-1) m g^2 / r)`.
pub fn z_k3_complex_structure_free(r: u32, prec: &Rat) -> Result<PuiseuxSeries> {
    let b = K3Builder::new(r, prec)?;
    let rr = Rat::integer(r as i64);
    let inv = b.inv_r();
    let closed = b.closed_form(&(&inv * &inv), &rr.pow(21), &rr.pow(10))?;

    let z0 = z_triv_with(&b)?;
    let assembled = if r == 2 {
        let (_, n_even, n_odd) = k3_class_census_bruteforce();
        let opt = z_opt_with(&b, 0)?;
        let tw = z_opt_with(&b, 1)?;
        let even = opt.add(&tw)?;
        let odd = opt.sub(&tw)?;
        z0.add(&even.scale_rat(&Rat::integer(n_even as i64)))?
            .add(&odd.scale_rat(&Rat::integer(n_odd as i64)))?
    } else {
        let mut acc = z0;
        for m in 0..r as i64 {
            let total = if m == 0 {
                CycNum::from_rat(r, rr.pow(22))
            } else {
                gauss_sum(m, r)?
            };
            let weight = &total - &CycNum::one(r);
            acc = acc.add(&z_opt_with(&b, m)?.scale(&weight)?)?;
        }
        certify_rational(&acc)?
    };
    require_equal("Z' against closed form", &assembled, &closed)?;
    Ok(closed)
}
