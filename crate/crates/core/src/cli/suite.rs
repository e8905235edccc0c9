//! The `verify` suite: independent check groups run in parallel, reported in order.

use rayon::prelude::*;

use super::{ring_law_suite, Config};
use crate::arithmetics::{
    gauss_sum, gauss_sum_by_distribution, gauss_sum_check, gerbe_census, k3_class_census_bruteforce,
};
use crate::coefficients::Rat;
use crate::error::Result;
use crate::partitions::{z_ess_trivial, z_k3_complex_structure_free, z_k3_surzr};
use crate::qseries::{
    eta_power, g_series, hilbert_euler_gf, series_equal, PuiseuxSeries, SeriesContext,
};
use crate::sduality::{
    expand_k3_rank2, verify_even_odd_transforms, verify_p2_sduality, verify_su2_k3_sduality,
    BasisSet, BasisSymbol, CheckResult, EtaBasisExpr, QuadSurd, RuleSet,
};

const RING_CASES: usize = 200;

type Group<'a> = (
    &'static str,
    Box<dyn Fn() -> Result<Vec<CheckResult>> + Sync + 'a>,
);

fn eq(id: &str, a: &PuiseuxSeries, b: &PuiseuxSeries) -> CheckResult {
    let c = series_equal(a, b);
    CheckResult::new(id, c.equal, c.to_string())
}

fn eta_checks(prec: &Rat) -> Result<Vec<CheckResult>> {
    let ctx = SeriesContext::new(1, 1, prec.clone())?;
    let g = g_series(&ctx)?;
    let mut out = vec![eq("eta.g-as-eta-power", &eta_power(-24, &ctx)?, &g)];
    let chi = hilbert_euler_gf(&SeriesContext::new(1, 1, prec + &Rat::one())?)?;
    out.push(eq(
        "eta.hilbert-generating-function",
        &g.shift(&Rat::one())?,
        &chi,
    ));
    let one = eta_power(24, &ctx)?.mul(&g)?;
    out.push(eq("eta.inverse-pair", &one, &ctx.one()));
    let golden = [1i64, 24, 324, 3200, 25650, 176256];
    let first = golden.iter().enumerate().find_map(|(i, &v)| {
        let e = Rat::integer(i as i64 - 1);
        (&e < prec && g.rational_coeff(&e) != Some(Rat::integer(v))).then_some(e)
    });
    out.push(CheckResult::new(
        "eta.golden",
        first.is_none(),
        match first {
            None => "G = q^-1 + 24 + 324 q + 3200 q^2 + 25650 q^3 + 176256 q^4 + ...".to_string(),
            Some(e) => format!("G differs at q^{e}"),
        },
    ));
    Ok(out)
}

fn collapse_checks(prec: &Rat) -> Result<Vec<CheckResult>> {
    // z_ess_trivial certifies that sum_j G(zeta^j q^(1/r)) has rational coefficients
    [2u32, 3, 5]
        .into_iter()
        .map(|r| {
            let id = format!("cyclotomic.collapse.r{r}");
            Ok(match z_ess_trivial(r, prec) {
                Ok(s) => CheckResult::new(
                    &id,
                    true,
                    format!("{} rational terms below q^{}", s.len(), s.trunc_order()),
                ),
                Err(e) => CheckResult::new(&id, false, e.to_string()),
            })
        })
        .collect()
}

fn gerbe_checks(config: &Config) -> Result<Vec<CheckResult>> {
    let (r, rho, prec) = (config.rank, config.picard, &config.precision);
    let mut out = Vec::new();
    let id = format!("k3.gerbe-sum.r{r}.rho{rho}");
    let surzr = z_k3_surzr(r, rho, prec);
    out.push(match &surzr {
        Ok(_) => CheckResult::new(&id, true, "gerbe sum equals the closed form"),
        Err(e) => CheckResult::new(&id, false, e.to_string()),
    });
    if let (2, Ok(z)) = (r, &surzr) {
        // (1/4, 2^21, 2^(rho-1)) on the G(q^2), G(q^(1/2)), G(-q^(1/2)) basis
        let w = |e: i32| QuadSurd::from_rat(Rat::integer(2).pow(e));
        let v = [QuadSurd::from_rat(Rat::new(1, 4)), w(21), w(rho as i32 - 1)];
        let e = EtaBasisExpr::from_vector(BasisSet::K3Rank2, &v, 0)?;
        out.push(eq(
            &format!("k3.closed-form.rho{rho}"),
            z,
            &expand_k3_rank2(&e, prec)?,
        ));
    }
    let id = format!("k3.complex-structure-free.r{r}");
    out.push(match z_k3_complex_structure_free(r, prec) {
        Ok(_) => CheckResult::new(&id, true, "class-weighted sum equals the closed form"),
        Err(e) => CheckResult::new(&id, false, e.to_string()),
    });
    Ok(out)
}

fn gauss_checks() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for r in [2u32, 3, 5] {
        for m in 1..r as i64 {
            let direct = gauss_sum(m, r)?;
            let ok = gauss_sum_check(m, r)? && direct == gauss_sum_by_distribution(m, r)?;
            let value = direct
                .is_rational()
                .map_or_else(|| format!("{direct:?}"), |q| q.to_string());
            out.push(CheckResult::new(&format!("gauss.r{r}.m{m}"), ok, value));
        }
    }
    Ok(out)
}

fn census_checks(rho: u32) -> Result<Vec<CheckResult>> {
    let c = gerbe_census(rho, 2)?;
    let (z, e, o) = k3_class_census_bruteforce();
    let ok = z == 1 && c.n_even == Some(e as u128) && c.n_odd == Some(o as u128);
    Ok(vec![CheckResult::new(
        "census.even-odd",
        ok,
        format!("n_even = {e}, n_odd = {o}"),
    )])
}

/// Runs every check group for `config`. Errors inside a group become failed checks.
pub fn run_verification(config: &Config, inject_fault: bool) -> Vec<CheckResult> {
    let prec = &config.precision;
    let k3_rules = if inject_fault {
        RuleSet::k3_rank2().corrupted(BasisSymbol::GQHalf, &QuadSurd::from_rat(Rat::integer(2)))
    } else {
        RuleSet::k3_rank2()
    };
    let groups: Vec<Group> = vec![
        ("ring", Box::new(|| ring_law_suite(RING_CASES))),
        ("eta", Box::new(move || eta_checks(prec))),
        ("cyclotomic", Box::new(move || collapse_checks(prec))),
        ("k3.gerbe", Box::new(move || gerbe_checks(config))),
        ("k3.s", Box::new(|| verify_su2_k3_sduality(prec, &k3_rules))),
        (
            "k3.even-odd",
            Box::new(|| verify_even_odd_transforms(prec, &k3_rules)),
        ),
        (
            "p2",
            Box::new(move || verify_p2_sduality(prec, &RuleSet::p2())),
        ),
        ("gauss", Box::new(gauss_checks)),
        ("census", Box::new(move || census_checks(config.picard))),
    ];
    groups
        .par_iter()
        .map(|(name, f)| f().unwrap_or_else(|e| vec![CheckResult::new(name, false, e.to_string())]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
