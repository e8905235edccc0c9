//! One line per acceptance criterion. Exits nonzero if any criterion fails,
//! except for the single known red one whose discrepancy is pinned below.

mod common;

use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::props;
use common::{chi_hilb, hurwitz_by_forms, hurwitz_by_theta};
use vwlab::arithmetics::{
    gerbe_census, hurwitz_class_number, k3_class_census_bruteforce, k3_class_census_full,
};
use vwlab::partitions::{
    z_k3_complex_structure_free, z_k3_surzr, z_k3_trivial_gerbe, z_vb_p2, z_vb_p222,
};
use vwlab::qseries::{
    g_series, hilbert_euler, series_equal, substitute_into, PuiseuxSeries, SeriesContext,
};
use vwlab::sduality::{
    expand_k3_rank2, s_transform, verify_even_odd_transforms, BasisSet, EtaBasisExpr, QuadSurd,
    RuleSet,
};
use vwlab::Rat;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn p(n: i64) -> Rat {
    Rat::integer(n)
}

fn coeff(s: &PuiseuxSeries, n: i64, d: i64) -> Rat {
    s.rational_coeff(&Rat::new(n, d)).unwrap_or_else(Rat::zero)
}

fn c1_eta() -> Outcome {
    let g = g_series(&SeriesContext::new(1, 1, p(12)).unwrap()).unwrap();
    let want = [1i64, 24, 324, 3200, 25650, 176256];
    for (i, &w) in want.iter().enumerate() {
        let e = i as i64 - 1;
        if coeff(&g, e, 1) != p(w) {
            return fail(format!("[q^{e}] G = {}, expected {w}", coeff(&g, e, 1)));
        }
        // g_k = chi(Hilb^(k+1))
        if i < 5 && Rat::from(hilbert_euler(i as i64)) != p(w) {
            return fail(format!("chi(Hilb^{i}) disagrees with [q^{e}] G"));
        }
    }
    let su2 = z_k3_trivial_gerbe(2, &p(4)).unwrap();
    if coeff(&su2, 3, 1) != coeff(&g, 2, 1) {
        return fail("SU(2) q^3 coefficient is not [q^2] G");
    }
    pass("G = q^-1 + 24 + 324q + 3200q^2 + 25650q^3 + 176256q^4 + ...")
}

/// Reference SU(2) expansion through q^7.
const SU2_REFERENCE: [(i64, &str); 8] = [
    (0, "1/4"),
    (1, "0"),
    (2, "30"),
    (3, "3200"),
    (4, "176337"),
    (5, "5930496"),
    (6, "143184800"),
    (7, "2705114280"),
];

/// The only tolerated red result: the reference q^7 coefficient, which differs
/// from chi(Hilb^11) by a digit transposition.
const KNOWN_RED: (usize, i64) = (2, 7);

fn c2_su2(mismatches: &mut Vec<i64>) -> Outcome {
    let z = z_k3_trivial_gerbe(2, &p(8)).unwrap();
    let mut notes = Vec::new();
    for (e, v) in SU2_REFERENCE {
        let got = coeff(&z, e, 1);
        let want: Rat = v.parse().unwrap();
        if got != want {
            mismatches.push(e);
            notes.push(format!("q^{e}: computed {got}, reference {want}"));
        }
    }
    if z.terms().any(|(e, _)| !e.is_integer()) {
        return fail("half-integral exponents survive");
    }
    let oracle = chi_hilb(11)[11];
    if coeff(&z, 7, 1) != p(oracle as i64) {
        notes.push("q^7 also disagrees with the chi(Hilb^11) oracle".into());
        mismatches.push(-1);
    }
    if notes.is_empty() {
        pass("1/4 + 30q^2 + 3200q^3 + ... + 2705114280q^7")
    } else {
        fail(format!("{} (chi(Hilb^11) = {oracle})", notes.join("; ")))
    }
}

fn c3_su2z2() -> Outcome {
    let z = z_k3_surzr(2, 11, &p(6)).unwrap();
    let want = [
        (0, 1, "1/4"),
        (3, 2, "2096128"),
        (2, 1, "50356230"),
        (5, 2, "679145472"),
        (3, 1, "6714163200"),
        (7, 2, "53765683200"),
        (4, 1, "369816109137"),
        (9, 2, "2250654556160"),
        (5, 1, "12443224375296"),
        (11, 2, "63258156057600"),
    ];
    for (n, d, v) in want {
        if coeff(&z, n, d) != v.parse().unwrap() {
            return fail(format!(
                "q^{n}/{d}: computed {}, reference {v}",
                coeff(&z, n, d)
            ));
        }
    }
    if !coeff(&z, 1, 2).is_zero() || !coeff(&z, 1, 1).is_zero() {
        return fail("q^1/2 or q^1 nonzero");
    }
    pass("ten reference coefficients through q^11/2")
}

fn k3_vector(w1: Rat, w2: Rat) -> EtaBasisExpr {
    let v = [Rat::new(1, 4), w1, w2].map(QuadSurd::from_rat);
    EtaBasisExpr::from_vector(BasisSet::K3Rank2, &v, 0).unwrap()
}

fn c4_gerbe_sum() -> Outcome {
    let prec = p(12);
    for rho in [0u32, 1, 11, 20, 22] {
        // z_k3_surzr fails unless the gerbe sum equals its closed form
        let z = match z_k3_surzr(2, rho, &prec) {
            Ok(z) => z,
            Err(e) => return fail(format!("rho = {rho}: {e}")),
        };
        let closed =
            expand_k3_rank2(&k3_vector(p(2).pow(21), p(2).pow(rho as i32 - 1)), &prec).unwrap();
        let c = series_equal(&z, &closed);
        if !c.equal {
            return fail(format!("rho = {rho}: {c}"));
        }
    }
    pass("rho in {0, 1, 11, 20, 22} below q^12")
}

fn c5_sduality() -> Outcome {
    let su2 = k3_vector(Rat::new(1, 2), Rat::new(1, 2));
    let image = s_transform(&su2)
        .unwrap()
        .scale(&QuadSurd::from_rat(p(2).pow(11)));
    let target = EtaBasisExpr::from_vector(
        BasisSet::K3Rank2,
        &[Rat::new(1, 4), p(2).pow(21), p(2).pow(10)].map(QuadSurd::from_rat),
        -24,
    )
    .unwrap();
    if image != target {
        return fail(format!("S(Z) * 2^11 = {image}"));
    }
    let prec = p(12);
    let expanded = expand_k3_rank2(&image, &prec).unwrap();
    let free = z_k3_complex_structure_free(2, &prec).unwrap();
    let c = series_equal(&expanded, &free);
    if !c.equal {
        return fail(format!("expanded S-image against Z': {c}"));
    }
    let checks = verify_even_odd_transforms(&prec, &RuleSet::k3_rank2()).unwrap();
    if let Some(bad) = checks.iter().find(|c| !c.passed()) {
        return fail(bad.to_string());
    }
    pass("(1/4, 1/2, 1/2) -> (1/4, 2^21, 2^10); series equal below q^12; even/odd identities hold")
}

fn c6_p2() -> Outcome {
    // term n sits at u^(n - 2) in Z_0, u^(n - 17/4) in Z_1 and u^(n - 6) in Z_2,
    // so u^19 covers n <= 20 everywhere
    let prec = p(19);
    for drop in [false, true] {
        let pairs = [
            (
                "Z_{0,0} = Z_0",
                z_vb_p222(0, 0, &prec, drop),
                z_vb_p2(0, &prec, drop),
            ),
            (
                "Z_{0,1} = Z_1",
                z_vb_p222(0, 1, &prec, drop),
                z_vb_p2(1, &prec, drop),
            ),
            (
                "Z_{2,0} = Z_1",
                z_vb_p222(2, 0, &prec, drop),
                z_vb_p2(1, &prec, drop),
            ),
            (
                "Z_{2,1} = Z_2",
                z_vb_p222(2, 1, &prec, drop),
                z_vb_p2(2, &prec, drop),
            ),
        ];
        for (name, a, b) in pairs {
            let c = series_equal(&a.unwrap(), &b.unwrap());
            if !c.equal {
                return fail(format!("{name}: {c}"));
            }
        }
    }
    let theta = hurwitz_by_theta(200);
    for delta in (1..=200u64).filter(|d| d % 4 == 0 || d % 4 == 3) {
        let h = hurwitz_class_number(delta).unwrap();
        if h != hurwitz_by_forms(delta as i64) || h != theta[delta as usize] {
            return fail(format!("H({delta}) disagrees with an oracle"));
        }
    }
    pass("four identifications through 20 Hurwitz terms; H(delta) checked by two oracles for delta <= 200")
}

fn c7_census() -> (Outcome, Duration, Duration) {
    let t = Instant::now();
    let (zero, even, odd) = k3_class_census_bruteforce();
    let c = gerbe_census(11, 2).unwrap();
    let conv = t.elapsed();
    let n_even = ((1u64 << 22) + (1 << 11)) / 2 - 1;
    let n_odd = ((1u64 << 22) - (1 << 11)) / 2;
    if (zero, even, odd) != (1, n_even, n_odd)
        || c.n_even != Some(n_even as u128)
        || c.n_odd != Some(n_odd as u128)
    {
        return (
            fail(format!("convolution gives even {even}, odd {odd}")),
            conv,
            Duration::ZERO,
        );
    }
    let t = Instant::now();
    let full = k3_class_census_full();
    let full_time = t.elapsed();
    if full != (zero, even, odd) {
        return (
            fail(format!("full enumeration gives {full:?}")),
            conv,
            full_time,
        );
    }
    (
        pass(format!(
            "n_even = {n_even}, n_odd = {n_odd}; full enumeration agrees"
        )),
        conv,
        full_time,
    )
}

/// `(1/9) q^3 G(q^3) + q^3 (3^21 G(q^(1/3)) + w (G(zeta q^(1/3)) + G(zeta^2 q^(1/3))))`
fn rank3_closed_form(w: &Rat, prec: &Rat) -> (PuiseuxSeries, PuiseuxSeries) {
    let depth = Rat::from(prec.ceil()) * p(3) + p(1);
    let g = g_series(&SeriesContext::new(1, 1, depth).unwrap()).unwrap();
    let scaled = substitute_into(&g, 0, 1, 3, 1, 3).unwrap();
    let tw: Vec<PuiseuxSeries> = (0..3)
        .map(|j| substitute_into(&g, j, 3, 1, 3, 3).unwrap())
        .collect();
    let sum = tw[0].add(&tw[1]).unwrap().add(&tw[2]).unwrap();
    let closed = scaled
        .scale_rat(&Rat::new(1, 9))
        .add(&tw[0].scale_rat(&p(3).pow(21)))
        .unwrap()
        .add(&tw[1].add(&tw[2]).unwrap().scale_rat(w))
        .unwrap()
        .shift(&p(3))
        .unwrap()
        .truncate(prec);
    (closed, sum)
}

fn c8_rank3() -> Outcome {
    let prec = p(9);
    for rho in [0u32, 1, 11, 20, 22] {
        let z = match z_k3_surzr(3, rho, &prec) {
            Ok(z) => z,
            Err(e) => return fail(format!("rho = {rho}: {e}")),
        };
        let (closed, _) = rank3_closed_form(&p(3).pow(rho as i32 - 1), &prec);
        let c = series_equal(&z, &closed);
        if !c.equal {
            return fail(format!("rho = {rho}: {c}"));
        }
    }
    let (closed, sum) = rank3_closed_form(&p(3).pow(10), &prec);
    let c = series_equal(&z_k3_complex_structure_free(3, &prec).unwrap(), &closed);
    if !c.equal {
        return fail(format!("Z' at rank 3: {c}"));
    }
    if let Some((e, _)) = sum.terms().find(|(_, c)| c.is_rational().is_none()) {
        return fail(format!("sum_j G(zeta^j q^(1/3)) irrational at q^{e}"));
    }
    pass(format!(
        "weights 3^21, 3^(rho-1) and 3^10 below q^9; collapse rational at {} exponents",
        sum.len()
    ))
}

fn run_property<S, F>(name: &str, strategy: S, f: F) -> Result<(), String>
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, f).map_err(|e| format!("{name}: {e}"))
}

fn c9_properties() -> Outcome {
    let results = [
        run_property("addition", props::triple(), props::addition_laws),
        run_property(
            "multiplication",
            props::triple(),
            props::multiplication_laws,
        ),
        run_property("inverse", props::triple(), props::inverse_law),
        run_property(
            "substitution",
            props::unramified_pair(),
            props::substitution_homomorphism,
        ),
        run_property(
            "rescaling",
            props::rescaled(),
            props::rescaling_homomorphism,
        ),
        run_property("S^2 on K3", props::k3_vector(), props::s_involution_k3),
        run_property("S^2 on P2", props::p2_vector(), props::s_involution_p2),
        run_property("T^2", props::t_input(), props::t_involution),
        run_property("series JSON", props::triple(), props::series_round_trip),
        run_property("table JSON", props::table_input(), props::table_round_trip),
    ];
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    if failures.is_empty() {
        pass("ring laws, substitution, S^2 = 1, T^2 = 1, round trips: 1000 cases each, no failures")
    } else {
        fail(failures.join("; "))
    }
}

const NO_LIMIT: Duration = Duration::MAX;

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn main() {
    let mut su2_mismatches = Vec::new();
    let mut rows: Vec<(usize, &str, Outcome, Vec<(Duration, Duration)>)> = Vec::new();
    let secs = Duration::from_secs;

    let (o, t) = timed(c1_eta);
    rows.push((1, "G = eta^-24 expansion", o, vec![(t, secs(1))]));
    let (o, t) = timed(|| c2_su2(&mut su2_mismatches));
    rows.push((
        2,
        "K3 SU(2) partition function through q^7",
        o,
        vec![(t, secs(5))],
    ));
    let (o, t) = timed(c3_su2z2);
    rows.push((
        3,
        "K3 SU(2)/Z_2 at rho = 11 through q^11/2",
        o,
        vec![(t, secs(5))],
    ));
    let (o, t) = timed(c4_gerbe_sum);
    rows.push((4, "gerbe sum equals closed form", o, vec![(t, NO_LIMIT)]));
    let (o, t) = timed(c5_sduality);
    rows.push((5, "S-duality on the K3 rank-2 basis", o, vec![(t, secs(1))]));
    let (o, t) = timed(c6_p2);
    rows.push((6, "P2 and P(2,2,2) identifications", o, vec![(t, secs(10))]));
    let (o, conv, full) = c7_census();
    rows.push((
        7,
        "lattice census",
        o,
        vec![(conv, secs(1)), (full, secs(120))],
    ));
    let (o, t) = timed(c8_rank3);
    rows.push((8, "prime rank 3", o, vec![(t, secs(30))]));
    let (o, t) = timed(c9_properties);
    rows.push((9, "property suites", o, vec![(t, NO_LIMIT)]));

    let mut unexpected = 0;
    let mut passed = 0;
    for (n, name, mut o, limits) in rows {
        let times: Vec<String> = limits
            .iter()
            .map(|(t, _)| format!("{:.2}s", t.as_secs_f64()))
            .collect();
        if let Some((t, lim)) = limits.iter().find(|(t, lim)| t > lim) {
            o.ok = false;
            o.detail = format!(
                "{} [took {:.2}s, limit {}s]",
                o.detail,
                t.as_secs_f64(),
                lim.as_secs()
            );
        }
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {n}: {name} ({}): {}",
            times.join(", "),
            o.detail
        );
        passed += o.ok as usize;
        let known = n == KNOWN_RED.0 && su2_mismatches == [KNOWN_RED.1];
        if !o.ok && !known {
            unexpected += 1;
        }
    }
    println!("{passed}/9 criteria pass");
    if unexpected > 0 {
        println!("{unexpected} criteria failed beyond the known q^7 discrepancy");
        std::process::exit(1);
    }
}
