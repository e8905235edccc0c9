//! Strategies and property bodies shared by the proptest suite and the
//! acceptance runner.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use vwlab::coefficients::phi;
use vwlab::partitions::{vw_essentially_trivial, vw_optimal, VWTable};
use vwlab::qseries::{series_equal, substitute, t_transform, PuiseuxSeries};
use vwlab::sduality::{s_transform, t_transform_basis, BasisSet, EtaBasisExpr, QuadSurd};
use vwlab::{CycNum, Rat};

pub type Triple = (PuiseuxSeries, PuiseuxSeries, PuiseuxSeries);
pub type Outcome = Result<(), TestCaseError>;

pub fn rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

pub fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(rat(), phi(order))
        .prop_map(move |c| CycNum::from_coords(order, c).unwrap())
}

/// Series with ramification `d` and cyclotomic order `order`, exponents from `-2`.
pub fn series_in(d: u32, order: u32) -> impl Strategy<Value = PuiseuxSeries> {
    let di = d as i64;
    (
        prop::collection::btree_map(-2 * di..5 * di, cyc(order), 0..8),
        2 * di..6 * di,
    )
        .prop_map(move |(terms, t)| {
            let terms = terms.into_iter().map(|(k, c)| (Rat::new(k, di), c));
            PuiseuxSeries::from_terms(d, order, Rat::new(t, di), terms).unwrap()
        })
}

pub fn triple() -> impl Strategy<Value = Triple> {
    (
        prop::sample::select(vec![1u32, 2, 3, 4]),
        prop::sample::select(vec![1u32, 2, 3, 5]),
    )
        .prop_flat_map(|(d, o)| (series_in(d, o), series_in(d, o), series_in(d, o)))
}

fn same(a: &PuiseuxSeries, b: &PuiseuxSeries) -> Outcome {
    let c = series_equal(a, b);
    prop_assert!(c.equal, "{}", c);
    Ok(())
}

pub fn addition_laws((a, b, c): Triple) -> Outcome {
    same(
        &a.add(&b).unwrap().add(&c).unwrap(),
        &a.add(&b.add(&c).unwrap()).unwrap(),
    )?;
    same(&a.add(&b).unwrap(), &b.add(&a).unwrap())?;
    let zero = PuiseuxSeries::zero(a.ramification(), a.cyc_order(), a.trunc_order().clone());
    same(&a.add(&a.neg()).unwrap(), &zero)?;
    same(
        &a.sub(&b).unwrap().add(&b).unwrap(),
        &a.truncate(b.trunc_order()),
    )
}

pub fn multiplication_laws((a, b, c): Triple) -> Outcome {
    same(
        &a.mul(&b).unwrap().mul(&c).unwrap(),
        &a.mul(&b.mul(&c).unwrap()).unwrap(),
    )?;
    same(&a.mul(&b).unwrap(), &b.mul(&a).unwrap())?;
    same(
        &a.mul(&b.add(&c).unwrap()).unwrap(),
        &a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap(),
    )
}

pub fn inverse_law((a, _, _): Triple) -> Outcome {
    match a.invert() {
        Ok(inv) => {
            let one = PuiseuxSeries::monomial(
                CycNum::one(a.cyc_order()),
                &Rat::zero(),
                a.ramification(),
                Rat::integer(1000),
            )
            .unwrap();
            same(&a.mul(&inv).unwrap(), &one)?;
            same(&inv.invert().unwrap(), &a)
        }
        Err(_) => {
            prop_assert!(a.is_zero());
            Ok(())
        }
    }
}

/// Unramified pairs, so that a nontrivial root of unity is allowed.
pub fn unramified_pair() -> impl Strategy<Value = ((PuiseuxSeries, PuiseuxSeries), (i64, i64, i64))>
{
    (
        prop::sample::select(vec![1u32, 3]).prop_flat_map(|o| (series_in(1, o), series_in(1, o))),
        (0i64..3, 1i64..4, 1i64..4),
    )
}

pub fn substitution_homomorphism(
    ((a, b), (root, num, den)): ((PuiseuxSeries, PuiseuxSeries), (i64, i64, i64)),
) -> Outcome {
    let sub = |s: &PuiseuxSeries| substitute(s, root, 3, num, den).unwrap();
    same(&sub(&a.mul(&b).unwrap()), &sub(&a).mul(&sub(&b)).unwrap())?;
    same(&sub(&a.add(&b).unwrap()), &sub(&a).add(&sub(&b)).unwrap())
}

pub fn rescaled() -> impl Strategy<Value = (Triple, (i64, i64))> {
    (triple(), (1i64..5, 1i64..5))
}

pub fn rescaling_homomorphism(((a, b, _), (num, den)): (Triple, (i64, i64))) -> Outcome {
    let sub = |s: &PuiseuxSeries| substitute(s, 0, 1, num, den).unwrap();
    same(&sub(&a.mul(&b).unwrap()), &sub(&a).mul(&sub(&b)).unwrap())
}

pub fn k3_vector() -> impl Strategy<Value = (Vec<Rat>, i32)> {
    (prop::collection::vec(rat(), 3), -60i32..60)
}

pub fn p2_vector() -> impl Strategy<Value = (Vec<(Rat, Rat)>, i32)> {
    (prop::collection::vec((rat(), rat()), 2), -20i32..20)
}

pub fn s_involution_k3((v, w): (Vec<Rat>, i32)) -> Outcome {
    let v: Vec<QuadSurd> = v.into_iter().map(QuadSurd::from_rat).collect();
    let e = EtaBasisExpr::from_vector(BasisSet::K3Rank2, &v, w).unwrap();
    let twice = s_transform(&s_transform(&e).unwrap()).unwrap();
    prop_assert_eq!(
        twice,
        EtaBasisExpr::from_vector(BasisSet::K3Rank2, &v, w - 48).unwrap()
    );
    Ok(())
}

pub fn s_involution_p2((v, w): (Vec<(Rat, Rat)>, i32)) -> Outcome {
    let v: Vec<QuadSurd> = v.into_iter().map(|(a, b)| QuadSurd::new(a, b)).collect();
    let e = EtaBasisExpr::from_vector(BasisSet::P2, &v, w).unwrap();
    let twice = s_transform(&s_transform(&e).unwrap()).unwrap();
    prop_assert_eq!(
        twice,
        EtaBasisExpr::from_vector(BasisSet::P2, &v, w + 6).unwrap()
    );
    Ok(())
}

pub fn t_input() -> impl Strategy<Value = ((Vec<Rat>, i32), PuiseuxSeries)> {
    let half_integral = (
        prop::sample::select(vec![1u32, 2]),
        prop::sample::select(vec![1u32, 3]),
    )
        .prop_flat_map(|(d, o)| series_in(d, o));
    (k3_vector(), half_integral)
}

pub fn t_involution(((v, w), s): ((Vec<Rat>, i32), PuiseuxSeries)) -> Outcome {
    let v: Vec<QuadSurd> = v.into_iter().map(QuadSurd::from_rat).collect();
    let e = EtaBasisExpr::from_vector(BasisSet::K3Rank2, &v, w).unwrap();
    prop_assert_eq!(
        t_transform_basis(&t_transform_basis(&e).unwrap()).unwrap(),
        e
    );
    // exponents in (1/2)Z pick up a phase of +-1
    same(&t_transform(&t_transform(&s).unwrap()).unwrap(), &s)
}

pub fn series_round_trip((a, _, _): Triple) -> Outcome {
    let back = PuiseuxSeries::from_json(&a.to_json()).unwrap();
    prop_assert_eq!(&back, &a);
    prop_assert_eq!(back.to_json(), a.to_json());
    Ok(())
}

pub fn table_input() -> impl Strategy<Value = ((u32, i64, bool), (Rat, CycNum))> {
    (
        (
            prop::sample::select(vec![2u32, 3, 5]),
            0i64..12,
            any::<bool>(),
        ),
        (rat(), cyc(5)),
    )
}

pub fn table_round_trip(
    ((r, c2_max, stated), (x, z)): ((u32, i64, bool), (Rat, CycNum)),
) -> Outcome {
    for t in [
        vw_essentially_trivial(r, c2_max, stated).unwrap(),
        vw_optimal(r, c2_max).unwrap(),
    ] {
        prop_assert_eq!(VWTable::from_json(&t.to_json()).unwrap(), t);
    }
    prop_assert_eq!(x.to_string().parse::<Rat>().unwrap(), x.clone());
    let zs = serde_json::to_string(&z).unwrap();
    prop_assert_eq!(serde_json::from_str::<CycNum>(&zs).unwrap(), z);
    let xs = serde_json::to_string(&x).unwrap();
    prop_assert_eq!(serde_json::from_str::<Rat>(&xs).unwrap(), x);
    Ok(())
}
