//! Seeded randomized ring-law checks for `PuiseuxSeries`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficients::{phi, CycNum, Rat};
use crate::error::Result;
use crate::qseries::{series_equal, substitute, PuiseuxSeries};
use crate::sduality::CheckResult;

const SEED: u64 = 0x5657_6c61_6221;

fn random_series(rng: &mut ChaCha8Rng, ramification: u32, order: u32) -> Result<PuiseuxSeries> {
    let d = ramification as i64;
    let low = rng.gen_range(-2 * d..=d);
    let trunc = Rat::new(rng.gen_range(3 * d..=6 * d), d);
    let mut terms = Vec::new();
    for k in low..rng.gen_range(low + 1..=6 * d) {
        if rng.gen_bool(0.3) {
            continue;
        }
        let coords = (0..phi(order))
            .map(|_| Rat::new(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect();
        terms.push((Rat::new(k, d), CycNum::from_coords(order, coords)?));
    }
    PuiseuxSeries::from_terms(ramification, order, trunc, terms)
}

struct Law {
    id: &'static str,
    failures: usize,
    first: Option<String>,
}

impl Law {
    fn new(id: &'static str) -> Self {
        Law {
            id,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, case: usize, a: &PuiseuxSeries, b: &PuiseuxSeries) {
        let c = series_equal(a, b);
        if !c.equal {
            self.failures += 1;
            self.first
                .get_or_insert_with(|| format!("case {case}: {c}"));
        }
    }

    fn result(self, cases: usize) -> CheckResult {
        let detail = match self.first {
            None => format!("{cases} cases"),
            Some(f) => format!("{} of {cases} cases failed, first {f}", self.failures),
        };
        CheckResult::new(self.id, self.failures == 0, detail)
    }
}

pub fn ring_law_suite(cases: usize) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut laws = [
        Law::new("ring.add-assoc"),
        Law::new("ring.add-comm"),
        Law::new("ring.add-inverse"),
        Law::new("ring.mul-assoc"),
        Law::new("ring.mul-comm"),
        Law::new("ring.distributive"),
        Law::new("ring.mul-inverse"),
        Law::new("ring.substitution-homomorphism"),
    ];
    for case in 0..cases {
        let d = [1, 2, 3][rng.gen_range(0..3)];
        let order = [1, 3][rng.gen_range(0..2)];
        let a = random_series(&mut rng, d, order)?;
        let b = random_series(&mut rng, d, order)?;
        let c = random_series(&mut rng, d, order)?;
        let zero = PuiseuxSeries::zero(d, order, a.trunc_order().clone());

        laws[0].record(case, &a.add(&b)?.add(&c)?, &a.add(&b.add(&c)?)?);
        laws[1].record(case, &a.add(&b)?, &b.add(&a)?);
        laws[2].record(case, &a.add(&a.neg())?, &zero);
        laws[3].record(case, &a.mul(&b)?.mul(&c)?, &a.mul(&b.mul(&c)?)?);
        laws[4].record(case, &a.mul(&b)?, &b.mul(&a)?);
        laws[5].record(case, &a.mul(&b.add(&c)?)?, &a.mul(&b)?.add(&a.mul(&c)?)?);
        if let Ok(inv) = a.invert() {
            let one = PuiseuxSeries::monomial(
                CycNum::one(order),
                &Rat::zero(),
                d,
                Rat::integer(1 << 20),
            )?;
            laws[6].record(case, &a.mul(&inv)?, &one);
        }
        // q -> zeta_3 q needs integral exponents; otherwise q -> q^2
        let sub = |s: &PuiseuxSeries| match d {
            1 => substitute(s, 1, 3, 1, 1),
            _ => substitute(s, 0, 1, 2, 1),
        };
        laws[7].record(case, &sub(&a.mul(&b)?)?, &sub(&a)?.mul(&sub(&b)?)?);
    }
    Ok(laws.into_iter().map(|l| l.result(cases)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let v = ring_law_suite(50).unwrap();
        assert!(v.iter().all(|c| c.passed()), "{v:#?}");
    }
}
