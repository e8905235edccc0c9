//! Oracles shared by the integration tests. The oracles do not call into `vwlab`
//! except for the `Rat` type used to report values.
#![allow(dead_code)]

pub mod props;

use vwlab::Rat;

/// `H(delta)` by direct enumeration of reduced forms `(a, b, c)`,
/// `b^2 - 4ac = -delta`, `|b| <= a <= c`, `b >= 0` on the boundary.
pub fn hurwitz_by_forms(delta: i64) -> Rat {
    let mut h = Rat::zero();
    let mut a = 1;
    while 3 * a * a <= delta {
        for b in -a..=a {
            let num = b * b + delta;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || ((b < 0) && (a == -b || a == c)) {
                continue;
            }
            h = h + if a == b.abs() && a == c {
                Rat::new(1, 3)
            } else if b == 0 && a == c {
                Rat::new(1, 2)
            } else {
                Rat::one()
            };
        }
        a += 1;
    }
    h
}

/// `r3(n)`: ordered representations of `n` as a sum of three squares.
fn r3(n: i64) -> i64 {
    let s = (n as f64).sqrt() as i64 + 1;
    let mut count = 0;
    for x in -s..=s {
        for y in -s..=s {
            let rest = n - x * x - y * y;
            if rest < 0 {
                continue;
            }
            let z = (rest as f64).sqrt() as i64;
            for zz in [z - 1, z, z + 1] {
                if zz >= 0 && zz * zz == rest {
                    count += if zz == 0 { 1 } else { 2 };
                }
            }
        }
    }
    count
}

/// `H(0..=n)` from two classical identities, without touching quadratic forms:
/// `r3(m) = 12 (H(4m) - 2 H(m))` gives `H(4m)`, then the Kronecker-Hurwitz
/// relation `sum_t H(4m - t^2) = 2 sigma(m) - sum_{d|m} min(d, m/d)` gives
/// `H(4m - 1)`. `H(0) = -1/12`; other `delta = 1, 2 mod 4` vanish.
pub fn hurwitz_by_theta(n: usize) -> Vec<Rat> {
    let mut h = vec![Rat::zero(); n + 5];
    h[0] = Rat::new(-1, 12);
    let mut m = 1usize;
    while 4 * m - 1 <= n {
        let mi = m as i64;
        let hm = if m % 4 == 0 || m % 4 == 3 {
            h[m].clone()
        } else {
            Rat::zero()
        };
        h[4 * m] = Rat::new(r3(mi), 12) + hm * Rat::integer(2);
        let divisors: Vec<i64> = (1..=mi).filter(|d| mi % d == 0).collect();
        let sigma: i64 = divisors.iter().sum();
        let lambda: i64 = divisors.iter().map(|&d| d.min(mi / d)).sum();
        let mut rest = Rat::integer(2 * sigma - lambda) - h[4 * m].clone();
        let mut t = 2i64;
        while t * t <= 4 * mi {
            rest = rest - h[(4 * mi - t * t) as usize].clone() * Rat::integer(2);
            t += 1;
        }
        h[4 * m - 1] = rest / Rat::integer(2);
        m += 1;
    }
    h.truncate(n + 1);
    h
}

/// `chi(Hilb^k)` for `k <= n` from `k a_k = 24 sum_j sigma(j) a_{k-j}`.
pub fn chi_hilb(n: usize) -> Vec<i128> {
    let sigma = |k: usize| (1..=k).filter(|d| k % d == 0).sum::<usize>() as i128;
    let mut a = vec![0i128; n + 1];
    a[0] = 1;
    for m in 1..=n {
        let s: i128 = (1..=m).map(|k| sigma(k) * a[m - k]).sum();
        a[m] = 24 * s / m as i128;
    }
    a
}
