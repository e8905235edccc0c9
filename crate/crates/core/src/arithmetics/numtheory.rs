use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(r: u32) -> Result<()> {
    if is_prime(r as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(r))
    }
}

/// Number of positive divisors.
pub fn sigma0(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange("sigma0 needs n >= 1".into()));
    }
    Ok(divisors(n).count() as u64)
}

/// Sum of positive divisors.
pub fn sigma1(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange("sigma1 needs n >= 1".into()));
    }
    Ok(divisors(n).sum())
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).take_while(move |d| d * d <= n).flat_map(move |d| {
        if n % d != 0 {
            vec![]
        } else if d * d == n {
            vec![d]
        } else {
            vec![d, n / d]
        }
    })
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre_symbol(a: i64, p: u32) -> Result<i32> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::OutOfRange(format!("{p} is not an odd prime")));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(a, (p as u64 - 1) / 2, p as u64) == 1 {
        1
    } else {
        -1
    })
}

/// `epsilon(m) = (m/2 | r)` for even `m` and `((m+r)/2 | r)` for odd `m`.
pub fn legendre_epsilon(m: i64, r: u32) -> Result<i32> {
    if r == 2 || !is_prime(r as u64) {
        return Err(Error::OutOfRange(format!("{r} is not an odd prime")));
    }
    if m.rem_euclid(r as i64) == 0 {
        return Err(Error::OutOfRange(format!(
            "m = {m} is divisible by r = {r}"
        )));
    }
    if !(1..r as i64).contains(&m) {
        return Err(Error::OutOfRange(format!("m = {m} outside 1..{r}")));
    }
    let a = if m % 2 == 0 {
        m / 2
    } else {
        (m + r as i64) / 2
    };
    legendre_symbol(a, r)
}
