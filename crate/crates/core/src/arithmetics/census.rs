//! Counting mu_r-gerbe classes on a K3 surface and the zero / even / odd
//! classes of `H^2(S, Z) / 2 H^2(S, Z)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{K3LatticeForm, LatticeBlock};
use super::numtheory::{legendre_epsilon, require_prime};
use crate::coefficients::{root_of_unity_mod, CycNum, Rat};
use crate::error::{Error, Result};

pub const K3_B2: u32 = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerbeCensus {
    pub r: u32,
    pub rho: u32,
    pub n_trivial: u128,
    pub n_ess_nontrivial: u128,
    pub n_optimal: u128,
    pub n_zero_class: u128,
    /// Nonzero classes with `g^2 = 0 mod 4`; only meaningful for `r = 2`.
    pub n_even: Option<u128>,
    /// Classes with `g^2 = 2 mod 4`; only meaningful for `r = 2`.
    pub n_odd: Option<u128>,
}

pub fn validate_picard(rho: u32) -> Result<()> {
    if rho <= 20 || rho == 22 {
        Ok(())
    } else {
        Err(Error::InvalidPicard(rho))
    }
}

fn checked_pow(r: u32, e: u32) -> Result<u128> {
    (r as u128)
        .checked_pow(e)
        .ok_or_else(|| Error::OutOfRange(format!("{r}^{e} overflows the census counters")))
}

/// Closed-form census of mu_r-gerbes for Picard number `rho`.
pub fn gerbe_census(rho: u32, r: u32) -> Result<GerbeCensus> {
    validate_picard(rho)?;
    require_prime(r)?;
    let total = checked_pow(r, K3_B2)?;
    let ess = checked_pow(r, rho)?;
    let (n_even, n_odd) = if r == 2 {
        let half = 1u128 << 11;
        (Some((total + half) / 2 - 1), Some((total - half) / 2))
    } else {
        (None, None)
    };
    Ok(GerbeCensus {
        r,
        rho,
        n_trivial: 1,
        n_ess_nontrivial: ess - 1,
        n_optimal: total - ess,
        n_zero_class: 1,
        n_even,
        n_odd,
    })
}

/// Distribution of `g^T G g mod modulus` over all vectors `g` with entries in
/// `0..residues` (`residues = 2`, `modulus = 4` for classes of an even lattice mod 2).
pub fn block_distribution(gram: &[Vec<i64>], residues: u32, modulus: u32) -> Vec<u64> {
    let n = gram.len();
    let m = modulus as i64;
    let base = residues as i64;
    let mut counts = vec![0u64; modulus as usize];
    let mut g = vec![0i64; n];
    loop {
        let mut q = 0i64;
        for i in 0..n {
            if g[i] == 0 {
                continue;
            }
            let row: i64 = (0..n).map(|j| gram[i][j] * g[j]).sum();
            q += g[i] * row;
        }
        counts[q.rem_euclid(m) as usize] += 1;
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return counts;
            }
            g[i] += 1;
            if g[i] < base {
                break;
            }
            g[i] = 0;
            i += 1;
        }
    }
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let m = a.len();
    let mut out = vec![0u64; m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[(i + j) % m] += x * y;
        }
    }
    out
}

/// Zero / even / odd class counts obtained by convolving the per-block
/// distributions of `g^2 mod 4`.
pub fn k3_class_census_bruteforce() -> (u64, u64, u64) {
    let dist = K3LatticeForm::BLOCKS
        .iter()
        .map(|b| block_distribution(&b.gram(), 2, 4))
        .reduce(|a, b| convolve(&a, &b))
        .expect("nonempty block list");
    split_mod4(&dist)
}

fn split_mod4(dist: &[u64]) -> (u64, u64, u64) {
    debug_assert_eq!(dist[1] + dist[3], 0, "even lattice has only even norms");
    (1, dist[0] - 1, dist[2])
}

/// Direct enumeration of all `2^rank` classes of an even lattice, Gray-code
/// ordered within parallel chunks.
pub fn class_distribution_full(gram: &[Vec<i64>]) -> [u64; 4] {
    let n = gram.len();
    let chunk_bits = n.min(6);
    let low_bits = n - chunk_bits;
    (0u64..1 << chunk_bits)
        .into_par_iter()
        .map(|chunk| {
            let mut counts = [0u64; 4];
            let mut g = vec![0u8; n];
            for b in 0..chunk_bits {
                g[low_bits + b] = ((chunk >> b) & 1) as u8;
            }
            // Gg mod 4 and g^T G g mod 4 for the chunk's starting vector
            let mut gg: Vec<i64> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| gram[i][j] * g[j] as i64)
                        .sum::<i64>()
                        .rem_euclid(4)
                })
                .collect();
            let mut q: i64 = (0..n)
                .map(|i| g[i] as i64 * gg[i])
                .sum::<i64>()
                .rem_euclid(4);
            counts[q as usize] += 1;
            for step in 1u64..1 << low_bits {
                let i = step.trailing_zeros() as usize;
                let sign = if g[i] == 0 { 1 } else { -1 };
                q = (q + sign * 2 * gg[i] + gram[i][i]).rem_euclid(4);
                g[i] ^= 1;
                for (k, v) in gg.iter_mut().enumerate() {
                    *v = (*v + sign * gram[k][i]).rem_euclid(4);
                }
                counts[q as usize] += 1;
            }
            counts
        })
        .reduce(
            || [0u64; 4],
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        )
}

/// Zero / even / odd class counts by enumerating all `2^22` classes.
pub fn k3_class_census_full() -> (u64, u64, u64) {
    let dist = class_distribution_full(K3LatticeForm::standard().gram());
    split_mod4(&dist)
}

/// Congruence diagonalisation of a symmetric matrix over `Z/p`, `p` odd prime.
pub fn diagonalize_mod_p(gram: &[Vec<i64>], p: u32) -> Vec<i64> {
    let n = gram.len();
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = gram
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let inv = |x: i64| -> i64 {
        // Fermat inverse
        let (mut base, mut e, mut acc) = (x.rem_euclid(p), p - 2, 1i64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let add = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, f: i64| {
        for c in 0..n {
            a[i][c] = (a[i][c] + f * a[j][c]).rem_euclid(p);
        }
        for r in 0..n {
            a[r][i] = (a[r][i] + f * a[r][j]).rem_euclid(p);
        }
    };
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k] == 0 {
            if let Some(j) = (k + 1..n).find(|&j| a[j][j] != 0) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| a[k][j] != 0) {
                add(&mut a, k, j, 1);
            }
        }
        let pivot = a[k][k];
        if pivot != 0 {
            let pinv = inv(pivot);
            for i in k + 1..n {
                if a[i][k] != 0 {
                    let f = (-a[i][k] * pinv).rem_euclid(p);
                    add(&mut a, i, k, f);
                }
            }
        }
        diag.push(pivot);
    }
    diag
}

/// Quadratic Gauss sum `sum_{x mod p} zeta_p^(a x^2)` in `Q(zeta_p)`.
fn quadratic_gauss_sum(a: i64, p: u32) -> CycNum {
    (0..p as i64).fold(CycNum::zero(p), |acc, x| {
        &acc + &root_of_unity_mod(p, a * x * x)
    })
}

/// `sum_{g in H^2(S, mu_r)} exp(pi i (r-1) m g^2 / r)` over the K3 lattice.
///
/// For `r = 2` the sum is read off the class census (even classes +1, odd -1).
/// For odd `r` each orthogonal block is diagonalised mod `r` and the one
/// dimensional Gauss sums are multiplied in `Q(zeta_r)`.
pub fn gauss_sum(m: i64, r: u32) -> Result<CycNum> {
    require_prime(r)?;
    if !(1..r as i64).contains(&m) {
        return Err(Error::OutOfRange(format!("m = {m} outside 1..{r}")));
    }
    if r == 2 {
        let (zero, even, odd) = k3_class_census_bruteforce();
        let value = zero as i64 + even as i64 - odd as i64;
        return Ok(CycNum::from_rat(2, Rat::integer(value)));
    }
    // exp(pi i (r-1) m Q / r) = zeta_r^(((r-1)/2) m Q) since Q is an integer
    let scale = (r as i64 - 1) / 2 * m;
    let mut acc = CycNum::one(r);
    for block in K3LatticeForm::BLOCKS {
        for d in diagonalize_mod_p(&block.gram(), r) {
            acc = &acc * &quadratic_gauss_sum(scale * d, r);
        }
    }
    Ok(acc)
}

/// Same sum evaluated from brute-force per-block distributions of `g^2 mod r`.
pub fn gauss_sum_by_distribution(m: i64, r: u32) -> Result<CycNum> {
    require_prime(r)?;
    if r == 2 {
        return gauss_sum(m, r);
    }
    let scale = (r as i64 - 1) / 2 * m;
    let mut acc = CycNum::one(r);
    for block in K3LatticeForm::BLOCKS {
        let dist = block_distribution(&block.gram(), r, r);
        let s = dist.iter().enumerate().fold(CycNum::zero(r), |s, (v, &c)| {
            &s + &root_of_unity_mod(r, scale * v as i64).scale(&Rat::integer(c as i64))
        });
        acc = &acc * &s;
    }
    Ok(acc)
}

/// Compares the lattice Gauss sum with `epsilon(m)^22 r^11`.
pub fn gauss_sum_check(m: i64, r: u32) -> Result<bool> {
    let sum = gauss_sum(m, r)?;
    let eps = if r == 2 { 1 } else { legendre_epsilon(m, r)? };
    let expected = Rat::integer(eps as i64).pow(22) * Rat::integer(r as i64).pow(11);
    Ok(sum.is_rational() == Some(expected))
}

/// Per-block distribution helper exposed for census audits.
pub fn hyperbolic_distribution_mod4() -> Vec<u64> {
    block_distribution(&LatticeBlock::Hyperbolic.gram(), 2, 4)
}
