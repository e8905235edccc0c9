use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arithmetics::numtheory::require_prime;
use crate::coefficients::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::qseries::{hilbert_euler, PuiseuxSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetTag {
    #[serde(rename = "trivial")]
    Trivial,
    #[serde(rename = "gerbe-line-bundle")]
    GerbeLineBundle,
}

impl DetTag {
    pub fn as_str(self) -> &'static str {
        match self {
            DetTag::Trivial => "trivial",
            DetTag::GerbeLineBundle => "gerbe-line-bundle",
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VWRow {
    pub rank: u32,
    pub det_tag: DetTag,
    pub c2: Rat,
    pub value: Rat,
    /// Taken from a residue formula that disagrees with the generating series.
    #[serde(default, skip_serializing_if = "is_false")]
    pub provisional: bool,
}

/// Twisted invariants indexed by `c2`; every `c2` below `complete_below` is
/// either listed or zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VWTable {
    pub complete_below: Rat,
    pub rows: Vec<VWRow>,
}

impl VWTable {
    fn rank(&self) -> u32 {
        self.rows.first().map_or(1, |r| r.rank)
    }

    /// Generating series `sum value q^c2`.
    pub fn to_series(&self) -> Result<PuiseuxSeries> {
        PuiseuxSeries::from_terms(
            self.rank(),
            1,
            self.complete_below.clone(),
            self.rows
                .iter()
                .map(|r| (r.c2.clone(), CycNum::from_rat(1, r.value.clone()))),
        )
    }

    pub fn to_csv(&self) -> String {
        let flagged = self.rows.iter().any(|r| r.provisional);
        let mut out = String::from("rank,det_tag,c2,value");
        out.push_str(if flagged { ",provisional\n" } else { "\n" });
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}",
                r.rank,
                r.det_tag.as_str(),
                r.c2,
                r.value
            ));
            if flagged {
                out.push_str(if r.provisional { ",yes" } else { ",no" });
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn chi(n: i64) -> Rat {
    Rat::from(hilbert_euler(n))
}

/// Invariants of a nontrivial essentially trivial mu_r-gerbe with determinant
/// the defining line bundle, for `0 <= c2 <= c2_max`.
///
/// Values are read off `(1/r) q^r sum_j G(zeta^j q^(1/r))`:
/// `vw_{c2} = chi(Hilb^(r (c2 - r) + 1))`. For `r = 2` this is
/// `chi(Hilb^(4k-3))` at `c2 = 2k` and `chi(Hilb^(4k-1))` at `c2 = 2k+1`.
/// With `as_stated` and odd `r`, the residues `c2 = rk+1` and `c2 = rk+r-1`
/// use the alternative residue list instead (`chi(Hilb^(r^2 k - (r^2 - r)))`,
/// `chi(Hilb^(r^2 k - 1))`) and are marked provisional.
pub fn vw_essentially_trivial(r: u32, c2_max: i64, as_stated: bool) -> Result<VWTable> {
    require_prime(r)?;
    if c2_max < 0 {
        return Err(Error::OutOfRange(format!("c2_max = {c2_max} must be >= 0")));
    }
    let ri = r as i64;
    let mut rows = Vec::new();
    for c2 in 0..=c2_max {
        let (k, j) = (c2.div_euclid(ri), c2.rem_euclid(ri));
        let stated = if as_stated && r > 2 && j == 1 {
            Some(ri * ri * k - (ri * ri - ri))
        } else if as_stated && r > 2 && j == ri - 1 {
            Some(ri * ri * k - 1)
        } else {
            None
        };
        let (value, provisional) = match stated {
            Some(n) => (chi(n), true),
            None => (chi(ri * (c2 - ri) + 1), false),
        };
        rows.push(VWRow {
            rank: r,
            det_tag: DetTag::GerbeLineBundle,
            c2: Rat::integer(c2),
            value,
            provisional,
        });
    }
    Ok(VWTable {
        complete_below: Rat::integer(c2_max + 1),
        rows,
    })
}

/// Invariants of an optimal mu_r-gerbe with trivial determinant:
/// Mukai vector `(r, 0, -k/r)` sits at `c2 = (k + r^2 - 1)/r` with value
/// `chi(Hilb^k)/r`, listed for `c2 <= c2_max`.
pub fn vw_optimal(r: u32, c2_max: i64) -> Result<VWTable> {
    require_prime(r)?;
    let ri = r as i64;
    let mut rows = Vec::new();
    let mut k = 0i64;
    loop {
        let c2 = Rat::new(k + ri * ri - 1, ri);
        if c2 > Rat::integer(c2_max) {
            break;
        }
        rows.push(VWRow {
            rank: r,
            det_tag: DetTag::Trivial,
            c2,
            value: Rat::from(hilbert_euler(k)) / Rat::from(BigInt::from(ri)),
            provisional: false,
        });
        k += 1;
    }
    Ok(VWTable {
        complete_below: Rat::integer(c2_max) + Rat::new(1, ri),
        rows,
    })
}
