//! Closed-form partition functions: P2 and P(2,2,2) vector-bundle series,
//! twisted K3 series per gerbe type, and the SU(r)/Z_r aggregates.

mod k3;
mod p2;
mod table;

pub use k3::{
    certify_rational, z_ess_trivial, z_k3_complex_structure_free, z_k3_surzr, z_k3_trivial_gerbe,
    z_k3_vw_prediction, z_optimal, z_optimal_twisted_sign,
};
pub use p2::{hurwitz_series, p2_prefactor, z_vb_p2, z_vb_p222, HurwitzType};
pub use table::{vw_essentially_trivial, vw_optimal, DetTag, VWRow, VWTable};

use serde::{Deserialize, Serialize};

use crate::arithmetics::numtheory::require_prime;
use crate::arithmetics::validate_picard;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: i64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    P2,
    P222,
    K3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    kind: SurfaceKind,
    picard: Option<u32>,
    rank: u32,
}

impl SurfaceSpec {
    pub fn new(kind: SurfaceKind, picard: Option<u32>, rank: u32) -> Result<Self> {
        require_prime(rank)?;
        match (kind, picard) {
            (SurfaceKind::K3, Some(rho)) => validate_picard(rho)?,
            (SurfaceKind::K3, None) => {
                return Err(Error::OutOfRange(
                    "a K3 surface needs a Picard number".into(),
                ))
            }
            (_, Some(_)) => {
                return Err(Error::OutOfRange(
                    "Picard number only applies to K3 surfaces".into(),
                ))
            }
            (_, None) => {}
        }
        Ok(SurfaceSpec { kind, picard, rank })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn picard(&self) -> Option<u32> {
        self.picard
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }
}
