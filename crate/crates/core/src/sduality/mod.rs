//! Modular S and T on finite eta-quotient bases, with checks against the
//! partition functions.

mod basis;
mod surd;
mod verify;

pub use basis::{
    s_transform, s_transform_with, t_transform_basis, BasisSet, BasisSymbol, EtaBasisExpr, RuleSet,
    STransformRule,
};
pub use surd::QuadSurd;
pub use verify::{
    expand_k3_rank2, expand_zagier, verify_even_odd_transforms, verify_p2_sduality,
    verify_su2_k3_sduality, CheckResult, CheckStatus,
};
