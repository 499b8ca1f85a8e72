//! Mixing transformations for plasma components with equal charge-to-mass
//! ratio: the charge-density-preserving family f1' = f1 - e2 F(f1,f2),
//! f2' = f2 + e1 F(f1,f2), its simplifying member that empties the first
//! component into the second, and the one-parameter exp(a) family
//! connecting the identity to that reduction. Verified symbolically on
//! the electromagnetic kinetic operator and numerically on solver states.

mod numeric;
mod symbolic;

pub use numeric::{
    apply_mixing, charge_density_l2_distance, exp_family_transform, reduce_equal_qm, Caveats,
    MixError, MixingFunction, ReductionResult,
};
pub use symbolic::{
    charge_density_invariance, operator_linearity_3d, InvarianceReport,
};
