//! Language operations, the fixed gadget languages and the reduction
//! builders.

mod algebra;
mod gadgets;
mod reductions;

pub use algebra::{
    concat_fixed_delay, concat_sep, concat_sep_omega, empty_language, product, union, union_all, union_omega,
    universal, universal_omega,
};
pub use gadgets::{gadget_a, gadget_an, gadget_l2, gadget_l2_omega, gadget_r1, gadget_r2, gadget_r3, named_gadget};
pub use reductions::{
    build_tba_reduction, build_thm1, build_thm2, build_thm4, gadget_letter, ReductionReport, Resources,
};
