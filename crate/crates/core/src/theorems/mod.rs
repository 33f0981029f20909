//! Checkers for the structural statements on cyclic components.

mod probe;
mod profile;
mod verify;

pub use probe::{directing_growth_probe, GrowthProbe};
pub use profile::{census, directing_flags, module_profile, Census, ModuleProfile, DEFAULT_EXT_BUDGET};
pub use verify::{verify_cor_2_6, verify_prop_2_4, verify_theorem_1, verify_theorem_2};
