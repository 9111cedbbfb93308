//! Concrete fusion rings: TLJ, group rings, `SU_q(n)`, gradings and their kernels,
//! products and free products.

pub mod free_product;
pub mod grading;
pub mod group;
pub mod lr;
pub mod product;
pub mod subring;
pub mod sun;
pub mod tlj;

pub use free_product::{build_free_product, FreeProduct};
pub use grading::{grading_kernel, grading_of_sun, integer_grading, GradingMap};
pub use group::{build_group_ring, GroupRing, GroupSpec};
pub use product::{build_product, ProductRing};
pub use subring::{build_full_subring, validate_full_subring, Subring};
pub use sun::{build_sun, build_sun_bounded, quantum_integer, SpecialUnitary};
pub use tlj::{build_tlj_ainf, build_tlj_ainf_exact, build_tlj_finite, TljFinite, TljInfinite};
