//! Representation theory of the TLJ `A_∞` fusion algebra `ℂ[X]`, `X = ε + H_1`.

pub mod admissibility;
pub mod chebyshev;
pub mod l1;
pub mod moments;
pub mod norms;
pub mod plancherel;
pub mod point;

pub use admissibility::{
    admissibility, admissibility_from_moments, is_psd_exact, AdmissibilityVerdict, HankelMatrix, HankelTriple,
    RejectionWitness, DEFAULT_PSD_TOL,
};
pub use chebyshev::{chebyshev_v, chebyshev_v_closed, chebyshev_v_table};
pub use l1::{l1_range_check, L1Range};
pub use moments::{monomial_coefficients, monomial_table, moments, MomentSequence};
pub use norms::{omega_bound, reduced_norm, to_polynomial, universal_norm, SupNorm};
pub use plancherel::{plancherel_gram, plancherel_pair, QuadratureParams};
pub use point::{lambda_inv_of, multiplier_from_measure, phi_point};
