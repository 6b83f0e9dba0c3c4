//! Exact homology of planar polygon spaces.
//!
//! For a length vector `ℓ = (l_1, ..., l_n)` the moduli space `M_ℓ` of closed
//! planar `n`-gons with those side lengths (up to rotation) has free
//! homology, with ranks determined by counting short and median subsets that
//! contain a longest link. This crate computes those ranks exactly and
//! checks them several independent ways:
//!
//! * [`census`]: subset counts by enumeration and by subset-sum dynamic
//!   programming with arbitrary-precision counts.
//! * [`betti`]: Betti vectors, Poincaré polynomials, emptiness and
//!   connectivity, equilateral closed forms, and the sharp bounds on the
//!   total Betti number.
//! * [`morse`]: the same ranks rebuilt from the Morse theory of the
//!   robot-arm distance map (critical points, sublevel homology, kernel and
//!   cokernel ranks).
//! * [`numeric`]: floating-point gradients and Hessians of the distance map
//!   and a Monte-Carlo estimate of the number of components.
//! * [`atlas`]: chamber fingerprints and sampled atlases of chambers.
//! * [`cli`]: the `polyspace` command line.
//!
//! ```
//! use polyspace::{betti_vector, LengthVector};
//!
//! let pentagon = LengthVector::new(vec![3, 2, 2, 1, 1]).unwrap();
//! assert_eq!(betti_vector(&pentagon).unwrap().to_string(), "(1,4,1)");
//! ```

pub mod atlas;
pub mod betti;
pub mod census;
pub mod cli;
pub mod error;
pub mod model;
pub mod morse;
pub mod numeric;

pub use atlas::{atlas_extremes, fingerprint, sample_atlas, Atlas, AtlasEntry, ChamberFingerprint};
pub use betti::{
    betti_vector, bound_asymptotic, bound_total, bound_total_generic_even, component_count,
    equilateral_betti, is_empty, pentagon_genus, poincare, BettiVector, PoincarePolynomial,
};
pub use census::{census_dp, census_naive, prefix_census, Backend, Census, PrefixCensus};
pub use error::{Error, Result};
pub use model::{LengthVector, SubsetClass, SubsetMask};
pub use morse::{
    betti_via_pipeline, critical_points, decomposition, intersection_pairing, wa_homology,
    CriticalPoint, DecompositionRanks, WaHomology,
};
pub use numeric::{
    apply_involution, collinear_config, f_arm, grad_f, morse_index_numeric, sample_components,
    ArmConfiguration,
};
