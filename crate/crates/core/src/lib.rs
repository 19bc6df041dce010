//! Finite models of Bézout domains through their groups of divisibility.
//!
//! A model is a lattice-ordered group built from lexicographic integer
//! powers and pointwise products ([`lgroup`]). Its prime spectrum is a
//! finite tree ([`bezout_model`]) on which the Zariski topology and the rim
//! closure are computed ([`spectral_poset`]). The primes that stay proper in
//! the complete integral closure are decided three independent ways and
//! cross-checked ([`criteria`]).

pub mod bezout_model;
pub mod criteria;
pub mod error;
pub mod lgroup;
pub mod random;
pub mod report;
pub mod spectral_poset;

pub use bezout_model::{is_almost_integral, BezoutSpectrum, NestedPair, PrimeFilter, VSetPattern};
pub use criteria::{check_height_bound, check_phi_invariance, cross_validate, CriteriaReport};
pub use error::{Error, Result};
pub use lgroup::{GroupElement, LGroup, LGroupDescriptor};
pub use spectral_poset::{check_qf_invariance, PointId, PointSet, SpectralPoset};
