//! Boolean functions with optimal algebraic immunity built from the polar
//! decomposition of the multiplicative group of GF(2^2m), together with the
//! machinery to analyze them: field arithmetic, truth tables and their
//! algebraic forms, exponent combinatorics, Walsh spectra, annihilators and
//! character sums.

pub mod analysis;
pub mod boolfun;
pub mod constructions;
pub mod error;
pub mod field;
pub mod gf2;
pub mod spectra;

pub use analysis::{
    algebraic_immunity, faa_min_degree, faa_profile, nonlinearity, walsh_spectrum, AiCertificate,
    FaaProfile, FaaRow, Side, WalshSpectrum,
};
pub use boolfun::{AnfForm, BivariateCoeffs, TruthTable, UnivariateForm};
pub use constructions::{Family, FamilySpec};
pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FieldSpec, PolarPair};
pub use gf2::BitMatrix;
