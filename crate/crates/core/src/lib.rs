//! Exact algebra for isothermal minimal surfaces built from complex
//! quaternions.
//!
//! An isotropic curve `Φ` (a holomorphic map into ℂ³ with `Φ₁²+Φ₂²+Φ₃² ≡ 0`)
//! is stored as a Laurent polynomial with complex-quaternion coefficients.
//! The crate converts between the Weierstraß–Enneper data `(f, g)`, the
//! `(p, q, w)` form, the conjugation form `χ L χ⁻¹` and the preimage pair
//! `(A, λ)` with `Φ = λ A L Aᶜ`, integrates `Φ` to closed-form surfaces and
//! checks their differential geometry, builds Enneper patches from corner
//! data, and generates spatial PH curves.
//!
//! All algebraic identities are evaluated over Gaussian rationals, so they
//! hold with exact equality. Floating point is used only for sampling,
//! curvature and eigenvalue paths.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, meshes on disk
//! and the command-line tool live in the `mincq` crate.
#![no_std]

extern crate alloc;

pub mod bivariate;
mod error;
pub mod linalg;
pub mod patch;
pub mod phcurve;
pub mod poly;
pub mod quat;
pub mod roots;
pub mod scalar;
pub mod surface;
pub mod sylvester;
pub mod weierstrass;

pub use error::{Error, Result};
pub use poly::{AntiderivativeForm, CLaurent, Laurent, QLaurent};
pub use quat::{CQuat, FQuat, Quaternion};
pub use scalar::{CRational, Scalar};
