//! Bohr radii, growth bounds and area bounds for harmonic mappings
//! `f = h + ḡ` whose analytic part is Ma-Minda convex and whose dilation
//! is `ω(z) = αz`.
//!
//! The pieces, bottom up:
//!
//! - [`series`]: truncated real power series and the `K'` recurrence.
//! - [`phi`]: Ma-Minda functions, presets and custom coefficient lists.
//! - [`extremal`]: the extremal pair `K`, `H = zK'` and boundary integrals.
//! - [`functionals`]: growth, area and majorant functionals, Janowski
//!   closed forms, coefficient bounds.
//! - [`solver`]: smallest-root search and the radius pipelines.
//! - [`oracle`]: independent brute-force cross-checks.
//! - [`report`]: grid sweeps, CSV/JSON emission and the verification suite.
//!
//! ```
//! use harmonic_bohr::{solver, AlphaParam};
//!
//! let r = solver::bohr_radius_mab(AlphaParam::new(0.5)?, 0.0, 1e-10)?;
//! assert!((r.r_f - 0.273).abs() < 1e-3);
//! # Ok::<(), harmonic_bohr::Error>(())
//! ```

pub mod error;
pub mod extremal;
pub mod functionals;
pub mod oracle;
pub mod phi;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod solver;

pub use error::{Error, Result};
pub use extremal::ExtremalPair;
pub use functionals::{AlphaParam, Functionals};
pub use phi::PhiSpec;
pub use series::TruncatedSeries;
pub use solver::{Pipeline, RadiusQuery, RadiusResult};
