//! fistab: exact linear algebra and symbolic degree bounds for truncated
//! FI-modules over the rationals.
//!
//! An FI-module is a compatible sequence of symmetric-group representations
//! `V_0, V_1, V_2, ...` together with maps induced by injections of finite
//! sets. This crate works with *truncated* FI-modules: levels `0..=N` stored
//! as explicit rational matrices. On top of that it provides
//!
//! * symmetric-group combinatorics and character theory ([mod@partitions],
//!   [`characters`]),
//! * the induction functors, generation/relation detectors, shift and
//!   derivative of an FI-module, and observed degree reports ([`fimod`]),
//! * an exactly computable testbed: the cohomology of ordered configuration
//!   spaces of the plane, i.e. of pure braid groups ([`conf`]),
//! * symbolic propagation of piecewise-linear degree bounds with presets for
//!   pure mapping class groups, diffeomorphism groups and hyperelliptic
//!   mapping class groups ([`bounds`]),
//! * representation-stability diagnostics: irreducible multiplicities,
//!   character polynomials, stable inner products ([`repstab`]).
//!
//! All arithmetic is exact; there is no floating point anywhere.
//!
//! ```
//! use fistab::{build_conf_module, preset_pipeline, Preset};
//!
//! // the closed-form bound table for pure mapping class groups at k = 1
//! let bounds = preset_pipeline(Preset::Mcg, 1, 1).unwrap();
//! assert_eq!((bounds.delta, bounds.hmax, bounds.t0, bounds.t1), (2, 10, 13, 24));
//!
//! // the degree-one cohomology of planar configuration spaces, observed
//! // exactly: dimensions n(n-1)/2, generated in level 2, torsion-free
//! let module = build_conf_module(1, 6).unwrap();
//! let report = module.observed_degrees().unwrap();
//! assert_eq!((report.delta, report.hmax, report.t0), (2, -1, 2));
//! ```

pub mod bexpr;
pub mod bounds;
pub mod characters;
pub mod conf;
pub mod fileio;
pub mod fimod;
pub mod jsonout;
pub mod linalg;
pub mod partitions;
pub mod perms;
pub mod rational;
pub mod report;
pub mod repstab;

pub use bexpr::BoundExpr;
pub use bounds::{preset_pipeline, BoundsReport, DegreeProfile, Preset, SpectralInput};
pub use characters::ClassFunction;
pub use conf::{build_conf_module, character_oracle, dimension_oracle};
pub use fimod::{DegreeReport, FiModule, Flag, InducedLevel};
pub use partitions::{cycle_types, partitions, CycleType, Partition};
pub use rational::Rat;

/// Default truncation cap: levels above this are refused by the builders.
pub const DEFAULT_TRUNCATION_CAP: u32 = 9;

/// Environment variable that overrides the truncation cap.
pub const CAP_ENV_VAR: &str = "FISTAB_CAP";

/// The active truncation cap: `FISTAB_CAP` if set and parseable, else 9.
pub fn truncation_cap() -> u32 {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_TRUNCATION_CAP)
}
