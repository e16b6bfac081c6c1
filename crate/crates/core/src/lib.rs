//! Exact combinatorics of weight lattices, toric cones, and nilpotent orbit
//! covers for the simple Lie types.
//!
//! Everything here runs over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. The central objects are the lattice
//! pair `P ⊃ Q` (weight lattice over root lattice) of a simple root system,
//! the distinguished coset representatives `λ_dom`, `λ_R`, `λ_C`, the affine
//! toric cone data they generate, the finite fiber groups `Z(J)` attached to
//! faces of that cone, and weight-multiplicity sums over the coset table.
//!
//! Modules map onto the computation pipeline:
//!
//! - [`intlat`]: Smith normal form, lattice quotients, saturated
//!   lattice-subspace intersections, exact rational solves.
//! - [`rootsys`]: root-system construction, Weyl reflections, dominance.
//! - [`cosets`]: the `P/Q` coset table with `λ_dom`/`λ_R`/`λ_C` and
//!   Weyl-conjugacy witness words.
//! - [`toric`]: the cone `σ`, semigroup decompositions, smoothness tests,
//!   resolution by stellar subdivision, canonical-module lattice points,
//!   orbifold charts.
//! - [`fibers`]: the fiber groups `Z(J)` computed three independent ways.
//! - [`repmult`]: Freudenthal weight multiplicities, the orbit-cover
//!   multiplicity formula, and the B-orbit-closure normality classifier.
//!
//! ```
//! use nilcover::cosets::enumerate_cosets;
//! use nilcover::rootsys::{build_root_system, RootFamily, RootSystemId};
//!
//! let rs = build_root_system(RootSystemId::new(RootFamily::A, 3))?;
//! let table = enumerate_cosets(&rs)?;
//! assert_eq!(table.len(), 4);
//! let middle = &table.records()[2];
//! assert_eq!(middle.lambda_r.alpha_string(), "1/2 α1 + 0 α2 + 1/2 α3");
//! # Ok::<(), nilcover::Error>(())
//! ```

pub mod cosets;
pub mod error;
pub mod fibers;
pub mod intlat;
pub mod repmult;
pub mod rootsys;
pub mod toric;

pub use cosets::{CosetRecord, CosetTable};
pub use error::Error;
pub use intlat::{FiniteAbelianGroup, IntMatrix, LatticePair, QMatrix};
pub use rootsys::{RootFamily, RootSystem, RootSystemId, WeightVec};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
