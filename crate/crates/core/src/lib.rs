//! Exact-arithmetic geometry of left-invariant almost contact structures with
//! Norden metric on Lie groups.
//!
//! Everything is computed over the rationals: structure constants, the
//! structure `(φ, ξ, η, g)`, the Levi-Civita connection, the fundamental
//! tensor `F`, the Nijenhuis tensor, curvature and the scalar invariants.
//! Identities are checked by exact equality.
//!
//! Typical pipeline:
//!
//! ```
//! use norden_core::{model_io::{generate_family, FamilyParams}, classifier::analyze, scalar::int};
//!
//! let model = generate_family(&FamilyParams::new(1, vec![int(2), int(3)]).unwrap()).unwrap();
//! let report = analyze(&model).unwrap();
//! assert_eq!(report.invariants.tau, int(10));
//! assert!(report.class_flags.is_f11);
//! ```

pub mod classifier;
pub mod connection;
pub mod curvature;
pub mod error;
pub mod lie_algebra;
pub mod linalg;
pub mod model_io;
pub mod report;
pub mod scalar;
pub mod structure;
pub mod structure_tensors;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tensor::{Tensor, Variance};
