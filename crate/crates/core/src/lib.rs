//! Maximal families of pairwise quasi-orthogonal subalgebras of
//! `M_{p^k}^{⊗n}` built from Weyl operators over finite fields, together
//! with exact and numeric checks of quasi-orthogonality and the extraction
//! of mutually unbiased bases from MASA spreads.
//!
//! ```
//! use quasi_ortho::constructions::{build_recursive, ConstructionParams};
//! use quasi_ortho::verify::verify_qo_symbolic;
//!
//! let params = ConstructionParams::standard(3, 1, 2).unwrap();
//! let family = build_recursive(&params).unwrap();
//! assert_eq!(family.len(), 10);
//! assert!(verify_qo_symbolic(&family).passed);
//! ```

pub mod cli;
pub mod constructions;
pub mod error;
pub mod family_file;
pub mod finite_field;
pub mod phase_space;
pub mod report;
pub mod verify;
pub mod weyl;
pub mod zp;

pub use constructions::{build_masa_spread, build_recursive, build_spread_2, ConstructionParams, SpreadFamily};
pub use error::{Error, Result};
pub use finite_field::{FieldSpec, GFElement};
pub use phase_space::{PhasePoint, Subspace};
pub use report::VerificationReport;
pub use weyl::WeylMonomial;
