//! Effective resistances on circulant graphs.
//!
//! The crate covers the graph model ([`circulant`]), exact Fibonacci and
//! Lucas numbers ([`exact`]), eigenvalue-sum resistances ([`spectral`]),
//! exact closed forms for `C_N(1,2)`, `C_N(2)` and the cycle
//! ([`closed_form`]), first-passage statistics ([`walk`]), and an
//! independent linear-solve oracle ([`oracle`]) with verification reports
//! ([`report`]).
//!
//! ```
//! use circres::{closed_form, BigRational};
//!
//! // Octahedron: C_6(1,2), antipodal pair.
//! let r = closed_form::c12_resistance(6, 3).unwrap();
//! assert_eq!(r, BigRational::new(1.into(), 2.into()));
//! ```

pub mod circulant;
pub mod closed_form;
mod error;
pub mod exact;
pub mod oracle;
pub mod report;
pub mod spectral;
pub mod walk;

pub use circulant::{build_circulant, CirculantSpec, DenseLaplacian, EigenvalueTable};
pub use error::{Error, Result};
pub use exact::{fib, lucas, BigInt, BigRational};
pub use report::{Check, Quantity, VerificationReport};
