//! Dunkl operators for finite reflection groups in exact rational
//! arithmetic: the intertwining operator and moment functions, Appell
//! characters and cocharacters of the k-Gaussian semigroup, exact Gaussian
//! integration of polynomials, and floating-point evaluation of the Dunkl
//! kernel and heat kernel.
//!
//! ```
//! use dunkl_core::{ratio, DunklContext, MultiIndex, Polynomial};
//!
//! let ctx = DunklContext::from_catalog("Z2", 1, vec![ratio(1, 1)]).unwrap();
//! let m2 = ctx.moment_function(&MultiIndex::new(vec![2])).unwrap();
//! assert_eq!(m2.to_string(), "1/3*x1^2");
//! ```

pub mod appell;
pub mod dunkl;
pub mod error;
pub mod group;
pub mod intertwine;
pub mod kernel;
pub mod linalg;
pub mod multi_index;
pub mod par;
pub mod poly;
pub mod quadrature;
pub mod rational;
pub mod verify;

pub use appell::{a_lambda, AppellEntry, AppellTables, GaussianSpec, RecursionSides};
pub use dunkl::{DegreeBasis, DunklContext};
pub use error::{Error, Result};
pub use group::{gamma_k, resolve_catalog, Family, Multiplicity, RootSystem};
pub use intertwine::DegreeMatrix;
pub use kernel::{CkMode, KernelValue, NumericEvalConfig};
pub use linalg::RationalMatrix;
pub use multi_index::MultiIndex;
pub use par::Strategy;
pub use poly::{LinearMap, Polynomial};
pub use rational::{format_rational, int, parse_rational, parse_rational_list, ratio, Rational};
pub use verify::{Fault, Suite, SuiteReport, VerifyConfig};
