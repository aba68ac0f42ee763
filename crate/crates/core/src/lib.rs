//! Numerical toolkit for integral means of analytic mappings defined by
//! iterating Janowski functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated complex power series, the representation every
//!   function in the toolkit is built on.
//! * [`operators`]: the Salagean derivative, the averaging iteration
//!   `p -> (alpha / z^alpha) * int_0^z t^(alpha - 1) p(t) dt`, the Janowski
//!   generators `L_n(a, b; z)` and class membership tests.
//! * [`sampling`]: seeded random Schwarz functions and class members.
//! * [`baernstein`]: circle samples, star functions, rearrangements and
//!   integral means.
//! * [`verification`]: executable checks of the integral-means inequalities
//!   and the lemmas they rest on, producing [`verification::VerificationReport`]s.
//! * [`sweep`]: parameter-grid sweeps of the inequalities.
//! * [`report`]: CSV and JSON serialisation of reports and curves.

pub mod baernstein;
pub mod error;
pub mod operators;
pub mod report;
pub mod sampling;
pub mod series;
pub mod sweep;
pub mod verification;

pub use baernstein::{CircleSamples, ConvexTestFn, StarFunction};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use operators::{ClassMember, ClassParams};
pub use sampling::{SampleConfig, SchwarzFunction};
pub use series::{EvaluationPoint, TruncatedSeries};
pub use verification::{Precision, VerificationReport};
