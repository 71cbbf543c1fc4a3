//! Exact real-root analysis for polynomial sequences generated by
//!
//! ```text
//! W_n(z) = (a z + b) W_{n-1}(z) + (c z + d) W_{n-2}(z),   W_0 = 1, W_1 = z
//! ```
//!
//! All symbolic work is done over arbitrary-precision rationals and real
//! quadratic extensions `p + q sqrt(D)`, so every sign, ordering and root
//! count reported by this crate is exact. Floating point is only used for
//! display and for the closed-form cross-check in [`sequence`].
//!
//! Layering, bottom to top:
//!
//! - [`exactnum`]: rationals and quadratic numbers with exact sign tests.
//! - [`poly`]: dense univariate polynomials over the rationals.
//! - [`sequence`]: the recurrence, its auxiliary polynomials and identities.
//! - [`isolate`]: Sturm chains, root isolation and exact point comparisons.
//! - [`landmarks`]: cutting points, thresholds, intervals and case tags.
//! - [`interlace`]: interval root counts, interlacing and the cubic analysis.
//! - [`scan`]: seeded parameter sweeps and the large-`c` threshold.
//! - [`cli`]: the `interlace` command-line tool and worked-example fixtures.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod interlace;
pub mod isolate;
pub mod landmarks;
pub mod poly;
pub mod scan;
pub mod sequence;

pub use error::{Error, Result};
pub use exactnum::{QuadNum, Rational};
pub use poly::Poly;
pub use sequence::{Params, SequenceBundle};
