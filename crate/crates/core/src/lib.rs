//! Generating function of the sine point process.
//!
//! [`fredholm::fredholm_f`] evaluates
//! `F(x, s) = det(1 - Σ_k (1 - s_k) K|_(x_{k-1}, x_k))` for the sine kernel
//! by Nyström discretisation; [`asymptotics`] holds the closed-form large-gap
//! expansions it is checked against, and [`counting`] turns determinants into
//! counting probabilities.
//!
//! ```
//! use sinegap::{fredholm_f, IntervalPartition, WeightConfiguration};
//!
//! let x = IntervalPartition::new(vec![0.0, 1.0]).unwrap();
//! let s = WeightConfiguration::real(&[0.0]).unwrap();
//! let gap = fredholm_f(&x, &s, 2.0, 32).unwrap();
//! assert!(gap.error_estimate < 1e-12);
//! assert!(gap.real_value() > 0.0 && gap.real_value() < 1.0);
//! ```

mod ddouble;
mod error;

pub mod asymptotics;
pub mod cli;
pub mod counting;
pub mod fredholm;
pub mod partition;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use fredholm::{fredholm_f, fredholm_f_with, series_oracle, DeterminantResult, FredholmOptions};
pub use partition::{IntervalPartition, WeightConfiguration};
