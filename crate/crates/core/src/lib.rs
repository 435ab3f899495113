//! Learnability toolkit for discounted-utility models of intertemporal choice.
//!
//! Every preference family handled here reduces a choice between two plans to
//! the sign of a univariate polynomial in the discount parameter. The modules
//! build on that reduction:
//!
//! - [`polynomial`]: dense `f64` polynomials, Sturm root counting, sign partitions.
//! - [`exact`]: the same machinery over exact rationals, for constructions
//!   that `f64` plans cannot represent.
//! - [`models`]: discount families and the choice rule.
//! - [`datagen`]: the root-uniform pair distribution and dataset files.
//! - [`pac`]: consistent-parameter search, fitting and learning curves.
//! - [`vcdim`]: shattering checks and explicit shattered sets.
//! - [`active`]: CAL under the root-uniform distribution and the disagreement coefficient.
//! - [`mq`]: membership-query learning by indifference-point search.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod active;
pub mod datagen;
pub mod error;
pub mod exact;
pub mod interval;
pub mod models;
pub mod mq;
pub mod pac;
pub mod polynomial;
pub mod vcdim;

pub use error::{Error, Result};
pub use interval::{Interval, IntervalSet};
pub use models::{ChoicePair, DiscountModel, LabeledDataset, Plan};
pub use polynomial::{Polynomial, SignPartition};

/// Sign under the tie convention used throughout: 1 for `x >= 0`, else 0.
#[inline]
pub fn sgn(x: f64) -> u8 {
    u8::from(x >= 0.0)
}
