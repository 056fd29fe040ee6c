//! Exact computations for twisted Satake duality: root data, central
//! extensions of loop groups, tame symbols and the twisted dual group.
//!
//! All arithmetic is exact. Generic code is written against the traits in
//! [`scalar`]; the aliases below fix the concrete types used by the rest of
//! the crate.

pub mod central_ext;
pub mod error;
pub mod lattice;
pub mod loop_symbols;
pub mod matrix;
pub mod rep_check;
pub mod root_data;
pub mod scalar;
pub mod serde_util;
pub mod twisted_dual;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use lattice::{congruence_kernel, AbelianInvariants, Lattice};
pub use matrix::Matrix;
pub use root_data::{CartanType, Isogeny, RootDatum, Series, WeightDatum};
pub use central_ext::ExtensionSpec;
pub use loop_symbols::{LaurentSeries, TorusLoopPoint};
pub use scalar::{Field, Fp};
pub use rep_check::WeightMultiplicities;
pub use twisted_dual::{GroupIdentity, TwistedDualDatum};

pub type Rational = BigRational;
pub type QVector = Vec<Rational>;
pub type QMatrix = Matrix<Rational>;
pub type IntMatrix = Matrix<BigInt>;
pub type QSeries = LaurentSeries<Rational>;
pub type FpSeries<const P: u64> = LaurentSeries<Fp<P>>;
