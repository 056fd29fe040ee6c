//! Root systems, root data and their canonical invariant forms.

mod cartan;
mod datum;
mod recognize;
mod system;
mod weight_datum;

pub use cartan::{CartanType, Series};
pub use datum::{CanonicalForm, Isogeny, RootDatum};
pub(crate) use datum::{coordinate_denominator_lcm, fmt_vector};
pub use recognize::{recognize, Recognition};
pub use system::{symmetrizer, RootSystem};
pub use weight_datum::WeightDatum;
