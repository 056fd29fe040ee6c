//! Naming a semisimple datum: Cartan type, center, fundamental group and,
//! when the data pin it down, a standard group name.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::AbelianInvariants;
use crate::root_data::{recognize, CartanType, Series, WeightDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupIdentity {
    pub cartan_type: CartanType,
    /// Characters of the center: weights modulo roots.
    pub center_chars: AbelianInvariants,
    /// Full weight lattice modulo the weights.
    pub fundamental_group: AbelianInvariants,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub canonical_name: Option<String>,
}

impl GroupIdentity {
    pub fn is_simply_connected(&self) -> bool {
        self.fundamental_group.is_trivial()
    }

    pub fn is_adjoint(&self) -> bool {
        self.center_chars.is_trivial()
    }
}

impl fmt::Display for GroupIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.canonical_name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{} (center^ = {}, pi1 = {})", self.cartan_type, self.center_chars, self.fundamental_group),
        }
    }
}

fn order(a: &AbelianInvariants) -> u64 {
    a.order().to_u64().expect("small group order")
}

/// Identifies the group with the given weight datum.
pub fn identify_weight_datum(w: &WeightDatum) -> Result<GroupIdentity> {
    let rec = recognize(w.cartan_matrix())?;
    let center_chars = w.center_characters()?;
    let fundamental_group = w.fundamental_group()?;
    let t = rec.cartan_type;
    let n = t.rank();
    let pi1 = order(&fundamental_group);
    let full = order(&center_chars) * pi1;
    let sc = pi1 == 1;
    let adj = pi1 == full;
    let name = match t.series() {
        Series::A if sc => Some(format!("SL{}", n + 1)),
        Series::A if adj => Some(format!("PSL{}", n + 1)),
        Series::A => Some(format!("SL{}/mu{}", n + 1, pi1)),
        Series::B if n == 2 => Some(if sc { "Sp4" } else { "SO5" }.to_string()),
        Series::B => Some(format!("{}{}", if sc { "Spin" } else { "SO" }, 2 * n + 1)),
        Series::C => Some(format!("{}{}", if sc { "Sp" } else { "PSp" }, 2 * n)),
        Series::D if sc => Some(format!("Spin{}", 2 * n)),
        Series::D if adj => Some(format!("PSO{}", 2 * n)),
        Series::D if n % 2 == 1 => Some(format!("SO{}", 2 * n)),
        Series::D if n == 4 => None,
        Series::D => {
            // Bourbaki node 1 carries the vector representation
            let vector = w.fundamental_weight(rec.perm[0])?;
            let prefix = if w.weights().contains(&vector)? { "SO" } else { "HSpin" };
            Some(format!("{prefix}{}", 2 * n))
        }
        Series::E if n == 8 => Some("E8".into()),
        Series::E => Some(format!("E{n}_{}", if sc { "sc" } else { "adj" })),
        Series::F => Some("F4".into()),
        Series::G => Some("G2".into()),
    };
    debug_assert_eq!(BigInt::from(full), BigInt::from(t.center_order()));
    Ok(GroupIdentity { cartan_type: t, center_chars, fundamental_group, canonical_name: name })
}
