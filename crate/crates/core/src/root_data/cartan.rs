//! Cartan types and their Bourbaki-numbered Cartan matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G];

    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn rank_ok(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

/// Irreducible reduced Cartan type, e.g. `C3` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    series: Series,
    rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if !series.rank_ok(rank) {
            return Err(Error::InvalidCartanType(format!("{}{}", series.letter(), rank)));
        }
        Ok(CartanType { series, rank })
    }

    pub fn series(self) -> Series {
        self.series
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every valid type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for s in Series::ALL {
            for r in 1..=max_rank {
                if let Ok(t) = CartanType::new(s, r) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Squared lengths of the simple roots (shortest = 1) and the edges of
    /// the Dynkin diagram, 0-based, Bourbaki numbering.
    fn diagram(self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.series {
            Series::A => (vec![1; n], chain(n)),
            Series::B => {
                let mut len = vec![2; n];
                len[n - 1] = 1;
                (len, chain(n))
            }
            Series::C => {
                let mut len = vec![1; n];
                len[n - 1] = 2;
                (len, chain(n))
            }
            Series::D => {
                let mut edges = chain(n - 1);
                edges.push((n - 3, n - 1));
                (vec![1; n], edges)
            }
            Series::E => {
                let mut edges = vec![(0, 2), (1, 3), (2, 3)];
                edges.extend((3..n - 1).map(|i| (i, i + 1)));
                (vec![1; n], edges)
            }
            Series::F => (vec![2, 2, 1, 1], chain(4)),
            Series::G => (vec![1, 3], chain(2)),
        }
    }

    /// Bourbaki Cartan matrix `a_ij = ⟨α_i^∨, α_j⟩`.
    pub fn cartan_matrix(self) -> Matrix<i64> {
        let (len, edges) = self.diagram();
        let n = self.rank;
        let mut a = Matrix::<i64>::identity(n);
        for i in 0..n {
            a[(i, i)] = 2;
        }
        for (i, j) in edges {
            let long = len[i].max(len[j]);
            a[(i, j)] = -long / len[i];
            a[(j, i)] = -long / len[j];
        }
        a
    }

    /// Order of the center of the simply connected group, `|P/Q|`.
    pub fn center_order(self) -> u64 {
        self.cartan_matrix().det() as u64
    }

    /// Langlands dual type (B and C swapped).
    pub fn dual(self) -> CartanType {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        CartanType { series, rank: self.rank }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(series, rank).map_err(|_| bad())
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let t: CartanType = "C3".parse().unwrap();
        assert_eq!(t.to_string(), "C3");
        assert_eq!("e8".parse::<CartanType>().unwrap().to_string(), "E8");
        for bad in ["B1", "D2", "E5", "E9", "F3", "G3", "X2", "A0", "A", ""] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn bourbaki_matrices() {
        let b2: CartanType = "B2".parse().unwrap();
        assert_eq!(b2.cartan_matrix(), Matrix::from_rows(2, vec![vec![2, -1], vec![-2, 2]]));
        let c2: CartanType = "C2".parse().unwrap();
        assert_eq!(c2.cartan_matrix(), Matrix::from_rows(2, vec![vec![2, -2], vec![-1, 2]]));
        let g2: CartanType = "G2".parse().unwrap();
        assert_eq!(g2.cartan_matrix(), Matrix::from_rows(2, vec![vec![2, -3], vec![-1, 2]]));
        let f4: CartanType = "F4".parse().unwrap();
        assert_eq!(f4.cartan_matrix()[(1, 2)], -1);
        assert_eq!(f4.cartan_matrix()[(2, 1)], -2);
    }

    #[test]
    fn center_orders() {
        let orders = [("A4", 5), ("B5", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)];
        for (t, o) in orders {
            assert_eq!(t.parse::<CartanType>().unwrap().center_order(), o, "{t}");
        }
    }

    #[test]
    fn enumerate_small_types() {
        let names: Vec<String> = CartanType::all_up_to_rank(3).iter().map(|t| t.to_string()).collect();
        assert_eq!(names, ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "G2"]);
        assert_eq!(CartanType::all_up_to_rank(8).len(), 8 + 7 + 7 + 6 + 3 + 1 + 1);
    }
}
