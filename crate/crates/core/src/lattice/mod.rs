//! Full-rank lattices in a rational coordinate space.
//!
//! A [`Lattice`] always has rank equal to its ambient dimension. Its basis is
//! kept in Hermite normal form, so two equal lattices also have equal bases;
//! equality is nevertheless defined (and tested) by mutual membership.

mod normal_form;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use normal_form::{gcd_all, hermite_normal_form, smith_normal_form, SmithForm};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::serde_util;
use crate::{IntMatrix, QMatrix, QVector, Rational};

/// Finite abelian group given by invariant factors `d_1 | d_2 | ...`, each ≥ 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants(Vec<BigInt>);

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants(Vec::new())
    }

    /// From raw Smith diagonal entries; units are dropped. Zero entries are
    /// rejected since every quotient here is finite.
    pub fn from_diagonal(diag: &[BigInt]) -> Result<Self> {
        if diag.iter().any(|x| x.is_zero()) {
            return Err(Error::Invariant("infinite quotient in abelian invariants".into()));
        }
        let mut f: Vec<BigInt> = diag.iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
        f.sort();
        for w in f.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Invariant("divisibility chain broken".into()));
            }
        }
        Ok(AbelianInvariants(f))
    }

    /// Checked constructor from a list that must already be a divisibility chain.
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        if factors.iter().any(|x| x < &BigInt::from(2)) {
            return Err(Error::Parse("invariant factors must be at least 2".into()));
        }
        for w in factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Parse("invariant factors must form a divisibility chain".into()));
            }
        }
        Ok(AbelianInvariants(factors))
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.0
    }

    pub fn order(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, x| acc * x)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.len() <= 1
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<u64> = self
            .0
            .iter()
            .map(|x| x.to_u64().ok_or_else(|| serde::ser::Error::custom("invariant factor too large")))
            .collect::<std::result::Result<_, _>>()?;
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianInvariants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        AbelianInvariants::new(v.into_iter().map(BigInt::from).collect()).map_err(serde::de::Error::custom)
    }
}

/// Full-rank lattice in `Q^n`, basis vectors stored as rows.
#[derive(Clone)]
pub struct Lattice {
    basis: QMatrix,
    inverse: QMatrix,
}

fn to_q(x: &BigInt) -> Rational {
    BigRational::from_integer(x.clone())
}

/// Common denominator of a rational matrix.
fn denominator_lcm(m: &QMatrix) -> BigInt {
    (0..m.rows())
        .flat_map(|i| m.row(i).iter().map(|x| x.denom().clone()).collect::<Vec<_>>())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

fn vector_string(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl Lattice {
    /// Lattice with the given basis. The vectors must be `n` independent
    /// vectors of `Q^n`.
    pub fn from_basis(dim: usize, basis: Vec<QVector>) -> Result<Self> {
        if basis.len() != dim {
            return Err(Error::NotFullRank);
        }
        Self::from_generators(dim, basis)
    }

    /// Lattice spanned by an arbitrary generating set, which must have full rank.
    pub fn from_generators(dim: usize, gens: Vec<QVector>) -> Result<Self> {
        for g in &gens {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
        }
        if gens.len() < dim {
            return Err(Error::NotFullRank);
        }
        let m = Matrix::from_rows(dim, gens);
        let den = denominator_lcm(&m);
        let scaled: IntMatrix = m.map(|x| (x * to_q(&den)).to_integer());
        let h = hermite_normal_form(&scaled);
        if h.rows() != dim {
            return Err(Error::NotFullRank);
        }
        let basis = h.map(|x| BigRational::new(x.clone(), den.clone()));
        let inverse = basis.inverse().ok_or(Error::NotFullRank)?;
        Ok(Lattice { basis, inverse })
    }

    pub fn standard(dim: usize) -> Self {
        let id = QMatrix::identity(dim);
        Lattice { basis: id.clone(), inverse: id }
    }

    /// `k · Z^n`.
    pub fn scaled_standard(dim: usize, k: &Rational) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::NotFullRank);
        }
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { k.clone() } else { Rational::zero() }).collect())
            .collect();
        Self::from_basis(dim, rows)
    }

    /// `k · L`.
    pub fn scale(&self, k: &Rational) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::NotFullRank);
        }
        let rows = self.basis_vectors().into_iter().map(|v| v.into_iter().map(|x| x * k).collect()).collect();
        Self::from_basis(self.ambient_dim(), rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis in Hermite normal form, one vector per row.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.basis.row_vecs()
    }

    fn check_dim(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: v.len() });
        }
        Ok(())
    }

    /// Coordinates of `v` in the basis.
    pub fn coordinates(&self, v: &[Rational]) -> Result<QVector> {
        self.check_dim(v)?;
        Ok(self.inverse.vec_mul(v))
    }

    /// Integer coordinates of `v`, or `None` when `v` is not in the lattice.
    pub fn integer_coordinates(&self, v: &[Rational]) -> Result<Option<Vec<BigInt>>> {
        let c = self.coordinates(v)?;
        Ok(c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.iter().all(|x| x.is_integer()))
    }

    /// Vector from integer coordinates.
    pub fn combine(&self, coords: &[BigInt]) -> QVector {
        let c: QVector = coords.iter().map(to_q).collect();
        self.basis.vec_mul(&c)
    }

    /// True when `other ⊆ self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.ambient_dim() == self.ambient_dim()
            && other.basis_vectors().iter().all(|b| self.contains(b).unwrap_or(false))
    }

    /// Absolute value of the basis determinant (covolume).
    pub fn covolume(&self) -> Rational {
        self.basis.det().abs()
    }

    /// `{y : xᵀ · pairing · y ∈ Z for all x in self}`.
    pub fn dual(&self, pairing: &QMatrix) -> Result<Lattice> {
        let n = self.ambient_dim();
        if pairing.rows() != n || pairing.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: pairing.rows() });
        }
        let bp = &self.basis * pairing;
        let inv = bp.inverse().ok_or(Error::DegeneratePairing)?;
        Lattice::from_basis(n, inv.transpose().row_vecs())
    }

    /// Matrix expressing the basis of `small` in the basis of `self`.
    fn relative_matrix(&self, small: &Lattice) -> Result<IntMatrix> {
        if small.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: small.ambient_dim() });
        }
        let mut rows = Vec::with_capacity(self.ambient_dim());
        for b in small.basis_vectors() {
            match self.integer_coordinates(&b)? {
                Some(c) => rows.push(c),
                None => {
                    return Err(Error::NotSublattice(format!(
                        "generator {} is not in the larger lattice",
                        vector_string(&b)
                    )))
                }
            }
        }
        Ok(Matrix::from_rows(self.ambient_dim(), rows))
    }

    /// Invariant factors of `self / small`.
    pub fn quotient_invariants(&self, small: &Lattice) -> Result<AbelianInvariants> {
        let k = self.relative_matrix(small)?;
        let s = smith_normal_form(&k);
        AbelianInvariants::from_diagonal(&s.invariant_factors())
    }

    /// `[self : small]`.
    pub fn index(&self, small: &Lattice) -> Result<BigInt> {
        let k = self.relative_matrix(small)?;
        Ok(k.det().abs())
    }

    /// The rational numbers `s` with `s · direction ∈ self` form `g · Z`; returns `g > 0`.
    pub fn line_generator(&self, direction: &[Rational]) -> Result<Rational> {
        let c = self.coordinates(direction)?;
        if c.iter().all(|x| x.is_zero()) {
            return Err(Error::Precondition("zero direction".into()));
        }
        let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * to_q(&den)).to_integer()).collect();
        let g = gcd_all(&ints);
        // s·c ∈ Z^n  ⇔  s·g/den ∈ Z
        Ok(BigRational::new(den, g))
    }
}

/// `{ν ∈ Z^r : A·ν ∈ N·Z^m}` for an integer `m × r` matrix `A`.
pub fn congruence_kernel(a: &IntMatrix, n: i64) -> Result<Lattice> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    let r = a.cols();
    let big_n = BigInt::from(n);
    let s = smith_normal_form(a);
    // With w = V⁻¹ν the condition reads d_k w_k ≡ 0 (mod N).
    let diag = s.invariant_factors();
    let mut gens = Vec::with_capacity(r);
    for k in 0..r {
        let dk = diag.get(k).cloned().unwrap_or_else(BigInt::zero);
        let step = &big_n / big_n.gcd(&dk);
        gens.push(s.right.column(k).iter().map(|x| to_q(&(x * &step))).collect());
    }
    Lattice::from_basis(r, gens)
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.basis)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    ambient_dim: usize,
    #[serde(with = "serde_util::qvecs")]
    basis: Vec<QVector>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeRepr { ambient_dim: self.ambient_dim(), basis: self.basis_vectors() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LatticeRepr::deserialize(d)?;
        Lattice::from_basis(r.ambient_dim, r.basis).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(n.into(), d.into())
    }

    fn qv(xs: &[i64]) -> QVector {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    fn even_sum() -> Lattice {
        Lattice::from_basis(2, vec![qv(&[2, 0]), qv(&[1, 1])]).unwrap()
    }

    #[test]
    fn membership() {
        let z2 = Lattice::standard(2);
        assert!(z2.contains(&qv(&[1, 0])).unwrap());
        let two = Lattice::scaled_standard(2, &q(2, 1)).unwrap();
        assert!(!two.contains(&qv(&[1, 0])).unwrap());
        assert!(even_sum().contains(&qv(&[1, 1])).unwrap());
        assert!(!even_sum().contains(&qv(&[1, 0])).unwrap());
        assert!(matches!(z2.contains(&qv(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_rank_deficient() {
        assert_eq!(Lattice::from_basis(2, vec![qv(&[1, 1]), qv(&[2, 2])]).unwrap_err(), Error::NotFullRank);
        assert_eq!(Lattice::from_basis(2, vec![qv(&[1, 1])]).unwrap_err(), Error::NotFullRank);
    }

    #[test]
    fn duals() {
        let id = QMatrix::identity(2);
        assert_eq!(Lattice::standard(2).dual(&id).unwrap(), Lattice::standard(2));
        let two = Lattice::scaled_standard(2, &q(2, 1)).unwrap();
        assert_eq!(two.dual(&id).unwrap(), Lattice::scaled_standard(2, &q(1, 2)).unwrap());
        let expected = Lattice::from_generators(2, vec![qv(&[1, 0]), qv(&[0, 1]), vec![q(1, 2), q(1, 2)]]).unwrap();
        let dual = even_sum().dual(&id).unwrap();
        assert_eq!(dual, expected);
        for x in even_sum().basis_vectors() {
            for y in dual.basis_vectors() {
                assert!(id.bilinear(&x, &y).is_integer());
            }
        }
        assert_eq!(dual.dual(&id).unwrap(), even_sum());
        assert_eq!(Lattice::standard(2).dual(&QMatrix::zeros(2, 2)).unwrap_err(), Error::DegeneratePairing);
    }

    #[test]
    fn quotients_and_indices() {
        let z2 = Lattice::standard(2);
        let two = Lattice::scaled_standard(2, &q(2, 1)).unwrap();
        let f = z2.quotient_invariants(&two).unwrap();
        assert_eq!(f.factors(), &[BigInt::from(2), BigInt::from(2)]);
        assert!(z2.quotient_invariants(&z2).unwrap().is_trivial());
        assert_eq!(z2.index(&two).unwrap(), BigInt::from(4));
        assert_eq!(z2.index(&z2).unwrap(), BigInt::one());
        assert_eq!(z2.index(&even_sum()).unwrap(), BigInt::from(2));
        assert!(matches!(two.index(&z2), Err(Error::NotSublattice(_))));
        // A1: weight lattice (1/2)Z over root lattice Z.
        let p = Lattice::scaled_standard(1, &q(1, 2)).unwrap();
        assert_eq!(p.quotient_invariants(&Lattice::standard(1)).unwrap().factors(), &[BigInt::from(2)]);
    }

    #[test]
    fn congruence_kernels() {
        let id3: IntMatrix = Matrix::identity(3);
        assert_eq!(congruence_kernel(&id3, 3).unwrap(), Lattice::scaled_standard(3, &q(3, 1)).unwrap());
        let two: IntMatrix = Matrix::from_rows(1, vec![vec![BigInt::from(2)]]);
        assert_eq!(congruence_kernel(&two, 4).unwrap(), Lattice::scaled_standard(1, &q(2, 1)).unwrap());
        let d21: IntMatrix = Matrix::diagonal(&[BigInt::from(2), BigInt::from(1)]);
        let expected = Lattice::from_basis(2, vec![qv(&[1, 0]), qv(&[0, 2])]).unwrap();
        assert_eq!(congruence_kernel(&d21, 2).unwrap(), expected);
        assert_eq!(congruence_kernel(&d21, 0).unwrap_err(), Error::NonPositiveModulus(0));
    }

    #[test]
    fn line_generators() {
        let l = Lattice::from_generators(2, vec![qv(&[3, 0]), vec![q(1, 2), q(3, 2)]]).unwrap();
        let g = l.line_generator(&qv(&[1, 0])).unwrap();
        assert!(l.contains(&[g.clone(), q(0, 1)]).unwrap());
        assert!(!l.contains(&[g.clone() / q(2, 1), q(0, 1)]).unwrap());
        assert_eq!(g, q(3, 1));
    }

    #[test]
    fn json_is_hermite_normalized() {
        let a = Lattice::from_basis(2, vec![qv(&[1, 1]), qv(&[3, 1])]).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"ambient_dim":2,"basis":[["1","1"],["0","2"]]}"#);
        let back: Lattice = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }
}
