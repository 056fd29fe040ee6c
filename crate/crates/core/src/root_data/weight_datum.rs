//! A semisimple root datum presented by its weight lattice alone.
//!
//! Used for a group `G` itself, for the twisted dual group and for the
//! rank-one data of the multiplicity checks. Weights and roots live in one
//! ambient rational space, coroots in another, and `⟨w, c⟩ = wᵀ·P·c`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::system::RootSystem;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::Matrix;
use crate::{QMatrix, QVector, Rational};

#[derive(Clone, Debug)]
pub struct WeightDatum {
    weights: Lattice,
    simple_roots: Vec<QVector>,
    simple_coroots: Vec<QVector>,
    pairing: QMatrix,
    cartan: Matrix<i64>,
    system: Arc<RootSystem>,
}

impl WeightDatum {
    pub fn new(weights: Lattice, simple_roots: Vec<QVector>, simple_coroots: Vec<QVector>, pairing: QMatrix) -> Result<Self> {
        let n = weights.ambient_dim();
        if simple_roots.len() != n || simple_coroots.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: simple_roots.len().min(simple_coroots.len()) });
        }
        if pairing.rows() != n || pairing.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: pairing.rows() });
        }
        for r in &simple_roots {
            if !weights.contains(r)? {
                return Err(Error::Invariant("simple root outside the weight lattice".into()));
            }
        }
        let mut cartan = Matrix::<i64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = pairing.bilinear(&simple_roots[j], &simple_coroots[i]);
                if !v.is_integer() {
                    return Err(Error::Invariant(format!("non-integral Cartan entry {v}")));
                }
                cartan[(i, j)] = v.to_integer().to_i64().ok_or_else(|| Error::Invariant("Cartan entry overflow".into()))?;
            }
        }
        for i in 0..n {
            if cartan[(i, i)] != 2 {
                return Err(Error::Invariant("simple root and coroot do not pair to 2".into()));
            }
            for b in weights.basis_vectors() {
                if !pairing.bilinear(&b, &simple_coroots[i]).is_integer() {
                    return Err(Error::Invariant("coroot does not pair integrally with the weight lattice".into()));
                }
            }
        }
        let system = RootSystem::cached(&cartan)?;
        Ok(WeightDatum { weights, simple_roots, simple_coroots, pairing, cartan, system })
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn weights(&self) -> &Lattice {
        &self.weights
    }

    pub fn simple_roots(&self) -> &[QVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[QVector] {
        &self.simple_coroots
    }

    pub fn pairing(&self) -> &QMatrix {
        &self.pairing
    }

    /// `a_ij = ⟨α_j, α_i^∨⟩`, Bourbaki orientation.
    pub fn cartan_matrix(&self) -> &Matrix<i64> {
        &self.cartan
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    /// `⟨w, α_i^∨⟩` for each `i`.
    pub fn labels(&self, w: &[Rational]) -> QVector {
        self.simple_coroots.iter().map(|c| self.pairing.bilinear(w, c)).collect()
    }

    /// Integral Dynkin labels of a lattice weight.
    pub fn integral_labels(&self, w: &[Rational]) -> Result<Vec<i64>> {
        if !self.weights.contains(w)? {
            return Err(Error::NotInLattice { vector: super::datum::fmt_vector(w), lattice: "weight lattice" });
        }
        Ok(self.labels(w).iter().map(|x| x.to_integer().to_i64().expect("small label")).collect())
    }

    pub fn is_dominant(&self, w: &[Rational]) -> Result<bool> {
        Ok(self.weights.contains(w)? && self.labels(w).iter().all(|x| !x.is_negative()))
    }

    /// `λ − Σ k_j α_j` in ambient coordinates.
    pub fn lower(&self, lambda: &[Rational], k: &[i64]) -> QVector {
        let mut out = lambda.to_vec();
        for (kj, root) in k.iter().zip(&self.simple_roots) {
            if *kj == 0 {
                continue;
            }
            let kq = Rational::from_integer((*kj).into());
            for (o, r) in out.iter_mut().zip(root) {
                *o -= kq.clone() * r;
            }
        }
        out
    }

    /// The lattice spanned by the simple roots.
    pub fn root_lattice(&self) -> Result<Lattice> {
        Lattice::from_generators(self.rank(), self.simple_roots.clone())
    }

    /// `{w : ⟨w, α_i^∨⟩ ∈ ℤ for all i}`.
    pub fn full_weight_lattice(&self) -> Result<Lattice> {
        let coroots = Lattice::from_generators(self.rank(), self.simple_coroots.clone())?;
        coroots.dual(&self.pairing.transpose())
    }

    /// The weight with Dynkin labels `e_i`.
    pub fn fundamental_weight(&self, i: usize) -> Result<QVector> {
        let n = self.rank();
        if i >= n {
            return Err(Error::BadIndex { index: i, rank: n });
        }
        // rows of M are Pc_j, so M w = e_i
        let m = QMatrix::from_rows(n, self.simple_coroots.iter().map(|c| self.pairing.mul_vec(c)).collect());
        let inv = m.inverse().ok_or(Error::DegeneratePairing)?;
        Ok(inv.column(i))
    }

    /// Center character group `weights / root lattice`.
    pub fn center_characters(&self) -> Result<crate::lattice::AbelianInvariants> {
        self.weights.quotient_invariants(&self.root_lattice()?)
    }

    /// `P / weights`.
    pub fn fundamental_group(&self) -> Result<crate::lattice::AbelianInvariants> {
        self.full_weight_lattice()?.quotient_invariants(&self.weights)
    }

    /// Simple reflection `s_i(w) = w − ⟨w, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, w: &[Rational]) -> QVector {
        let k = self.pairing.bilinear(w, &self.simple_coroots[i]);
        w.iter().zip(&self.simple_roots[i]).map(|(x, r)| x - k.clone() * r).collect()
    }

    /// Index of the weight lattice over the root lattice, as a sanity bound.
    pub fn center_order(&self) -> Result<BigInt> {
        self.weights.index(&self.root_lattice()?)
    }
}
