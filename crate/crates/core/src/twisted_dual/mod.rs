//! The twisted dual group `Ǧ_N`: its weight lattice `X^*(Ť_N)`, the
//! stretch factors `δ_i`, its root datum and its identification.
//!
//! `X^*(Ť_N)` sits inside `Y`, so dual weights and roots are written in
//! simple-coroot coordinates and dual coroots in simple-root coordinates.

mod identity;
mod table;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use identity::{identify_weight_datum, GroupIdentity};
pub use table::{examples_table, expected_dual, table_row, TableFamily, TableRow, TABLE_FAMILIES};

use crate::central_ext::compute_d;
use crate::error::{Error, Result};
use crate::lattice::{congruence_kernel, Lattice};
use crate::root_data::{fmt_vector, RootDatum, WeightDatum};
use crate::serde_util;
use crate::{IntMatrix, QVector, Rational};

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn unit(n: usize, i: usize) -> QVector {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn check_modulus(n: i64) -> Result<()> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    Ok(())
}

/// `X^*(Ť_N) = {ν ∈ Y : d·ι(ν) ∈ N·X}`.
pub fn dual_weight_lattice(datum: &RootDatum, n: i64) -> Result<Lattice> {
    check_modulus(n)?;
    let d = compute_d(datum)?;
    let ybasis = datum.cocharacters().basis_vectors();
    let r = datum.rank();
    // column k: X-coordinates of d·ι(y_k)
    let mut a = IntMatrix::zeros(r, r);
    for (k, y) in ybasis.iter().enumerate() {
        let img: QVector = datum.iota(y).iter().map(|x| x * q(d as i64)).collect();
        let coords = datum
            .characters()
            .integer_coordinates(&img)?
            .ok_or_else(|| Error::Invariant("dι(Y) is not contained in X".into()))?;
        for (row, c) in coords.into_iter().enumerate() {
            a[(row, k)] = c;
        }
    }
    let kernel = congruence_kernel(&a, n)?;
    let gens = kernel
        .basis_vectors()
        .iter()
        .map(|c| {
            let ints: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
            datum.cocharacters().combine(&ints)
        })
        .collect();
    Lattice::from_basis(r, gens)
}

/// Dominant and in `X^*(Ť_N)`.
pub fn is_dominant_dual_weight(datum: &RootDatum, n: i64, lambda: &[Rational]) -> Result<bool> {
    check_modulus(n)?;
    datum.require_cocharacter(lambda)?;
    let dominant = (0..datum.rank()).all(|i| !datum.pair(lambda, &unit(datum.rank(), i)).is_negative());
    Ok(dominant && dual_weight_lattice(datum, n)?.contains(lambda)?)
}

/// Denominator of `d·(α_i, α_i)/2N` in lowest terms.
pub fn delta(datum: &RootDatum, n: i64, i: usize) -> Result<u64> {
    check_modulus(n)?;
    let r = datum.rank();
    if i >= r {
        return Err(Error::BadIndex { index: i, rank: r });
    }
    let d = compute_d(datum)?;
    let norm = datum.canonical_form().gram[(i, i)].clone();
    let frac = norm * q(d as i64) / q(2 * n);
    let den = frac.denom().to_u64().expect("small denominator");
    let closed = delta_closed_form(d * datum.canonical_form().c[i] as u64, n as u64);
    if den != closed {
        return Err(Error::Invariant(format!("δ_{} = {den} but N/gcd(N, d·c_i) = {closed}", i + 1)));
    }
    Ok(den)
}

/// `N / gcd(N, k)`.
pub fn delta_closed_form(k: u64, n: u64) -> u64 {
    n / n.gcd(&k)
}

/// Denominator of the reduced fraction `k/N`.
pub fn delta_literal(k: u64, n: u64) -> u64 {
    let f = num_rational::Ratio::new(k, n);
    *f.denom()
}

/// Root datum of `Ǧ_N` built from `G` and `N`.
#[derive(Clone, Debug)]
pub struct TwistedDualDatum {
    source: RootDatum,
    n: i64,
    d: u64,
    lattice: Lattice,
    coweights: Lattice,
    delta: Vec<u64>,
    roots: Vec<QVector>,
    coroots: Vec<QVector>,
}

impl TwistedDualDatum {
    pub fn new(source: &RootDatum, n: i64) -> Result<Self> {
        check_modulus(n)?;
        let r = source.rank();
        let d = compute_d(source)?;
        let lattice = dual_weight_lattice(source, n)?;
        let delta: Vec<u64> = (0..r).map(|i| delta(source, n, i)).collect::<Result<_>>()?;
        let roots: Vec<QVector> = (0..r).map(|i| unit(r, i).iter().map(|x| x * q(delta[i] as i64)).collect()).collect();
        let coroots: Vec<QVector> =
            (0..r).map(|i| unit(r, i).iter().map(|x| x / q(delta[i] as i64)).collect()).collect();
        let coweights = lattice.dual(source.cartan())?;
        let dd = TwistedDualDatum { source: source.clone(), n, d, lattice, coweights, delta, roots, coroots };
        dd.check_invariants()?;
        Ok(dd)
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.rank();
        if !self.lattice.contains_lattice(&self.source.cocharacters().scale(&q(self.n))?) {
            return Err(Error::Invariant("X^*(Ť_N) does not contain N·Y".into()));
        }
        for i in 0..r {
            if !self.lattice.contains(&self.roots[i])? {
                return Err(Error::Invariant(format!("δ_{0}α_{0} is not a dual weight", i + 1)));
            }
            if !self.coweights.contains(&self.coroots[i])? {
                return Err(Error::Invariant(format!("α̌_{0}/δ_{0} does not pair integrally", i + 1)));
            }
            if self.source.pair(&self.roots[i], &self.coroots[i]) != q(2) {
                return Err(Error::Invariant("dual root and coroot do not pair to 2".into()));
            }
        }
        self.check_reflections()
    }

    /// The reflections of `Ǧ_N` and of `G` agree on `Y ⊗ Q` and preserve
    /// `X^*(Ť_N)`.
    pub fn check_reflections(&self) -> Result<()> {
        let r = self.rank();
        let probes: Vec<QVector> = (0..r).map(|i| unit(r, i)).chain(self.lattice.basis_vectors()).collect();
        for i in 0..r {
            let simple = unit(r, i);
            for v in &probes {
                let twisted = self.reflect(i, v);
                let k = self.source.pair(v, &simple);
                let mut classical = v.clone();
                classical[i] -= k;
                if twisted != classical {
                    return Err(Error::Invariant(format!("reflection s_{} differs from G's", i + 1)));
                }
            }
            for b in self.lattice.basis_vectors() {
                if !self.lattice.contains(&self.reflect(i, &b))? {
                    return Err(Error::Invariant(format!("s_{} does not preserve X^*(Ť_N)", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// `ν ↦ ν − ⟨ν, α̌_i/δ_i⟩·δ_iα_i`.
    pub fn reflect(&self, i: usize, v: &[Rational]) -> QVector {
        let k = self.source.pair(v, &self.coroots[i]);
        v.iter().zip(&self.roots[i]).map(|(x, a)| x - k.clone() * a).collect()
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    /// `X^*(Ť_N)`.
    pub fn dual_weight_lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `X_*(Ť_N)`, in simple-root coordinates.
    pub fn dual_coweight_lattice(&self) -> &Lattice {
        &self.coweights
    }

    pub fn delta(&self) -> &[u64] {
        &self.delta
    }

    pub fn dual_simple_roots(&self) -> &[QVector] {
        &self.roots
    }

    pub fn dual_simple_coroots(&self) -> &[QVector] {
        &self.coroots
    }

    /// `⟨δ_jα_j, α̌_i/δ_i⟩`.
    pub fn dual_cartan_matrix(&self) -> crate::Matrix<i64> {
        self.weight_datum().cartan_matrix().clone()
    }

    pub fn weight_datum(&self) -> WeightDatum {
        WeightDatum::new(self.lattice.clone(), self.roots.clone(), self.coroots.clone(), self.source.cartan().clone())
            .expect("invariants checked at construction")
    }

    /// Rank-one datum on the line through `α_i`: weights
    /// `X^*(Ť_N) ∩ Qα_i`, root `δ_iα_i`, coroot `α̌_i/δ_i`, coordinates in
    /// multiples of `α_i` and `α̌_i`.
    pub fn rank_one_datum(&self, i: usize) -> Result<WeightDatum> {
        let r = self.rank();
        if i >= r {
            return Err(Error::BadIndex { index: i, rank: r });
        }
        let g = self.lattice.line_generator(&unit(r, i))?;
        let delta = q(self.delta[i] as i64);
        WeightDatum::new(
            Lattice::scaled_standard(1, &g)?,
            vec![vec![delta.clone()]],
            vec![vec![Rational::one() / delta]],
            crate::QMatrix::diagonal(&[q(2)]),
        )
    }

    pub fn identify(&self) -> Result<GroupIdentity> {
        identify_weight_datum(&self.weight_datum())
    }
}

impl PartialEq for TwistedDualDatum {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.n == other.n
            && self.d == other.d
            && self.delta == other.delta
            && self.lattice == other.lattice
            && self.roots == other.roots
            && self.coroots == other.coroots
    }
}

pub fn build_dual_datum(source: &RootDatum, n: i64) -> Result<TwistedDualDatum> {
    TwistedDualDatum::new(source, n)
}

pub fn identify(dd: &TwistedDualDatum) -> Result<GroupIdentity> {
    dd.identify()
}

/// `((d/N)(λ,λ), (d/N)·ι(λ))` for `λ ∈ X^{*+}(Ť_N)`; the vector is in
/// root coordinates.
pub fn twisting_line_exponents(dd: &TwistedDualDatum, lambda: &[Rational]) -> Result<(BigInt, QVector)> {
    if !is_dominant_dual_weight(&dd.source, dd.n, lambda)? {
        return Err(Error::NotDominant(fmt_vector(lambda)));
    }
    let k = q(dd.d as i64) / q(dd.n);
    let e = k.clone() * dd.source.form(lambda, lambda);
    if !e.is_integer() {
        return Err(Error::Invariant(format!("(d/N)(λ,λ) = {e} is not an integer")));
    }
    let v: QVector = dd.source.iota(lambda).iter().map(|x| x * k.clone()).collect();
    if !dd.source.characters().contains(&v)? {
        return Err(Error::Invariant(format!("(d/N)ι(λ) = {} is not a character", fmt_vector(&v))));
    }
    Ok((e.to_integer(), v))
}

#[derive(Serialize, Deserialize)]
struct DualRepr {
    source: RootDatum,
    #[serde(rename = "N")]
    n: i64,
    d: u64,
    delta: Vec<u64>,
    dual_weight_lattice: Lattice,
    #[serde(with = "serde_util::qvecs")]
    dual_simple_roots: Vec<QVector>,
    #[serde(with = "serde_util::qvecs")]
    dual_simple_coroots: Vec<QVector>,
}

impl Serialize for TwistedDualDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DualRepr {
            source: self.source.clone(),
            n: self.n,
            d: self.d,
            delta: self.delta.clone(),
            dual_weight_lattice: self.lattice.clone(),
            dual_simple_roots: self.roots.clone(),
            dual_simple_coroots: self.coroots.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedDualDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DualRepr::deserialize(d)?;
        let built = TwistedDualDatum::new(&r.source, r.n).map_err(D::Error::custom)?;
        let stated = TwistedDualDatum {
            source: r.source,
            n: r.n,
            d: r.d,
            lattice: r.dual_weight_lattice,
            coweights: built.coweights.clone(),
            delta: r.delta,
            roots: r.dual_simple_roots,
            coroots: r.dual_simple_coroots,
        };
        if stated != built {
            return Err(D::Error::custom("stated dual datum does not match its source and N"));
        }
        Ok(built)
    }
}
