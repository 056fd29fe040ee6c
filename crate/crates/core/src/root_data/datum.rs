//! Root data of almost-simple groups.
//!
//! Coordinates: character-side vectors (in `X`) are written in the basis of
//! simple roots, cocharacter-side vectors (in `Y`) in the basis of simple
//! coroots. The pairing is `⟨y, x⟩ = yᵀ·C·x` with `C` the Bourbaki Cartan
//! matrix, so `⟨α_i, α̌_j⟩ = C_ij` where `α_i` is the i-th simple coroot and
//! `α̌_j` the j-th simple root.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cartan::{CartanType, Series};
use super::system::{symmetrizer, RootSystem};
use super::weight_datum::WeightDatum;
use crate::error::{Error, Result};
use crate::lattice::{AbelianInvariants, Lattice};
use crate::serde_util;
use crate::{QMatrix, QVector, Rational};

fn q(x: i64) -> Rational {
    BigRational::from_integer(x.into())
}

fn unit(n: usize, i: usize) -> QVector {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn qvec(v: &[i64]) -> QVector {
    v.iter().map(|&x| q(x)).collect()
}

pub(crate) fn fmt_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Position of the character lattice between the root and weight lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isogeny {
    /// `X = P`.
    SimplyConnected,
    /// `X = Q`.
    Adjoint,
    /// Special orthogonal form of types B and D.
    SpecialOrthogonal,
    /// `X = Q + Σ Z·g` for generators `g ∈ P` in simple-root coordinates.
    Quotient(Vec<QVector>),
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::SimplyConnected => write!(f, "sc"),
            Isogeny::Adjoint => write!(f, "adjoint"),
            Isogeny::SpecialOrthogonal => write!(f, "so"),
            Isogeny::Quotient(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| fmt_vector(g)).collect();
                write!(f, "quotient:[{}]", parts.join(","))
            }
        }
    }
}

impl FromStr for Isogeny {
    type Err = Error;

    /// `sc`, `adjoint` (or `ad`), `so`, or `quotient:[[1/2,0,1/2],...]`;
    /// a single generator may be written `quotient:[1/2,0,1/2]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "sc" | "simply-connected" => return Ok(Isogeny::SimplyConnected),
            "adjoint" | "ad" => return Ok(Isogeny::Adjoint),
            "so" => return Ok(Isogeny::SpecialOrthogonal),
            _ => {}
        }
        let body = s
            .strip_prefix("quotient:")
            .ok_or_else(|| Error::InvalidIsogeny(format!("unknown isogeny '{s}'")))?;
        let value: serde_json::Value = serde_json::from_str(body)
            .or_else(|_| serde_json::from_str(&quote_rationals(body)))
            .map_err(|e| Error::InvalidIsogeny(format!("bad generator list '{body}': {e}")))?;
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidIsogeny("generator list must be a JSON array".into()))?;
        let nested = arr.iter().all(|v| v.is_array());
        let rows: Vec<serde_json::Value> = if nested { arr.clone() } else { vec![value.clone()] };
        let mut gens = Vec::new();
        for row in rows {
            let g: Vec<serde_json::Value> = row.as_array().cloned().unwrap_or_default();
            let mut v = QVector::new();
            for x in g {
                let text = match &x {
                    serde_json::Value::String(t) => t.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    _ => return Err(Error::InvalidIsogeny(format!("bad generator entry {x}"))),
                };
                v.push(
                    crate::scalar::parse_rational(&text)
                        .ok_or_else(|| Error::InvalidIsogeny(format!("bad rational '{text}'")))?,
                );
            }
            gens.push(v);
        }
        Ok(Isogeny::Quotient(gens))
    }
}

/// Wraps bare `p/q` tokens in quotes so the list parses as JSON.
fn quote_rationals(body: &str) -> String {
    let mut out = String::new();
    let mut token = String::new();
    let flush = |token: &mut String, out: &mut String| {
        if !token.is_empty() {
            out.push('"');
            out.push_str(token);
            out.push('"');
            token.clear();
        }
    };
    for ch in body.chars() {
        if ch.is_ascii_digit() || ch == '/' || ch == '-' || ch == '+' {
            token.push(ch);
        } else {
            flush(&mut token, &mut out);
            if !ch.is_whitespace() {
                out.push(ch);
            }
        }
    }
    flush(&mut token, &mut out);
    out
}

/// The canonical W-invariant form on `Y` and the map `ι: Y → X ⊗ Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm {
    /// `(α_i, α_j)` on simple coroots.
    pub gram: QMatrix,
    /// `c_i = (α_i, α_i)/2`; equal to 1 on short coroots.
    pub c: Vec<i64>,
    /// Matrix of `ι` from coroot coordinates to root coordinates.
    pub iota_matrix: QMatrix,
    pub h_dual: u64,
}

/// Root datum of an almost-simple group.
#[derive(Clone)]
pub struct RootDatum {
    cartan_type: CartanType,
    isogeny: Isogeny,
    system: Arc<RootSystem>,
    cartan: QMatrix,
    characters: Lattice,
    cocharacters: Lattice,
    form: CanonicalForm,
}

impl RootDatum {
    /// Root datum of the group of type `t` with character lattice chosen by `isogeny`.
    pub fn new(t: CartanType, isogeny: Isogeny) -> Result<Self> {
        let cartan_i = t.cartan_matrix();
        let system = RootSystem::cached(&cartan_i)?;
        let n = t.rank();
        let cartan: QMatrix = cartan_i.map(|&x| q(x));
        let cinv = cartan.inverse().ok_or_else(|| Error::Invariant("singular Cartan matrix".into()))?;
        // fundamental weights are the columns of C⁻¹
        let fundamental: Vec<QVector> = cinv.transpose().row_vecs();

        let mut gens: Vec<QVector> = (0..n).map(|i| unit(n, i)).collect();
        match &isogeny {
            Isogeny::SimplyConnected => gens.extend(fundamental.iter().cloned()),
            Isogeny::Adjoint => {}
            Isogeny::SpecialOrthogonal => match t.series() {
                Series::B => {}
                Series::D => gens.push(fundamental[0].clone()),
                _ => {
                    return Err(Error::InvalidIsogeny(format!(
                        "'so' is only defined for types B and D, not {t}"
                    )))
                }
            },
            Isogeny::Quotient(extra) => {
                for g in extra {
                    if g.len() != n {
                        return Err(Error::InvalidIsogeny(format!(
                            "generator {} has dimension {}, expected {n}",
                            fmt_vector(g),
                            g.len()
                        )));
                    }
                    if !cartan.mul_vec(g).iter().all(|x| x.is_integer()) {
                        return Err(Error::InvalidIsogeny(format!(
                            "generator {} is not in the weight lattice",
                            fmt_vector(g)
                        )));
                    }
                    gens.push(g.clone());
                }
            }
        }
        let characters = Lattice::from_generators(n, gens)?;
        let cocharacters = characters.dual(&cartan.transpose())?;
        let form = canonical_form_of(&system, &cartan, &cocharacters)?;
        let datum = RootDatum { cartan_type: t, isogeny, system, cartan, characters, cocharacters, form };
        datum.check_invariants()?;
        Ok(datum)
    }

    pub fn simply_connected(t: CartanType) -> Result<Self> {
        Self::new(t, Isogeny::SimplyConnected)
    }

    pub fn adjoint(t: CartanType) -> Result<Self> {
        Self::new(t, Isogeny::Adjoint)
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let v = self.pair(&unit(n, i), &unit(n, j));
                if v != q(self.system.cartan()[(i, j)]) {
                    return Err(Error::Invariant("pairing does not reproduce the Cartan integers".into()));
                }
            }
        }
        let root_lattice = Lattice::standard(n);
        if !self.characters.contains_lattice(&root_lattice) || !self.weight_lattice().contains_lattice(&self.characters) {
            return Err(Error::Invariant("X is not between Q and P".into()));
        }
        if !self.cocharacters.contains_lattice(&root_lattice) || !self.coweight_lattice().contains_lattice(&self.cocharacters) {
            return Err(Error::Invariant("Y is not between the coroot and coweight lattices".into()));
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank()
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    /// Bourbaki Cartan matrix, which is also the matrix of the pairing.
    pub fn cartan(&self) -> &QMatrix {
        &self.cartan
    }

    /// `X^*(T)`.
    pub fn characters(&self) -> &Lattice {
        &self.characters
    }

    /// `X_*(T)`.
    pub fn cocharacters(&self) -> &Lattice {
        &self.cocharacters
    }

    pub fn canonical_form(&self) -> &CanonicalForm {
        &self.form
    }

    pub fn simple_roots(&self) -> Vec<QVector> {
        (0..self.rank()).map(|i| unit(self.rank(), i)).collect()
    }

    pub fn simple_coroots(&self) -> Vec<QVector> {
        self.simple_roots()
    }

    /// `⟨y, x⟩` for `y` in `Y ⊗ Q` and `x` in `X ⊗ Q`.
    pub fn pair(&self, y: &[Rational], x: &[Rational]) -> Rational {
        self.cartan.bilinear(y, x)
    }

    /// `(y_1, y_2)` on `Y ⊗ Q`.
    pub fn form(&self, y1: &[Rational], y2: &[Rational]) -> Rational {
        self.form.gram.bilinear(y1, y2)
    }

    /// `ι(y)` in root coordinates.
    pub fn iota(&self, y: &[Rational]) -> QVector {
        self.form.iota_matrix.mul_vec(y)
    }

    pub fn dual_coxeter(&self) -> u64 {
        self.form.h_dual
    }

    /// `Σ_{α̌ ∈ R^*} ⟨λ, α̌⟩ α̌` in root coordinates.
    pub fn root_sum(&self, lambda: &[Rational]) -> QVector {
        root_sum(&self.system, &self.cartan, lambda)
    }

    /// Sum of the positive roots, `2ρ̌`.
    pub fn two_rho(&self) -> Result<Vec<i64>> {
        let n = self.rank();
        let mut s = vec![0i64; n];
        for r in self.system.positive_roots() {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        // s_i(2ρ̌) = 2ρ̌ - 2α̌_i, i.e. ⟨α_i, 2ρ̌⟩ = 2
        let sq = qvec(&s);
        for i in 0..n {
            if self.pair(&unit(n, i), &sq) != q(2) {
                return Err(Error::Invariant(format!("⟨α_{}, 2ρ̌⟩ != 2", i + 1)));
            }
        }
        Ok(s)
    }

    /// Weight lattice `P(Ř)` in root coordinates.
    pub fn weight_lattice(&self) -> Lattice {
        Lattice::standard(self.rank()).dual(&self.cartan).expect("Cartan matrix is nondegenerate")
    }

    /// Coweight lattice in coroot coordinates.
    pub fn coweight_lattice(&self) -> Lattice {
        Lattice::standard(self.rank()).dual(&self.cartan.transpose()).expect("Cartan matrix is nondegenerate")
    }

    /// `π_1(G) = Y / (coroot lattice)`.
    pub fn fundamental_group(&self) -> Result<AbelianInvariants> {
        self.cocharacters.quotient_invariants(&Lattice::standard(self.rank()))
    }

    /// Character group of the center, `X / Q(Ř)`.
    pub fn center_character_group(&self) -> Result<AbelianInvariants> {
        self.characters.quotient_invariants(&Lattice::standard(self.rank()))
    }

    /// `(λ, λ)/2` for `λ` in the coroot lattice.
    pub fn quadratic_q(&self, lambda: &[Rational]) -> Result<BigInt> {
        if lambda.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: lambda.len() });
        }
        if !lambda.iter().all(|x| x.is_integer()) {
            return Err(Error::NotInLattice { vector: fmt_vector(lambda), lattice: "coroot lattice" });
        }
        let v = self.form(lambda, lambda) / q(2);
        if !v.is_integer() {
            return Err(Error::Invariant("Q is not integral on the coroot lattice".into()));
        }
        Ok(v.to_integer())
    }

    /// Checks `y ∈ Y`.
    pub fn require_cocharacter(&self, y: &[Rational]) -> Result<()> {
        if !self.cocharacters.contains(y)? {
            return Err(Error::NotInLattice { vector: fmt_vector(y), lattice: "cocharacter lattice" });
        }
        Ok(())
    }

    /// The datum viewed as a general semisimple datum (weights = `X`).
    pub fn weight_datum(&self) -> WeightDatum {
        WeightDatum::new(
            self.characters.clone(),
            self.simple_roots(),
            self.simple_coroots(),
            self.cartan.transpose(),
        )
        .expect("a root datum is a valid weight datum")
    }
}

fn root_sum(system: &RootSystem, cartan: &QMatrix, lambda: &[Rational]) -> QVector {
    let n = system.rank();
    let mut acc = vec![Rational::zero(); n];
    for r in system.positive_roots() {
        let rq = qvec(r);
        // ±α̌ contribute equally
        let k = cartan.bilinear(lambda, &rq) * q(2);
        for (a, b) in acc.iter_mut().zip(&rq) {
            *a += k.clone() * b;
        }
    }
    acc
}

/// Builds `(,)`, `c`, `ι` and solves `Σ⟨λ,α̌⟩α̌ = 2ȟ·ι(λ)` for `ȟ`.
fn canonical_form_of(system: &RootSystem, cartan: &QMatrix, y: &Lattice) -> Result<CanonicalForm> {
    let n = system.rank();
    // c_j C_ij symmetric: the symmetrizer of Cᵀ
    let c_q = symmetrizer(&system.cartan().transpose())?;
    let c: Vec<i64> = c_q
        .iter()
        .map(|x| {
            x.is_integer()
                .then(|| x.to_integer().to_i64())
                .flatten()
                .ok_or_else(|| Error::Invariant("non-integral coroot half-norm".into()))
        })
        .collect::<Result<_>>()?;
    let iota_matrix = QMatrix::diagonal(&c.iter().map(|&x| q(x)).collect::<Vec<_>>());
    let gram = cartan * &iota_matrix;
    if gram != gram.transpose() {
        return Err(Error::Invariant("canonical form is not symmetric".into()));
    }

    let mut h2: Option<Rational> = None;
    for lambda in y.basis_vectors() {
        let lhs = root_sum(system, cartan, &lambda);
        let iota = iota_matrix.mul_vec(&lambda);
        for (l, i) in lhs.iter().zip(&iota) {
            if i.is_zero() {
                if !l.is_zero() {
                    return Err(Error::Invariant("root-sum identity fails on a zero coordinate".into()));
                }
                continue;
            }
            let ratio = l / i;
            match &h2 {
                None => h2 = Some(ratio),
                Some(r) if *r != ratio => {
                    return Err(Error::Invariant("root sum is not proportional to ι".into()));
                }
                Some(_) => {}
            }
        }
    }
    let h2 = h2.ok_or_else(|| Error::Invariant("no coordinate determines the dual Coxeter number".into()))?;
    let h = h2 / q(2);
    if !h.is_integer() || !h.is_positive() {
        return Err(Error::Invariant(format!("dual Coxeter number {h} is not a positive integer")));
    }
    let h_dual = h.to_integer().to_u64().expect("small dual Coxeter number");
    let _ = n;
    Ok(CanonicalForm { gram, c, iota_matrix, h_dual })
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({} {})", self.cartan_type, self.isogeny)
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type && self.characters == other.characters
    }
}

#[derive(Serialize, Deserialize)]
struct RootDatumRepr {
    cartan_type: CartanType,
    isogeny: String,
    characters: Lattice,
    cocharacters: Lattice,
    #[serde(with = "serde_util::qvecs")]
    simple_roots: Vec<QVector>,
    #[serde(with = "serde_util::qvecs")]
    simple_coroots: Vec<QVector>,
}

impl Serialize for RootDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootDatumRepr {
            cartan_type: self.cartan_type,
            isogeny: self.isogeny.to_string(),
            characters: self.characters.clone(),
            cocharacters: self.cocharacters.clone(),
            simple_roots: self.simple_roots(),
            simple_coroots: self.simple_coroots(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RootDatumRepr::deserialize(d)?;
        let iso: Isogeny = r.isogeny.parse().map_err(D::Error::custom)?;
        let datum = RootDatum::new(r.cartan_type, iso).map_err(D::Error::custom)?;
        if datum.characters != r.characters || datum.cocharacters != r.cocharacters {
            return Err(D::Error::custom("lattices do not match the stated type and isogeny"));
        }
        Ok(datum)
    }
}

/// Denominators of `v` in a lattice's coordinates, combined by lcm.
pub(crate) fn coordinate_denominator_lcm(l: &Lattice, v: &[Rational]) -> Result<BigInt> {
    Ok(l.coordinates(v)?.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
}
