//! Central extensions of the loop group by `𝔾ₘ`: the divisor `d`, admissible
//! levels, commutator forms and line-bundle exponents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::AbelianInvariants;
use crate::root_data::{coordinate_denominator_lcm, fmt_vector, RootDatum};
use crate::{IntMatrix, QVector, Rational};

fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn scale(k: &Rational, v: &[Rational]) -> QVector {
    v.iter().map(|x| k * x).collect()
}

/// Does `m·ι(Y) ⊆ X` hold?
fn level_is_integral(datum: &RootDatum, m: i64) -> Result<bool> {
    for y in datum.cocharacters().basis_vectors() {
        if !datum.characters().contains(&scale(&q(m), &datum.iota(&y)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `d > 0` with `d·ι(Y) ⊆ X`.
///
/// Computed as an lcm of coordinate denominators, then confirmed minimal by
/// testing every proper divisor.
pub fn compute_d(datum: &RootDatum) -> Result<u64> {
    let mut d = BigInt::one();
    for y in datum.cocharacters().basis_vectors() {
        d = d.lcm(&coordinate_denominator_lcm(datum.characters(), &datum.iota(&y))?);
    }
    let d = d.to_u64().ok_or_else(|| Error::Invariant("d does not fit in 64 bits".into()))?;
    let di = d as i64;
    if !level_is_integral(datum, di)? {
        return Err(Error::Invariant(format!("d = {d} does not satisfy dι(Y) ⊆ X")));
    }
    for e in 1..di {
        if di % e == 0 && level_is_integral(datum, e)? {
            return Err(Error::Invariant(format!("d = {d} is not minimal: {e} already works")));
        }
    }
    Ok(d)
}

/// Levels and automorphisms of the central extensions of `G(F)` by `𝔾ₘ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub d: u64,
    /// Automorphism group of each extension, `Hom(π_1(G), μ_∞)`, reported
    /// by the invariants of `π_1(G)`.
    pub automorphisms: AbelianInvariants,
}

impl Classification {
    pub fn levels(&self) -> String {
        if self.d == 1 {
            "Z".to_string()
        } else {
            format!("{}Z", self.d)
        }
    }

    pub fn is_level(&self, m: i64) -> bool {
        m % self.d as i64 == 0
    }
}

pub fn classify_extensions(datum: &RootDatum) -> Result<Classification> {
    let d = compute_d(datum)?;
    let h = datum.dual_coxeter();
    if !h.is_multiple_of(d) {
        return Err(Error::Invariant(format!("d = {d} does not divide ȟ = {h}")));
    }
    Ok(Classification { d, automorphisms: datum.fundamental_group()? })
}

/// A central extension of level `m`, recorded through its commutator form.
#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    datum: RootDatum,
    d: u64,
    m: i64,
    commutator_form: IntMatrix,
}

impl ExtensionSpec {
    /// Rejects `m` unless `d | m`.
    pub fn new(datum: &RootDatum, m: i64) -> Result<Self> {
        let d = compute_d(datum)?;
        if m % d as i64 != 0 {
            return Err(Error::InvalidLevel { level: m, d });
        }
        let basis = datum.cocharacters().basis_vectors();
        let n = basis.len();
        let mut form = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = q(m) * datum.form(&basis[i], &basis[j]);
                if !v.is_integer() {
                    return Err(Error::Invariant("commutator form not integral at an admissible level".into()));
                }
                form[(i, j)] = v.to_integer();
            }
        }
        Ok(ExtensionSpec { datum: datum.clone(), d, m, commutator_form: form })
    }

    /// The extension whose commutator is `(f_1, f_2)^{2ȟ(λ_1, λ_2)}`.
    pub fn determinant(datum: &RootDatum) -> Result<Self> {
        Self::new(datum, 2 * datum.dual_coxeter() as i64)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn level(&self) -> i64 {
        self.m
    }

    /// `m(y_i, y_j)` on the HNF basis of `Y`.
    pub fn commutator_form(&self) -> &IntMatrix {
        &self.commutator_form
    }

    /// `m(λ_1, λ_2)` for `λ_1, λ_2 ∈ Y`.
    pub fn commutator_exponent(&self, l1: &[Rational], l2: &[Rational]) -> Result<BigInt> {
        self.datum.require_cocharacter(l1)?;
        self.datum.require_cocharacter(l2)?;
        let v = q(self.m) * self.datum.form(l1, l2);
        if !v.is_integer() {
            return Err(Error::Invariant(format!("m(λ₁,λ₂) = {v} is not an integer")));
        }
        Ok(v.to_integer())
    }
}

/// For a level `m` with `d ∤ m`, a pair of basis vectors of `Y` on which
/// `m(·,·)` is not integral. `None` when `m` is admissible.
pub fn integrality_witness(datum: &RootDatum, m: i64) -> Result<Option<(QVector, QVector, Rational)>> {
    let basis = datum.cocharacters().basis_vectors();
    for a in &basis {
        for b in &basis {
            let v = q(m) * datum.form(a, b);
            if !v.is_integer() {
                return Ok(Some((a.clone(), b.clone(), v)));
            }
        }
    }
    Ok(None)
}

/// `Q(λ) = (λ, λ)/2` on the coroot lattice.
pub fn quadratic_q(datum: &RootDatum, lambda: &[Rational]) -> Result<BigInt> {
    datum.quadratic_q(lambda)
}

/// `(ȟ·(λ,λ), 2ȟ·ι(λ))` for `λ ∈ Y`; the vector is in root coordinates.
pub fn level_line_exponents(datum: &RootDatum, lambda: &[Rational]) -> Result<(BigInt, QVector)> {
    datum.require_cocharacter(lambda)?;
    let h = q(datum.dual_coxeter() as i64);
    let omega = h.clone() * datum.form(lambda, lambda);
    if !omega.is_integer() {
        return Err(Error::Invariant(format!("ȟ(λ,λ) = {omega} is not an integer")));
    }
    let weight = scale(&(q(2) * h), &datum.iota(lambda));
    if !datum.characters().contains(&weight)? {
        return Err(Error::Invariant(format!("2ȟι(λ) = {} is not a character", fmt_vector(&weight))));
    }
    Ok((omega.to_integer(), weight))
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// `p = 0` or `p ∤ 2ȟN/d`.
pub fn char_assumption_ok(datum: &RootDatum, p: u64, n: i64) -> Result<bool> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    if p == 0 {
        return Ok(true);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(!monodromy_modulus(datum, n)?.is_multiple_of(&BigInt::from(p)))
}

/// `2ȟN/d`, the order of the twisting character.
pub fn monodromy_modulus(datum: &RootDatum, n: i64) -> Result<BigInt> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    let d = compute_d(datum)?;
    let num = BigInt::from(2 * datum.dual_coxeter()) * BigInt::from(n);
    let (quot, rem) = num.div_rem(&BigInt::from(d));
    if !rem.is_zero() {
        return Err(Error::Invariant("d does not divide 2ȟN".into()));
    }
    Ok(quot)
}
