//! Character-theoretic checks: weight multiplicities, Weyl dimensions,
//! tensor product multiplicities and the rank-one count of strata with
//! trivial monodromy.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::central_ext::{compute_d, monodromy_modulus};
use crate::error::{Error, Result};
use crate::root_data::{fmt_vector, RootDatum, WeightDatum};
use crate::twisted_dual::{delta, TwistedDualDatum};
use crate::{QVector, Rational};

/// Weights (ambient coordinates) with multiplicities. Entries may be zero
/// when a computation reports weights it ruled out.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiplicities {
    entries: BTreeMap<QVector, u64>,
}

impl WeightMultiplicities {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, weight: QVector, mult: u64) {
        self.entries.insert(weight, mult);
    }

    pub fn get(&self, weight: &[Rational]) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QVector, &u64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// The same data without zero entries.
    pub fn support(&self) -> WeightMultiplicities {
        WeightMultiplicities { entries: self.entries.iter().filter(|(_, &m)| m > 0).map(|(k, &m)| (k.clone(), m)).collect() }
    }
}

impl Serialize for WeightMultiplicities {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u64> = self.entries.iter().map(|(k, &m)| (fmt_vector(k), m)).collect();
        map.serialize(s)
    }
}

/// The order `2ȟN/d` of the twisting character; `ζ^e` is trivial iff the
/// modulus divides `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyModulus {
    modulus: BigInt,
}

impl MonodromyModulus {
    pub fn new(datum: &RootDatum, n: i64) -> Result<Self> {
        Ok(MonodromyModulus { modulus: monodromy_modulus(datum, n)? })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_trivial(&self, exponent: &BigInt) -> bool {
        exponent.is_multiple_of(&self.modulus)
    }
}

fn dominant_labels(w: &WeightDatum, lambda: &[Rational]) -> Result<Vec<i64>> {
    let labels = w.integral_labels(lambda)?;
    if labels.iter().any(|&l| l < 0) {
        return Err(Error::NotDominant(fmt_vector(lambda)));
    }
    Ok(labels)
}

/// `Π_{β>0} ⟨λ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩` for dominant labels.
fn weyl_dim_labels(w: &WeightDatum, labels: &[i64]) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for c in w.system().positive_coroots() {
        let a: i64 = c.iter().zip(labels).map(|(ci, l)| ci * (l + 1)).sum();
        let b: i64 = c.iter().sum();
        num *= a;
        den *= b;
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Dimension of the irreducible representation with highest weight `λ`.
pub fn weyl_dim(w: &WeightDatum, lambda: &[Rational]) -> Result<BigInt> {
    Ok(weyl_dim_labels(w, &dominant_labels(w, lambda)?))
}

/// Freudenthal recursion from dominant labels `ℓ`. Keys are `k` with
/// `μ = λ − Σ k_j α_j`.
fn freudenthal_by_depth(w: &WeightDatum, labels: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    let r = w.rank();
    let a = w.cartan_matrix();
    let dn = w.system().half_norms();
    let pos = w.system().positive_roots();
    let lab = |k: &[i64]| -> Vec<i64> { (0..r).map(|i| labels[i] - (0..r).map(|j| a[(i, j)] * k[j]).sum::<i64>()).collect() };
    // (μ, β) for μ with labels m and β = Σ b_j α_j
    let pair = |m: &[i64], b: &[i64]| -> Rational {
        (0..r).fold(Rational::zero(), |acc, j| acc + dn[j].clone() * Rational::from_integer((b[j] * m[j]).into()))
    };

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    mult.insert(vec![0; r], 1);
    let mut frontier = vec![vec![0i64; r]];
    while !frontier.is_empty() {
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        for k in &frontier {
            for j in 0..r {
                let mut c = k.clone();
                c[j] += 1;
                candidates.push(c);
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for k in candidates {
            // (λ+ρ,λ+ρ) − (μ+ρ,μ+ρ) = 2(λ+ρ, κ) − (κ, κ), κ = Σ k_j α_j
            let mut denom = Rational::zero();
            for j in 0..r {
                denom += dn[j].clone() * Rational::from_integer((2 * k[j] * (labels[j] + 1)).into());
                for i in 0..r {
                    denom -= dn[i].clone() * Rational::from_integer((k[i] * a[(i, j)] * k[j]).into());
                }
            }
            let mut numer = Rational::zero();
            for beta in pos {
                let mut t = 1i64;
                loop {
                    let above: Vec<i64> = k.iter().zip(beta).map(|(x, b)| x - t * b).collect();
                    if above.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&above) {
                        numer += Rational::from_integer(m.into()) * pair(&lab(&above), beta);
                    }
                    t += 1;
                }
            }
            numer *= Rational::from_integer(2.into());
            if !denom.is_positive() {
                if !numer.is_zero() {
                    return Err(Error::Invariant("Freudenthal identity fails outside the weight polytope".into()));
                }
                continue;
            }
            let m = numer / denom;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Invariant(format!("non-integral multiplicity {m}")));
            }
            if m.is_zero() {
                continue;
            }
            mult.insert(k.clone(), m.to_integer().to_u64().expect("multiplicity fits in u64"));
            next.push(k);
        }
        frontier = next;
    }
    Ok(mult)
}

/// Character of `V(ℓ)` keyed by Dynkin labels.
fn character_by_labels(w: &WeightDatum, labels: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    let r = w.rank();
    let a = w.cartan_matrix();
    Ok(freudenthal_by_depth(w, labels)?
        .into_iter()
        .map(|(k, m)| ((0..r).map(|i| labels[i] - (0..r).map(|j| a[(i, j)] * k[j]).sum::<i64>()).collect(), m))
        .collect())
}

/// Weight multiplicities of the irreducible representation with highest
/// weight `λ`.
pub fn freudenthal_multiplicities(w: &WeightDatum, lambda: &[Rational]) -> Result<WeightMultiplicities> {
    let labels = dominant_labels(w, lambda)?;
    let by_depth = freudenthal_by_depth(w, &labels)?;
    let mut out = WeightMultiplicities::new();
    for (k, m) in by_depth {
        out.insert(w.lower(lambda, &k), m);
    }
    Ok(out)
}

/// `⟨μ, 2ρ^∨⟩` from labels; strictly increases along positive roots.
fn height(w: &WeightDatum, labels: &[i64]) -> i64 {
    w.system().positive_coroots().iter().map(|c| c.iter().zip(labels).map(|(x, l)| x * l).sum::<i64>()).sum()
}

/// Multiplicity of `V(ν)` in `V(λ) ⊗ V(μ)`, by multiplying characters and
/// peeling off highest weights.
pub fn tensor_multiplicity(w: &WeightDatum, lambda: &[Rational], mu: &[Rational], nu: &[Rational]) -> Result<u64> {
    let (l, m, n) = (dominant_labels(w, lambda)?, dominant_labels(w, mu)?, dominant_labels(w, nu)?);
    let cl = character_by_labels(w, &l)?;
    let cm = character_by_labels(w, &m)?;
    let mut product: HashMap<Vec<i64>, i64> = HashMap::new();
    for (a, x) in &cl {
        for (b, y) in &cm {
            let key: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
            *product.entry(key).or_insert(0) += (*x * *y) as i64;
        }
    }
    let target_height = height(w, &n);
    loop {
        let top = product
            .iter()
            .filter(|(_, &c)| c != 0)
            .max_by(|(a, _), (b, _)| height(w, a).cmp(&height(w, b)).then_with(|| a.cmp(b)))
            .map(|(k, &c)| (k.clone(), c));
        let Some((top, count)) = top else { return Ok(0) };
        if height(w, &top) < target_height {
            return Ok(0);
        }
        if count < 0 || top.iter().any(|&x| x < 0) {
            return Err(Error::Invariant("peeling reached a non-dominant or negative term".into()));
        }
        if top == n {
            return Ok(count as u64);
        }
        for (k, c) in character_by_labels(w, &top)? {
            *product.entry(k).or_insert(0) -= count * c as i64;
        }
    }
}

fn check_rank_one_args(source: &RootDatum, n: i64, i: usize, a: i64) -> Result<(u64, i64)> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    if i >= source.rank() {
        return Err(Error::BadIndex { index: i, rank: source.rank() });
    }
    if a <= 0 {
        return Err(Error::Precondition(format!("a = {a} must be positive")));
    }
    let d = compute_d(source)?;
    let c = source.canonical_form().c[i];
    if (d as i64 * a * c) % n != 0 {
        return Err(Error::Precondition(format!("(da/2N)(α_i, α_i) = {}·{}·{}/{} is not an integer", d, a, c, n)));
    }
    Ok((d, c))
}

/// Smallest `count` admissible values of `a` for `(N, i)`.
pub fn admissible_a(source: &RootDatum, n: i64, i: usize, count: usize) -> Result<Vec<i64>> {
    if n <= 0 {
        return Err(Error::NonPositiveModulus(n));
    }
    let mut out = Vec::new();
    let mut a = 1;
    while out.len() < count {
        if check_rank_one_args(source, n, i, a).is_ok() {
            out.push(a);
        } else if i >= source.rank() {
            return Err(Error::BadIndex { index: i, rank: source.rank() });
        }
        a += 1;
    }
    Ok(out)
}

/// Multiplicities at `ν = bα_i`, `b = a, …, −a`, for `λ = aα_i`: the two
/// closed strata count once, an open stratum counts when its monodromy
/// exponent `(a+b)·ȟ·(α_i, α_i)` vanishes modulo `2ȟN/d`. Weights are in
/// simple-coroot coordinates.
pub fn rank_one_mv_multiplicities(source: &RootDatum, n: i64, i: usize, a: i64) -> Result<WeightMultiplicities> {
    let (_, c) = check_rank_one_args(source, n, i, a)?;
    let h = source.dual_coxeter() as i64;
    let modulus = MonodromyModulus::new(source, n)?;
    let di = delta(source, n, i)? as i64;
    let r = source.rank();
    let mut out = WeightMultiplicities::new();
    for b in (-a..=a).rev() {
        let m = if b.abs() == a {
            1
        } else {
            let e = BigInt::from(a + b) * BigInt::from(h) * BigInt::from(2 * c);
            u64::from(modulus.is_trivial(&e))
        };
        if (m == 1) != (b % di == 0) {
            return Err(Error::Invariant(format!("stratum b = {b}: monodromy test disagrees with δ_i = {di}")));
        }
        let mut v = vec![Rational::zero(); r];
        v[i] = Rational::from_integer(b.into());
        out.insert(v, m);
    }
    Ok(out)
}

/// Compares the rank-one stratum count with the weights of the rank-one
/// dual datum at highest weight `aα_i`.
pub fn mv_vs_character_check(source: &RootDatum, n: i64, i: usize, a: i64) -> Result<bool> {
    let mv = rank_one_mv_multiplicities(source, n, i, a)?;
    let dd = TwistedDualDatum::new(source, n)?;
    let line = dd.rank_one_datum(i)?;
    let chars = freudenthal_multiplicities(&line, &[Rational::from_integer(a.into())])?;
    let projected: WeightMultiplicities = {
        let mut p = WeightMultiplicities::new();
        for (v, &m) in mv.support().iter() {
            p.insert(vec![v[i].clone()], m);
        }
        p
    };
    Ok(projected == chars)
}
