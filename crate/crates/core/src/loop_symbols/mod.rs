//! Tame symbols on `k((t))^*` and commutators of torus-valued loop points.

mod series;

use num_bigint::BigInt;

pub use series::{LaurentSeries, DEFAULT_PRECISION};

use crate::central_ext::ExtensionSpec;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::QVector;

/// `(f, g) = (−1)^{v(f)v(g)}·(g^{v(f)} f^{−v(g)})(0)`.
///
/// Only valuations and leading coefficients enter, so the value is exact for
/// truncated inputs.
pub fn tame_symbol<F: Field>(f: &LaurentSeries<F>, g: &LaurentSeries<F>) -> Result<F> {
    let (vf, vg) = (f.valuation()?, g.valuation()?);
    let (af, ag) = (f.leading_coefficient()?, g.leading_coefficient()?);
    let sign = if (vf * vg).rem_euclid(2) == 0 { F::one() } else { -F::one() };
    let gf = series::field_pow(&ag, &BigInt::from(vf))?;
    let fg = series::field_pow(&af, &BigInt::from(-vg))?;
    Ok(sign * gf * fg)
}

/// The same symbol computed literally: form `g^{v(f)}·f^{−v(g)}` as a series
/// and read off its constant term.
pub fn tame_symbol_by_series<F: Field>(f: &LaurentSeries<F>, g: &LaurentSeries<F>) -> Result<F> {
    let (vf, vg) = (f.valuation()?, g.valuation()?);
    let h = g.pow(vf)?.mul(&f.pow(-vg)?);
    if h.valuation()? != 0 {
        return Err(Error::Invariant("g^{v(f)} f^{-v(g)} is not a unit".into()));
    }
    let c = h.coefficient(0).ok_or_else(|| Error::InsufficientPrecision("constant term unknown".into()))?;
    Ok(if (vf * vg).rem_euclid(2) == 0 { c } else { -c })
}

/// `Σ λ_k ⊗ f_k ∈ X_*(T) ⊗ F^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusLoopPoint<F: Field> {
    terms: Vec<(QVector, LaurentSeries<F>)>,
}

impl<F: Field> TorusLoopPoint<F> {
    pub fn new(terms: Vec<(QVector, LaurentSeries<F>)>) -> Result<Self> {
        if terms.iter().any(|(_, f)| f.is_zero()) {
            return Err(Error::ZeroSeries);
        }
        Ok(TorusLoopPoint { terms })
    }

    pub fn single(lambda: QVector, f: LaurentSeries<F>) -> Result<Self> {
        Self::new(vec![(lambda, f)])
    }

    pub fn terms(&self) -> &[(QVector, LaurentSeries<F>)] {
        &self.terms
    }

    /// Group law in `T(F)`: concatenation of the formal sums.
    pub fn combine(&self, other: &Self) -> Self {
        TorusLoopPoint { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }
}

/// Commutator of lifts of `x_1`, `x_2` in the extension of level `m`:
/// `Π (f_i, g_j)^{m(λ_i, μ_j)}`.
pub fn torus_commutator<F: Field>(spec: &ExtensionSpec, x1: &TorusLoopPoint<F>, x2: &TorusLoopPoint<F>) -> Result<F> {
    let mut acc = F::one();
    for (l, f) in &x1.terms {
        for (mu, g) in &x2.terms {
            let e = spec.commutator_exponent(l, mu)?;
            let s = tame_symbol(f, g)?;
            acc = acc * series::field_pow(&s, &e)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::RootDatum;
    use crate::{Fp, Rational};

    type Q = LaurentSeries<Rational>;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn symbol_examples() {
        let t = Q::t();
        assert_eq!(tame_symbol(&t, &t).unwrap(), r(-1, 1));
        assert_eq!(tame_symbol(&Q::constant(r(3, 1)), &Q::constant(r(5, 7))).unwrap(), r(1, 1));
        assert_eq!(tame_symbol(&Q::constant(r(2, 1)), &t).unwrap(), r(1, 2));
        assert_eq!(tame_symbol(&t, &Q::constant(r(2, 1))).unwrap(), r(2, 1));
        assert!(tame_symbol(&Q::zero(), &t).is_err());
    }

    #[test]
    fn symbol_ignores_truncation() {
        let f = Q::parse("t^-2*(3 + t + O(t^2))").unwrap();
        let g = Q::parse("t^3*(5 - t)").unwrap();
        let exact = tame_symbol(&f.truncate(1), &g.truncate(1)).unwrap();
        assert_eq!(tame_symbol(&f, &g).unwrap(), exact);
        assert_eq!(tame_symbol_by_series(&f, &g).unwrap(), exact);
    }

    #[test]
    fn symbol_over_f7() {
        let f = LaurentSeries::<Fp<7>>::parse("t*(3 + t)").unwrap();
        let g = LaurentSeries::<Fp<7>>::parse("t^2*(2)").unwrap();
        // (-1)^2 · 2^1 · 3^-2 = 2 · 9^-1 = 2 · 4 = 8 = 1 mod 7
        assert_eq!(tame_symbol(&f, &g).unwrap(), Fp::new(1));
    }

    #[test]
    fn commutator_examples() {
        let sl2 = RootDatum::simply_connected("A1".parse().unwrap()).unwrap();
        let one = vec![r(1, 1)];
        let spec = ExtensionSpec::new(&sl2, 4).unwrap();
        let x = TorusLoopPoint::single(one.clone(), Q::t()).unwrap();
        assert_eq!(torus_commutator(&spec, &x, &x).unwrap(), r(1, 1));
        let trivial = TorusLoopPoint::single(one.clone(), Q::one()).unwrap();
        assert_eq!(torus_commutator(&spec, &trivial, &x).unwrap(), r(1, 1));
        let spec2 = ExtensionSpec::new(&sl2, 2).unwrap();
        let c = TorusLoopPoint::single(one.clone(), Q::constant(r(3, 1))).unwrap();
        assert_eq!(torus_commutator(&spec2, &x, &c).unwrap(), r(81, 1));
        assert!(TorusLoopPoint::single(one, Q::zero()).is_err());
    }
}
