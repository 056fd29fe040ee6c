//! Scalar traits and the prime fields used as series coefficients.
//!
//! Everything in this crate is exact. The linear algebra is written against
//! [`Scalar`] / [`Field`] / [`EuclideanInt`] so the same code runs over
//! `BigRational`, `Ratio<i64>`, `BigInt`, `i64` or a prime field [`Fp`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Commutative ring element with exact arithmetic.
pub trait Scalar:
    Num + Clone + PartialEq + fmt::Debug + fmt::Display + Neg<Output = Self> + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Num + Clone + PartialEq + fmt::Debug + fmt::Display + Neg<Output = Self> + Send + Sync + 'static
{
}

/// Exact field. Division by a nonzero element is exact.
pub trait Field: Scalar {
    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic() -> u64;

    /// Embeds a rational number. Returns `None` when the denominator
    /// vanishes in the field.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Integer power; negative exponents go through the inverse.
    fn powi(&self, exp: &BigInt) -> Option<Self> {
        let base = if exp.is_negative() {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.abs();
        let mut acc = Self::one();
        let mut sq = base;
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = acc * sq.clone();
            }
            sq = sq.clone() * sq;
            e /= &two;
        }
        Some(acc)
    }
}

impl Field for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Field for Ratio<i64> {
    fn characteristic() -> u64 {
        0
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Ratio::new(q.numer().to_i64()?, q.denom().to_i64()?))
    }
}

/// Euclidean domain of integers, used by the Smith and Hermite normal forms.
pub trait EuclideanInt: Scalar + Integer + Signed {}

impl<T> EuclideanInt for T where T: Scalar + Integer + Signed {}

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME: () = assert!(is_prime(P) && P < (1 << 31), "modulus must be a prime below 2^31");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::PRIME;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow_u(self, mut e: u64) -> Self {
        let mut acc = 1u64;
        let mut b = self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        self * rhs.pow_u(P - 2)
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(Fp::new)
    }
}

impl<const P: u64> FromStr for Fp<P> {
    type Err = std::num::ParseIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse::<i64>().map(Fp::new)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(Fp(num) / Fp(den))
    }

    fn powi(&self, exp: &BigInt) -> Option<Self> {
        if self.0 == 0 {
            return if exp.is_positive() {
                Some(Fp(0))
            } else if exp.is_zero() {
                Some(Fp(1))
            } else {
                None
            };
        }
        // Fermat: exponents only matter modulo P - 1.
        let e = exp.mod_floor(&BigInt::from(P - 1)).to_u64()?;
        Some(self.pow_u(e))
    }
}

/// Small primes accepted wherever a prime field is chosen at run time.
pub const SUPPORTED_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101,
];

/// Runs `$body` with `$F` bound to the field named by `$p` (0 for the
/// rationals). Evaluates to `None` when `$p` is not in [`SUPPORTED_PRIMES`].
#[macro_export]
macro_rules! with_field {
    ($p:expr, $F:ident => $body:expr) => {{
        match $p {
            0 => { type $F = $crate::Rational; Some($body) }
            2 => { type $F = $crate::Fp<2>; Some($body) }
            3 => { type $F = $crate::Fp<3>; Some($body) }
            5 => { type $F = $crate::Fp<5>; Some($body) }
            7 => { type $F = $crate::Fp<7>; Some($body) }
            11 => { type $F = $crate::Fp<11>; Some($body) }
            13 => { type $F = $crate::Fp<13>; Some($body) }
            17 => { type $F = $crate::Fp<17>; Some($body) }
            19 => { type $F = $crate::Fp<19>; Some($body) }
            23 => { type $F = $crate::Fp<23>; Some($body) }
            29 => { type $F = $crate::Fp<29>; Some($body) }
            31 => { type $F = $crate::Fp<31>; Some($body) }
            37 => { type $F = $crate::Fp<37>; Some($body) }
            41 => { type $F = $crate::Fp<41>; Some($body) }
            43 => { type $F = $crate::Fp<43>; Some($body) }
            47 => { type $F = $crate::Fp<47>; Some($body) }
            53 => { type $F = $crate::Fp<53>; Some($body) }
            59 => { type $F = $crate::Fp<59>; Some($body) }
            61 => { type $F = $crate::Fp<61>; Some($body) }
            67 => { type $F = $crate::Fp<67>; Some($body) }
            71 => { type $F = $crate::Fp<71>; Some($body) }
            73 => { type $F = $crate::Fp<73>; Some($body) }
            79 => { type $F = $crate::Fp<79>; Some($body) }
            83 => { type $F = $crate::Fp<83>; Some($body) }
            89 => { type $F = $crate::Fp<89>; Some($body) }
            97 => { type $F = $crate::Fp<97>; Some($body) }
            101 => { type $F = $crate::Fp<101>; Some($body) }
            _ => None,
        }
    }};
}

/// Parses an exact rational literal: `3`, `-7`, `1/2`, `-5/3`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!(a + b, F7::new(1));
        assert_eq!(a - b, F7::new(5));
        assert_eq!(a * b, F7::new(1));
        assert_eq!(a / b, F7::new(2));
        assert_eq!(-a, F7::new(4));
        assert_eq!(F7::new(-1), F7::new(6));
    }

    #[test]
    fn powers_and_inverses() {
        let a = F7::new(3);
        assert_eq!(a.powi(&BigInt::from(6)), Some(F7::one()));
        assert_eq!(a.powi(&BigInt::from(-1)), Some(F7::new(5)));
        assert_eq!(F7::zero().powi(&BigInt::from(-2)), None);

        let q = BigRational::new(2.into(), 3.into());
        assert_eq!(q.powi(&BigInt::from(-2)), Some(BigRational::new(9.into(), 4.into())));
    }

    #[test]
    fn rational_embedding() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(F7::from_rational(&half), Some(F7::new(4)));
        assert_eq!(Fp::<2>::from_rational(&half), None);
        assert_eq!(parse_rational("-5/10"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn field_dispatch() {
        let c = with_field!(5u64, F => F::characteristic());
        assert_eq!(c, Some(5));
        assert_eq!(with_field!(0u64, F => F::characteristic()), Some(0));
        assert_eq!(with_field!(4u64, F => F::characteristic()), None);
    }
}
