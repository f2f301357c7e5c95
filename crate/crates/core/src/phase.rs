//! Exact arithmetic on the unit circle.
//!
//! A [`Phase`] is the scalar `exp(2πi·q)` stored as the reduced rational
//! exponent `q` with `0 ≤ q < 1`. Multiplication adds exponents mod 1, so
//! every computation built from roots of unity stays exact; cocycle
//! identities can be checked as equalities instead of tolerances.

use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// `exp(2πi·q)` with `q` a reduced rational in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Phase {
    exp: BigRational,
}

impl Phase {
    /// The neutral phase `1` (exponent `0`).
    pub fn one() -> Self {
        Phase {
            exp: BigRational::zero(),
        }
    }

    /// Builds `exp(2πi·num/den)`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "phase denominator must be nonzero");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Reduces an arbitrary rational exponent into `[0, 1)`.
    pub fn from_rational(q: BigRational) -> Self {
        let f = q.floor();
        Phase { exp: q - f }
    }

    pub fn is_one(&self) -> bool {
        self.exp.is_zero()
    }

    /// The reduced exponent in `[0, 1)`.
    pub fn exponent(&self) -> &BigRational {
        &self.exp
    }

    pub fn inverse(&self) -> Self {
        Self::from_rational(-self.exp.clone())
    }

    /// Complex conjugate; same as the inverse on the unit circle.
    pub fn conj(&self) -> Self {
        self.inverse()
    }

    pub fn pow(&self, n: i64) -> Self {
        Self::from_rational(&self.exp * BigRational::from(BigInt::from(n)))
    }

    /// Principal square root: exponent `q/2` for the representative `q ∈ [0, 1)`.
    ///
    /// Squaring the result always returns `self`, and `sqrt(1) = 1`.
    pub fn principal_sqrt(&self) -> Self {
        Phase {
            exp: &self.exp / BigRational::from(BigInt::from(2)),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let q = self.exp.to_f64().expect("phase exponent out of f64 range");
        let theta = std::f64::consts::TAU * q;
        Complex64::new(theta.cos(), theta.sin())
    }

    /// Exact real/imaginary parts when the exponent denominator divides 4
    /// (values in `{±1, ±i}` scaled combinations), `None` otherwise.
    pub fn to_gaussian_rational(&self) -> Option<(BigRational, BigRational)> {
        let four = BigInt::from(4);
        if (&four % self.exp.denom()).is_zero() {
            // exponent is k/4 with k in 0..4
            let k = (&self.exp * BigRational::from(four)).to_integer();
            let k = k.to_i64().unwrap();
            let (re, im) = match k {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                3 => (0, -1),
                _ => unreachable!("reduced exponent in [0,1)"),
            };
            Some((
                BigRational::from(BigInt::from(re)),
                BigRational::from(BigInt::from(im)),
            ))
        } else {
            None
        }
    }

    /// Denominator of the reduced exponent.
    pub fn denominator(&self) -> BigInt {
        self.exp.denom().clone()
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.exp + rhs.exp)
    }
}

impl Mul<&Phase> for &Phase {
    type Output = Phase;
    fn mul(self, rhs: &Phase) -> Phase {
        Phase::from_rational(&self.exp + &rhs.exp)
    }
}

impl Mul<&Phase> for Phase {
    type Output = Phase;
    fn mul(self, rhs: &Phase) -> Phase {
        Phase::from_rational(self.exp + &rhs.exp)
    }
}

impl Mul<Phase> for &Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_rational(&self.exp + rhs.exp)
    }
}

impl MulAssign<&Phase> for Phase {
    fn mul_assign(&mut self, rhs: &Phase) {
        let q = &self.exp + &rhs.exp;
        *self = Phase::from_rational(q);
    }
}

impl fmt::Display for Phase {
    /// Reduced fraction exponent, e.g. `1/2` for −1 and `0/1` for 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.exp.numer(), self.exp.denom())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({})", self)
    }
}

impl FromStr for Phase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|e| format!("bad numerator: {e}"))?;
        let den: BigInt = den.parse().map_err(|e| format!("bad denominator: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Phase::from_rational(BigRational::new(num, den)))
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}
