//! Coefficient scalars for skeletal data.
//!
//! Pointed-style categories carry exact [`Phase`] coefficients; data files
//! with irrational F-symbols carry complex doubles. The two kinds never mix
//! inside one exact computation: adding two nonzero exact phases would mean
//! a multiplicity crept into a multiplicity-free hom space, so it panics.

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::phase::Phase;

/// Zero-suppression threshold for float-valued structure constants.
pub const FLOAT_ZERO: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Zero,
    Exact(Phase),
    Approx(Complex64),
}

impl Scalar {
    pub fn one() -> Self {
        Scalar::Exact(Phase::one())
    }

    pub fn from_phase(p: Phase) -> Self {
        Scalar::Exact(p)
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Approx(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        Scalar::Approx(Complex64::new(re, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Zero)
    }

    /// Zero, or a float value below the storage threshold.
    pub fn is_negligible(&self) -> bool {
        match self {
            Scalar::Zero => true,
            Scalar::Exact(_) => false,
            Scalar::Approx(z) => z.norm() < FLOAT_ZERO,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Zero | Scalar::Exact(_))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Zero => Complex64::new(0.0, 0.0),
            Scalar::Exact(p) => p.to_complex(),
            Scalar::Approx(z) => *z,
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Zero, _) | (_, Scalar::Zero) => Scalar::Zero,
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Approx(self.to_complex() * other.to_complex()),
        }
    }

    /// Addition of table coefficients. Two nonzero exact phases cannot
    /// legitimately meet in a multiplicity-free exact computation.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Zero, x) | (x, Scalar::Zero) => x.clone(),
            (Scalar::Exact(_), Scalar::Exact(_)) => {
                panic!("sum of two nonzero exact phases: exact data is not multiplicity-free")
            }
            _ => Scalar::Approx(self.to_complex() + other.to_complex()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Zero => Scalar::Zero,
            Scalar::Exact(p) => Scalar::Exact(p * &Phase::new(1, 2)),
            Scalar::Approx(z) => Scalar::Approx(-z),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Zero => Scalar::Zero,
            Scalar::Exact(p) => Scalar::Exact(p.conj()),
            Scalar::Approx(z) => Scalar::Approx(z.conj()),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Zero => panic!("inverse of zero scalar"),
            Scalar::Exact(p) => Scalar::Exact(p.inverse()),
            Scalar::Approx(z) => Scalar::Approx(z.inv()),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Scalar::Zero => 0.0,
            Scalar::Exact(_) => 1.0,
            Scalar::Approx(z) => z.norm(),
        }
    }

    /// `|self − other|` as complex numbers.
    pub fn abs_diff(&self, other: &Scalar) -> f64 {
        if self == other {
            return 0.0;
        }
        (self.to_complex() - other.to_complex()).norm()
    }
}

impl Serialize for Scalar {
    /// `{"phase": "num/den"}` for exact values, `{"re":…,"im":…}` otherwise.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Zero => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("zero", &true)?;
                m.end()
            }
            Scalar::Exact(p) => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("phase", &p.to_string())?;
                m.end()
            }
            Scalar::Approx(z) => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("im", &z.im)?;
                m.serialize_entry("re", &z.re)?;
                m.end()
            }
        }
    }
}
