use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{DivisionSemiring, PolyNat, PositiveRational, Semiring, SemiringError, TropicalInt, TropicalRational};

/// The carriers available at run time (text formats, command line).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    CountingNat,
    ExactInt,
    PositiveRational,
    TropicalInt,
    TropicalRational,
    PolyNat,
}

impl Carrier {
    pub const ALL: [Carrier; 6] = [
        Carrier::CountingNat,
        Carrier::ExactInt,
        Carrier::PositiveRational,
        Carrier::TropicalInt,
        Carrier::TropicalRational,
        Carrier::PolyNat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Carrier::CountingNat => "counting-nat",
            Carrier::ExactInt => "exact-int",
            Carrier::PositiveRational => "positive-rational",
            Carrier::TropicalInt => "tropical-int",
            Carrier::TropicalRational => "tropical-rational",
            Carrier::PolyNat => "poly-nat",
        }
    }

    pub fn has_zero(self) -> bool {
        matches!(self, Carrier::CountingNat | Carrier::ExactInt | Carrier::PolyNat)
    }

    pub fn has_div(self) -> bool {
        matches!(
            self,
            Carrier::PositiveRational | Carrier::TropicalInt | Carrier::TropicalRational
        )
    }

    pub fn one(self) -> SemiringValue {
        match self {
            Carrier::CountingNat => SemiringValue::CountingNat(<BigUint as One>::one()),
            Carrier::ExactInt => SemiringValue::ExactInt(<BigInt as One>::one()),
            Carrier::PositiveRational => SemiringValue::PositiveRational(PositiveRational::one()),
            Carrier::TropicalInt => SemiringValue::TropicalInt(Semiring::one()),
            Carrier::TropicalRational => SemiringValue::TropicalRational(Semiring::one()),
            Carrier::PolyNat => SemiringValue::PolyNat(Semiring::one()),
        }
    }

    pub fn zero(self) -> Option<SemiringValue> {
        match self {
            Carrier::CountingNat => Some(SemiringValue::CountingNat(<BigUint as Zero>::zero())),
            Carrier::ExactInt => Some(SemiringValue::ExactInt(<BigInt as Zero>::zero())),
            Carrier::PolyNat => Some(SemiringValue::PolyNat(PolyNat::zero_poly())),
            _ => None,
        }
    }

    pub fn parse_value(self, s: &str) -> Result<SemiringValue, SemiringError> {
        let s = s.trim();
        if s == "*" {
            return Ok(SemiringValue::Star);
        }
        let parse_err = |reason: String| SemiringError::Parse {
            carrier: self.name().into(),
            input: s.into(),
            reason,
        };
        Ok(match self {
            Carrier::CountingNat => {
                SemiringValue::CountingNat(BigUint::from_str(s).map_err(|e| parse_err(e.to_string()))?)
            }
            Carrier::ExactInt => {
                SemiringValue::ExactInt(BigInt::from_str(s).map_err(|e| parse_err(e.to_string()))?)
            }
            Carrier::PositiveRational => SemiringValue::PositiveRational(s.parse()?),
            Carrier::TropicalInt => SemiringValue::TropicalInt(s.parse()?),
            Carrier::TropicalRational => SemiringValue::TropicalRational(s.parse()?),
            Carrier::PolyNat => SemiringValue::PolyNat(s.parse()?),
        })
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Carrier {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Carrier::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| SemiringError::Parse {
                carrier: "carrier".into(),
                input: s.into(),
                reason: format!(
                    "expected one of {}",
                    Carrier::ALL.map(|c| c.name()).join(", ")
                ),
            })
    }
}

/// A dynamically typed semiring element. `Star` is the adjoined `∗`, shared
/// by all carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiringValue {
    CountingNat(BigUint),
    ExactInt(BigInt),
    PositiveRational(PositiveRational),
    TropicalInt(TropicalInt),
    TropicalRational(TropicalRational),
    PolyNat(PolyNat),
    Star,
}

impl SemiringValue {
    /// `None` for `∗`.
    pub fn carrier(&self) -> Option<Carrier> {
        Some(match self {
            SemiringValue::CountingNat(_) => Carrier::CountingNat,
            SemiringValue::ExactInt(_) => Carrier::ExactInt,
            SemiringValue::PositiveRational(_) => Carrier::PositiveRational,
            SemiringValue::TropicalInt(_) => Carrier::TropicalInt,
            SemiringValue::TropicalRational(_) => Carrier::TropicalRational,
            SemiringValue::PolyNat(_) => Carrier::PolyNat,
            SemiringValue::Star => return None,
        })
    }

    pub fn is_star(&self) -> bool {
        matches!(self, SemiringValue::Star)
    }

    fn mismatch(&self, rhs: &Self) -> SemiringError {
        let name = |v: &SemiringValue| v.carrier().map_or("*", Carrier::name).to_string();
        SemiringError::CarrierMismatch {
            left: name(self),
            right: name(rhs),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SemiringError> {
        use SemiringValue::*;
        Ok(match (self, rhs) {
            (Star, x) | (x, Star) => x.clone(),
            (CountingNat(a), CountingNat(b)) => CountingNat(a + b),
            (ExactInt(a), ExactInt(b)) => ExactInt(a + b),
            (PositiveRational(a), PositiveRational(b)) => PositiveRational(a.add(b)),
            (TropicalInt(a), TropicalInt(b)) => TropicalInt(a.add(b)),
            (TropicalRational(a), TropicalRational(b)) => TropicalRational(a.add(b)),
            (PolyNat(a), PolyNat(b)) => PolyNat(a.add(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, SemiringError> {
        use SemiringValue::*;
        Ok(match (self, rhs) {
            (Star, _) | (_, Star) => Star,
            (CountingNat(a), CountingNat(b)) => CountingNat(a * b),
            (ExactInt(a), ExactInt(b)) => ExactInt(a * b),
            (PositiveRational(a), PositiveRational(b)) => PositiveRational(a.mul(b)),
            (TropicalInt(a), TropicalInt(b)) => TropicalInt(a.mul(b)),
            (TropicalRational(a), TropicalRational(b)) => TropicalRational(a.mul(b)),
            (PolyNat(a), PolyNat(b)) => PolyNat(a.mul(b)),
            _ => return Err(self.mismatch(rhs)),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SemiringError> {
        use SemiringValue::*;
        match (self, rhs) {
            (PositiveRational(a), PositiveRational(b)) => Ok(PositiveRational(a.div(b))),
            (TropicalInt(a), TropicalInt(b)) => Ok(TropicalInt(a.div(b))),
            (TropicalRational(a), TropicalRational(b)) => Ok(TropicalRational(a.div(b))),
            _ if self.carrier().is_some() && self.carrier() == rhs.carrier() => Err(
                SemiringError::DivisionUnsupported(self.carrier().unwrap().name().into()),
            ),
            (Star, _) | (_, Star) => Err(SemiringError::DivisionUnsupported("*".into())),
            _ => Err(self.mismatch(rhs)),
        }
    }

    pub fn nat_scale(&self, k: u64) -> Result<Self, SemiringError> {
        use SemiringValue::*;
        Ok(match self {
            Star => Star,
            CountingNat(a) => CountingNat(a.nat_scale(k)?),
            ExactInt(a) => ExactInt(a.nat_scale(k)?),
            PositiveRational(a) => PositiveRational(a.nat_scale(k)?),
            TropicalInt(a) => TropicalInt(a.nat_scale(k)?),
            TropicalRational(a) => TropicalRational(a.nat_scale(k)?),
            PolyNat(a) => PolyNat(a.nat_scale(k)?),
        })
    }
}

impl fmt::Display for SemiringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringValue::CountingNat(a) => a.fmt(f),
            SemiringValue::ExactInt(a) => a.fmt(f),
            SemiringValue::PositiveRational(a) => a.fmt(f),
            SemiringValue::TropicalInt(a) => a.fmt(f),
            SemiringValue::TropicalRational(a) => a.fmt(f),
            SemiringValue::PolyNat(a) => a.fmt(f),
            SemiringValue::Star => f.write_str("*"),
        }
    }
}
