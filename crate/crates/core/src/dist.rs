use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A path weight or movement cost that may be infinite.
///
/// `Finite` values order below `Infinite`; addition saturates at `Infinite`.
/// Serialized as a JSON integer, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dist {
    Finite(i64),
    Infinite,
}

impl Dist {
    pub const ZERO: Dist = Dist::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Dist::Finite(v) => Some(v),
            Dist::Infinite => None,
        }
    }

    /// Panics on an infinite value.
    pub fn unwrap(self) -> i64 {
        self.finite().expect("called Dist::unwrap on an infinite value")
    }

    /// `self <= budget`, with infinity never within budget.
    pub fn within(self, budget: i64) -> bool {
        matches!(self, Dist::Finite(v) if v <= budget)
    }
}

impl Default for Dist {
    fn default() -> Self {
        Dist::Infinite
    }
}

impl From<i64> for Dist {
    fn from(v: i64) -> Self {
        Dist::Finite(v)
    }
}

impl Add for Dist {
    type Output = Dist;
    fn add(self, rhs: Dist) -> Dist {
        match (self, rhs) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Infinite,
        }
    }
}

impl Add<i64> for Dist {
    type Output = Dist;
    fn add(self, rhs: i64) -> Dist {
        self + Dist::Finite(rhs)
    }
}

impl std::iter::Sum for Dist {
    fn sum<I: Iterator<Item = Dist>>(iter: I) -> Dist {
        iter.fold(Dist::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(v) => write!(f, "{v}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(v) => serializer.serialize_i64(*v),
            Dist::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DistVisitor;
        impl Visitor<'_> for DistVisitor {
            type Value = Dist;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or \"inf\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Dist, E> {
                Ok(Dist::Finite(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Dist, E> {
                i64::try_from(v).map(Dist::Finite).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Dist, E> {
                if v == "inf" {
                    Ok(Dist::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        deserializer.deserialize_any(DistVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_saturation() {
        assert!(Dist::Finite(i64::MAX) < Dist::Infinite);
        assert_eq!(Dist::Finite(3) + Dist::Infinite, Dist::Infinite);
        assert_eq!(Dist::Finite(3) + 4, Dist::Finite(7));
        assert!(Dist::Finite(-2).within(-2));
        assert!(!Dist::Infinite.within(i64::MAX));
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&Dist::Finite(-5)).unwrap(), "-5");
        assert_eq!(serde_json::to_string(&Dist::Infinite).unwrap(), "\"inf\"");
        let d: Dist = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(d, Dist::Infinite);
        assert!(serde_json::from_str::<Dist>("\"nan\"").is_err());
    }
}
