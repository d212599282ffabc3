//! Exact computational laboratory for finite pseudo effect algebras.
//!
//! A pseudo effect algebra is a partial algebra `(E; +, 0, 1)` whose partial
//! addition need not commute. This crate represents finite ones as validated
//! partial-addition tables and computes, with exact rational arithmetic
//! throughout:
//!
//! - the derived order, differences, complements, and partial meets/joins
//!   ([`algebra`]),
//! - a zoo of standard examples: Boolean algebras, chains, po-group
//!   intervals, horizontal sums and products ([`zoo`]),
//! - the Riesz-type properties RIP, RDP₀, RDP, RDP₁, RDP₂ with witnesses
//!   and certificates ([`riesz`]),
//! - signed measures, measures and states, and the state polytope with its
//!   extreme states enumerated exactly ([`measure`], [`polytope`]),
//! - the lattice of Jordan signed measures: joins and meets by the
//!   decomposition-supremum formula ([`jordan`]),
//! - faces of the state simplex and the cone decomposition engine that
//!   splits a measure uniquely along a face ([`faces`]),
//! - Lebesgue-, central-, and Yosida–Hewitt-type decompositions with
//!   machine-checkable certificates ([`decomp`]).
//!
//! Everything is deterministic: fixed pivoting orders, seeded generators,
//! and canonical serializations ([`format`]).

#![forbid(unsafe_code)]

pub mod algebra;
pub mod bitset;
pub mod decomp;
pub mod dd;
pub mod faces;
pub mod format;
pub mod jordan;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod polytope;
pub mod riesz;
pub mod zoo;

/// Exact rational scalar used for every measure value and LP coefficient.
pub type Rat = num_rational::BigRational;

/// Shorthand for an exact integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the exact fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Serde adapters rendering rationals as `p/q` strings in lowest terms.
pub mod rat_serde {
    use super::Rat;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(value: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        Rat::from_str(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
            let strings = Vec::<String>::deserialize(de)?;
            strings
                .iter()
                .map(|s| Rat::from_str(s).map_err(D::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn rational_display_round_trip() {
        use std::str::FromStr;
        for (n, d, s) in [(1, 2, "1/2"), (-3, 4, "-3/4"), (2, 1, "2"), (0, 5, "0")] {
            let r = ratio(n, d);
            assert_eq!(r.to_string(), s);
            assert_eq!(Rat::from_str(s).unwrap(), r);
        }
        assert!(rat(0).is_zero());
    }
}
