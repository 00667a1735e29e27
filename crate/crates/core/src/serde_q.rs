//! Serde helpers: rationals cross every boundary as `"p"` or `"p/q"` strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::exact::rational::{fmt_q, parse_q, Q};

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse_q(&s).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod array3 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Q; 3], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Q; 3], D::Error> {
        let v = super::vec::deserialize(d)?;
        <[Q; 3]>::try_from(v).map_err(|v| D::Error::custom(format!("expected 3 entries, got {}", v.len())))
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&fmt_q(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_q(&s).map_err(D::Error::custom))
            .transpose()
    }
}

/// Integers as decimal strings.
pub mod z {
    use super::*;
    use crate::exact::rational::Z;

    pub fn serialize<S: Serializer>(x: &Z, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Z, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(D::Error::custom)
    }
}

pub mod zvec {
    use super::*;
    use crate::exact::rational::Z;

    pub fn serialize<S: Serializer>(v: &[Z], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Z>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.trim().parse().map_err(D::Error::custom))
            .collect()
    }
}

pub mod opt_z {
    use super::*;
    use crate::exact::rational::Z;

    pub fn serialize<S: Serializer>(x: &Option<Z>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }
}
