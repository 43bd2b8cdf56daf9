//! Serde adapters writing big numbers as decimal strings (rationals as "p/q").

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn parse<'de, D: Deserializer<'de>, T: FromStr>(s: &str) -> Result<T, D::Error> {
    s.parse().map_err(|_| D::Error::custom(format!("invalid number {s:?}")))
}

pub mod num {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> Result<T, D::Error> {
        parse::<D, T>(&String::deserialize(d)?)
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(|v| v.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> Result<Option<T>, D::Error> {
        Option::<String>::deserialize(d)?.map(|v| parse::<D, T>(&v)).transpose()
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(x: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(x.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: FromStr>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|v| parse::<D, T>(v)).collect()
    }
}

pub mod set {
    use super::*;

    pub fn serialize<S: Serializer, T: Display>(x: &BTreeSet<T>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(x.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: FromStr + Ord>(d: D) -> Result<BTreeSet<T>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|v| parse::<D, T>(v)).collect()
    }
}

pub mod map {
    use super::*;

    pub fn serialize<S: Serializer, K: Display, V: Display>(x: &BTreeMap<K, V>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(x.iter().map(|(k, v)| (k.to_string(), v.to_string())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>, K: FromStr + Ord, V: FromStr>(d: D) -> Result<BTreeMap<K, V>, D::Error> {
        BTreeMap::<String, String>::deserialize(d)?.iter().map(|(k, v)| Ok((parse::<D, K>(k)?, parse::<D, V>(v)?))).collect()
    }
}

/// Pairs (number, rational).
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer, A: Display, B: Display>(x: &[(A, B)], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(x.iter().map(|(a, b)| (a.to_string(), b.to_string())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>, A: FromStr, B: FromStr>(d: D) -> Result<Vec<(A, B)>, D::Error> {
        Vec::<(String, String)>::deserialize(d)?.iter().map(|(a, b)| Ok((parse::<D, A>(a)?, parse::<D, B>(b)?))).collect()
    }
}
