//! TOML spec files and the bundled example specs.
//!
//! ```toml
//! name = "b1"                 # optional
//! family = "b1"               # explicit | b1 | b1n | b2 | not_all_holes | two_filtrations
//!                             # | gh_variant | skeleton | star
//! horizon = 12                # realized generator index (ℬ-free families)
//! window = 20000              # default |position| bound for η windows
//! filtration = "standard"     # or "primed" (two_filtrations only)
//! depth = 5                   # star only: number of levels
//!
//! [params]                    # whichever the family needs
//! c = [3, 5, 7]
//! d = [5, 7, 11]
//! q = [5, 7, 11]
//! N = 2                       # b1n; omit for N = ∞
//! elements = [6, 10, 15]      # explicit
//!
//! [[levels]]                  # skeleton: one table per level
//! period = 4
//! word = "0??1"               # '?' marks a hole
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::bset::{BSetSpec, Family, FiltrationChoice};
use crate::error::{Error, Result};
use crate::toeplitz::{star_skeleton, DirectToeplitzSpec, SkeletonLevel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecKind {
    BFree(BSetSpec),
    Toeplitz(DirectToeplitzSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub name: String,
    pub kind: SpecKind,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    c: Option<Vec<u64>>,
    d: Option<Vec<u64>>,
    q: Option<Vec<u64>>,
    #[serde(rename = "N")]
    n: Option<u64>,
    elements: Option<Vec<u64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    period: u64,
    word: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Option<String>,
    family: String,
    horizon: Option<usize>,
    window: Option<u64>,
    #[serde(default)]
    filtration: FiltrationChoice,
    depth: Option<usize>,
    #[serde(default)]
    params: RawParams,
    #[serde(default)]
    levels: Vec<RawLevel>,
}

fn need<T>(v: Option<T>, field: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::Spec(format!("family {family} needs params.{field}")))
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        let fam = raw.family.as_str();
        let name = raw.name.clone().unwrap_or_else(|| fam.to_string());
        let p = raw.params;
        let family = match fam {
            "gh_variant" => return Ok(SpecFile { name, kind: SpecKind::Toeplitz(DirectToeplitzSpec::GhVariant) }),
            "star" => {
                let depth = raw.depth.unwrap_or(4);
                return Ok(SpecFile { name, kind: SpecKind::Toeplitz(star_skeleton(depth)?) });
            }
            "skeleton" => {
                let levels = raw.levels.iter().map(|l| SkeletonLevel::parse(l.period, &l.word)).collect::<Result<_>>()?;
                return Ok(SpecFile { name, kind: SpecKind::Toeplitz(DirectToeplitzSpec::skeleton(levels)?) });
            }
            "explicit" => Family::Explicit { elements: need(p.elements, "elements", fam)? },
            "b1" => Family::B1 { c: need(p.c, "c", fam)? },
            "b1n" => Family::B1N { c: need(p.c, "c", fam)?, n: p.n },
            "b2" => Family::B2 { c: need(p.c, "c", fam)?, d: need(p.d, "d", fam)? },
            "not_all_holes" => Family::NotAllHoles { q: need(p.q, "q", fam)?, c: need(p.c, "c", fam)? },
            "two_filtrations" => Family::TwoFiltrations { q: need(p.q, "q", fam)?, c: need(p.c, "c", fam)?, d: need(p.d, "d", fam)? },
            other => return Err(Error::Spec(format!("unknown family {other:?}"))),
        };
        let horizon = raw.horizon.unwrap_or_else(|| family.max_index());
        let window = raw.window.unwrap_or(1000);
        let spec = BSetSpec::new(family, horizon, window)?.with_filtration(raw.filtration)?;
        Ok(SpecFile { name, kind: SpecKind::BFree(spec) })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// A bundled spec by name.
    pub fn bundled(name: &str) -> Result<Self> {
        let (_, text) = BUNDLED.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::Spec(format!("no bundled spec named {name:?}")))?;
        Self::parse(text)
    }

    pub fn bfree(&self) -> Result<&BSetSpec> {
        match &self.kind {
            SpecKind::BFree(s) => Ok(s),
            SpecKind::Toeplitz(_) => Err(Error::NotApplicable(format!("{} is not a ℬ-free spec", self.name))),
        }
    }
}

/// Bundled spec files by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("b1", include_str!("../specs/b1.toml")),
    ("b1n", include_str!("../specs/b1n.toml")),
    ("b1inf", include_str!("../specs/b1inf.toml")),
    ("b2", include_str!("../specs/b2.toml")),
    ("b2-equal", include_str!("../specs/b2-equal.toml")),
    ("b2-complexity", include_str!("../specs/b2-complexity.toml")),
    ("b2-squares", include_str!("../specs/b2-squares.toml")),
    ("gh", include_str!("../specs/gh.toml")),
    ("star", include_str!("../specs/star.toml")),
    ("skeleton", include_str!("../specs/skeleton.toml")),
    ("not-all-holes", include_str!("../specs/not-all-holes.toml")),
    ("two-filtrations", include_str!("../specs/two-filtrations.toml")),
    ("two-filtrations-primed", include_str!("../specs/two-filtrations-primed.toml")),
    ("explicit", include_str!("../specs/explicit.toml")),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_parse() {
        for (name, _) in BUNDLED {
            let s = SpecFile::bundled(name).unwrap();
            assert_eq!(&s.name, name);
        }
    }

    #[test]
    fn errors() {
        assert!(SpecFile::parse("family = \"b1\"").is_err());
        assert!(SpecFile::parse("family = \"nope\"").is_err());
        assert!(SpecFile::parse("family = \"b1\"\nbogus = 1\n[params]\nc = [3]").is_err());
        let s = SpecFile::parse("family = \"skeleton\"\n[[levels]]\nperiod = 2\nword = \"0?\"").unwrap();
        assert!(matches!(s.kind, SpecKind::Toeplitz(_)));
        let e = SpecFile::parse("family = \"explicit\"\nhorizon = 0\n[params]\nelements = []").unwrap();
        assert!(e.bfree().unwrap().generators().is_empty());
    }
}
