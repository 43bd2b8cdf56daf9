//! Directly specified Toeplitz sequences: the Garcia–Hedlund variant and user skeletons.

use serde::{Deserialize, Serialize};

use crate::bset::BitWindow;
use crate::error::{Error, Result};
use crate::holes::ResidueSet;

/// Largest level whose period fits comfortably in 64 bits.
pub const GH_MAX_LEVEL: usize = 30;

/// One skeleton level: period p_n and a word of length p_n over {0, 1, hole}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonLevel {
    pub period: u64,
    pub word: Vec<Option<bool>>,
}

impl SkeletonLevel {
    /// Parses a word such as `"0??1"`.
    pub fn parse(period: u64, word: &str) -> Result<Self> {
        let word: Vec<Option<bool>> = word
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(Some(false)),
                '1' => Ok(Some(true)),
                '?' => Ok(None),
                other => Err(Error::Spec(format!("unexpected symbol {other:?} in skeleton word"))),
            })
            .collect::<Result<_>>()?;
        if word.len() as u64 != period {
            return Err(Error::Spec(format!("word length {} differs from period {period}", word.len())));
        }
        Ok(SkeletonLevel { period, word })
    }

    pub fn word_string(&self) -> String {
        self.word
            .iter()
            .map(|b| match b {
                Some(true) => '1',
                Some(false) => '0',
                None => '?',
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DirectToeplitzSpec {
    /// p_n = 2^{2n+1}, ℋ_n = 4^n ℤ − r_n with r_n = (4^n − 1)/3, alternating fill.
    GhVariant,
    Skeleton {
        levels: Vec<SkeletonLevel>,
    },
}

fn r_n(n: usize) -> i128 {
    ((1i128 << (2 * n)) - 1) / 3
}

impl DirectToeplitzSpec {
    pub fn skeleton(levels: Vec<SkeletonLevel>) -> Result<Self> {
        let spec = DirectToeplitzSpec::Skeleton { levels };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let DirectToeplitzSpec::Skeleton { levels } = self else { return Ok(()) };
        if levels.is_empty() {
            return Err(Error::Spec("skeleton needs at least one level".into()));
        }
        for (i, pair) in levels.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            if lo.period == 0 || hi.period % lo.period != 0 {
                return Err(Error::Spec(format!("period {} does not divide {}", lo.period, hi.period)));
            }
            for (r, bit) in hi.word.iter().enumerate() {
                let earlier = lo.word[r % lo.period as usize];
                if earlier.is_some() && earlier != *bit {
                    return Err(Error::Spec(format!("level {} reassigns residue {r}", i + 2)));
                }
            }
        }
        Ok(())
    }

    /// Number of specified levels.
    pub fn max_level(&self) -> usize {
        match self {
            DirectToeplitzSpec::GhVariant => GH_MAX_LEVEL,
            DirectToeplitzSpec::Skeleton { levels } => levels.len(),
        }
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidInput("levels start at 1".into()));
        }
        if n > self.max_level() {
            return Err(Error::LevelCap { level: n, cap: self.max_level() });
        }
        Ok(())
    }

    pub fn period(&self, n: usize) -> Result<u64> {
        self.check_level(n)?;
        Ok(match self {
            DirectToeplitzSpec::GhVariant => 1u64 << (2 * n + 1),
            DirectToeplitzSpec::Skeleton { levels } => levels[n - 1].period,
        })
    }

    /// ℋ_n as residues modulo p_n.
    pub fn direct_holes(&self, n: usize) -> Result<ResidueSet> {
        let p = self.period(n)?;
        match self {
            DirectToeplitzSpec::GhVariant => {
                let r = r_n(n);
                let p_i = p as i128;
                let q = 1i128 << (2 * n);
                ResidueSet::new(p, [(-r).rem_euclid(p_i) as u64, (q - r).rem_euclid(p_i) as u64])
            }
            DirectToeplitzSpec::Skeleton { levels } => {
                let w = &levels[n - 1].word;
                ResidueSet::new(p, (0..p).filter(|&r| w[r as usize].is_none()))
            }
        }
    }

    /// Bit at x and its resolving level, if resolved by level `budget`.
    pub fn resolve(&self, x: i64, budget: usize) -> Option<(bool, usize)> {
        match self {
            DirectToeplitzSpec::GhVariant => {
                let x = x as i128;
                for n in 1..=budget.min(GH_MAX_LEVEL) {
                    let scale = 1i128 << (2 * (n - 1));
                    let u = (x + r_n(n - 1)) / scale;
                    let u4 = u.rem_euclid(4);
                    if u4 == 3 {
                        continue;
                    }
                    let k = (4 - u4) % 4;
                    let t = (u + k) / 4;
                    return Some((t.rem_euclid(2) == 1, n));
                }
                None
            }
            DirectToeplitzSpec::Skeleton { levels } => {
                levels.iter().take(budget).enumerate().find_map(|(i, l)| l.word[x.rem_euclid(l.period as i64) as usize].map(|b| (b, i + 1)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedWindow {
    /// Unresolved positions carry a placeholder 0.
    pub window: BitWindow,
    pub unresolved: Vec<i64>,
}

/// The sequence on [lo, hi], resolving each position at its first level ≤ budget.
pub fn direct_eta_segment(spec: &DirectToeplitzSpec, lo: i64, hi: i64, budget: usize) -> Result<ResolvedWindow> {
    if budget == 0 {
        return Err(Error::InvalidInput("level budget must be ≥ 1".into()));
    }
    if hi < lo {
        return Err(Error::InvalidInput(format!("empty range {lo}..{hi}")));
    }
    let mut bits = Vec::with_capacity((hi - lo + 1) as usize);
    let mut unresolved = Vec::new();
    for x in lo..=hi {
        match spec.resolve(x, budget) {
            Some((b, _)) => bits.push(b),
            None => {
                bits.push(false);
                unresolved.push(x);
            }
        }
    }
    Ok(ResolvedWindow { window: BitWindow::new(lo, bits), unresolved })
}

/// Skeleton with p_n = 4^n and holes {1, 2} mod p_n: every length-p_n block either
/// keeps all its holes (block 0) or is filled completely, so condition (*) holds
/// while two adjacent holes survive at every level.
pub fn star_skeleton(levels: usize) -> Result<DirectToeplitzSpec> {
    let mut out = vec![SkeletonLevel::parse(4, "0??1")?];
    for _ in 1..levels {
        let prev = out.last().expect("nonempty");
        let p = prev.period as usize;
        let fills = [None, Some((false, false)), Some((true, true)), Some((false, true))];
        let mut word = Vec::with_capacity(4 * p);
        for fill in fills {
            for (r, bit) in prev.word.iter().enumerate() {
                word.push(match (bit, fill) {
                    (Some(b), _) => Some(*b),
                    (None, None) => None,
                    (None, Some((a, b))) => Some(if r == 1 { a } else { b }),
                });
            }
        }
        out.push(SkeletonLevel { period: 4 * p as u64, word });
    }
    DirectToeplitzSpec::skeleton(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gh_holes() {
        let gh = DirectToeplitzSpec::GhVariant;
        assert_eq!(gh.direct_holes(1).unwrap().residues, vec![3, 7]);
        assert_eq!(gh.direct_holes(2).unwrap().residues, vec![11, 27]);
        assert!(gh.direct_holes(0).is_err());
    }

    #[test]
    fn gh_segment() {
        let gh = DirectToeplitzSpec::GhVariant;
        let w = direct_eta_segment(&gh, 0, 7, 1).unwrap();
        assert_eq!(w.unresolved, vec![3, 7]);
        let w3 = direct_eta_segment(&gh, 0, 7, 3).unwrap();
        assert!(w3.unresolved.is_empty());
        // u = (3 + r_1)/4 = 1 = 4·1 − 3, so position 3 resolves at level 2 with t = 1
        assert_eq!(gh.resolve(3, 3), Some((true, 2)));
        for (i, x) in (0..8).enumerate() {
            if !w.unresolved.contains(&x) {
                assert_eq!(w.window.bits[i], w3.window.bits[i]);
            }
        }
    }

    #[test]
    fn gh_two_holes_per_period() {
        let gh = DirectToeplitzSpec::GhVariant;
        for n in 1..=5 {
            let h = gh.direct_holes(n).unwrap();
            let p = gh.period(n).unwrap();
            assert_eq!(h.len(), 2);
            assert_eq!(h.residues[1] - h.residues[0], p / 2);
        }
    }

    #[test]
    fn skeletons() {
        assert!(DirectToeplitzSpec::skeleton(vec![SkeletonLevel::parse(2, "01").unwrap()]).is_ok());
        let bad = vec![SkeletonLevel::parse(2, "0?").unwrap(), SkeletonLevel::parse(4, "1?00").unwrap()];
        assert!(DirectToeplitzSpec::skeleton(bad).is_err());
        let star = star_skeleton(3).unwrap();
        assert_eq!(star.direct_holes(3).unwrap().residues, vec![1, 2]);
        let w = direct_eta_segment(&star, 0, 63, 3).unwrap();
        assert_eq!(w.unresolved, vec![1, 2]);
        let full = DirectToeplitzSpec::skeleton(vec![SkeletonLevel::parse(3, "011").unwrap()]).unwrap();
        assert!(direct_eta_segment(&full, -5, 5, 1).unwrap().unresolved.is_empty());
    }
}
