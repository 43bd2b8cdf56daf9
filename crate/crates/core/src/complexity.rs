//! Subword complexity: window counts, the parameters δ, m_n, j_n and the
//! CRT-witness lower bound ρ(n) ≥ c_1⋯c_{j_n}.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::crt;
use crate::bset::{eta_segment, BSetSpec, Family};
use crate::error::{Error, Result};

/// Number of distinct length-n blocks of `bits`.
pub fn rho_of_bits(bits: &[bool], n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    if n > bits.len() {
        return 0;
    }
    if n <= 64 {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut seen = HashSet::new();
        let mut cur = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            cur = ((cur << 1) | u64::from(b)) & mask;
            if i + 1 >= n {
                seen.insert(cur);
            }
        }
        seen.len()
    } else {
        bits.windows(n).collect::<HashSet<_>>().len()
    }
}

/// Distinct blocks η[s, s + n − 1] with s ∈ [−L, L]; a lower bound for ρ(n).
pub fn rho_window(spec: &BSetSpec, n: usize, l: i64) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidInput("block length must be ≥ 1".into()));
    }
    let w = eta_segment(spec, -l, l + n as i64 - 1)?;
    Ok(rho_of_bits(&w.bits, n))
}

/// How Σ_{i > h} 1/c_i is bounded beyond the realized parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailBound {
    /// Unrealized c_i are squares of distinct integers > √c_h: tail < 1/√c_h.
    Squares,
    /// c_{i+1} ≥ 2c_i beyond the horizon: tail ≤ 1/c_h.
    Geometric,
    Explicit {
        #[serde(with = "crate::numfmt::num")]
        value: BigRational,
    },
}

impl TailBound {
    /// Squares when every realized c is a perfect square, else geometric.
    pub fn default_for(c: &[u64]) -> Self {
        if c.iter().all(|&x| x.sqrt() * x.sqrt() == x) {
            TailBound::Squares
        } else {
            TailBound::Geometric
        }
    }

    fn value(&self, c: &[u64]) -> BigRational {
        let last = *c.last().unwrap_or(&1);
        match self {
            TailBound::Squares => BigRational::new(BigInt::one(), BigInt::from(last.sqrt())),
            TailBound::Geometric => BigRational::new(BigInt::one(), BigInt::from(last)),
            TailBound::Explicit { value } => value.clone(),
        }
    }
}

fn c_params(spec: &BSetSpec) -> Result<Vec<u64>> {
    match &spec.family {
        Family::B2 { c, .. } | Family::B1 { c } => Ok(c[..spec.horizon].to_vec()),
        other => Err(Error::NotApplicable(format!("complexity bounds need the b1 or b2 family, not {}", other.name()))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityParams {
    pub n: u64,
    /// 1/2 − Σ_{i ≤ h} 1/c_i (an upper bound for δ).
    #[serde(with = "crate::numfmt::num")]
    pub delta_upper: BigRational,
    /// delta_upper − tail (a lower bound for δ, used for j_n).
    #[serde(with = "crate::numfmt::num")]
    pub delta_lower: BigRational,
    pub tail: TailBound,
    pub m_n: u32,
    pub j_n: Option<usize>,
}

impl ComplexityParams {
    /// δ lower bound as a float, for display.
    pub fn delta_lower_approx(&self) -> f64 {
        self.delta_lower.to_f64().unwrap_or(f64::NAN)
    }
}

/// δ bounds, m_n = ⌊log₂ n⌋ and the greatest j ≤ m_n with 2^j c_j < δn/(2 log₂ n).
pub fn complexity_params(spec: &BSetSpec, n: u64, tail: Option<TailBound>) -> Result<ComplexityParams> {
    if n < 2 {
        return Err(Error::InvalidInput("n must be ≥ 2".into()));
    }
    let c = c_params(spec)?;
    let tail = tail.unwrap_or_else(|| TailBound::default_for(&c));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let sum = c.iter().fold(BigRational::zero(), |s, &ci| s + BigRational::new(BigInt::one(), BigInt::from(ci)));
    let delta_upper = half - sum;
    let delta_lower = &delta_upper - tail.value(&c);
    if !delta_lower.is_positive() {
        return Err(Error::AssumptionViolated(format!("δ ≥ {delta_lower} is not certified positive (Σ1/c_i < 1/2 fails)")));
    }
    let m_n = 63 - n.leading_zeros();
    // threshold comparisons in floating point; the margins involved are far above f64 error
    let log2n = (n as f64).log2();
    let rhs = delta_lower.to_f64().expect("finite") * n as f64;
    let mut j_n = None;
    for j in 1..=m_n as usize {
        let cj = *c.get(j - 1).ok_or_else(|| Error::InsufficientHorizon { position: format!("c_{j} (m_n = {m_n})") })?;
        if (2f64).powi(j as i32) * cj as f64 * 2.0 * log2n < rhs {
            j_n = Some(j);
        }
    }
    Ok(ComplexityParams { n, delta_upper, delta_lower, tail, m_n, j_n })
}

/// Least n ≤ n_max with j_n ≥ 1.
pub fn first_qualifying_n(spec: &BSetSpec, tail: Option<TailBound>, n_max: u64) -> Result<Option<u64>> {
    for n in 2..=n_max {
        if complexity_params(spec, n, tail.clone())?.j_n.is_some() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtWitness {
    pub r: Vec<u64>,
    #[serde(with = "crate::numfmt::num")]
    pub x: BigUint,
    /// η[x + 1, x + n] as a 0/1 string.
    pub block: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtCertificate {
    pub params: ComplexityParams,
    /// c_1⋯c_{j_n} (1 when j_n is none).
    #[serde(with = "crate::numfmt::num")]
    pub bound: BigUint,
    pub distinct_blocks: usize,
    pub pairwise_distinct: bool,
    pub congruences_hold: bool,
    pub witnesses: Vec<CrtWitness>,
}

impl CrtCertificate {
    pub fn certified(&self) -> bool {
        self.congruences_hold && BigUint::from(self.distinct_blocks) >= self.bound
    }
}

/// Block η[x + 1, x + n] from generators of index ≤ m (higher ones cannot divide
/// x + k for 1 ≤ k ≤ n when 2^{m+1}3^{m+1} | x and n < 2^{m+1}).
fn block_at(spec: &BSetSpec, x: &BigUint, n: u64, m: usize) -> Result<Vec<bool>> {
    if m > spec.horizon {
        return Err(Error::InsufficientHorizon { position: format!("generator index {m}") });
    }
    let gens: Vec<BigUint> = spec.family.generators_up_to(m).into_iter().map(|g| g.value).collect();
    let offsets: Vec<u64> = gens.iter().map(|b| (x % b).to_u64().expect("below b")).collect();
    Ok((1..=n).map(|k| gens.iter().zip(&offsets).all(|(b, &o)| !((BigUint::from(o) + k) % b).is_zero())).collect())
}

/// Replays the CRT construction for all r with r_j ∈ [0, c_j) (j ≤ j_n), r_j = 0 above.
pub fn crt_witnesses(spec: &BSetSpec, n: u64, tail: Option<TailBound>, cap: usize) -> Result<CrtCertificate> {
    let params = complexity_params(spec, n, tail)?;
    let c = c_params(spec)?;
    let m = params.m_n as usize;
    let j = params.j_n.unwrap_or(0);
    let bound = c[..j].iter().fold(BigUint::one(), |acc, &ci| acc * ci);
    if bound > BigUint::from(cap) {
        return Err(Error::CapExceeded(format!("{bound} tuples exceed the enumeration cap {cap}")));
    }
    let total = bound.to_usize().expect("below cap");
    let anchor = (BigInt::zero(), (BigUint::one() << (m + 1)) * BigUint::from(3u32).pow(m as u32 + 1));
    let mut witnesses = Vec::with_capacity(total);
    let mut congruences_hold = true;
    let mut r = vec![0u64; m];
    for _ in 0..total {
        let mut system: Vec<(BigInt, BigUint)> = (1..=m).map(|i| (BigInt::from(r[i - 1]) << i, BigUint::from(c[i - 1]) << i)).collect();
        system.push(anchor.clone());
        let (x, _) = crt(&system).ok_or(Error::CrtInconsistent)?;
        congruences_hold &= system.iter().all(|(a, md)| {
            let xi = BigInt::from(x.clone());
            (xi - a).mod_floor(&BigInt::from(md.clone())).is_zero()
        });
        let block = block_at(spec, &x, n, m)?;
        witnesses.push(CrtWitness { r: r.clone(), x, block: block.iter().map(|&b| if b { '1' } else { '0' }).collect() });
        for (i, ri) in r.iter_mut().enumerate().take(j) {
            *ri += 1;
            if *ri < c[i] {
                break;
            }
            *ri = 0;
        }
    }
    let distinct: HashSet<&str> = witnesses.iter().map(|w| w.block.as_str()).collect();
    Ok(CrtCertificate { params, bound, distinct_blocks: distinct.len(), pairwise_distinct: distinct.len() == witnesses.len(), congruences_hold, witnesses })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub n: usize,
    pub rho: usize,
    /// log ρ / log n.
    pub exponent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpolyReport {
    pub l: i64,
    pub rows: Vec<TrendRow>,
    pub label: String,
}

pub fn trend_rows(counts: impl IntoIterator<Item = (usize, usize)>) -> Vec<TrendRow> {
    counts.into_iter().map(|(n, rho)| TrendRow { n, rho, exponent: (n > 1).then(|| (rho as f64).ln() / (n as f64).ln()) }).collect()
}

/// ρ window counts with the exponent proxy log ρ / log n.
pub fn superpoly_report(spec: &BSetSpec, ns: &[usize], l: i64) -> Result<SuperpolyReport> {
    let n_max = ns.iter().copied().max().unwrap_or(1);
    let w = eta_segment(spec, -l, l + n_max as i64 - 1)?;
    let counts = ns.iter().map(|&n| (n, rho_of_bits(&w.bits[..(2 * l as usize + n)], n)));
    Ok(SuperpolyReport { l, rows: trend_rows(counts), label: "trend evidence, not proof".into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2_small() -> BSetSpec {
        let c = vec![5, 121, 169, 289, 361, 529, 841, 961, 1369, 1681, 1849, 2209, 2809, 3481, 3721, 4489];
        BSetSpec::new(Family::B2 { c: c.clone(), d: c }, 16, 100_000).unwrap()
    }

    #[test]
    fn rho_bits() {
        let bits: Vec<bool> = "0101010".chars().map(|c| c == '1').collect();
        assert_eq!(rho_of_bits(&bits, 2), 2);
        assert_eq!(rho_of_bits(&[true; 30], 5), 1);
        assert_eq!(rho_of_bits(&bits, 8), 0);
    }

    #[test]
    fn rho_b1() {
        let spec = BSetSpec::new(Family::B1 { c: vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31] }, 10, 1000).unwrap();
        assert_eq!(rho_window(&spec, 1, 1000).unwrap(), 2);
    }

    #[test]
    fn params() {
        let spec = b2_small();
        let p = complexity_params(&spec, 10, None).unwrap();
        assert_eq!(p.m_n, 3);
        assert_eq!(p.j_n, None);
        assert_eq!(p.tail, TailBound::Geometric);
        let n = first_qualifying_n(&spec, None, 5000).unwrap().unwrap();
        assert_eq!(complexity_params(&spec, n, None).unwrap().j_n, Some(1));
        assert_eq!(complexity_params(&spec, n - 1, None).unwrap().j_n, None);
        let bad = BSetSpec::new(Family::B1 { c: vec![3, 5, 7] }, 3, 10).unwrap();
        assert!(matches!(complexity_params(&bad, 100, None), Err(Error::AssumptionViolated(_))));
    }

    #[test]
    fn witnesses() {
        let spec = b2_small();
        let n = first_qualifying_n(&spec, None, 5000).unwrap().unwrap();
        let cert = crt_witnesses(&spec, n, None, 1000).unwrap();
        assert_eq!(cert.bound, BigUint::from(5u32));
        assert!(cert.certified());
        assert!(cert.pairwise_distinct);
        let vacuous = crt_witnesses(&spec, 10, None, 1000).unwrap();
        assert_eq!(vacuous.bound, BigUint::one());
        assert!(vacuous.certified());
    }
}
