//! Sliding block maps with an odometer phase, the explicit automorphism F_ℓ of
//! the ℬ₁^N family, and window-level verification of its properties.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::crt;
use crate::bset::{eta_segment, phi_code, BSetSpec, BitWindow, Family, OdometerVec};
use crate::error::{Error, Result};

/// A map on phased windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockMap {
    /// σ^k.
    ShiftPower { k: i64 },
    /// F_ℓ: reads position s + q on c_ℓℤ − phase, keeps s elsewhere.
    FEll { ell: usize, q: u64, p_ell: u64, c_ell: u64 },
    /// F_ℓ with the phase ignored: a deliberately wrong map for negative tests.
    PhaseBlindFEll { ell: usize, q: u64, p_ell: u64, c_ell: u64 },
}

impl BlockMap {
    /// F_ℓ for a ℬ₁^N spec (ℓ < N): p_ℓ = lcm(S_ℓ), q = p_ℓ / c_ℓ.
    pub fn f_ell(spec: &BSetSpec, ell: usize) -> Result<Self> {
        let Family::B1N { c, n } = &spec.family else {
            return Err(Error::NotApplicable(format!("F_ℓ is defined for the b1n family, not {}", spec.family.name())));
        };
        if ell == 0 || n.is_some_and(|nn| ell as u64 >= nn) {
            return Err(Error::InvalidInput(format!("F_ℓ needs 1 ≤ ℓ < N, got ℓ = {ell}")));
        }
        let c_ell = *c.get(ell - 1).ok_or_else(|| Error::InvalidInput(format!("no parameter c_{ell}")))?;
        let p = spec.level_set(ell)?.lcm();
        let p_ell = p.to_u64().ok_or_else(|| Error::CapExceeded(format!("p_{ell} = {p} exceeds 64 bits")))?;
        Ok(BlockMap::FEll { ell, q: p_ell / c_ell, p_ell, c_ell })
    }

    /// Columns consumed on the right (left for negative shifts).
    pub fn radius(&self) -> u64 {
        match *self {
            BlockMap::ShiftPower { k } => k.unsigned_abs(),
            BlockMap::FEll { q, .. } | BlockMap::PhaseBlindFEll { q, .. } => q,
        }
    }

    /// The same map with a different look-ahead (mutation tests).
    pub fn with_q(self, q_new: u64) -> Self {
        match self {
            BlockMap::FEll { ell, p_ell, c_ell, .. } => BlockMap::FEll { ell, q: q_new, p_ell, c_ell },
            BlockMap::PhaseBlindFEll { ell, p_ell, c_ell, .. } => BlockMap::PhaseBlindFEll { ell, q: q_new, p_ell, c_ell },
            other => other,
        }
    }

    pub fn phase_blind(self) -> Self {
        match self {
            BlockMap::FEll { ell, q, p_ell, c_ell } => BlockMap::PhaseBlindFEll { ell, q, p_ell, c_ell },
            other => other,
        }
    }
}

/// A window of a point x ∈ X_η (bit at s is x_s) with π_{p}(x) = phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhasedWindow {
    pub window: BitWindow,
    pub phase: u64,
    pub modulus: u64,
}

impl PhasedWindow {
    /// The window [lo, hi] of σ^k η, given an η window covering [lo + k, hi + k].
    pub fn orbit(eta: &BitWindow, k: i64, lo: i64, hi: i64, modulus: u64) -> Result<Self> {
        let src = eta.slice(lo + k, hi + k).ok_or(Error::WindowTooShort { needed: (hi - lo + 1) as usize, have: eta.len() })?;
        Ok(PhasedWindow { window: BitWindow::new(lo, src.bits), phase: k.rem_euclid(modulus as i64) as u64, modulus })
    }
}

/// Applies the map; the output window is shorter by the radius.
pub fn apply_block_map(map: &BlockMap, input: &PhasedWindow) -> Result<PhasedWindow> {
    let w = &input.window;
    let r = map.radius();
    if r as usize >= w.len() {
        return Err(Error::WindowTooShort { needed: r as usize + 1, have: w.len() });
    }
    let m = input.modulus.max(1) as i64;
    match *map {
        BlockMap::ShiftPower { k } => {
            let last = w.end() - 1;
            let (lo, hi) = (w.start.max(w.start - k), last.min(last - k));
            let bits = (lo..=hi).map(|s| w.get(s + k).expect("in range")).collect();
            Ok(PhasedWindow { window: BitWindow::new(lo, bits), phase: (input.phase as i64 + k).rem_euclid(m) as u64, modulus: input.modulus })
        }
        BlockMap::FEll { q, c_ell, .. } | BlockMap::PhaseBlindFEll { q, c_ell, .. } => {
            let phase = if matches!(map, BlockMap::FEll { .. }) { input.phase as i64 } else { 0 };
            let hi = w.end() - 1 - q as i64;
            let bits = (w.start..=hi)
                .map(|s| {
                    let t = if (s + phase).rem_euclid(c_ell as i64) == 0 { s + q as i64 } else { s };
                    w.get(t).expect("in range")
                })
                .collect();
            Ok(PhasedWindow { window: BitWindow::new(w.start, bits), phase: (input.phase as i64 + q as i64).rem_euclid(m) as u64, modulus: input.modulus })
        }
    }
}

fn modulus_of(map: &BlockMap) -> u64 {
    match *map {
        BlockMap::ShiftPower { .. } => 1,
        BlockMap::FEll { p_ell, .. } | BlockMap::PhaseBlindFEll { p_ell, .. } => p_ell,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Shift or iterate index the mismatch belongs to, when applicable.
    pub k: Option<i64>,
    pub s: i64,
    pub expected: bool,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapVerdict {
    pub check: String,
    pub confirmed: bool,
    pub mismatch: Option<Mismatch>,
    /// Positions compared.
    pub window: (i64, i64),
    #[serde(with = "crate::numfmt::opt")]
    pub z: Option<BigUint>,
    pub notes: Vec<String>,
}

fn first_mismatch(expected: &BitWindow, found: &BitWindow, k: Option<i64>) -> Option<Mismatch> {
    let lo = expected.start.max(found.start);
    let hi = expected.end().min(found.end()) - 1;
    (lo..=hi).find_map(|s| {
        let (e, f) = (expected.get(s)?, found.get(s)?);
        (e != f).then_some(Mismatch { k, s, expected: e, found: f })
    })
}

/// F(σ^k η) = σ^k(F η) on [−half, half] for every k in the range.
pub fn verify_commutation(map: &BlockMap, spec: &BSetSpec, k_range: (i64, i64), half: i64) -> Result<MapVerdict> {
    let r = map.radius() as i64;
    let reach = half + r + k_range.0.abs().max(k_range.1.abs());
    let eta = eta_segment(spec, -reach, reach)?;
    let p = modulus_of(map);
    let f_eta = apply_block_map(map, &PhasedWindow::orbit(&eta, 0, -reach, reach, p)?)?;
    for k in k_range.0..=k_range.1 {
        let left = apply_block_map(map, &PhasedWindow::orbit(&eta, k, -half, half + r, p)?)?;
        let right_bits = (-half..=half).map(|s| f_eta.window.get(s + k).expect("covered")).collect();
        let right = BitWindow::new(-half, right_bits);
        if let Some(m) = first_mismatch(&right, &left.window, Some(k)) {
            return Ok(MapVerdict {
                check: "commutation".into(),
                confirmed: false,
                mismatch: Some(m),
                window: (-half, half),
                z: None,
                notes: vec![format!("k ∈ [{}, {}]", k_range.0, k_range.1)],
            });
        }
    }
    Ok(MapVerdict {
        check: "commutation".into(),
        confirmed: true,
        mismatch: None,
        window: (-half, half),
        z: None,
        notes: vec![format!("k ∈ [{}, {}]", k_range.0, k_range.1)],
    })
}

/// Default window half-length for order checks: 4·order·radius.
pub fn default_order_window(map: &BlockMap, order: u64) -> i64 {
    (4 * order * map.radius().max(1)) as i64
}

/// F^order = id on the surviving window and F^i ≠ id for 1 ≤ i < order.
pub fn verify_order(map: &BlockMap, spec: &BSetSpec, order: u64, half: i64) -> Result<MapVerdict> {
    if order == 0 {
        return Err(Error::InvalidInput("order must be ≥ 1".into()));
    }
    let r = map.radius() as i64;
    if (order as i64) * r >= 2 * half {
        return Err(Error::WindowTooShort { needed: (order as usize) * r as usize + 1, have: (2 * half + 1) as usize });
    }
    let eta = eta_segment(spec, -half, half)?;
    let mut cur = PhasedWindow::orbit(&eta, 0, -half, half, modulus_of(map))?;
    let surviving = (-half, half - order as i64 * r);
    let mut notes = Vec::new();
    for i in 1..=order {
        cur = apply_block_map(map, &cur)?;
        let diff = first_mismatch(&eta, &cur.window, Some(i as i64));
        if i < order {
            match diff {
                Some(m) => notes.push(format!("F^{i} ≠ id at s = {}", m.s)),
                None => {
                    notes.push(format!("F^{i} = id on the window"));
                    return Ok(MapVerdict { check: format!("order {order}"), confirmed: false, mismatch: None, window: surviving, z: None, notes });
                }
            }
        } else {
            let confirmed = diff.is_none();
            notes.push(if confirmed { format!("F^{order} = id on the window") } else { format!("F^{order} ≠ id") });
            return Ok(MapVerdict { check: format!("order {order}"), confirmed, mismatch: diff, window: surviving, z: None, notes });
        }
    }
    unreachable!("loop returns at i = order")
}

/// The rotation y_F: q at b = 2^{ℓ−1}c_ℓ², zero elsewhere.
pub fn rotation_point(map: &BlockMap) -> Result<OdometerVec> {
    let BlockMap::FEll { ell, q, c_ell, .. } = *map else {
        return Err(Error::NotApplicable("rotation is defined for F_ℓ".into()));
    };
    Ok(OdometerVec::delta(0).with_override((1u64 << (ell - 1)) * c_ell * c_ell, q))
}

/// F(η) = φ(y) on [lo, hi].
pub fn verify_rotation(map: &BlockMap, spec: &BSetSpec, y: &OdometerVec, lo: i64, hi: i64) -> Result<MapVerdict> {
    let r = map.radius() as i64;
    let eta = eta_segment(spec, lo, hi + r)?;
    let f = apply_block_map(map, &PhasedWindow::orbit(&eta, 0, lo, hi + r, modulus_of(map))?)?;
    let phi = phi_code(spec, y, lo, hi)?;
    let mismatch = first_mismatch(&phi.window, &f.window, None);
    let mut notes = Vec::new();
    if !phi.certified {
        notes.push("φ window not fully certified by the realized horizon".into());
    }
    Ok(MapVerdict { check: "rotation".into(), confirmed: mismatch.is_none(), mismatch, window: (lo, hi), z: None, notes })
}

/// (F_ℓ η)[−n, n] = η[−n + z, n + z] with z ≡ 0 mod p_t/c_ℓ, z ≡ q mod p_ℓ.
pub fn verify_window_shift(map: &BlockMap, spec: &BSetSpec, n: i64, t: usize) -> Result<MapVerdict> {
    let BlockMap::FEll { ell, q, p_ell, c_ell } = *map else {
        return Err(Error::NotApplicable("window shift is defined for F_ℓ".into()));
    };
    if t < ell {
        return Err(Error::Precondition(format!("t = {t} must be ≥ ℓ = {ell}")));
    }
    if n < 0 || t >= 63 || (1i64 << t) <= n {
        return Err(Error::Precondition(format!("need 2^t > n, got t = {t}, n = {n}")));
    }
    let p_t = spec.level_set(t)?.lcm();
    let z = crt(&[(BigInt::from(0), &p_t / c_ell), (BigInt::from(q), BigUint::from(p_ell))]).ok_or(Error::CrtInconsistent)?.0;
    let zi = z.to_i64().ok_or_else(|| Error::CapExceeded(format!("z = {z} exceeds 64 bits")))?;
    let r = q as i64;
    let eta = eta_segment(spec, -n, n + r)?;
    let f = apply_block_map(map, &PhasedWindow::orbit(&eta, 0, -n, n + r, p_ell)?)?;
    let shifted = eta_segment(spec, -n + zi, n + zi)?;
    let target = BitWindow::new(-n, shifted.bits);
    let mismatch = first_mismatch(&target, &f.window, None);
    Ok(MapVerdict { check: "window shift".into(), confirmed: mismatch.is_none(), mismatch, window: (-n, n), z: Some(z), notes: vec![format!("p_t = {p_t}")] })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRow {
    pub ell: usize,
    pub c_ell: u64,
    pub confirmed: bool,
    /// Orders 1..c_ℓ − 1 were refuted.
    pub proper_divisors_refuted: bool,
}

/// Verified orders of F_1, …, F_m and their product (the cyclic group order
/// when the c's are pairwise coprime).
pub fn verify_family_orders(spec: &BSetSpec, ells: &[usize]) -> Result<(Vec<OrderRow>, BigUint)> {
    let mut rows = Vec::new();
    let mut product = BigUint::from(1u32);
    for &ell in ells {
        let map = BlockMap::f_ell(spec, ell)?;
        let BlockMap::FEll { c_ell, .. } = map else { unreachable!() };
        let v = verify_order(&map, spec, c_ell, default_order_window(&map, c_ell))?;
        if v.confirmed {
            product *= c_ell;
        }
        rows.push(OrderRow { ell, c_ell, confirmed: v.confirmed, proper_divisors_refuted: v.notes.len() as u64 == c_ell });
    }
    Ok((rows, product))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b1n2() -> BSetSpec {
        BSetSpec::new(Family::B1N { c: vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31], n: Some(2) }, 10, 5000).unwrap()
    }

    #[test]
    fn f1_parameters() {
        let map = BlockMap::f_ell(&b1n2(), 1).unwrap();
        assert_eq!(map, BlockMap::FEll { ell: 1, q: 6, p_ell: 18, c_ell: 3 });
        assert!(BlockMap::f_ell(&b1n2(), 2).is_err());
    }

    #[test]
    fn apply_examples() {
        let spec = b1n2();
        let map = BlockMap::f_ell(&spec, 1).unwrap();
        let eta = eta_segment(&spec, 0, 13).unwrap();
        let out = apply_block_map(&map, &PhasedWindow::orbit(&eta, 0, 0, 13, 18).unwrap()).unwrap();
        assert_eq!(out.window.get(0), eta.get(6));
        assert_eq!(out.window.get(1), Some(true));
        assert_eq!(out.window.get(3), eta.get(9));
        assert_eq!(out.window.len(), 8);
        let sh = apply_block_map(&BlockMap::ShiftPower { k: 2 }, &PhasedWindow::orbit(&eta, 0, 0, 13, 1).unwrap()).unwrap();
        assert_eq!(sh.window.get(0), eta.get(2));
    }

    #[test]
    fn shift_power_commutes() {
        let v = verify_commutation(&BlockMap::ShiftPower { k: 3 }, &b1n2(), (-5, 5), 50).unwrap();
        assert!(v.confirmed);
    }

    #[test]
    fn window_shift_small() {
        let spec = b1n2();
        let map = BlockMap::f_ell(&spec, 1).unwrap();
        let v = verify_window_shift(&map, &spec, 1, 1).unwrap();
        assert_eq!(v.z, Some(BigUint::from(6u32)));
        assert!(v.confirmed);
        assert!(matches!(verify_window_shift(&map, &spec, 8, 3), Err(Error::Precondition(_))));
    }
}
