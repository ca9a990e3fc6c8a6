//! Dilation and localization operators, plus the scaling-bound records the
//! experiment scans aggregate.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::besov::{besov_norm, BesovParams};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldParams};
use crate::fourier::fourier;
use crate::step::{Side, StepFunction};

/// f(t^(-k) x): resolution m -> m+k, support bound M -> M-k. Negative k
/// runs the dilation backwards.
pub fn dilate(f: &StepFunction, k: i32) -> Result<StepFunction> {
    if f.side() != Side::Spatial {
        return Err(Error::SideMismatch {
            expected: Side::Spatial,
            found: f.side(),
        });
    }
    if k == 0 {
        return Ok(f.clone());
    }
    let params = f.params().clone();
    let res = f.resolution() + k;
    let sup = f.support_bound() - k;
    let mut values = BTreeMap::new();
    for (key, &v) in f.values() {
        let rep = params.shift(key.rep(), k)?;
        values.insert(params.coset_of(&rep, res), v);
    }
    StepFunction::from_values(params, Side::Spatial, res, sup, values)
}

fn recip(e: f64) -> f64 {
    if e.is_infinite() {
        0.0
    } else {
        1.0 / e
    }
}

/// k^(1/t) q^(k(s-1/r)), the scaling envelope for step k; the k = 0 factor
/// is defined as 1 so the identity operator compares cleanly.
pub fn dilation_bound_shape(bp: &BesovParams, q: f64, k: i32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    (k as f64).powf(recip(bp.t())) * q.powf(k as f64 * (bp.s() - recip(bp.r())))
}

#[derive(Debug, Clone, Copy)]
pub struct DilationRecord {
    pub k: i32,
    pub norm_in: f64,
    pub norm_out: f64,
    pub ratio: f64,
    pub bound_shape: f64,
    pub ratio_over_bound: f64,
    /// s > sigma_r, the regime where the envelope is meaningful.
    pub hypothesis_ok: bool,
}

pub fn dilation_bound_check(
    f: &StepFunction,
    bp: &BesovParams,
    k: i32,
) -> Result<DilationRecord> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let norm_in = besov_norm(f, bp)?;
    let norm_out = besov_norm(&dilate(f, k)?, bp)?;
    let ratio = norm_out / norm_in;
    let bound_shape = dilation_bound_shape(bp, f.params().qf(), k);
    Ok(DilationRecord {
        k,
        norm_in,
        norm_out,
        ratio,
        bound_shape,
        ratio_over_bound: ratio / bound_shape,
        hypothesis_ok: bp.s() > bp.sigma_r(),
    })
}

/// The first `count` canonical representatives of distinct level cosets;
/// index 0 is always 0. The list is a prefix of the full enumeration, so it
/// does not depend on `count`.
pub fn localization_centers(
    params: &Arc<FieldParams>,
    level: i32,
    count: usize,
) -> Result<Vec<FieldElement>> {
    let mut bound = (-level).max(0);
    while (params.grid_size(level, bound)? as usize) < count {
        bound += 1;
    }
    (0..count as u64)
        .map(|n| params.rep_from_index(level, bound, n))
        .collect()
}

/// sum_k c_k (T_j f)(x - z_k) for centers z_k distinct mod P^level and
/// supp T_j f contained in P^level, which makes the summands disjoint; the
/// accumulation refuses to overwrite a cell, so disjointness is verified
/// rather than assumed.
pub fn localize(
    f: &StepFunction,
    j: i32,
    level: i32,
    centers: &[FieldElement],
    coeffs: &[Complex64],
) -> Result<StepFunction> {
    if j < 1 {
        return Err(Error::BadDilationStep(j));
    }
    if centers.len() != coeffs.len() {
        return Err(Error::LengthMismatch {
            centers: centers.len(),
            coeffs: coeffs.len(),
        });
    }
    let dilated = dilate(f, j)?;
    if !dilated.support_in_ball(level) {
        return Err(Error::SupportViolation { level });
    }
    let params = dilated.params().clone();
    let mut seen: BTreeMap<_, usize> = BTreeMap::new();
    for (idx, z) in centers.iter().enumerate() {
        if let Some(&prev) = seen.get(&params.coset_of(z, level)) {
            return Err(Error::CentersCollide {
                a: prev,
                b: idx,
                level,
            });
        }
        seen.insert(params.coset_of(z, level), idx);
    }
    let res = dilated.resolution();
    let mut sup = dilated.support_bound();
    let mut values = BTreeMap::new();
    for (z, &c) in centers.iter().zip(coeffs) {
        let piece = dilated.translate(z).scale(c);
        sup = sup.max(piece.support_bound());
        for (key, &v) in piece.values() {
            if values.insert(key.clone(), v).is_some() {
                return Err(Error::OverlappingPieces);
            }
        }
    }
    StepFunction::from_values(params, Side::Spatial, res, sup, values)
}

#[derive(Debug, Clone, Copy)]
pub struct LocalizationRecord {
    pub j: i32,
    pub level: i32,
    pub centers: usize,
    pub lhs: f64,
    pub rhs_shape: f64,
    pub ratio: f64,
    /// s > sigma_r and t <= r, the regime where the envelope is meaningful.
    pub hypothesis_ok: bool,
}

/// Norm of the localized sum against the coefficient-weighted envelope
/// (sum |c_k|^r)^(1/r) j^(1/t) q^(j(s-1/r)) |f|.
pub fn localization_bound_check(
    f: &StepFunction,
    bp: &BesovParams,
    j: i32,
    level: i32,
    centers: &[FieldElement],
    coeffs: &[Complex64],
) -> Result<LocalizationRecord> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let g = localize(f, j, level, centers, coeffs)?;
    let lhs = besov_norm(&g, bp)?;
    let coeff_mass = if bp.r().is_infinite() {
        coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    } else {
        coeffs
            .iter()
            .map(|c| c.norm().powf(bp.r()))
            .sum::<f64>()
            .powf(recip(bp.r()))
    };
    let rhs_shape =
        coeff_mass * dilation_bound_shape(bp, f.params().qf(), j) * besov_norm(f, bp)?;
    Ok(LocalizationRecord {
        j,
        level,
        centers: centers.len(),
        lhs,
        rhs_shape,
        ratio: lhs / rhs_shape,
        hypothesis_ok: bp.s() > bp.sigma_r() && bp.t() <= bp.r(),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct BandSumRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// For blocks u_j with spectrum confined to band j, compare the norm of
/// sum u_j with (sum q^(sjt) |u_j|_r^t)^(1/t). The canonical bands make the
/// two sides equal, so the ratio certifies the block calculus end to end.
pub fn band_sum_check(blocks: &[StepFunction], bp: &BesovParams) -> Result<BandSumRecord> {
    if blocks.is_empty() {
        return Ok(BandSumRecord {
            lhs: 0.0,
            rhs: 0.0,
            ratio: 1.0,
        });
    }
    for (index, u) in blocks.iter().enumerate() {
        let g = fourier(u)?;
        let j = index as i32;
        let tol = 1e-9 * g.max_abs().max(1.0);
        for (key, v) in g.values() {
            let in_band = match key.rep().valuation() {
                None => j == 0,
                Some(val) => {
                    if j == 0 {
                        val >= 0
                    } else {
                        val == -j
                    }
                }
            };
            if !in_band && v.norm() > tol {
                return Err(Error::BandViolation { index });
            }
        }
    }
    let mut sum = blocks[0].clone();
    for u in &blocks[1..] {
        sum = sum.add(u)?;
    }
    let lhs = besov_norm(&sum, bp)?;
    let q = sum.params().qf();
    let weighted = blocks
        .iter()
        .enumerate()
        .map(|(j, u)| q.powf(bp.s() * j as f64) * u.lr_norm(bp.r()));
    let rhs = if bp.t().is_infinite() {
        weighted.fold(0.0, f64::max)
    } else {
        weighted
            .map(|a| a.powf(bp.t()))
            .sum::<f64>()
            .powf(recip(bp.t()))
    };
    let ratio = if rhs == 0.0 && lhs == 0.0 {
        1.0
    } else {
        lhs / rhs
    };
    Ok(BandSumRecord { lhs, rhs, ratio })
}
