//! Littlewood-Paley blocks and Besov norms.
//!
//! The blocks cut the spectrum along the canonical filtration: block 0 keeps
//! |xi| <= 1 and block j >= 1 keeps the sphere |xi| = q^j. For a function
//! with resolution m the spectrum sits inside |xi| <= q^m, so blocks beyond
//! max(0, m) vanish and the decomposition is a finite exact partition.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::FieldParams;
use crate::fourier::{fourier, inverse_fourier};
use crate::step::{Side, StepFunction};

pub use crate::fourier::ptype_derivative;

/// Index set (s, r, t) for the scale of spaces: smoothness s, inner exponent
/// r, outer exponent t. Both exponents may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovParams {
    s: f64,
    r: f64,
    t: f64,
}

impl BesovParams {
    pub fn new(s: f64, r: f64, t: f64) -> Result<BesovParams> {
        for e in [r, t] {
            if e.is_nan() || e <= 0.0 {
                return Err(Error::NonpositiveExponent(e));
            }
        }
        if !s.is_finite() {
            return Err(Error::NonpositiveExponent(s));
        }
        Ok(BesovParams { s, r, t })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// max(1/r - 1, 0), the quasi-norm correction exponent.
    pub fn sigma_r(&self) -> f64 {
        sigma_r(self.r)
    }
}

pub fn sigma_r(r: f64) -> f64 {
    if r.is_infinite() {
        0.0
    } else {
        (1.0 / r - 1.0).max(0.0)
    }
}

/// The band symbol for scale j: the indicator of |xi| <= 1 when j = 0 and of
/// the sphere |xi| = q^j when j >= 1, as a frequency-side step function.
pub fn lp_symbol(params: &Arc<FieldParams>, j: i32) -> Result<StepFunction> {
    assert!(j >= 0, "band index must be nonnegative");
    if j == 0 {
        let mut values = std::collections::BTreeMap::new();
        values.insert(
            params.coset_of(&crate::field::FieldElement::ZERO, 0),
            Complex64::new(1.0, 0.0),
        );
        return StepFunction::from_values(params.clone(), Side::Frequency, 0, 0, values);
    }
    let res = 1 - j;
    let mut values = std::collections::BTreeMap::new();
    for d in 1..params.q() {
        let rep = params.monomial(d, -j)?;
        values.insert(params.coset_of(&rep, res), Complex64::new(1.0, 0.0));
    }
    StepFunction::from_values(params.clone(), Side::Frequency, res, j, values)
}

/// Restrict a spectrum to band j without a multiplication: keep the cells
/// whose points satisfy |xi| <= 1 (j = 0) or |xi| = q^j (j >= 1).
fn mask_band(g: &StepFunction, j: i32) -> Result<StepFunction> {
    let needed = if j == 0 { 0 } else { 1 - j };
    let res = g.resolution().max(needed);
    let g = g.refine_to(res, g.support_bound())?;
    let mut values = std::collections::BTreeMap::new();
    for (key, &v) in g.values() {
        let keep = match key.rep().valuation() {
            None => j == 0,
            Some(val) => {
                if j == 0 {
                    val >= 0
                } else {
                    val == -j
                }
            }
        };
        if keep {
            values.insert(key.clone(), v);
        }
    }
    StepFunction::from_values(
        g.params().clone(),
        Side::Frequency,
        res,
        g.support_bound(),
        values,
    )
}

/// Block j of the decomposition of a spatial function.
pub fn delta_j(f: &StepFunction, j: i32) -> Result<StepFunction> {
    assert!(j >= 0, "band index must be nonnegative");
    inverse_fourier(&mask_band(&fourier(f)?, j)?)
}

/// Scales 0..=cutoff of a spatial function; their sum gives the function
/// back exactly.
#[derive(Debug, Clone)]
pub struct LpDecomposition {
    pub blocks: Vec<StepFunction>,
}

impl LpDecomposition {
    pub fn cutoff(&self) -> i32 {
        self.blocks.len() as i32 - 1
    }

    pub fn reconstruct(&self) -> Result<StepFunction> {
        let mut acc = self.blocks[0].clone();
        for b in &self.blocks[1..] {
            acc = acc.add(b)?;
        }
        Ok(acc)
    }
}

pub fn lp_decompose(f: &StepFunction) -> Result<LpDecomposition> {
    let g = fourier(f)?;
    let cutoff = f.resolution().max(0);
    let mut blocks = Vec::with_capacity(cutoff as usize + 1);
    for j in 0..=cutoff {
        blocks.push(inverse_fourier(&mask_band(&g, j)?)?);
    }
    Ok(LpDecomposition { blocks })
}

/// (sum_j q^(sjt) |block_j|_r^t)^(1/t), with the usual sup convention at
/// t = infinity.
pub fn besov_norm(f: &StepFunction, bp: &BesovParams) -> Result<f64> {
    let dec = lp_decompose(f)?;
    let q = f.params().qf();
    let weighted = dec
        .blocks
        .iter()
        .enumerate()
        .map(|(j, b)| q.powf(bp.s * j as f64) * b.lr_norm(bp.r));
    if bp.t.is_infinite() {
        Ok(weighted.fold(0.0, f64::max))
    } else {
        let sum: f64 = weighted.map(|a| a.powf(bp.t)).sum();
        Ok(sum.powf(1.0 / bp.t))
    }
}

/// L^2 norm of xi -> max(1,|xi|)^sigma times the transform of `symbol`
/// viewed as a spatial function. The weight varies inside the cell at zero
/// when that cell is bigger than the unit ball, so the integral over it is
/// summed sphere by sphere in closed form.
pub fn hs2_norm(symbol: &StepFunction, sigma: f64) -> Result<f64> {
    if symbol.side() != Side::Frequency {
        return Err(Error::SideMismatch {
            expected: Side::Frequency,
            found: symbol.side(),
        });
    }
    let spectrum = fourier(&symbol.reinterpret(Side::Spatial))?;
    let params = spectrum.params().clone();
    let q = params.qf();
    let mut total = 0.0f64;
    for (key, v) in spectrum.values() {
        let level = key.level();
        let weight = match key.rep().valuation() {
            Some(val) => {
                let bracket = q.powi(-val).max(1.0);
                bracket.powf(2.0 * sigma) * q.powi(-level)
            }
            None => {
                if level >= 0 {
                    q.powi(-level)
                } else {
                    let mut w = 1.0;
                    for val in level..0 {
                        w += (1.0 - 1.0 / q) * q.powf(-(val as f64) * (2.0 * sigma + 1.0));
                    }
                    w
                }
            }
        };
        total += v.norm_sqr() * weight;
    }
    Ok(total.sqrt())
}

#[derive(Debug, Clone, Copy)]
pub struct AGammaRow {
    pub j: i32,
    pub sup: f64,
    pub envelope: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct AGammaReport {
    pub s: f64,
    pub rows: Vec<AGammaRow>,
}

/// For each band symbol, smooth its inverse transform at order s and compare
/// the sup norm against the envelope q^(j(1+s)). The ratio is exactly
/// (q-1)/q for every j >= 1, so a flat profile certifies the family.
pub fn check_a_gamma_condition(
    params: &Arc<FieldParams>,
    s: f64,
    jmax: i32,
) -> Result<AGammaReport> {
    let mut rows = Vec::with_capacity(jmax.max(0) as usize + 1);
    for j in 0..=jmax.max(0) {
        let bump = inverse_fourier(&lp_symbol(params, j)?)?;
        let smoothed = ptype_derivative(&bump, s)?;
        let sup = smoothed.max_abs();
        let envelope = params.qf().powf((1.0 + s) * j as f64);
        rows.push(AGammaRow {
            j,
            sup,
            envelope,
            ratio: sup / envelope,
        });
    }
    Ok(AGammaReport { s, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::fourier::apply_multiplier;
    use crate::step::BallSpec;

    fn ball(params: &Arc<FieldParams>, level: i32) -> StepFunction {
        StepFunction::indicator(
            params.clone(),
            Side::Spatial,
            &BallSpec::new(FieldElement::ZERO, level),
        )
        .unwrap()
    }

    fn mixed(params: &Arc<FieldParams>) -> StepFunction {
        let terms = vec![
            (FieldElement::ZERO, 1, Complex64::new(1.0, -0.5)),
            (
                params.monomial(1, -2).unwrap(),
                0,
                Complex64::new(-2.0, 0.25),
            ),
            (params.monomial(1, -1).unwrap(), 2, Complex64::new(0.0, 3.0)),
        ];
        StepFunction::from_terms(params.clone(), Side::Spatial, 2, 2, &terms).unwrap()
    }

    #[test]
    fn symbols_partition_the_cutoff_ball() {
        for p in [2u64, 3] {
            let k = FieldParams::new_shared(p, 1).unwrap();
            let mut acc = lp_symbol(&k, 0).unwrap();
            for j in 1..=3 {
                acc = acc.add(&lp_symbol(&k, j).unwrap()).unwrap();
            }
            let full = StepFunction::indicator(
                k.clone(),
                Side::Frequency,
                &BallSpec::new(FieldElement::ZERO, -3),
            )
            .unwrap();
            assert_eq!(acc.max_abs_diff(&full).unwrap(), 0.0);
        }
    }

    #[test]
    fn blocks_sum_back_to_the_function() {
        for (p, c) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let k = FieldParams::new_shared(p, c).unwrap();
            let f = mixed(&k);
            let dec = lp_decompose(&f).unwrap();
            assert_eq!(dec.cutoff(), 2);
            let back = dec.reconstruct().unwrap();
            assert!(f.max_abs_diff(&back).unwrap() < 1e-13);
        }
    }

    #[test]
    fn masking_agrees_with_symbol_multiplication() {
        let k = FieldParams::new_shared(3, 1).unwrap();
        let f = mixed(&k);
        for j in 0..=3 {
            let a = delta_j(&f, j).unwrap();
            let b = apply_multiplier(&lp_symbol(&k, j).unwrap(), &f).unwrap();
            assert!(a.max_abs_diff(&b).unwrap() < 1e-13, "j = {j}");
        }
    }

    #[test]
    fn blocks_are_a_projection_family() {
        let k = FieldParams::new_shared(2, 1).unwrap();
        let f = mixed(&k);
        for j in 0..=2 {
            let bj = delta_j(&f, j).unwrap();
            let again = delta_j(&bj, j).unwrap();
            assert!(bj.max_abs_diff(&again).unwrap() < 1e-13);
            for other in 0..=2 {
                if other != j {
                    let cross = delta_j(&bj, other).unwrap();
                    assert!(cross.max_abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn unit_ball_has_norm_one() {
        let k = FieldParams::new_shared(2, 1).unwrap();
        let f = ball(&k, 0);
        for s in [0.3, 1.0, 2.5] {
            for r in [0.5, 1.0, 2.0, f64::INFINITY] {
                for t in [0.5, 1.0, 2.0, f64::INFINITY] {
                    let bp = BesovParams::new(s, r, t).unwrap();
                    let n = besov_norm(&f, &bp).unwrap();
                    assert!((n - 1.0).abs() < 1e-14, "s={s} r={r} t={t}: {n}");
                }
            }
        }
    }

    #[test]
    fn small_ball_norm_matches_hand_value() {
        let k = FieldParams::new_shared(2, 1).unwrap();
        let f = ball(&k, 1);
        let bp = BesovParams::new(1.0, 2.0, 1.0).unwrap();
        // blocks: 0.5 on the unit ball at j = 0, then (1 - 0.5) on P^1 and
        // -0.5 off it at j = 1; L2 norms 0.5 and 0.5, weights 1 and 2
        let n = besov_norm(&f, &bp).unwrap();
        assert!((n - 1.5).abs() < 1e-13);
        let sup = BesovParams::new(1.0, f64::INFINITY, f64::INFINITY).unwrap();
        let m = besov_norm(&f, &sup).unwrap();
        assert!((m - 1.0).abs() < 1e-13);
    }

    #[test]
    fn norm_is_translation_invariant() {
        let k = FieldParams::new_shared(3, 1).unwrap();
        let f = mixed(&k);
        let z = k.monomial(2, -1).unwrap();
        let g = f.translate(&z);
        let bp = BesovParams::new(0.8, 1.0, 2.0).unwrap();
        let a = besov_norm(&f, &bp).unwrap();
        let b = besov_norm(&g, &bp).unwrap();
        assert!((a - b).abs() / a < 1e-12);
    }

    #[test]
    fn sigma_r_kink() {
        assert_eq!(sigma_r(2.0), 0.0);
        assert_eq!(sigma_r(1.0), 0.0);
        assert_eq!(sigma_r(0.5), 1.0);
        assert_eq!(sigma_r(f64::INFINITY), 0.0);
    }

    #[test]
    fn params_reject_bad_exponents() {
        assert!(matches!(
            BesovParams::new(1.0, 0.0, 1.0).unwrap_err(),
            Error::NonpositiveExponent(_)
        ));
        assert!(matches!(
            BesovParams::new(1.0, 1.0, -2.0).unwrap_err(),
            Error::NonpositiveExponent(_)
        ));
    }

    #[test]
    fn hs2_norm_of_cutoffs() {
        let k = FieldParams::new_shared(2, 1).unwrap();
        let unit = StepFunction::indicator(
            k.clone(),
            Side::Frequency,
            &BallSpec::new(FieldElement::ZERO, 0),
        )
        .unwrap();
        for sigma in [0.0, 1.0, 2.0] {
            assert!((hs2_norm(&unit, sigma).unwrap() - 1.0).abs() < 1e-14);
        }
        // indicator of P^1 on the frequency side: transform is q^{-1} times
        // the cell P^{-1}, and the weighted mass over it has a closed form
        let small = StepFunction::indicator(
            k.clone(),
            Side::Frequency,
            &BallSpec::new(FieldElement::ZERO, 1),
        )
        .unwrap();
        let sigma = 1.0;
        let expect = (0.25f64 * (1.0 + 0.5 * 8.0)).sqrt();
        assert!((hs2_norm(&small, sigma).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn hs2_rejects_spatial_input() {
        let k = FieldParams::new_shared(2, 1).unwrap();
        let f = ball(&k, 0);
        assert!(matches!(
            hs2_norm(&f, 1.0).unwrap_err(),
            Error::SideMismatch { .. }
        ));
    }

    #[test]
    fn band_family_profile_is_flat() {
        for p in [2u64, 3] {
            let k = FieldParams::new_shared(p, 1).unwrap();
            let report = check_a_gamma_condition(&k, 0.7, 4).unwrap();
            assert_eq!(report.rows.len(), 5);
            assert!((report.rows[0].ratio - 1.0).abs() < 1e-12);
            let flat = 1.0 - 1.0 / k.qf();
            for row in &report.rows[1..] {
                assert!(
                    (row.ratio - flat).abs() < 1e-12,
                    "p={p} j={} ratio={}",
                    row.j,
                    row.ratio
                );
            }
        }
    }
}
