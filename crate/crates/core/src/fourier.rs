//! Fourier transform on K and radial spectral multipliers.
//!
//! The character pairing couples the x-digit at exponent e only with the
//! xi-digit at exponent -1-e, so the transform of a function with resolution
//! m and support bound M factors into m+M independent q-point passes over a
//! dense grid: cost O(N q log_q N) for N = q^(m+M). The result has
//! resolution M and support bound m, with the side tag flipped.
//!
//! `naive_fourier` and `naive_inverse_fourier` evaluate the defining
//! character sums directly. They are kept as an independent cross-check for
//! the fast path and are quadratic in the grid size.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldParams};
use crate::step::{Side, StepFunction, ZERO_C};

/// Forward transform: spatial in, frequency out.
pub fn fourier(f: &StepFunction) -> Result<StepFunction> {
    expect_side(f, Side::Spatial)?;
    dense_transform(f, true, Side::Frequency)
}

/// Inverse transform: frequency in, spatial out.
pub fn inverse_fourier(g: &StepFunction) -> Result<StepFunction> {
    expect_side(g, Side::Frequency)?;
    dense_transform(g, false, Side::Spatial)
}

/// Forward transform by direct summation over occupied cells.
pub fn naive_fourier(f: &StepFunction) -> Result<StepFunction> {
    expect_side(f, Side::Spatial)?;
    naive_transform(f, true, Side::Frequency)
}

/// Inverse transform by direct summation over occupied cells.
pub fn naive_inverse_fourier(g: &StepFunction) -> Result<StepFunction> {
    expect_side(g, Side::Frequency)?;
    naive_transform(g, false, Side::Spatial)
}

fn expect_side(f: &StepFunction, side: Side) -> Result<()> {
    if f.side() != side {
        return Err(Error::SideMismatch {
            expected: side,
            found: f.side(),
        });
    }
    Ok(())
}

/// One transform, either direction. `conjugate` picks the forward kernel.
/// The integral against the character contributes the cell measure
/// q^(-resolution), which appears as the overall normalization.
fn dense_transform(f: &StepFunction, conjugate: bool, out_side: Side) -> Result<StepFunction> {
    let params = f.params().clone();
    let res = f.resolution();
    let sup = f.support_bound();
    let len = params.grid_size(res, sup)? as usize;
    let q = params.q() as usize;
    let span = (res as i64 + sup as i64) as u32;

    let mut data = vec![ZERO_C; len];
    for (key, &v) in f.values() {
        data[params.grid_index(res, key.rep()) as usize] = v;
    }

    // Kernel over digit pairs; rows are the transformed digit.
    let gf = params.gf();
    let mut kernel = Vec::with_capacity(q * q);
    for a in 0..q as u64 {
        for b in 0..q as u64 {
            let w = params.root_of_unity(gf.trace(gf.mul(a, b)));
            kernel.push(if conjugate { w.conj() } else { w });
        }
    }

    let mut scratch = vec![ZERO_C; q];
    let mut stride = 1usize;
    for _ in 0..span {
        let block = stride * q;
        let mut base = 0usize;
        while base < len {
            for off in 0..stride {
                let i0 = base + off;
                for (b, slot) in scratch.iter_mut().enumerate() {
                    *slot = data[i0 + b * stride];
                }
                for a in 0..q {
                    let row = &kernel[a * q..(a + 1) * q];
                    let mut acc = ZERO_C;
                    for (w, x) in row.iter().zip(&scratch) {
                        acc += w * x;
                    }
                    data[i0 + a * stride] = acc;
                }
            }
            base += block;
        }
        stride = block;
    }

    // Axis `pos` of the input grid holds the digit at exponent res-1-pos; it
    // pairs with the output digit at exponent pos-res, so the output array is
    // read with exponents ascending from -res.
    let norm = params.qf().powi(-res);
    let mut values = BTreeMap::new();
    for (idx, v) in data.into_iter().enumerate() {
        let v = v * norm;
        if v == ZERO_C {
            continue;
        }
        let mut digits = vec![0u16; span as usize];
        let mut rest = idx;
        for d in digits.iter_mut() {
            *d = (rest % q) as u16;
            rest /= q;
        }
        let rep = params.from_digits(-res, digits)?;
        values.insert(params.coset_of(&rep, sup), v);
    }
    StepFunction::from_values(params, out_side, sup, res, values)
}

fn naive_transform(f: &StepFunction, conjugate: bool, out_side: Side) -> Result<StepFunction> {
    let params = f.params().clone();
    let res = f.resolution();
    let sup = f.support_bound();
    let out_res = sup;
    let out_sup = res;
    let norm = params.qf().powi(-res);
    let mut values = BTreeMap::new();
    for key in params.coset_reps(out_res, out_sup)? {
        let mut acc = ZERO_C;
        for (cell, &v) in f.values() {
            let w = params.character(key.rep(), cell.rep());
            acc += v * if conjugate { w.conj() } else { w };
        }
        let val = acc * norm;
        if val != ZERO_C {
            values.insert(key, val);
        }
    }
    StepFunction::from_values(params, out_side, out_res, out_sup, values)
}

/// A multiplier that depends on xi only through |xi|.
#[derive(Debug, Clone)]
pub enum RadialSymbol {
    /// max(1, |xi|)^alpha.
    BracketPower(f64),
    /// Value per valuation (|xi| = q^(-v)); anything else, including xi = 0,
    /// takes `default`.
    PerSphere {
        values: BTreeMap<i32, Complex64>,
        default: Complex64,
    },
}

impl RadialSymbol {
    pub fn eval(&self, params: &FieldParams, xi: &FieldElement) -> Complex64 {
        match self {
            RadialSymbol::BracketPower(alpha) => {
                let b = params.abs(xi).max(1.0);
                Complex64::new(b.powf(*alpha), 0.0)
            }
            RadialSymbol::PerSphere { values, default } => match xi.valuation() {
                Some(v) => values.get(&v).copied().unwrap_or(*default),
                None => *default,
            },
        }
    }

    /// Coarsest grid resolution on which the symbol is constant per cell.
    /// `None` means any grid works.
    pub fn min_resolution(&self) -> Option<i32> {
        match self {
            RadialSymbol::BracketPower(alpha) => {
                if *alpha == 0.0 {
                    None
                } else {
                    Some(0)
                }
            }
            RadialSymbol::PerSphere { values, .. } => values.keys().max().map(|k| k + 1),
        }
    }
}

/// Multiply a frequency-side function by a radial symbol, refining the grid
/// just enough that the symbol is a single value per cell.
pub fn multiply_spectrum(g: &StepFunction, symbol: &RadialSymbol) -> Result<StepFunction> {
    expect_side(g, Side::Frequency)?;
    let res = match symbol.min_resolution() {
        Some(r) => g.resolution().max(r),
        None => g.resolution(),
    };
    let g = g.refine_to(res, g.support_bound())?;
    let params = g.params().clone();
    let mut values = BTreeMap::new();
    for (key, &v) in g.values() {
        let w = v * symbol.eval(&params, key.rep());
        if w != ZERO_C {
            values.insert(key.clone(), w);
        }
    }
    StepFunction::from_values(params, Side::Frequency, res, g.support_bound(), values)
}

/// Sample a radial symbol as a frequency-side step function on the given
/// grid. The resolution is widened to the symbol's minimum if necessary.
pub fn sample_radial(
    params: Arc<FieldParams>,
    symbol: &RadialSymbol,
    resolution: i32,
    support_bound: i32,
) -> Result<StepFunction> {
    let res = match symbol.min_resolution() {
        Some(r) => resolution.max(r),
        None => resolution,
    };
    let mut values = BTreeMap::new();
    for key in params.coset_reps(res, support_bound)? {
        let v = symbol.eval(&params, key.rep());
        if v != ZERO_C {
            values.insert(key, v);
        }
    }
    StepFunction::from_values(params, Side::Frequency, res, support_bound, values)
}

/// Conjugate a spatial function by a radial Fourier multiplier.
pub fn apply_radial(symbol: &RadialSymbol, f: &StepFunction) -> Result<StepFunction> {
    let g = fourier(f)?;
    inverse_fourier(&multiply_spectrum(&g, symbol)?)
}

/// Conjugate a spatial function by a step-function Fourier multiplier.
pub fn apply_multiplier(mult: &StepFunction, f: &StepFunction) -> Result<StepFunction> {
    expect_side(mult, Side::Frequency)?;
    let g = fourier(f)?;
    inverse_fourier(&g.mul(mult)?)
}

/// Smoothing-scale derivative: conjugation by max(1, |xi|)^alpha.
pub fn ptype_derivative(f: &StepFunction, alpha: f64) -> Result<StepFunction> {
    apply_radial(&RadialSymbol::BracketPower(alpha), f)
}
