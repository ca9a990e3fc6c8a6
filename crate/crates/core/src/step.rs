//! Finitely supported step functions: complex linear combinations of ball
//! indicators, the dense test class for everything in this crate.
//!
//! A `StepFunction` is constant on cosets of P^resolution and supported in
//! P^(-support_bound); it stores one complex value per occupied coset in a
//! BTreeMap so iteration (and hence every floating-point reduction) has a
//! fixed order. The `side` tag separates functions living on K from
//! functions living on the character group, which is identified with K.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{CosetId, FieldElement, FieldParams};

pub const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Spatial,
    Frequency,
}

/// The ball center + P^level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSpec {
    pub center: FieldElement,
    pub level: i32,
}

impl BallSpec {
    pub fn new(center: FieldElement, level: i32) -> Self {
        BallSpec { center, level }
    }

    /// Haar measure, normalized so the level-0 ball has measure 1.
    pub fn measure(&self, params: &FieldParams) -> f64 {
        params.qf().powi(-self.level)
    }

    /// Smallest b with the ball contained in P^(-b).
    pub fn bound(&self) -> i32 {
        match self.center.valuation() {
            None => -self.level,
            Some(v) => (-self.level).max(-v),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StepFunction {
    params: Arc<FieldParams>,
    side: Side,
    resolution: i32,
    support_bound: i32,
    values: BTreeMap<CosetId, Complex64>,
}

impl StepFunction {
    pub fn zero(
        params: Arc<FieldParams>,
        side: Side,
        resolution: i32,
        support_bound: i32,
    ) -> Result<StepFunction> {
        check_grid(&params, resolution, support_bound)?;
        Ok(StepFunction {
            params,
            side,
            resolution,
            support_bound,
            values: BTreeMap::new(),
        })
    }

    /// The indicator of a ball.
    pub fn indicator(params: Arc<FieldParams>, side: Side, ball: &BallSpec) -> Result<StepFunction> {
        let mut f = StepFunction::zero(params, side, ball.level, ball.bound())?;
        let key = f.params.coset_of(&ball.center, ball.level);
        f.values.insert(key, Complex64::new(1.0, 0.0));
        Ok(f)
    }

    /// Sum of coef * indicator(center + P^level) terms, laid out on the
    /// declared grid. Term levels may be coarser than the resolution; they
    /// are split into resolution-level cosets exactly.
    pub fn from_terms(
        params: Arc<FieldParams>,
        side: Side,
        resolution: i32,
        support_bound: i32,
        terms: &[(FieldElement, i32, Complex64)],
    ) -> Result<StepFunction> {
        let mut f = StepFunction::zero(params, side, resolution, support_bound)?;
        for (center, level, coef) in terms {
            if *level > resolution {
                return Err(Error::TermTooFine {
                    level: *level,
                    resolution,
                });
            }
            let ball = BallSpec::new(center.clone(), *level);
            if ball.bound() > support_bound {
                return Err(Error::TermOutsideSupport {
                    support: support_bound,
                });
            }
            let base = f.params.coset_of(center, *level).rep().clone();
            let children = f.params.grid_size(resolution, -*level)?;
            for n in 0..children {
                let tail = f.params.rep_from_index(resolution, -*level, n)?;
                let rep = f.params.add(&base, &tail);
                let key = f.params.coset_of(&rep, resolution);
                let cell = f.values.entry(key).or_insert(ZERO_C);
                *cell += *coef;
            }
        }
        f.values.retain(|_, v| *v != ZERO_C);
        Ok(f)
    }

    /// Assemble directly from per-coset values. Keys must sit at the declared
    /// resolution and inside the support bound.
    pub fn from_values(
        params: Arc<FieldParams>,
        side: Side,
        resolution: i32,
        support_bound: i32,
        values: BTreeMap<CosetId, Complex64>,
    ) -> Result<StepFunction> {
        check_grid(&params, resolution, support_bound)?;
        for key in values.keys() {
            let fits = key.level() == resolution
                && key
                    .rep()
                    .valuation()
                    .is_none_or(|v| v >= -support_bound);
            if !fits {
                return Err(Error::InvalidWindow {
                    resolution,
                    support: support_bound,
                });
            }
        }
        let mut values = values;
        values.retain(|_, v| *v != ZERO_C);
        Ok(StepFunction {
            params,
            side,
            resolution,
            support_bound,
            values,
        })
    }

    pub fn params(&self) -> &Arc<FieldParams> {
        &self.params
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn resolution(&self) -> i32 {
        self.resolution
    }

    pub fn support_bound(&self) -> i32 {
        self.support_bound
    }

    pub fn values(&self) -> &BTreeMap<CosetId, Complex64> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Identify K with its character group by retagging the side.
    pub fn reinterpret(&self, side: Side) -> StepFunction {
        let mut f = self.clone();
        f.side = side;
        f
    }

    pub fn eval(&self, x: &FieldElement) -> Complex64 {
        if let Some(v) = x.valuation() {
            if v < -self.support_bound {
                return ZERO_C;
            }
        }
        let key = self.params.coset_of(x, self.resolution);
        self.values.get(&key).copied().unwrap_or(ZERO_C)
    }

    fn check_compatible(&self, other: &StepFunction) -> Result<()> {
        if !Arc::ptr_eq(&self.params, &other.params) && !self.params.same_field(&other.params) {
            return Err(Error::ParamsMismatch);
        }
        if self.side != other.side {
            return Err(Error::SideMismatch {
                expected: self.side,
                found: other.side,
            });
        }
        Ok(())
    }

    /// Re-express on a finer grid (larger resolution and/or support bound).
    /// The function itself is unchanged.
    pub fn refine_to(&self, resolution: i32, support_bound: i32) -> Result<StepFunction> {
        if resolution < self.resolution || support_bound < self.support_bound {
            return Err(Error::InvalidWindow {
                resolution,
                support: support_bound,
            });
        }
        check_grid(&self.params, resolution, support_bound)?;
        if resolution == self.resolution {
            let mut f = self.clone();
            f.support_bound = support_bound;
            return Ok(f);
        }
        let children = self.params.grid_size(resolution, -self.resolution)?;
        let mut values = BTreeMap::new();
        for (key, &v) in &self.values {
            for n in 0..children {
                let tail = self
                    .params
                    .rep_from_index(resolution, -self.resolution, n)?;
                let rep = self.params.add(key.rep(), &tail);
                values.insert(self.params.coset_of(&rep, resolution), v);
            }
        }
        Ok(StepFunction {
            params: self.params.clone(),
            side: self.side,
            resolution,
            support_bound,
            values,
        })
    }

    fn aligned(&self, other: &StepFunction) -> Result<(StepFunction, StepFunction)> {
        let m = self.resolution.max(other.resolution);
        let b = self.support_bound.max(other.support_bound);
        Ok((self.refine_to(m, b)?, other.refine_to(m, b)?))
    }

    pub fn add(&self, other: &StepFunction) -> Result<StepFunction> {
        self.check_compatible(other)?;
        let (mut a, b) = self.aligned(other)?;
        for (key, v) in b.values {
            let cell = a.values.entry(key).or_insert(ZERO_C);
            *cell += v;
        }
        a.values.retain(|_, v| *v != ZERO_C);
        Ok(a)
    }

    pub fn sub(&self, other: &StepFunction) -> Result<StepFunction> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> StepFunction {
        let mut f = self.clone();
        if factor == ZERO_C {
            f.values.clear();
            return f;
        }
        for v in f.values.values_mut() {
            *v *= factor;
        }
        f
    }

    /// Pointwise product on the common refinement.
    pub fn mul(&self, other: &StepFunction) -> Result<StepFunction> {
        self.check_compatible(other)?;
        let (mut a, b) = self.aligned(other)?;
        a.values = a
            .values
            .into_iter()
            .filter_map(|(key, v)| b.values.get(&key).map(|w| (key, v * w)))
            .filter(|(_, v)| *v != ZERO_C)
            .collect();
        Ok(a)
    }

    pub fn conj(&self) -> StepFunction {
        let mut f = self.clone();
        for v in f.values.values_mut() {
            *v = v.conj();
        }
        f
    }

    /// f(x - z). Digits of z at or above the resolution are absorbed by the
    /// cosets; the support bound widens to cover the shift.
    pub fn translate(&self, z: &FieldElement) -> StepFunction {
        let bound = match z.valuation() {
            None => self.support_bound,
            Some(v) => self.support_bound.max(-v),
        };
        let mut values = BTreeMap::new();
        for (key, &v) in &self.values {
            let rep = self.params.add(key.rep(), z);
            values.insert(self.params.coset_of(&rep, self.resolution), v);
        }
        StepFunction {
            params: self.params.clone(),
            side: self.side,
            resolution: self.resolution,
            support_bound: bound,
            values,
        }
    }

    /// L^r quasi-norm for 0 < r <= infinity; each coset carries Haar measure
    /// q^(-resolution).
    pub fn lr_norm(&self, r: f64) -> f64 {
        if r.is_nan() || r <= 0.0 {
            return f64::NAN;
        }
        if r.is_infinite() {
            return self
                .values
                .values()
                .map(|v| v.norm())
                .fold(0.0, f64::max);
        }
        let measure = self.params.qf().powi(-self.resolution);
        let sum: f64 = self.values.values().map(|v| v.norm().powf(r)).sum();
        (sum * measure).powf(1.0 / r)
    }

    pub fn max_abs(&self) -> f64 {
        self.lr_norm(f64::INFINITY)
    }

    /// Largest pointwise |self - other| over the common refinement.
    pub fn max_abs_diff(&self, other: &StepFunction) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff.max_abs())
    }

    /// True when every occupied coset lies inside P^level.
    pub fn support_in_ball(&self, level: i32) -> bool {
        self.values.keys().all(|key| match key.rep().valuation() {
            None => key.level() >= level,
            Some(v) => v >= level,
        })
    }

    /// Total integral: sum of values times coset measure.
    pub fn integral(&self) -> Complex64 {
        let measure = self.params.qf().powi(-self.resolution);
        self.values.values().sum::<Complex64>() * measure
    }
}

fn check_grid(params: &FieldParams, resolution: i32, support_bound: i32) -> Result<()> {
    params.grid_size(resolution, support_bound)?;
    let span = resolution as i64 + support_bound as i64;
    if span > 0 {
        let (lo, hi) = params.window();
        if -support_bound < lo || resolution - 1 > hi {
            return Err(Error::PrecisionOverflow {
                exp: -support_bound as i64,
                lo,
                hi,
            });
        }
    }
    Ok(())
}
