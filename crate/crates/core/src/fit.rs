//! Least-squares fit of `log y = slope * log v + intercept`.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
    /// Smallest and largest `v` used.
    pub v_range: (T, T),
}

/// Fits `log y` against `log v` by ordinary least squares. Needs at least three
/// rows, not all with the same `v`; every `v` and `y` must be positive.
pub fn fit_exponent<T: Float>(rows: &[(T, T)]) -> Result<FitResult<T>> {
    if rows.len() < 3 {
        return Err(Error::TooFewRows(rows.len()));
    }
    for &(v, y) in rows {
        if v.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater)
            || y.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater)
        {
            return Err(Error::NonPositiveY(format!(
                "v = {}, y = {}",
                v.to_f64().unwrap_or(f64::NAN),
                y.to_f64().unwrap_or(f64::NAN)
            )));
        }
    }
    let n = T::from(rows.len()).unwrap();
    let xs: Vec<T> = rows.iter().map(|r| r.0.ln()).collect();
    let ys: Vec<T> = rows.iter().map(|r| r.1.ln()).collect();
    let mean = |a: &[T]| a.iter().fold(T::zero(), |s, &x| s + x) / n;
    let (mx, my) = (mean(&xs), mean(&ys));
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    let mut syy = T::zero();
    for (&x, &y) in xs.iter().zip(&ys) {
        sxx = sxx + (x - mx) * (x - mx);
        sxy = sxy + (x - mx) * (y - my);
        syy = syy + (y - my) * (y - my);
    }
    if sxx == T::zero() {
        return Err(Error::TooFewRows(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == T::zero() {
        T::one()
    } else {
        sxy * sxy / (sxx * syy)
    };
    let lo = rows.iter().map(|r| r.0).fold(T::infinity(), T::min);
    let hi = rows.iter().map(|r| r.0).fold(T::neg_infinity(), T::max);
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        v_range: (lo, hi),
    })
}
