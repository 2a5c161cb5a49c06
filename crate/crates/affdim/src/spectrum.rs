//! Constructive realization of the dimension spectrum: given a target
//! dimension, build a digit set J whose restricted digit set (or planar
//! set) attains it to tolerance.
//!
//! Everything is driven in "sum space": dim(J) ≤ t iff
//! Σ_{(s,d)∈J} (1/(d(d−1)))^t ≤ 1, so hitting a target dimension means
//! steering that fixed-exponent sum to 1. Low targets are built forward
//! (start empty, add digits whose terms fit the remaining deficit,
//! jumping straight to the right digit instead of scanning); high
//! targets are built backward (start from the full cofinite set, whose
//! dimension is 1, and exclude digits until the sum drops to 1). The
//! result is always re-verified through the independent bisection path.

use crate::bisect::refine;
use crate::digits::{DigitSetSpec, SignDigits};
use crate::error::Error;
use crate::luroth::dim_2d;
use crate::pressure::{DimensionResult, Method};
use crate::series::sign_digit_sum;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumRequest {
    /// Target dimension: [0,1] for the 1-D problem, [0,2] for 2-D.
    pub target: f64,
    /// Which sign the 1-D digit set lives on.
    pub sign: u8,
    /// Bernoulli parameter of the 2-D system.
    pub p: f64,
    pub tol: f64,
    /// Largest digit the forward construction may use.
    pub max_digit: u64,
}

impl Default for SpectrumRequest {
    fn default() -> Self {
        SpectrumRequest {
            target: 0.0,
            sign: 0,
            p: 0.5,
            tol: 1e-4,
            max_digit: 100_000,
        }
    }
}

impl SpectrumRequest {
    fn validate(&self, hi: f64) -> Result<()> {
        if !(0.0..=hi).contains(&self.target) {
            return Err(Error::InvalidInput(format!(
                "target must lie in [0,{hi}], got {}",
                self.target
            )));
        }
        if self.sign > 1 {
            return Err(Error::InvalidInput("sign must be 0 or 1".into()));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::InvalidInput(format!("p must lie in (0,1), got {}", self.p)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput("tol must be > 0".into()));
        }
        if self.max_digit < 3 {
            return Err(Error::InvalidInput("max_digit must be ≥ 3".into()));
        }
        Ok(())
    }
}

fn term(d: u64, t: f64) -> f64 {
    (d as f64 * (d as f64 - 1.0)).powf(-t)
}

/// Smallest d ≥ lo with term(d, t) ≤ tau.
fn smallest_fitting_digit(tau: f64, t: f64, lo: u64) -> Option<u64> {
    let x = tau.powf(-1.0 / t);
    if !x.is_finite() || x > 1e18 {
        return None;
    }
    let mut d = ((0.25 + x).sqrt() + 0.5).ceil() as u64;
    d = d.max(2);
    while d > 2 && term(d - 1, t) <= tau {
        d -= 1;
    }
    while term(d, t) > tau {
        d += 1;
    }
    Some(d.max(lo))
}

/// Certified dimension of a single-sign digit set by bisection on the
/// fixed-exponent sum; the independent verification path.
fn one_d_dim(sign: &SignDigits, tol: f64) -> Result<DimensionResult> {
    let n = match sign {
        SignDigits::Explicit(set) => set.len(),
        SignDigits::Empty => 0,
        _ => 2, // infinite
    };
    if n <= 1 {
        let mut res = DimensionResult::pinned(0.0, Method::HutchinsonFinite);
        res.flags.degenerate = true;
        return Ok(res);
    }
    let mut q = |r: f64, terms: usize| sign_digit_sum(sign, r, terms);
    let (lo, hi) = refine(&mut q, 1.0, 1e-9, 1.0, tol);
    let method = if sign.is_finite() {
        Method::HutchinsonFinite
    } else {
        Method::InfinitePressure
    };
    Ok(DimensionResult::from_bracket(lo, hi, method))
}

/// Forward construction for targets where the full-set sum diverges or
/// is unhelpfully large: add digits whose terms fill the deficit 1 − S.
/// A chosen digit must not strand the deficit between the stop band and
/// the smallest term available below `max_digit`; when it would, the
/// digit is re-aimed to leave a comfortably fillable remainder.
fn forward_greedy(target: f64, tol: f64, max_digit: u64) -> Result<BTreeSet<u64>> {
    let delta_stop = 0.5 * tol * std::f64::consts::LN_2;
    let min_term = term(max_digit, target);
    let mut accepted = BTreeSet::new();
    let mut deficit = 1.0;
    let mut last = 1u64;
    for _ in 0..256 {
        if deficit <= delta_stop {
            return Ok(accepted);
        }
        let d0 = smallest_fitting_digit(deficit, target, last + 1)
            .filter(|&d| d <= max_digit)
            .ok_or_else(|| {
                Error::ToleranceNotReached(format!(
                    "deficit {deficit} needs digits beyond the max_digit cap {max_digit}"
                ))
            })?;
        let residue = deficit - term(d0, target);
        let d = if residue <= delta_stop || residue >= min_term {
            d0
        } else if deficit - 1.5 * min_term >= min_term {
            // leave a remainder the cheap far digits can still fill
            smallest_fitting_digit(deficit - 1.5 * min_term, target, last + 1)
                .filter(|&d| d <= max_digit)
                .ok_or_else(|| {
                    Error::ToleranceNotReached(
                        "cannot re-aim around the digit granularity gap".into(),
                    )
                })?
        } else {
            d0 // near the granularity floor: take the closest term
        };
        deficit -= term(d, target);
        accepted.insert(d);
        last = d;
    }
    Err(Error::ToleranceNotReached(
        "forward greedy did not converge in 256 digits".into(),
    ))
}

/// Backward construction for high targets: start from the full cofinite
/// set {d ≥ 2} (dimension 1) and exclude digits until the sum at the
/// target exponent drops into [1, 1 + stop band].
fn complement_greedy(target: f64, tol: f64) -> Result<SignDigits> {
    let delta_stop = 0.5 * tol * std::f64::consts::LN_2;
    let mut exclusions = BTreeSet::new();
    let mut scan = 2u64;
    for _ in 0..4096 {
        let sign = SignDigits::Cofinite { min_d: 2, exclusions: exclusions.clone() };
        let s = sign_digit_sum(&sign, target, 65_536);
        if !s.is_finite() {
            return Err(Error::ToleranceNotReached(
                "full-set sum diverges at this target; use the forward construction".into(),
            ));
        }
        let excess = s.midpoint() - 1.0;
        if excess <= delta_stop {
            return Ok(sign);
        }
        let mut d = smallest_fitting_digit(excess, target, scan)
            .ok_or_else(|| Error::ToleranceNotReached("exclusion digit overflow".into()))?;
        while exclusions.contains(&d) {
            d += 1;
        }
        exclusions.insert(d);
        scan = 2; // later excess may need larger terms than this one
    }
    Err(Error::ToleranceNotReached(
        "complement greedy did not converge in 4096 exclusions".into(),
    ))
}

fn with_sign(sign_digits: SignDigits, s: u8) -> Result<DigitSetSpec> {
    if s == 0 {
        DigitSetSpec::new(sign_digits, SignDigits::Empty)
    } else {
        DigitSetSpec::new(SignDigits::Empty, sign_digits)
    }
}

/// Build J ⊆ {sign}×ℕ≥2 with dim F_J within tol of the target.
pub fn realize_1d(req: &SpectrumRequest) -> Result<(DigitSetSpec, DimensionResult)> {
    req.validate(1.0)?;
    if req.target <= req.tol {
        // a singleton attractor has dimension exactly 0
        let spec = with_sign(SignDigits::Explicit(BTreeSet::from([2])), req.sign)?;
        let achieved = one_d_dim(spec.sign(req.sign), req.tol)?;
        return Ok((spec, achieved));
    }
    let sign_digits = if req.target >= 0.6 {
        complement_greedy(req.target, req.tol)?
    } else {
        SignDigits::Explicit(forward_greedy(req.target, req.tol, req.max_digit)?)
    };
    let spec = with_sign(sign_digits, req.sign)?;
    // loop-back verification through the independent bisection path
    let achieved = one_d_dim(spec.sign(req.sign), (req.tol * 0.1).max(1e-12))?;
    if (achieved.value - req.target).abs() > req.tol {
        return Err(Error::ToleranceNotReached(format!(
            "constructed set achieves {} instead of {} ± {}",
            achieved.value, req.target, req.tol
        )));
    }
    Ok((spec, achieved))
}

/// Build J with dim 𝓕_J^p within tol of the target: a single-sign set
/// for targets in [0,1] (the planar set is {s}×F_J), and {0,1}×I with
/// the 1-D construction run at target − 1 for targets in (1,2].
pub fn realize_2d(req: &SpectrumRequest) -> Result<(DigitSetSpec, DimensionResult)> {
    req.validate(2.0)?;
    if req.target <= 1.0 {
        return realize_1d(req);
    }
    let sub = SpectrumRequest {
        target: req.target - 1.0,
        ..req.clone()
    };
    let (one_d, _) = realize_1d(&sub)?;
    let digits = one_d.sign(req.sign).clone();
    let spec = DigitSetSpec::new(digits.clone(), digits)?;
    let achieved = dim_2d(&spec, req.p, (req.tol * 0.1).max(1e-12))?;
    if (achieved.value - req.target).abs() > req.tol {
        return Err(Error::ToleranceNotReached(format!(
            "constructed set achieves {} instead of {} ± {}",
            achieved.value, req.target, req.tol
        )));
    }
    Ok((spec, achieved))
}
